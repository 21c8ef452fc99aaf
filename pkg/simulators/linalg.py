"""
Dense Complex Linear Algebra

Kronecker products, partial traces, partial transposes and a Jacobi
eigen-solver for Hermitian matrices. Matrices are plain complex128 numpy
arrays; tensor-factor bookkeeping is carried by FactorShape.

Factor indices are zero-based, the leftmost factor being index 0.
"""

from __future__ import annotations

import functools
import logging
import math
import string
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import numpy.typing as npt

from config.settings import EIGEN_TOL, HERMITICITY_TOL, JACOBI_MAX_SWEEPS
from simulators.errors import ConvergenceError, DimensionError, NotHermitianError

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]


@dataclass(frozen=True)
class FactorShape:
    """Ordered tensor-factor dimensions of a composite space."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionError(f"factor dimensions must be positive, got {self.dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def qubits(cls, count: int) -> FactorShape:
        return cls((2,) * count)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def check_index(self, index: int) -> int:
        if not 0 <= index < len(self.dims):
            raise DimensionError(
                f"factor index {index} out of range for shape {self.dims}"
            )
        return index

    def select(self, indices: Iterable[int]) -> FactorShape:
        return FactorShape(tuple(self.dims[i] for i in indices))


def as_matrix(data) -> ComplexMatrix:
    """Coerce array-like data to a 2-D complex128 matrix."""
    matrix = np.asarray(data, dtype=np.complex128)
    if matrix.ndim != 2 or 0 in matrix.shape:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {matrix.shape}")
    return matrix


def _square(rho, shape: FactorShape | None = None) -> ComplexMatrix:
    matrix = as_matrix(rho)
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionError(f"expected a square matrix, got {rows}x{cols}")
    if shape is not None and shape.size != rows:
        raise DimensionError(
            f"factor shape {shape.dims} (size {shape.size}) does not match matrix dimension {rows}"
        )
    return matrix


def identity(dim: int) -> ComplexMatrix:
    return np.eye(dim, dtype=np.complex128)


def kron(a, b) -> ComplexMatrix:
    """Kronecker product with factor order (a then b)."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors) -> ComplexMatrix:
    result = as_matrix([[1.0]])
    for factor in factors:
        result = kron(result, factor)
    return result


def matmul(a, b) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def dagger(a) -> ComplexMatrix:
    return as_matrix(a).conj().T


def hermiticity_defect(h) -> float:
    """Max elementwise deviation of h from its conjugate transpose."""
    matrix = _square(h)
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def partial_trace(rho, shape: FactorShape, keep: Iterable[int]) -> ComplexMatrix:
    """Trace out every factor not listed in keep; kept factors stay in order."""
    matrix = _square(rho, shape)
    kept = sorted(set(shape.check_index(k) for k in keep))
    if not kept:
        raise DimensionError("partial_trace needs at least one factor to keep")

    n = len(shape)
    if 2 * n > len(string.ascii_letters):
        raise DimensionError(f"too many factors for partial_trace: {n}")

    ket = list(string.ascii_letters[:n])
    bra = list(string.ascii_letters[n:2 * n])
    for j in range(n):
        if j not in kept:
            bra[j] = ket[j]
    out = [ket[k] for k in kept] + [bra[k] for k in kept]

    tensor = matrix.reshape(shape.dims + shape.dims)
    reduced = np.einsum("".join(ket + bra) + "->" + "".join(out), tensor)
    dim = shape.select(kept).size
    return reduced.reshape(dim, dim)


def partial_transpose(rho, shape: FactorShape, factor: int) -> ComplexMatrix:
    """Transpose only the indices belonging to one tensor factor."""
    matrix = _square(rho, shape)
    shape.check_index(factor)
    n = len(shape)
    tensor = matrix.reshape(shape.dims + shape.dims)
    swapped = np.swapaxes(tensor, factor, n + factor)
    return swapped.reshape(shape.size, shape.size)


def _off_diagonal_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


@functools.lru_cache(maxsize=32)
def _round_robin(n: int) -> tuple[tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]], ...]:
    """
    Split all (p, q) pairs of range(n) into n - 1 (or n) rounds of disjoint pairs.

    Circle method: index 0 stays fixed while the others rotate one place per
    round. An odd n gets a dummy index whose pairs are dropped.
    """
    players = list(range(n + n % 2))
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(x, y), max(x, y)) for x, y in pairs if max(x, y) < n]
        p = np.array([x for x, _ in pairs], dtype=np.intp)
        q = np.array([y for _, y in pairs], dtype=np.intp)
        p.setflags(write=False)
        q.setflags(write=False)
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _rotate(a: ComplexMatrix, p: npt.NDArray[np.intp], q: npt.NDArray[np.intp]) -> None:
    """Zero a[p, q] (and a[q, p]) in place for a set of disjoint index pairs."""
    g = a[p, q]
    magnitude = np.abs(g)
    active = magnitude > 0.0
    if not active.any():
        return
    p, q, g, magnitude = p[active], q[active], g[active], magnitude[active]
    phase = g / magnitude

    theta = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
    t = 1.0 / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
    t = np.where(theta < 0.0, -t, t)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    # diag(1, conj(phase)) makes a[p, q] real, then a real rotation clears it
    col_p, col_q = a[:, p], a[:, q]
    a[:, p] = col_p * c - col_q * (s * np.conj(phase))
    a[:, q] = col_p * s + col_q * (c * np.conj(phase))
    row_p, row_q = a[p, :], a[q, :]
    a[p, :] = c[:, None] * row_p - (s * phase)[:, None] * row_q
    a[q, :] = s[:, None] * row_p + (c * phase)[:, None] * row_q
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def hermitian_eigenvalues(h, tol: float = EIGEN_TOL,
                          max_sweeps: int = JACOBI_MAX_SWEEPS) -> npt.NDArray[np.float64]:
    """
    Eigenvalues of a Hermitian matrix by Jacobi rotations.

    Each sweep visits all (p, q) pairs in round-robin order, rotating the
    disjoint pairs of a round together, until the off-diagonal Frobenius
    norm drops below tol * max(1, ||h||_F).

    Args:
        h: Hermitian matrix (max deviation from h^H at most HERMITICITY_TOL)
        tol: Convergence threshold on the off-diagonal norm
        max_sweeps: Sweep budget before ConvergenceError

    Returns:
        Real eigenvalues in ascending order
    """
    matrix = _square(h)
    defect = hermiticity_defect(matrix)
    if defect > HERMITICITY_TOL:
        raise NotHermitianError(
            f"matrix deviates from its conjugate transpose by {defect:.3e}"
        )

    a = (matrix + matrix.conj().T) / 2.0
    n = a.shape[0]
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps + 1):
        off = _off_diagonal_norm(a)
        if off < threshold:
            logger.debug("Jacobi converged after %d sweep(s) (n=%d, off=%.2e)", sweep, n, off)
            return np.sort(a.diagonal().real)
        if sweep == max_sweeps:
            break
        for p, q in _round_robin(n):
            _rotate(a, p, q)

    raise ConvergenceError(
        f"Jacobi eigen-solver did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
    )
