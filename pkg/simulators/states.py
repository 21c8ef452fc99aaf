"""
Quantum State Construction

Pure states, density operators with tensor-factor bookkeeping, Bloch vectors,
fidelity and the scaled (Werner) form s|psi><psi| + (1 - s) I / 4.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass, field

import numpy as np
import numpy.typing as npt

from config.settings import ALGEBRAIC_TOL, HERMITICITY_TOL, POSITIVITY_TOL
from simulators import linalg
from simulators.errors import DimensionError, DomainError, NotHermitianError
from simulators.linalg import ComplexMatrix, FactorShape

StateVector = npt.NDArray[np.complex128]

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

KET_0 = np.array([1, 0], dtype=np.complex128)
KET_1 = np.array([0, 1], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    Hermitian, unit-trace, positive semidefinite operator on a factored space.

    Positivity is checked with the Jacobi solver unless check_positivity is
    False, which callers use for pure states built as |psi><psi|.
    """

    matrix: ComplexMatrix
    shape: FactorShape
    check_positivity: InitVar[bool] = True
    min_eigenvalue: float | None = field(default=None, init=False)

    def __post_init__(self, check_positivity):
        matrix = linalg.as_matrix(self.matrix).copy()
        if matrix.shape != (self.shape.size, self.shape.size):
            raise DimensionError(
                f"matrix of shape {matrix.shape} does not fit factor shape {self.shape.dims}"
            )
        defect = linalg.hermiticity_defect(matrix)
        if defect > HERMITICITY_TOL:
            raise NotHermitianError(f"density operator is not Hermitian (defect {defect:.3e})")
        trace = np.trace(matrix).real
        if abs(trace - 1.0) > ALGEBRAIC_TOL:
            raise DomainError(f"density operator must have unit trace, got {trace!r}")
        if check_positivity:
            lowest = float(linalg.hermitian_eigenvalues(matrix)[0])
            if lowest < -POSITIVITY_TOL:
                raise DomainError(
                    f"density operator is not positive semidefinite (min eigenvalue {lowest:.3e})"
                )
            object.__setattr__(self, "min_eigenvalue", lowest)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.shape.size

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def reduce(self, keep) -> DensityOperator:
        """Reduced state on the kept factors."""
        kept = sorted(set(keep))
        reduced = linalg.partial_trace(self.matrix, self.shape, kept)
        return DensityOperator(reduced, self.shape.select(kept))

    def partial_transpose(self, factor: int) -> ComplexMatrix:
        return linalg.partial_transpose(self.matrix, self.shape, factor)


@dataclass(frozen=True)
class EntangledInput:
    """The shared pair alpha|00> + beta|11> with real, nonnegative alpha and beta."""

    alpha_sq: float

    def __post_init__(self):
        if not 0.0 <= self.alpha_sq <= 1.0:
            raise DomainError(f"alpha_sq must be in [0, 1], got {self.alpha_sq!r}")

    @property
    def alpha(self) -> float:
        return math.sqrt(self.alpha_sq)

    @property
    def beta(self) -> float:
        return math.sqrt(1.0 - self.alpha_sq)

    def state_vector(self) -> StateVector:
        return np.array([self.alpha, 0.0, 0.0, self.beta], dtype=np.complex128)


@dataclass(frozen=True)
class BlochVector:
    sx: float
    sy: float
    sz: float

    def as_array(self) -> npt.NDArray[np.float64]:
        return np.array([self.sx, self.sy, self.sz])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class ScaledForm:
    """Best fit of a two-qubit state to s|psi><psi| + (1 - s) I / 4."""

    s: float
    residual: float


def entangled_input_state(alpha_sq: float) -> StateVector:
    """The vector alpha|00> + beta|11> for the given weight alpha^2."""
    return EntangledInput(alpha_sq).state_vector()


def _unit_vector(psi, dim: int | None = None) -> StateVector:
    vector = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if dim is not None and vector.size != dim:
        raise DimensionError(f"expected a state vector of dimension {dim}, got {vector.size}")
    norm = np.linalg.norm(vector)
    if abs(norm - 1.0) > ALGEBRAIC_TOL:
        raise DomainError(f"state vector must have unit norm, got {norm!r}")
    return vector


def pure_density(psi, shape: FactorShape | None = None) -> DensityOperator:
    """|psi><psi| as a density operator (single factor unless shape is given)."""
    vector = _unit_vector(psi)
    shape = shape or FactorShape((vector.size,))
    return DensityOperator(np.outer(vector, vector.conj()), shape, check_positivity=False)


def bloch_vector(rho: DensityOperator) -> BlochVector:
    """The unique s with rho = (I + s . sigma) / 2."""
    if rho.matrix.shape != (2, 2):
        raise DimensionError(f"bloch_vector needs a single-qubit state, got {rho.matrix.shape}")
    sx, sy, sz = (float(np.trace(rho.matrix @ pauli).real) for pauli in PAULIS)
    return BlochVector(sx, sy, sz)


def density_from_bloch(vector: BlochVector) -> DensityOperator:
    matrix = linalg.identity(2) + sum(
        component * pauli for component, pauli in zip(vector.as_array(), PAULIS)
    )
    return DensityOperator(matrix / 2.0, FactorShape((2,)))


def fidelity_pure(psi, rho: DensityOperator) -> float:
    """F = <psi| rho |psi> for a pure reference state."""
    vector = _unit_vector(psi, rho.dim)
    return float(np.vdot(vector, rho.matrix @ vector).real)


def werner_state(s: float, psi) -> DensityOperator:
    """s|psi><psi| + (1 - s) I / 4 for a two-qubit pure state psi."""
    if not -1.0 / 3.0 <= s <= 1.0:
        raise DomainError(f"scaling parameter must be in [-1/3, 1], got {s!r}")
    vector = _unit_vector(psi, 4)
    matrix = s * np.outer(vector, vector.conj()) + (1.0 - s) / 4.0 * linalg.identity(4)
    return DensityOperator(matrix, FactorShape.qubits(2))


def fit_scaled_form(rho: DensityOperator, psi) -> ScaledForm:
    """
    Least-squares fit of rho to the scaled form around psi.

    The family is affine in s, so the Frobenius-optimal s is the projection
    s = (tr(rho P) - 1/4) / (3/4) with P = |psi><psi|.
    """
    if rho.matrix.shape != (4, 4):
        raise DimensionError(f"fit_scaled_form needs a two-qubit state, got {rho.matrix.shape}")
    vector = _unit_vector(psi, 4)
    projector = np.outer(vector, vector.conj())
    overlap = float(np.trace(rho.matrix @ projector).real)
    s = (overlap - 0.25) / 0.75
    model = s * projector + (1.0 - s) / 4.0 * linalg.identity(4)
    residual = float(np.linalg.norm(rho.matrix - model))
    return ScaledForm(s=s, residual=residual)


def random_pure_qubit(rng: np.random.Generator) -> StateVector:
    """Haar-random single-qubit pure state."""
    vector = rng.normal(size=2) + 1j * rng.normal(size=2)
    return vector / np.linalg.norm(vector)


def depolarize(rho: DensityOperator, eta: float) -> DensityOperator:
    """The single-clone channel rho -> eta rho + (1 - eta) I / 2 on one qubit."""
    if rho.matrix.shape != (2, 2):
        raise DimensionError(f"depolarize acts on one qubit, got {rho.matrix.shape}")
    matrix = eta * rho.matrix + (1.0 - eta) / 2.0 * linalg.identity(2)
    return DensityOperator(matrix, rho.shape)
