"""
Universal Quantum Cloners

Builds the isometries of three universal cloning machines and verifies them:

- the simple 1->2 cloner, parameterized by its reduction factor eta,
- the most general symmetric, isotropic 1->2 cloner with coefficients a, b, c,
  whose ancilla states are found by a constrained numerical search,
- the optimal 1->3 cloner acting into the symmetric three-qubit subspace.

Each isometry maps the input qubit into (copies x ancilla); the blank qubits
and the machine's initial state are absorbed into the map. Coefficients are
real and nonnegative throughout.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

import numpy as np
from scipy.optimize import least_squares

from config.settings import (
    ALGEBRAIC_TOL,
    CONSTRAINT_TOL,
    DEFAULT_SEED,
    GENERAL_ANCILLA_DIM,
    ISOTROPY_TOL,
    OPTIMAL_ETA,
    RANDOM_PROBE_STATES,
    SEARCH_ITERATIONS,
    SEARCH_RESTARTS,
)
from simulators import linalg
from simulators.errors import DimensionError, DomainError, InfeasibleClonerError, NotIsotropicError
from simulators.linalg import ComplexMatrix, FactorShape
from simulators.states import (
    DensityOperator,
    StateVector,
    bloch_vector,
    pure_density,
    random_pure_qubit,
)

logger = logging.getLogger(__name__)

ANCILLA_NAMES = ("A", "B", "C", "A~", "B~", "C~")


class ClonerKind(str, Enum):
    SIMPLE_12 = "Simple12"
    GENERAL_12 = "General12"
    GISIN_MASSAR_13 = "GisinMassar13"


@dataclass(frozen=True, eq=False)
class AncillaRealization:
    """Concrete ancilla output states, keyed by name ("A", "B~", ...)."""

    vectors: dict[str, np.ndarray]

    def overlap(self, bra: str, ket: str) -> complex:
        """<bra|ket>"""
        return complex(np.vdot(self.vectors[bra], self.vectors[ket]))

    def replace(self, **vectors) -> AncillaRealization:
        return AncillaRealization({**self.vectors, **vectors})


@dataclass(frozen=True, eq=False)
class ClonerSpec:
    """
    Parameters of a built cloner.

    For the 1->3 kind, coeff_a, coeff_b and coeff_c hold the coefficients
    a_0, a_1, a_2 of the three symmetric components.
    """

    kind: ClonerKind
    coeff_a: float
    coeff_b: float
    coeff_c: float | None
    eta: float
    ancilla_dim: int
    overlaps: dict[str, float] = field(default_factory=dict)
    realization: AncillaRealization | None = None


@dataclass(frozen=True, eq=False)
class CloneIsometry:
    """Isometry from one qubit into (num_copies qubits x ancilla)."""

    matrix: ComplexMatrix
    num_copies: int
    ancilla_dim: int

    def __post_init__(self):
        matrix = linalg.as_matrix(self.matrix)
        expected = (2 ** self.num_copies * self.ancilla_dim, 2)
        if matrix.shape != expected:
            raise DimensionError(f"isometry must have shape {expected}, got {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)
        defect = isometry_defect(self)
        if defect > ALGEBRAIC_TOL:
            raise DomainError(f"map is not an isometry (max |V^H V - I| = {defect:.3e})")

    @property
    def output_shape(self) -> FactorShape:
        return FactorShape((2,) * self.num_copies + (self.ancilla_dim,))

    def apply(self, psi) -> StateVector:
        return self.matrix @ np.asarray(psi, dtype=np.complex128)


@dataclass(frozen=True)
class ConstraintReport:
    residuals: dict[str, float]
    max_residual: float
    passed: bool

    @classmethod
    def from_residuals(cls, residuals: dict[str, float],
                       tolerance: float = CONSTRAINT_TOL) -> ConstraintReport:
        worst = max(residuals.values()) if residuals else 0.0
        return cls(residuals=residuals, max_residual=worst, passed=worst <= tolerance)


def isometry_defect(iso: CloneIsometry) -> float:
    gram = iso.matrix.conj().T @ iso.matrix
    return float(np.max(np.abs(gram - np.eye(2))))


def _two_copy_isometry(a: float, b: float, c: float, anc: AncillaRealization) -> ComplexMatrix:
    """
    Columns U|0> and U|1> of the 1->2 map:

        U|0> = a|00>|A>  + b(|01> + |10>)|B>  + c|11>|C>
        U|1> = a|11>|A~> + b(|01> + |10>)|B~> + c|00>|C~>
    """
    ket = np.eye(4, dtype=np.complex128)
    k00, k01, k10, k11 = ket
    v = anc.vectors
    zero = np.zeros_like(v["A"])
    image_0 = (a * np.kron(k00, v["A"]) + b * np.kron(k01 + k10, v["B"])
               + c * np.kron(k11, v.get("C", zero)))
    image_1 = (a * np.kron(k11, v["A~"]) + b * np.kron(k01 + k10, v["B~"])
               + c * np.kron(k00, v.get("C~", zero)))
    return np.column_stack([image_0, image_1])


def _simple_overlap(eta: float) -> float:
    """<B~|A> = <A~|B> = sqrt(eta / (2 (1 - eta))), which reaches 1 at eta = 2/3."""
    return min(math.sqrt(eta / (2.0 * (1.0 - eta))), 1.0)


def _check_eta(eta: float) -> None:
    if not 0.0 < eta <= OPTIMAL_ETA:
        raise DomainError(f"eta must be in (0, 2/3], got {eta!r}")


def build_simple_cloner(eta: float) -> tuple[ClonerSpec, CloneIsometry]:
    """
    Build the simple universal 1->2 cloner with reduction factor eta.

    The ancilla lives in four dimensions with |A> = e1, |B> = e2,
    |B~> = x e1 + sqrt(1 - x^2) e3 and |A~> = x e2 + sqrt(1 - x^2) e4.
    eta = 2/3 gives the optimal cloner.
    """
    _check_eta(eta)
    a = math.sqrt(eta)
    b = math.sqrt((1.0 - eta) / 2.0)
    x = _simple_overlap(eta)
    y = math.sqrt(max(1.0 - x * x, 0.0))

    e = np.eye(4, dtype=np.complex128)
    realization = AncillaRealization({
        "A": e[0],
        "B": e[1],
        "B~": x * e[0] + y * e[2],
        "A~": x * e[1] + y * e[3],
    })
    spec = ClonerSpec(
        kind=ClonerKind.SIMPLE_12,
        coeff_a=a,
        coeff_b=b,
        coeff_c=None,
        eta=eta,
        ancilla_dim=4,
        overlaps={"<B~|A>": x, "<A~|B>": x},
        realization=realization,
    )
    iso = CloneIsometry(_two_copy_isometry(a, b, 0.0, realization), num_copies=2, ancilla_dim=4)
    return spec, iso


def check_simple_constraints(spec: ClonerSpec, realization: AncillaRealization) -> ConstraintReport:
    """Residuals of the unitarity, isotropy and symmetry conditions of the simple cloner."""
    if spec.kind is not ClonerKind.SIMPLE_12:
        raise DomainError(f"check_simple_constraints needs a {ClonerKind.SIMPLE_12.value} cloner, got {spec.kind.value}")
    a, b, r = spec.coeff_a, spec.coeff_b, realization
    shrink = b * a * r.overlap("B~", "A") + a * b * r.overlap("A~", "B")
    residuals = {
        "normalization": abs(a * a + 2 * b * b - 1.0),
        "<B|B~>": abs(r.overlap("B", "B~")),
        "<A|B>": abs(r.overlap("A", "B")),
        "<A~|B~>": abs(r.overlap("A~", "B~")),
        "eta = a^2": abs(spec.eta - a * a),
        "eta = Re(shrink)": abs(spec.eta - shrink.real),
        "ancilla norms": max(abs(np.linalg.norm(v) - 1.0) for v in r.vectors.values()),
    }
    return ConstraintReport.from_residuals(residuals)


def check_general_constraints(spec: ClonerSpec, realization: AncillaRealization) -> ConstraintReport:
    """
    Residuals of the unitarity, symmetry and isotropy conditions of the general 1->2 cloner.

    The phase condition is read as Im(b a <B~|A> + a b <A~|B>) = 0, the
    imaginary counterpart of the reduction-factor condition.
    """
    if spec.kind not in (ClonerKind.GENERAL_12, ClonerKind.SIMPLE_12):
        raise DomainError(f"check_general_constraints needs a 1->2 cloner, got {spec.kind.value}")
    a, b, c = spec.coeff_a, spec.coeff_b, spec.coeff_c or 0.0
    r = realization
    if "C" not in r.vectors:
        zero = np.zeros_like(r.vectors["A"])
        r = r.replace(C=zero, **{"C~": zero})
    shrink = b * a * r.overlap("B~", "A") + a * b * r.overlap("A~", "B")
    residuals = {
        "normalization": abs(a * a + 2 * b * b + c * c - 1.0),
        "image orthogonality": abs(a * c * r.overlap("A", "C~") + 2 * b * b * r.overlap("B", "B~")
                                   + a * c * r.overlap("C", "A~")),
        "eta = Re(shrink)": abs(a * a - c * c - shrink.real),
        "Im(shrink)": abs(shrink.imag),
        "cross coherence": abs(b * c * r.overlap("B", "C~") + c * b * r.overlap("C", "B~")),
        "clone coherence |0>": abs(a * b * r.overlap("B", "A") + b * c * r.overlap("C", "B")),
        "clone coherence |1>": abs(a * b * r.overlap("B~", "A~") + b * c * r.overlap("C~", "B~")),
        "z isotropy": abs(c * a * r.overlap("C~", "A") - a * c * r.overlap("A~", "C")),
        "ancilla norms": max(abs(np.linalg.norm(r.vectors[name]) - 1.0)
                             for name in ANCILLA_NAMES if c > 0.0 or "C" not in name),
    }
    return ConstraintReport.from_residuals(residuals)


def _general_spec(a: float, b: float, c: float, realization: AncillaRealization) -> ClonerSpec:
    overlaps = {
        "<B~|A>": realization.overlap("B~", "A").real,
        "<A~|B>": realization.overlap("A~", "B").real,
        "<A|C~>": realization.overlap("A", "C~").real,
        "<C|A~>": realization.overlap("C", "A~").real,
    }
    return ClonerSpec(
        kind=ClonerKind.GENERAL_12,
        coeff_a=a,
        coeff_b=b,
        coeff_c=c,
        eta=a * a - c * c,
        ancilla_dim=GENERAL_ANCILLA_DIM,
        overlaps=overlaps,
        realization=realization,
    )


def _unpack_free_vectors(params: np.ndarray) -> tuple[np.ndarray, ...]:
    raw = params.reshape(3, GENERAL_ANCILLA_DIM)
    return tuple(raw[k] / np.linalg.norm(raw[k]) for k in range(3))


def _search_realization(a: float, b: float, c: float, params: np.ndarray) -> AncillaRealization:
    e = np.eye(GENERAL_ANCILLA_DIM)
    a_t, b_t, c_t = _unpack_free_vectors(params)
    return AncillaRealization({
        "A": e[0].astype(np.complex128),
        "B": e[1].astype(np.complex128),
        "C": e[2].astype(np.complex128),
        "A~": a_t.astype(np.complex128),
        "B~": b_t.astype(np.complex128),
        "C~": c_t.astype(np.complex128),
    })


def _search_residuals(params: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    raw = params.reshape(3, GENERAL_ANCILLA_DIM)
    a_t, b_t, c_t = _unpack_free_vectors(params)
    # A, B, C are e1, e2, e3, so <A|v> = v[0], <B|v> = v[1], <C|v> = v[2]
    return np.array([
        a * c * c_t[0] + 2 * b * b * b_t[1] + a * c * a_t[2],
        a * a - c * c - a * b * (b_t[0] + a_t[1]),
        b * c * (c_t[1] + b_t[2]),
        a * b * (b_t @ a_t) + b * c * (c_t @ b_t),
        c * a * (c_t[0] - a_t[2]),
        *(raw @ raw.T).diagonal() - 1.0,
    ])


def _search_max_residual(spec: ClonerSpec, iso_matrix: ComplexMatrix) -> float:
    report = check_general_constraints(spec, spec.realization)
    gram = iso_matrix.conj().T @ iso_matrix
    return max(report.max_residual, float(np.max(np.abs(gram - np.eye(2)))))


def _embedded_simple_realization(eta: float) -> AncillaRealization:
    """The simple cloner's ancilla states placed in the general six-dimensional space."""
    x = _simple_overlap(eta)
    y = math.sqrt(max(1.0 - x * x, 0.0))
    e = np.eye(GENERAL_ANCILLA_DIM, dtype=np.complex128)
    return AncillaRealization({
        "A": e[0], "B": e[1], "C": e[2],
        "B~": x * e[0] + y * e[3],
        "A~": x * e[1] + y * e[4],
        "C~": e[5],
    })


def build_general_cloner(a: float, c: float, seed: int = DEFAULT_SEED,
                         restarts: int = SEARCH_RESTARTS,
                         iterations: int = SEARCH_ITERATIONS) -> tuple[ClonerSpec, CloneIsometry]:
    """
    Build the most general universal 1->2 cloner for coefficients a and c.

    b is fixed by a^2 + 2b^2 + c^2 = 1. The ancilla states |A>, |B>, |C> are
    the first three basis vectors of a six-dimensional space; |A~>, |B~>,
    |C~> are searched for as real unit vectors by random-restart least
    squares on the constraint residuals (each iterate is projected onto the
    unit sphere). Restart k draws its start from the stream seeded with
    (seed, k); the lowest restart index reaching CONSTRAINT_TOL wins.

    Args:
        a: Coefficient of the unflipped component, a >= c
        c: Coefficient of the doubly flipped component, c >= 0
        seed: Base seed of the restart streams
        restarts: Restart budget
        iterations: Function-evaluation budget per restart

    Returns:
        (ClonerSpec, CloneIsometry) with eta = a^2 - c^2

    Raises:
        DomainError: a, c violate a >= c >= 0 or a^2 + c^2 <= 1
        InfeasibleClonerError: no restart met the acceptance residual
    """
    if not (a >= c >= 0.0 and a * a + c * c <= 1.0 + ALGEBRAIC_TOL):
        raise DomainError(f"need a >= c >= 0 and a^2 + c^2 <= 1, got a={a!r}, c={c!r}")
    b = math.sqrt(max((1.0 - a * a - c * c) / 2.0, 0.0))
    eta = a * a - c * c

    if c == 0.0:
        if not 0.0 < eta <= OPTIMAL_ETA + ALGEBRAIC_TOL:
            raise InfeasibleClonerError(
                f"no realization for c = 0 with a^2 = {eta!r} outside (0, 2/3]", restarts=0
            )
        spec = _general_spec(a, b, c, _embedded_simple_realization(eta))
        iso = CloneIsometry(_two_copy_isometry(a, b, c, spec.realization),
                            num_copies=2, ancilla_dim=GENERAL_ANCILLA_DIM)
        return spec, _confirm_reduction_factor(spec, iso)

    best = math.inf
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        start = rng.normal(size=3 * GENERAL_ANCILLA_DIM)
        fit = least_squares(
            _search_residuals, start, args=(a, b, c), method="trf",
            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=iterations,
        )
        realization = _search_realization(a, b, c, fit.x)
        spec = _general_spec(a, b, c, realization)
        matrix = _two_copy_isometry(a, b, c, realization)
        worst = _search_max_residual(spec, matrix)
        logger.debug("general cloner restart %d: max residual %.3e", restart, worst)
        best = min(best, worst)
        if worst <= CONSTRAINT_TOL:
            iso = CloneIsometry(matrix, num_copies=2, ancilla_dim=GENERAL_ANCILLA_DIM)
            try:
                _confirm_reduction_factor(spec, iso)
            except NotIsotropicError as e:
                logger.debug("general cloner restart %d rejected: %s", restart, e)
                continue
            logger.info("general cloner (a=%.6g, c=%.6g) found at restart %d, residual %.2e",
                        a, c, restart, worst)
            return spec, iso

    raise InfeasibleClonerError(
        f"no realization for a={a!r}, c={c!r} after {restarts} restarts (best residual {best:.3e})",
        best_residual=best,
        restarts=restarts,
    )


def _confirm_reduction_factor(spec: ClonerSpec, iso: CloneIsometry) -> CloneIsometry:
    measured = measured_reduction_factor(iso)
    if abs(measured - spec.eta) > ISOTROPY_TOL:
        raise NotIsotropicError(
            f"declared eta {spec.eta!r} but the cloner shrinks Bloch vectors by {measured!r}"
        )
    return iso


def symmetric_state(zeros: int, ones: int) -> StateVector:
    """Normalized permutation-symmetric state of zeros + ones qubits with that many 0s and 1s."""
    n = zeros + ones
    state = np.zeros(2 ** n, dtype=np.complex128)
    for positions in combinations(range(n), ones):
        index = sum(1 << (n - 1 - p) for p in positions)
        state[index] = 1.0
    return state / np.linalg.norm(state)


def build_gisin_massar_3() -> tuple[ClonerSpec, CloneIsometry]:
    """
    Build the optimal universal 1->3 cloner.

        U|0> = sum_i a_i |A_i>     |3-i zeros, i ones>
        U|1> = sum_i a_i |A_{2-i}> |i zeros, 3-i ones>

    with a_i = sqrt((3 - i) / 6) and orthonormal ancilla states A_0, A_1, A_2.
    """
    coefficients = tuple(math.sqrt((3 - i) / 6.0) for i in range(3))
    ancilla = np.eye(3, dtype=np.complex128)
    image_0 = sum(coefficients[i] * np.kron(symmetric_state(3 - i, i), ancilla[i])
                  for i in range(3))
    image_1 = sum(coefficients[i] * np.kron(symmetric_state(i, 3 - i), ancilla[2 - i])
                  for i in range(3))
    spec = ClonerSpec(
        kind=ClonerKind.GISIN_MASSAR_13,
        coeff_a=coefficients[0],
        coeff_b=coefficients[1],
        coeff_c=coefficients[2],
        eta=5.0 / 9.0,
        ancilla_dim=3,
    )
    iso = CloneIsometry(np.column_stack([image_0, image_1]), num_copies=3, ancilla_dim=3)
    return spec, iso


def clone_reduced_states(iso: CloneIsometry, psi) -> list[DensityOperator]:
    """Reduced single-qubit state of every clone for input psi."""
    output = pure_density(iso.apply(psi), iso.output_shape)
    return [output.reduce([k]) for k in range(iso.num_copies)]


def _probe_states(rng: np.random.Generator) -> list[StateVector]:
    s = 1.0 / math.sqrt(2.0)
    axes = [
        np.array([1, 0]), np.array([0, 1]),
        np.array([s, s]), np.array([s, -s]),
        np.array([s, 1j * s]), np.array([s, -1j * s]),
    ]
    return [np.asarray(v, dtype=np.complex128) for v in axes] + [
        random_pure_qubit(rng) for _ in range(RANDOM_PROBE_STATES)
    ]


def measured_reduction_factor(iso: CloneIsometry, seed: int = DEFAULT_SEED) -> float:
    """
    Measure the common Bloch-vector shrink factor of every clone.

    The cloner is applied to the six axis states and RANDOM_PROBE_STATES
    random pure states; each clone's Bloch vector must equal eta times the
    input's.

    Raises:
        NotIsotropicError: the shrink differs across inputs or clones by more
            than ISOTROPY_TOL, or the clone is not parallel to the input
    """
    rng = np.random.default_rng(seed)
    reference = None
    estimates = []
    for psi in _probe_states(rng):
        source = bloch_vector(pure_density(psi)).as_array()
        for clone in clone_reduced_states(iso, psi):
            image = bloch_vector(clone).as_array()
            estimate = float(image @ source)
            if reference is None:
                reference = estimate
            if np.linalg.norm(image - reference * source) > ISOTROPY_TOL:
                raise NotIsotropicError(
                    f"clone Bloch vector {image} is not {reference:.12f} x {source}"
                )
            estimates.append(estimate)
    return float(np.mean(estimates))
