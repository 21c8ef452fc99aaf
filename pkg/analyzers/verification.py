"""
Verification Suite

Named end-to-end checks of the toolkit: the eigen-solver against an
independent characteristic-polynomial oracle, cloner properties, the
pipeline against its closed forms, and the analytic thresholds. Each check
ends as pass, fail or inconclusive; the suite passes when nothing fails.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable

import numpy as np

from config.settings import (
    ALGEBRAIC_TOL,
    BISECTION_TOL,
    DEFAULT_ALPHA_GRID,
    DEFAULT_ETA_GRID,
    DEFAULT_SEED,
    EIGEN_ORACLE_SAMPLES,
    EIGEN_ORACLE_TOL,
    FORM_INVARIANCE_TOL,
    GENERAL_CLONER_SAMPLE,
    ISOTROPY_TOL,
    OPTIMAL_ETA,
    PROPERTY_ETAS,
    RANDOM_PROBE_STATES,
    SYMMETRY_TOL,
)
from analyzers.broadcast_scan import (
    SweepRow,
    complementarity_violations,
    disagreement_rows,
    eta_threshold_scan,
    numeric_alpha_range,
    sweep,
)
from analyzers.separability import (
    Verdict,
    inseparable_alpha_range,
    max_entangled_copies,
    nonlocal_cloning_range,
    nonlocal_scaling,
    ppt_verdict,
)
from simulators import linalg
from simulators.broadcast import closed_form_nonlocal, closed_form_nonlocal_3, run_broadcast
from simulators.cloners import (
    ClonerKind,
    ClonerSpec,
    CloneIsometry,
    ConstraintReport,
    build_general_cloner,
    build_gisin_massar_3,
    build_simple_cloner,
    check_general_constraints,
    check_simple_constraints,
    clone_reduced_states,
    isometry_defect,
    measured_reduction_factor,
)
from simulators.errors import DomainError, InfeasibleClonerError
from simulators.linalg import FactorShape
from simulators.states import (
    EntangledInput,
    fidelity_pure,
    fit_scaled_form,
    pure_density,
    random_pure_qubit,
    werner_state,
)

logger = logging.getLogger(__name__)

BELL = np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2.0)
PSI_PLUS = np.array([0, 1, 1, 0], dtype=np.complex128) / math.sqrt(2.0)


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    detail: str
    seconds: float = 0.0


@dataclass(frozen=True)
class VerificationReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if check.status is CheckStatus.FAIL]

    def count(self, status: CheckStatus) -> int:
        return sum(1 for check in self.checks if check.status is status)


@dataclass(frozen=True)
class ClonerProperties:
    """Measured quality of a built cloner on random pure inputs."""

    isometry_defect: float
    constraints: ConstraintReport | None
    declared_eta: float
    measured_eta: float
    symmetry_defect: float
    fidelity: float
    fidelity_defect: float

    @property
    def passed(self) -> bool:
        return (
            self.isometry_defect <= ALGEBRAIC_TOL
            and (self.constraints is None or self.constraints.passed)
            and abs(self.measured_eta - self.declared_eta) <= ALGEBRAIC_TOL
            and self.symmetry_defect <= SYMMETRY_TOL
            and self.fidelity_defect <= ISOTROPY_TOL
        )


def cloner_properties(spec: ClonerSpec, iso: CloneIsometry, seed: int = DEFAULT_SEED) -> ClonerProperties:
    """
    Measure isometry, constraints, reduction factor, clone symmetry and fidelity.

    Raises:
        NotIsotropicError: the clones do not shrink every Bloch vector alike
    """
    if spec.kind is ClonerKind.SIMPLE_12:
        constraints = check_simple_constraints(spec, spec.realization)
    elif spec.kind is ClonerKind.GENERAL_12:
        constraints = check_general_constraints(spec, spec.realization)
    else:
        constraints = None

    rng = np.random.default_rng(seed)
    expected_fidelity = (1.0 + spec.eta) / 2.0
    symmetry, fidelity_defect, fidelities = 0.0, 0.0, []
    for _ in range(RANDOM_PROBE_STATES):
        psi = random_pure_qubit(rng)
        clones = clone_reduced_states(iso, psi)
        first = clones[0].matrix
        symmetry = max(symmetry, *(float(np.max(np.abs(c.matrix - first))) for c in clones))
        for clone in clones:
            f = fidelity_pure(psi, clone)
            fidelities.append(f)
            fidelity_defect = max(fidelity_defect, abs(f - expected_fidelity))

    return ClonerProperties(
        isometry_defect=isometry_defect(iso),
        constraints=constraints,
        declared_eta=spec.eta,
        measured_eta=measured_reduction_factor(iso, seed),
        symmetry_defect=symmetry,
        fidelity=float(np.mean(fidelities)),
        fidelity_defect=fidelity_defect,
    )


def characteristic_roots(h) -> np.ndarray:
    """Eigenvalues as sorted real parts of the Faddeev-LeVerrier characteristic polynomial roots."""
    a = linalg.as_matrix(h)
    n = a.shape[0]
    identity = np.eye(n, dtype=np.complex128)
    m = np.zeros_like(a)
    c = 1.0 + 0.0j
    coefficients = [c]
    for k in range(1, n + 1):
        m = a @ m + c * identity
        c = -np.trace(a @ m) / k
        coefficients.append(c)
    return np.sort(np.roots(coefficients).real)


class VerificationContext:
    """Shared inputs of one verification run; the default sweep is computed once."""

    def __init__(self, seed: int = DEFAULT_SEED):
        self.seed = seed

    @cached_property
    def sweep_rows(self) -> list[SweepRow]:
        return sweep(DEFAULT_ETA_GRID, DEFAULT_ALPHA_GRID)


Outcome = tuple[CheckStatus, str]


def _verdict(ok: bool, detail: str) -> Outcome:
    return (CheckStatus.PASS if ok else CheckStatus.FAIL), detail


def check_eigen_oracle(ctx: VerificationContext) -> Outcome:
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    for _ in range(EIGEN_ORACLE_SAMPLES):
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = (x + x.conj().T) / 2.0
        worst = max(worst, float(np.max(np.abs(linalg.hermitian_eigenvalues(h) - characteristic_roots(h)))))
    return _verdict(worst <= EIGEN_ORACLE_TOL,
                    f"{EIGEN_ORACLE_SAMPLES} random 4x4 matrices, max deviation {worst:.3e}")


def check_bell_partial_transpose(ctx: VerificationContext) -> Outcome:
    bell = pure_density(BELL, FactorShape.qubits(2))
    spectrum = linalg.hermitian_eigenvalues(bell.partial_transpose(1))
    worst = float(np.max(np.abs(spectrum - np.array([-0.5, 0.5, 0.5, 0.5]))))
    return _verdict(worst <= ALGEBRAIC_TOL, f"spectrum {np.round(spectrum, 12).tolist()}")


def check_simple_cloner_properties(ctx: VerificationContext) -> Outcome:
    failing = []
    for eta in PROPERTY_ETAS:
        spec, iso = build_simple_cloner(eta)
        props = cloner_properties(spec, iso, ctx.seed)
        if not props.passed:
            failing.append(f"eta={eta:.7g} ({props})")
    etas = ", ".join(f"{eta:.7g}" for eta in PROPERTY_ETAS)
    return _verdict(not failing, "; ".join(failing) or f"eta in {{{etas}}}")


def check_gisin_massar_reduction(ctx: VerificationContext) -> Outcome:
    spec, iso = build_gisin_massar_3()
    measured = measured_reduction_factor(iso, ctx.seed)
    expected = tuple(math.sqrt((3 - i) / 6.0) for i in range(3))
    coefficients_ok = np.allclose((spec.coeff_a, spec.coeff_b, spec.coeff_c), expected, rtol=0, atol=1e-15)
    ok = coefficients_ok and isometry_defect(iso) <= ALGEBRAIC_TOL and abs(measured - 5.0 / 9.0) <= ALGEBRAIC_TOL
    return _verdict(ok, f"measured eta {measured!r}")


def check_optimal_range(ctx: VerificationContext) -> Outcome:
    _, iso = build_simple_cloner(OPTIMAL_ETA)
    numeric = numeric_alpha_range(iso)
    half = math.sqrt(39.0) / 16.0
    if numeric.is_empty:
        return CheckStatus.FAIL, f"numeric range is empty: {numeric.note}"
    error = max(abs(numeric.lo - (0.5 - half)), abs(numeric.hi - (0.5 + half)))
    return _verdict(error <= BISECTION_TOL,
                    f"[{numeric.lo:.9f}, {numeric.hi:.9f}], endpoint error {error:.2e}")


def check_eta_threshold(ctx: VerificationContext) -> Outcome:
    scan = eta_threshold_scan()
    ok = scan.eta_error <= scan.step and scan.fidelity_error <= 5e-4
    return _verdict(ok, f"empty at eta={scan.eta_empty:.6f} (F={scan.fidelity:.6f}), "
                        f"bound {scan.eta_bound:.7f} (F={scan.fidelity_bound:.7f})")


def check_sweep_equivalence(ctx: VerificationContext) -> Outcome:
    rows = ctx.sweep_rows
    bad = disagreement_rows(rows)
    if bad:
        first = bad[0]
        return CheckStatus.FAIL, (
            f"{len(bad)} of {len(rows)} points disagree, first at eta={first.eta:.7g}, "
            f"alpha^2={first.alpha_sq:.7g} (closed-form deviation {first.closed_form_deviation}, "
            f"error {first.error})"
        )
    worst = max(row.closed_form_deviation for row in rows)
    return CheckStatus.PASS, f"{len(rows)} points, max closed-form deviation {worst:.3e}"


def check_complementarity(ctx: VerificationContext) -> Outcome:
    rows = ctx.sweep_rows
    violations = complementarity_violations(rows)
    entangled = sum(1 for row in rows if row.nonlocal_verdict == Verdict.ENTANGLED.value)
    return _verdict(not violations,
                    f"{entangled} entangled nonlocal points, {len(violations)} with a non-separable local pair")


def check_clone3_broadcast(ctx: VerificationContext) -> Outcome:
    _, iso = build_gisin_massar_3()
    worst, entangled, fitted = 0.0, [], None
    for alpha_sq in DEFAULT_ALPHA_GRID:
        source = EntangledInput(alpha_sq)
        result = run_broadcast(source, iso)
        reference = closed_form_nonlocal_3(source).matrix
        worst = max(worst, *(float(np.max(np.abs(p.matrix - reference))) for p in result.nonlocal_pairs))
        if ppt_verdict(result.nonlocal_pairs[0]).verdict is not Verdict.SEPARABLE:
            entangled.append(alpha_sq)
        if alpha_sq == 0.5:
            fitted = fit_scaled_form(result.nonlocal_pairs[0], BELL)
    ok = (worst <= ALGEBRAIC_TOL and not entangled and fitted is not None
          and abs(fitted.s - 25.0 / 81.0) <= ALGEBRAIC_TOL)
    s = fitted.s if fitted else float("nan")
    return _verdict(ok, f"max deviation {worst:.3e}, entangled at {entangled or 'none'}, s(1/2) = {s!r}")


def check_nonlocal_scaling(ctx: VerificationContext) -> Outcome:
    exact = all(nonlocal_scaling(m).s_nl == (4 + m) / (5 * m) for m in range(1, 11))
    seventh = nonlocal_scaling(7).verdict is Verdict.SEPARABLE
    copies = max_entangled_copies()
    cloning = nonlocal_cloning_range()
    half = math.sqrt(2.0) / 3.0
    range_ok = abs(cloning.lo - (0.5 - half)) <= 1e-12 and abs(cloning.hi - (0.5 + half)) <= 1e-12
    local = inseparable_alpha_range(OPTIMAL_ETA)
    wider = cloning.lo < local.lo and local.hi < cloning.hi
    ok = exact and seventh and copies == 6 and range_ok and wider
    return _verdict(ok, f"max entangled copies {copies}, M=7 {nonlocal_scaling(7).verdict.value}, "
                        f"cloning range [{cloning.lo:.7f}, {cloning.hi:.7f}]")


def check_general_cloner_form(ctx: VerificationContext) -> Outcome:
    a, c = GENERAL_CLONER_SAMPLE
    try:
        spec, iso = build_general_cloner(a, c, seed=ctx.seed)
    except InfeasibleClonerError as e:
        return CheckStatus.INCONCLUSIVE, f"no realization for a={a}, c={c}: {e}"
    worst = 0.0
    for alpha_sq in (0.1, 0.3, 0.5, 0.8):
        source = EntangledInput(alpha_sq)
        reference = closed_form_nonlocal(source, spec.eta).matrix
        pairs = run_broadcast(source, iso, spec).nonlocal_pairs
        worst = max(worst, *(float(np.max(np.abs(p.matrix - reference))) for p in pairs))
    return _verdict(worst <= FORM_INVARIANCE_TOL,
                    f"a={a}, c={c}, eta={spec.eta:.7g}, max deviation {worst:.3e}")


def check_werner_threshold(ctx: VerificationContext) -> Outcome:
    def entangled(s: float) -> bool:
        return ppt_verdict(werner_state(s, PSI_PLUS)).entangled

    lo, hi = 0.0, 1.0
    if entangled(lo) or not entangled(hi):
        return CheckStatus.FAIL, "Werner family does not flip between s=0 and s=1"
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2.0
        if entangled(mid):
            hi = mid
        else:
            lo = mid
    flip = (lo + hi) / 2.0
    return _verdict(abs(flip - 1.0 / 3.0) <= BISECTION_TOL, f"verdict flips at s = {flip:.9f}")


CHECKS: dict[str, Callable[[VerificationContext], Outcome]] = {
    "eigen-oracle": check_eigen_oracle,
    "bell-partial-transpose": check_bell_partial_transpose,
    "simple-cloner-properties": check_simple_cloner_properties,
    "gisin-massar-reduction": check_gisin_massar_reduction,
    "optimal-range": check_optimal_range,
    "eta-threshold": check_eta_threshold,
    "sweep-equivalence": check_sweep_equivalence,
    "complementarity": check_complementarity,
    "clone3-broadcast": check_clone3_broadcast,
    "nonlocal-scaling": check_nonlocal_scaling,
    "general-cloner-form": check_general_cloner_form,
    "werner-threshold": check_werner_threshold,
}


def run_check(name: str, ctx: VerificationContext) -> CheckResult:
    started = time.perf_counter()
    try:
        status, detail = CHECKS[name](ctx)
    except Exception as e:
        logger.exception("check %s raised", name)
        status, detail = CheckStatus.FAIL, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - started
    logger.info("check %s: %s (%.2fs)", name, status.value, elapsed)
    return CheckResult(name=name, status=status, detail=detail, seconds=elapsed)


def run_verification(names=None, seed: int = DEFAULT_SEED) -> VerificationReport:
    """
    Run the named checks (all of them by default) in registry order.

    Raises:
        DomainError: an unknown check name was requested
    """
    selected = list(CHECKS) if not names else list(names)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise DomainError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECKS)}")
    ctx = VerificationContext(seed)
    return VerificationReport(checks=[run_check(name, ctx) for name in selected])
