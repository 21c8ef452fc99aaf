"""
Broadcast Parameter Scans

Numerical searches over the broadcasting pipeline: bisection for the alpha^2
interval on which the nonlocal pair is entangled, the (eta, alpha^2) grid
sweep cross-checked against the analytic ranges and closed forms, and the
downward eta scan that locates the broadcasting threshold.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from config.settings import (
    ALGEBRAIC_TOL,
    BISECTION_TOL,
    DEFAULT_ALPHA_GRID,
    DEFAULT_ETA_GRID,
    ETA_LOWER_BOUND,
    MIN_THRESHOLD_STEP,
    OPTIMAL_ETA,
    PPT_TOLERANCE,
    THRESHOLD_STEP,
)
from analyzers.separability import (
    AlphaRange,
    PptReport,
    RangeKind,
    Verdict,
    fidelity_threshold,
    inseparable_alpha_range,
    local_separable_alpha_range,
    ppt_verdict,
)
from simulators.broadcast import closed_form_local, closed_form_nonlocal, run_broadcast
from simulators.cloners import CloneIsometry, build_simple_cloner
from simulators.errors import BroadcastError, DomainError
from simulators.states import DensityOperator, EntangledInput

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "eta",
    "alpha_sq",
    "nonlocal_verdict",
    "local_verdict",
    "min_pt_eigenvalue",
    "analytic_nonlocal_inseparable",
    "analytic_local_separable",
)


def _nonlocal_report(cloner: CloneIsometry, alpha_sq: float,
                     ppt_tolerance: float) -> PptReport:
    result = run_broadcast(EntangledInput(alpha_sq), cloner)
    return ppt_verdict(result.nonlocal_pairs[0], ppt_tolerance)


def _midpoint_probe(cloner: CloneIsometry, ppt_tolerance: float = PPT_TOLERANCE) -> PptReport:
    """PPT report of the nonlocal pair for the maximally entangled input."""
    return _nonlocal_report(cloner, 0.5, ppt_tolerance)


def _require_two_copies(cloner: CloneIsometry) -> None:
    if cloner.num_copies != 2:
        raise DomainError(f"numeric alpha^2 search needs a 1->2 cloner, got 1->{cloner.num_copies}")


def _bisect_flip(cloner: CloneIsometry, separable_end: float, entangled_end: float,
                 tolerance: float, ppt_tolerance: float) -> float:
    """Midpoint of the final bracket around the separable/entangled flip."""
    outer, inner = separable_end, entangled_end
    steps = 0
    while abs(inner - outer) > tolerance:
        mid = (outer + inner) / 2.0
        if _nonlocal_report(cloner, mid, ppt_tolerance).entangled:
            inner = mid
        else:
            outer = mid
        steps += 1
    logger.debug("bisection bracket [%.10f, %.10f] after %d steps",
                 min(outer, inner), max(outer, inner), steps)
    return (outer + inner) / 2.0


def numeric_alpha_range(cloner: CloneIsometry, tolerance: float = BISECTION_TOL,
                        ppt_tolerance: float = PPT_TOLERANCE) -> AlphaRange:
    """
    Bisect for the alpha^2 interval on which the broadcast nonlocal pair is entangled.

    The maximally entangled input alpha^2 = 1/2 is probed first. When it is
    separable the interval is empty, unless its lowest partial-transpose
    eigenvalue is within ppt_tolerance of zero, which yields the point {1/2}.
    Otherwise each half [0, 1/2] and [1/2, 1] is bisected for the verdict
    flip down to a bracket of width tolerance, and three interior points of
    the result are re-checked.

    Args:
        cloner: A 1->2 clone isometry applied at both sites
        tolerance: Final bracket width on each endpoint
        ppt_tolerance: Tolerance of the PPT verdict

    Returns:
        AlphaRange of kind Numeric; empty ranges carry a diagnostic note
    """
    _require_two_copies(cloner)
    center = _midpoint_probe(cloner, ppt_tolerance)
    if not center.entangled:
        if abs(center.min_eigenvalue) <= ppt_tolerance:
            return AlphaRange(lo=0.5, hi=0.5, kind=RangeKind.NUMERIC,
                              note="entangled only at the boundary alpha^2 = 1/2")
        return AlphaRange.empty(
            RangeKind.NUMERIC,
            note=f"alpha^2 = 1/2 is separable (min eigenvalue {center.min_eigenvalue:.3e})",
        )

    for end in (0.0, 1.0):
        report = _nonlocal_report(cloner, end, ppt_tolerance)
        if report.entangled:
            return AlphaRange.empty(
                RangeKind.NUMERIC,
                note=f"cannot bracket: alpha^2 = {end} is entangled (min eigenvalue {report.min_eigenvalue:.3e})",
            )

    lo = _bisect_flip(cloner, 0.0, 0.5, tolerance, ppt_tolerance)
    hi = _bisect_flip(cloner, 1.0, 0.5, tolerance, ppt_tolerance)

    for fraction in (0.25, 0.5, 0.75):
        probe = lo + fraction * (hi - lo)
        report = _nonlocal_report(cloner, probe, ppt_tolerance)
        if report.min_eigenvalue > ppt_tolerance:
            logger.warning("post-check failed at alpha^2=%.10f (min eigenvalue %.3e)",
                           probe, report.min_eigenvalue)
            return AlphaRange.empty(
                RangeKind.NUMERIC,
                note=f"post-check failed: alpha^2 = {probe!r} inside the bracket is separable",
            )
    return AlphaRange(lo=lo, hi=hi, kind=RangeKind.NUMERIC)


@dataclass(frozen=True)
class SweepRow:
    """One (eta, alpha^2) grid point of the broadcast sweep."""

    eta: float
    alpha_sq: float
    nonlocal_verdict: str | None
    local_verdict: str | None
    min_pt_eigenvalue: float | None
    analytic_nonlocal_inseparable: bool | None
    analytic_local_separable: bool | None
    local_min_pt_eigenvalue: float | None = None
    closed_form_deviation: float | None = None
    disagreement: bool = False
    error: str | None = None

    def csv_record(self) -> list:
        return [getattr(self, column) for column in CSV_COLUMNS]

    def as_dict(self) -> dict:
        return asdict(self)


def _deviation(pairs: list[DensityOperator], reference: DensityOperator) -> float:
    return max(float(np.max(np.abs(pair.matrix - reference.matrix))) for pair in pairs)


def _verdicts_disagree(report: PptReport, expected: bool, ppt_tolerance: float) -> bool:
    """True when the numeric verdict contradicts the analytic one away from the boundary."""
    return report.entangled != expected and abs(report.min_eigenvalue) > ppt_tolerance


def _sweep_point(eta: float, alpha_sq: float, cloner: CloneIsometry,
                 nonlocal_range: AlphaRange, local_range: AlphaRange,
                 ppt_tolerance: float) -> SweepRow:
    source = EntangledInput(alpha_sq)
    result = run_broadcast(source, cloner)
    nonlocal_report = ppt_verdict(result.nonlocal_pairs[0], ppt_tolerance)
    local_report = ppt_verdict(result.local_pairs[0], ppt_tolerance)

    deviation = max(
        _deviation(result.nonlocal_pairs, closed_form_nonlocal(source, eta)),
        _deviation(result.local_pairs, closed_form_local(source, eta)),
    )
    nonlocal_expected = nonlocal_range.strictly_contains(alpha_sq)
    local_expected = local_range.contains(alpha_sq)
    disagreement = (
        deviation > ALGEBRAIC_TOL
        or _verdicts_disagree(nonlocal_report, nonlocal_expected, ppt_tolerance)
        or _verdicts_disagree(local_report, not local_expected, ppt_tolerance)
    )
    return SweepRow(
        eta=eta,
        alpha_sq=alpha_sq,
        nonlocal_verdict=nonlocal_report.verdict.value,
        local_verdict=local_report.verdict.value,
        min_pt_eigenvalue=nonlocal_report.min_eigenvalue,
        analytic_nonlocal_inseparable=nonlocal_expected,
        analytic_local_separable=local_expected,
        local_min_pt_eigenvalue=local_report.min_eigenvalue,
        closed_form_deviation=deviation,
        disagreement=disagreement,
    )


def _failed_row(eta: float, alpha_sq: float, error: Exception) -> SweepRow:
    return SweepRow(
        eta=eta,
        alpha_sq=alpha_sq,
        nonlocal_verdict=None,
        local_verdict=None,
        min_pt_eigenvalue=None,
        analytic_nonlocal_inseparable=None,
        analytic_local_separable=None,
        disagreement=True,
        error=f"{type(error).__name__}: {error}",
    )


def _sweep_eta(eta: float, alpha_grid: tuple[float, ...], ppt_tolerance: float) -> list[SweepRow]:
    try:
        _, cloner = build_simple_cloner(eta)
        nonlocal_range = inseparable_alpha_range(eta)
        local_range = local_separable_alpha_range(eta)
    except BroadcastError as e:
        logger.warning("sweep: eta=%r cannot be evaluated: %s", eta, e)
        return [_failed_row(eta, alpha_sq, e) for alpha_sq in alpha_grid]

    rows = []
    for alpha_sq in alpha_grid:
        try:
            rows.append(_sweep_point(eta, alpha_sq, cloner, nonlocal_range, local_range, ppt_tolerance))
        except BroadcastError as e:
            logger.warning("sweep: point (eta=%r, alpha^2=%r) failed: %s", eta, alpha_sq, e)
            rows.append(_failed_row(eta, alpha_sq, e))
    logger.info("sweep: eta=%.7g done (%d points)", eta, len(rows))
    return rows


def sweep(eta_grid=DEFAULT_ETA_GRID, alpha_grid=DEFAULT_ALPHA_GRID, workers: int = 1,
          ppt_tolerance: float = PPT_TOLERANCE) -> list[SweepRow]:
    """
    Run the broadcasting pipeline over an (eta, alpha^2) grid.

    Each point compares the pipeline's local and nonlocal pairs with their
    closed forms and the PPT verdicts with the analytic ranges. Failed
    points are recorded in their row and flagged as disagreements.

    Args:
        eta_grid: Reduction factors of the simple cloner
        alpha_grid: Input weights alpha^2
        workers: Worker processes; rows keep (eta index, alpha index) order
        ppt_tolerance: Tolerance of the PPT verdicts

    Returns:
        List of SweepRow, one per grid point
    """
    etas = [float(eta) for eta in eta_grid]
    alphas = tuple(float(alpha_sq) for alpha_sq in alpha_grid)
    logger.info("sweep: %d x %d grid, %d worker(s)", len(etas), len(alphas), workers)

    if workers > 1 and len(etas) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_sweep_eta, etas, [alphas] * len(etas),
                                   [ppt_tolerance] * len(etas)))
    else:
        blocks = [_sweep_eta(eta, alphas, ppt_tolerance) for eta in etas]
    return [row for block in blocks for row in block]


def disagreement_rows(rows: list[SweepRow]) -> list[SweepRow]:
    return [row for row in rows if row.disagreement]


def complementarity_violations(rows: list[SweepRow]) -> list[SweepRow]:
    """Rows whose nonlocal pair is entangled while the local pair is not separable."""
    return [
        row for row in rows
        if row.nonlocal_verdict == Verdict.ENTANGLED.value
        and row.local_verdict != Verdict.SEPARABLE.value
    ]


@dataclass(frozen=True)
class ThresholdScan:
    step: float
    eta_empty: float
    eta_last_entangled: float | None
    fidelity: float
    eta_bound: float
    fidelity_bound: float
    steps: int

    @property
    def eta_error(self) -> float:
        return abs(self.eta_empty - self.eta_bound)

    @property
    def fidelity_error(self) -> float:
        return abs(self.fidelity - self.fidelity_bound)


def eta_threshold_scan(step: float = THRESHOLD_STEP,
                       ppt_tolerance: float = PPT_TOLERANCE) -> ThresholdScan:
    """
    Walk eta down from 2/3 and find the largest eta with an empty entangled interval.

    The nonlocal interval, when not empty, always contains alpha^2 = 1/2, so
    each eta is decided by the midpoint probe of the pipeline.
    """
    if not MIN_THRESHOLD_STEP <= step < OPTIMAL_ETA:
        raise DomainError(f"threshold step must be in [{MIN_THRESHOLD_STEP:g}, 2/3), got {step!r}")

    last_entangled = None
    for k in range(int(math.floor(OPTIMAL_ETA / step)) + 1):
        eta = OPTIMAL_ETA - k * step
        if eta <= 0.0:
            break
        _, cloner = build_simple_cloner(eta)
        report = _midpoint_probe(cloner, ppt_tolerance)
        empty = not report.entangled and abs(report.min_eigenvalue) > ppt_tolerance
        logger.debug("threshold scan eta=%.9f min eigenvalue %.3e", eta, report.min_eigenvalue)
        if empty:
            scan = ThresholdScan(
                step=step,
                eta_empty=eta,
                eta_last_entangled=last_entangled,
                fidelity=(1.0 + eta) / 2.0,
                eta_bound=ETA_LOWER_BOUND,
                fidelity_bound=fidelity_threshold(),
                steps=k + 1,
            )
            logger.info("threshold scan: interval empty at eta=%.9f after %d steps", eta, k + 1)
            return scan
        last_entangled = eta
    raise DomainError(f"no empty interval found scanning eta down from 2/3 in steps of {step!r}")
