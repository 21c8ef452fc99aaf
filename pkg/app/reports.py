"""
Report Builders

Each function runs one analysis and wraps the result in a ReportEnvelope.
The CLI and the HTTP routes both go through these builders, so the two
surfaces emit the same records.
"""

from __future__ import annotations

import numpy as np

from config.settings import DEFAULT_SEED, MAX_SCALING_COPIES, THRESHOLD_STEP
from analyzers.broadcast_scan import (
    complementarity_violations,
    disagreement_rows,
    eta_threshold_scan,
    sweep,
)
from analyzers.separability import (
    AlphaRange,
    inseparable_alpha_range,
    local_broadcast_max_copies,
    local_separable_alpha_range,
    max_entangled_copies,
    nonlocal_cloning_range,
    nonlocal_scaling,
    ppt_verdict,
)
from analyzers.verification import VerificationReport, cloner_properties
from app.utils import ReportEnvelope
from simulators.broadcast import closed_form_nonlocal_3, run_broadcast
from simulators.cloners import build_general_cloner, build_gisin_massar_3, build_simple_cloner
from simulators.errors import DomainError
from simulators.states import EntangledInput, fit_scaled_form


def _envelope(command: str, parameters: dict, rows: list[dict], timestamp: str | None = None,
              summary: dict | None = None) -> ReportEnvelope:
    envelope = ReportEnvelope(command=command, parameters=parameters, rows=rows, summary=summary or {})
    if timestamp is not None:
        envelope.timestamp = timestamp
    return envelope


def _range_row(name: str, alpha_range: AlphaRange) -> dict:
    return {
        "range": name,
        "kind": alpha_range.kind.value,
        "lo": alpha_range.lo,
        "hi": alpha_range.hi,
        "empty": alpha_range.is_empty,
        "point": alpha_range.is_point,
        "note": alpha_range.note,
    }


def range_report(eta: float, timestamp: str | None = None) -> ReportEnvelope:
    rows = [
        _range_row("nonlocal_inseparable", inseparable_alpha_range(eta)),
        _range_row("local_separable", local_separable_alpha_range(eta)),
    ]
    return _envelope("range", {"eta": eta}, rows, timestamp)


def nonlocal_report(max_m: int, timestamp: str | None = None) -> ReportEnvelope:
    if not 1 <= max_m <= MAX_SCALING_COPIES:
        raise DomainError(f"max_m must be in [1, {MAX_SCALING_COPIES}], got {max_m!r}")
    rows = []
    for m in range(1, max_m + 1):
        scaling = nonlocal_scaling(m)
        rows.append({"m": scaling.m, "s_nl": scaling.s_nl, "verdict": scaling.verdict.value})
    cloning = nonlocal_cloning_range()
    summary = {
        "max_entangled_copies": max_entangled_copies(),
        "local_max_copies": local_broadcast_max_copies(),
        "nonlocal_cloning_range": [cloning.lo, cloning.hi],
    }
    return _envelope("nonlocal", {"max_m": max_m}, rows, timestamp, summary)


def clone3_report(alpha_sq: float, timestamp: str | None = None) -> ReportEnvelope:
    source = EntangledInput(alpha_sq)
    _, iso = build_gisin_massar_3()
    result = run_broadcast(source, iso)
    pair = result.nonlocal_pairs[0]
    report = ppt_verdict(pair)
    fitted = fit_scaled_form(pair, source.state_vector())
    deviation = max(
        float(np.max(np.abs(p.matrix - closed_form_nonlocal_3(source).matrix)))
        for p in result.nonlocal_pairs
    )
    row = {
        "alpha_sq": alpha_sq,
        "verdict": report.verdict.value,
        "min_pt_eigenvalue": report.min_eigenvalue,
        "s": fitted.s,
        "fit_residual": fitted.residual,
        "coherence": float(pair.matrix[0, 3].real),
        "closed_form_deviation": deviation,
        "matrix_real": pair.matrix.real.tolist(),
        "matrix_imag": pair.matrix.imag.tolist(),
    }
    summary = {
        "nonlocal_pairs": ["-".join(labels) for labels in result.nonlocal_labels],
        "local_pairs": ["-".join(labels) for labels in result.local_labels],
    }
    return _envelope("clone3", {"alpha_sq": alpha_sq}, [row], timestamp, summary)


def threshold_report(step: float = THRESHOLD_STEP, timestamp: str | None = None) -> ReportEnvelope:
    scan = eta_threshold_scan(step)
    row = {
        "eta_empty": scan.eta_empty,
        "eta_last_entangled": scan.eta_last_entangled,
        "fidelity": scan.fidelity,
        "eta_bound": scan.eta_bound,
        "fidelity_bound": scan.fidelity_bound,
        "eta_error": scan.eta_error,
        "fidelity_error": scan.fidelity_error,
        "steps": scan.steps,
    }
    return _envelope("threshold", {"step": step}, [row], timestamp)


def sweep_report(eta_grid, alpha_grid, workers: int = 1,
                 timestamp: str | None = None) -> tuple[ReportEnvelope, list]:
    rows = sweep(eta_grid, alpha_grid, workers=workers)
    summary = {
        "points": len(rows),
        "disagreements": len(disagreement_rows(rows)),
        "complementarity_violations": len(complementarity_violations(rows)),
    }
    parameters = {"eta_grid": list(eta_grid), "alpha_grid": list(alpha_grid)}
    envelope = _envelope("sweep", parameters, [row.as_dict() for row in rows], timestamp, summary)
    return envelope, rows


def cloner_report(eta: float | None = None, a: float | None = None, c: float | None = None,
                  seed: int = DEFAULT_SEED, timestamp: str | None = None) -> ReportEnvelope:
    """Build a simple cloner (eta) or a general one (a, c) and measure its properties."""
    if eta is not None and (a is not None or c is not None):
        raise DomainError("give either eta or a and c, not both")
    if eta is not None:
        spec, iso = build_simple_cloner(eta)
        parameters = {"eta": eta}
    elif a is not None and c is not None:
        spec, iso = build_general_cloner(a, c, seed=seed)
        parameters = {"a": a, "c": c, "seed": seed}
    else:
        raise DomainError("a cloner needs eta, or both a and c")

    props = cloner_properties(spec, iso, seed)
    row = {
        "kind": spec.kind.value,
        "a": spec.coeff_a,
        "b": spec.coeff_b,
        "c": spec.coeff_c,
        "eta": spec.eta,
        "ancilla_dim": spec.ancilla_dim,
        "measured_eta": props.measured_eta,
        "fidelity": props.fidelity,
        "isometry_defect": props.isometry_defect,
        "symmetry_defect": props.symmetry_defect,
        "constraints_passed": props.constraints.passed if props.constraints else None,
        "max_residual": props.constraints.max_residual if props.constraints else None,
    }
    summary = {
        "residuals": props.constraints.residuals if props.constraints else {},
        "overlaps": spec.overlaps,
        "passed": props.passed,
    }
    return _envelope("cloner", parameters, [row], timestamp, summary)


def verification_envelope(report: VerificationReport, seed: int,
                          timestamp: str | None = None) -> ReportEnvelope:
    rows = [
        {"name": check.name, "status": check.status.value, "detail": check.detail}
        for check in report.checks
    ]
    summary = {"passed": report.passed, "failed": [check.name for check in report.failures]}
    return _envelope("verify", {"seed": seed}, rows, timestamp, summary)

