"""Tests for analyzers.broadcast_scan and analyzers.verification."""

import math

import numpy as np
import pytest

import analyzers.broadcast_scan as broadcast_scan
from analyzers.broadcast_scan import (
    CSV_COLUMNS,
    complementarity_violations,
    disagreement_rows,
    eta_threshold_scan,
    numeric_alpha_range,
    sweep,
)
from analyzers.separability import RangeKind, Verdict
from analyzers.verification import (
    CHECKS,
    CheckStatus,
    characteristic_roots,
    cloner_properties,
    run_verification,
)
from simulators import linalg
from simulators.broadcast import closed_form_nonlocal
from simulators.cloners import build_simple_cloner
from simulators.errors import DomainError
from simulators.states import DensityOperator

ALPHA_GRID = tuple(k / 20 for k in range(21))


def test_numeric_range_optimal(optimal_cloner):
    _, iso = optimal_cloner
    r = numeric_alpha_range(iso, tolerance=1e-6)
    half = math.sqrt(39) / 16
    assert r.kind is RangeKind.NUMERIC
    assert abs(r.lo - (0.5 - half)) <= 1e-6
    assert abs(r.hi - (0.5 + half)) <= 1e-6


def test_numeric_range_at_threshold():
    _, iso = build_simple_cloner(1 / math.sqrt(3))
    r = numeric_alpha_range(iso)
    assert not r.is_empty
    assert r.width <= 1e-4 and r.lo <= 0.5 <= r.hi


def test_numeric_range_below_threshold():
    _, iso = build_simple_cloner(0.5)
    r = numeric_alpha_range(iso)
    assert r.is_empty
    assert "separable" in r.note


def test_numeric_range_needs_two_copies(gisin_massar):
    _, iso = gisin_massar
    with pytest.raises(DomainError):
        numeric_alpha_range(iso)


def test_sweep_rows_and_order():
    etas = (0.6, 2 / 3)
    rows = sweep(etas, ALPHA_GRID)
    assert len(rows) == len(etas) * len(ALPHA_GRID)
    assert [(row.eta, row.alpha_sq) for row in rows] == [(e, a) for e in etas for a in ALPHA_GRID]
    assert not disagreement_rows(rows)
    assert not complementarity_violations(rows)
    assert max(row.closed_form_deviation for row in rows) < 1e-10
    assert list(CSV_COLUMNS) == [
        "eta", "alpha_sq", "nonlocal_verdict", "local_verdict", "min_pt_eigenvalue",
        "analytic_nonlocal_inseparable", "analytic_local_separable",
    ]
    assert len(rows[0].csv_record()) == 7


def test_sweep_below_threshold_is_separable():
    rows = sweep((0.5,), ALPHA_GRID)
    assert all(row.nonlocal_verdict == Verdict.SEPARABLE.value for row in rows)
    assert not disagreement_rows(rows)


def test_sweep_records_failed_points():
    rows = sweep((0.7,), (0.5,))
    assert rows[0].error is not None and "DomainError" in rows[0].error
    assert rows[0].disagreement


def test_sweep_parallel_matches_serial():
    etas = (0.6, 0.62, 2 / 3)
    serial = sweep(etas, ALPHA_GRID[:5])
    parallel = sweep(etas, ALPHA_GRID[:5], workers=2)
    assert serial == parallel


def test_sweep_flags_wrong_closed_form(monkeypatch):
    def flipped(source, eta):
        rho = closed_form_nonlocal(source, eta)
        matrix = rho.matrix.copy()
        matrix[0, 3] = -matrix[0, 3]
        matrix[3, 0] = -matrix[3, 0]
        return DensityOperator(matrix, rho.shape)

    monkeypatch.setattr(broadcast_scan, "closed_form_nonlocal", flipped)
    rows = sweep((2 / 3,), (0.5,))
    assert rows[0].disagreement and rows[0].closed_form_deviation > 0.1


def test_threshold_scan():
    scan = eta_threshold_scan(1e-3)
    assert abs(scan.eta_empty - 0.576667) < 1e-6
    assert abs(scan.eta_last_entangled - 0.577667) < 1e-6
    assert scan.eta_error <= 1e-3
    assert scan.fidelity_error <= 5e-4
    for step in (0.0, 1e-6, float("nan"), 0.7):
        with pytest.raises(DomainError):
            eta_threshold_scan(step)


def test_characteristic_roots_oracle(rng):
    for _ in range(50):
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = (x + x.conj().T) / 2
        np.testing.assert_allclose(linalg.hermitian_eigenvalues(h), characteristic_roots(h), atol=1e-8)


def test_cloner_properties(optimal_cloner):
    props = cloner_properties(*optimal_cloner)
    assert props.passed
    assert abs(props.fidelity - 5 / 6) < 1e-9
    assert abs(props.measured_eta - 2 / 3) < 1e-10


@pytest.mark.parametrize("name", [
    "bell-partial-transpose",
    "simple-cloner-properties",
    "gisin-massar-reduction",
    "nonlocal-scaling",
    "werner-threshold",
])
def test_fast_checks_pass(name):
    report = run_verification([name])
    assert report.passed, report.checks[0].detail
    assert report.checks[0].status is CheckStatus.PASS


def test_unknown_check():
    with pytest.raises(DomainError):
        run_verification(["no-such-check"])


def test_failing_check_is_reported(monkeypatch):
    def broken(ctx):
        raise RuntimeError("boom")

    monkeypatch.setitem(CHECKS, "nonlocal-scaling", broken)
    report = run_verification(["nonlocal-scaling"])
    assert not report.passed
    assert report.failures[0].name == "nonlocal-scaling"
    assert "boom" in report.failures[0].detail
