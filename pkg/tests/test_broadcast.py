"""Tests for simulators.broadcast."""

import math

import numpy as np
import pytest

from analyzers.separability import Verdict, ppt_verdict
from simulators.broadcast import (
    closed_form_local,
    closed_form_nonlocal,
    closed_form_nonlocal_3,
    run_broadcast,
)
from simulators.cloners import (
    CloneIsometry,
    build_general_cloner,
    build_simple_cloner,
    check_general_constraints,
)
from simulators.errors import DimensionError, DomainError
from simulators.states import EntangledInput, fit_scaled_form


def test_optimal_broadcast_at_maximal_entanglement(optimal_cloner, bell_vector):
    spec, iso = optimal_cloner
    source = EntangledInput(0.5)
    result = run_broadcast(source, iso, spec)
    assert result.cloner is spec
    assert len(result.nonlocal_pairs) == 2 and len(result.local_pairs) == 2
    np.testing.assert_allclose(result.nonlocal_pairs[0].matrix,
                               closed_form_nonlocal(source, 2 / 3).matrix, atol=1e-10)
    fitted = fit_scaled_form(result.nonlocal_pairs[0], bell_vector)
    assert abs(fitted.s - 4 / 9) < 1e-10
    assert fitted.residual <= 1e-10


def test_pair_labels(optimal_cloner):
    _, iso = optimal_cloner
    result = run_broadcast(EntangledInput(0.3), iso)
    assert result.local_labels == [("a1", "b1"), ("a2", "b2")]
    assert result.nonlocal_labels == [("a1", "b2"), ("b1", "a2")]


def test_clone3_pair_labels(gisin_massar):
    _, iso = gisin_massar
    result = run_broadcast(EntangledInput(0.5), iso)
    assert result.nonlocal_labels == [
        ("a1", "b2"), ("a1", "c2"), ("b1", "a2"), ("b1", "c2"), ("c1", "a2"), ("c1", "b2"),
    ]
    assert all(left[0] != right[0] for left, right in result.nonlocal_labels)


def test_product_input_stays_separable(optimal_cloner, gisin_massar):
    for _, iso in (optimal_cloner, build_simple_cloner(0.6), gisin_massar):
        result = run_broadcast(EntangledInput(1.0), iso)
        for pair in result.nonlocal_pairs:
            assert ppt_verdict(pair).verdict is Verdict.SEPARABLE


def test_pipeline_matches_closed_forms():
    source = EntangledInput(0.3)
    _, iso = build_simple_cloner(0.6)
    result = run_broadcast(source, iso)
    for pair in result.nonlocal_pairs:
        np.testing.assert_allclose(pair.matrix, closed_form_nonlocal(source, 0.6).matrix, atol=1e-10)
    for pair in result.local_pairs:
        np.testing.assert_allclose(pair.matrix, closed_form_local(source, 0.6).matrix, atol=1e-10)
    assert result.nonlocal_spread() < 1e-10
    assert result.local_spread() < 1e-10


def test_pair_states_are_valid(optimal_cloner):
    _, iso = optimal_cloner
    for alpha_sq in (0.0, 0.2, 0.5, 0.9):
        result = run_broadcast(EntangledInput(alpha_sq), iso)
        for pair in result.local_pairs + result.nonlocal_pairs:
            assert abs(pair.trace() - 1.0) < 1e-10
            assert pair.min_eigenvalue >= -1e-10


def test_closed_form_local_values():
    rho = closed_form_local(EntangledInput(0.5), 2 / 3).matrix
    expected = np.array([
        [1 / 3, 0, 0, 0],
        [0, 1 / 6, 1 / 6, 0],
        [0, 1 / 6, 1 / 6, 0],
        [0, 0, 0, 1 / 3],
    ])
    np.testing.assert_allclose(rho, expected, atol=1e-15)
    for alpha_sq in (0.0, 0.37, 1.0):
        for eta in (0.1, 0.5, 2 / 3):
            assert abs(np.trace(closed_form_local(EntangledInput(alpha_sq), eta).matrix) - 1) < 1e-12


def test_closed_form_nonlocal_verdicts():
    assert ppt_verdict(closed_form_nonlocal(EntangledInput(0.5), 2 / 3)).verdict is Verdict.ENTANGLED
    assert ppt_verdict(closed_form_nonlocal(EntangledInput(0.05), 2 / 3)).verdict is Verdict.SEPARABLE
    with pytest.raises(DomainError):
        closed_form_nonlocal(EntangledInput(0.5), 0.7)


def test_closed_form_nonlocal_3_values(bell_vector):
    rho = closed_form_nonlocal_3(EntangledInput(1.0)).matrix
    np.testing.assert_allclose(np.diag(rho).real, [49 / 81, 14 / 81, 14 / 81, 4 / 81], atol=1e-15)
    assert rho[0, 3] == 0
    fitted = fit_scaled_form(closed_form_nonlocal_3(EntangledInput(0.5)), bell_vector)
    assert abs(fitted.s - 25 / 81) < 1e-12 and fitted.residual < 1e-12


def test_clone3_pipeline(gisin_massar):
    _, iso = gisin_massar
    for alpha_sq in np.linspace(0, 1, 11):
        source = EntangledInput(alpha_sq)
        result = run_broadcast(source, iso)
        assert len(result.nonlocal_pairs) == 6 and len(result.local_pairs) == 6
        for pair in result.nonlocal_pairs:
            np.testing.assert_allclose(pair.matrix, closed_form_nonlocal_3(source).matrix, atol=1e-10)
            assert ppt_verdict(pair).verdict is Verdict.SEPARABLE


def test_rejects_one_copy_map():
    iso = CloneIsometry(np.eye(4, 2), num_copies=1, ancilla_dim=2)
    with pytest.raises(DimensionError):
        run_broadcast(EntangledInput(0.5), iso)


def test_general_cloner_form_invariance():
    spec, iso = build_general_cloner(0.8, 0.1)
    assert check_general_constraints(spec, spec.realization).max_residual <= 1e-10
    for alpha_sq in (0.2, 0.5):
        source = EntangledInput(alpha_sq)
        for pair in run_broadcast(source, iso, spec).nonlocal_pairs:
            np.testing.assert_allclose(pair.matrix, closed_form_nonlocal(source, spec.eta).matrix, atol=1e-9)
    assert math.isclose(spec.eta, 0.63, abs_tol=1e-12)
