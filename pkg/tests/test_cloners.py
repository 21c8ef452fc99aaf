"""Tests for simulators.cloners."""

import math

import numpy as np
import pytest

from config.settings import GENERAL_CLONER_SAMPLE
from simulators.cloners import (
    ClonerKind,
    CloneIsometry,
    build_general_cloner,
    build_simple_cloner,
    check_general_constraints,
    check_simple_constraints,
    clone_reduced_states,
    isometry_defect,
    measured_reduction_factor,
    symmetric_state,
)
from simulators.errors import DimensionError, DomainError, InfeasibleClonerError, NotIsotropicError
from simulators.states import bloch_vector, fidelity_pure, pure_density, random_pure_qubit

ETA_GRID = (0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 2 / 3)


def test_optimal_simple_cloner(optimal_cloner):
    spec, iso = optimal_cloner
    assert spec.kind is ClonerKind.SIMPLE_12
    assert math.isclose(spec.coeff_a, math.sqrt(2 / 3), abs_tol=1e-15)
    assert math.isclose(spec.coeff_b, math.sqrt(1 / 6), abs_tol=1e-15)
    assert abs(spec.overlaps["<B~|A>"] - 1.0) < 1e-12
    assert isometry_defect(iso) < 1e-12


def test_simple_cloner_overlap_at_point_six():
    spec, _ = build_simple_cloner(0.6)
    assert abs(spec.overlaps["<B~|A>"] - math.sqrt(0.75)) < 1e-12
    assert check_simple_constraints(spec, spec.realization).passed


@pytest.mark.parametrize("eta", [0.0, 0.7, -0.1])
def test_simple_cloner_domain(eta):
    with pytest.raises(DomainError):
        build_simple_cloner(eta)


@pytest.mark.parametrize("eta", ETA_GRID)
def test_simple_constraints_pass_on_grid(eta):
    spec, iso = build_simple_cloner(eta)
    report = check_simple_constraints(spec, spec.realization)
    assert report.passed, report.residuals
    assert report.max_residual <= 1e-12
    assert isometry_defect(iso) <= 1e-10


def test_simple_constraints_detect_injected_overlap():
    spec, _ = build_simple_cloner(0.58)
    a, b = spec.realization.vectors["A"], spec.realization.vectors["B"]
    broken = spec.realization.replace(B=math.sqrt(1 - 0.01) * b + 0.1 * a)
    report = check_simple_constraints(spec, broken)
    assert not report.passed
    assert abs(report.residuals["<A|B>"] - 0.1) < 1e-12


def test_simple_constraints_reject_other_kinds(gisin_massar):
    spec, _ = gisin_massar
    with pytest.raises(DomainError):
        check_simple_constraints(spec, spec.realization)


@pytest.mark.parametrize("eta", [0.58, 0.6, 0.62, 2 / 3])
def test_measured_reduction_factor_and_fidelity(eta, rng):
    _, iso = build_simple_cloner(eta)
    assert abs(measured_reduction_factor(iso) - eta) < 1e-10
    for _ in range(20):
        psi = random_pure_qubit(rng)
        source = bloch_vector(pure_density(psi)).as_array()
        clones = clone_reduced_states(iso, psi)
        np.testing.assert_allclose(clones[0].matrix, clones[1].matrix, atol=1e-10)
        for clone in clones:
            np.testing.assert_allclose(bloch_vector(clone).as_array(), eta * source, atol=1e-9)
            assert abs(fidelity_pure(psi, clone) - (1 + eta) / 2) < 1e-9


def test_gisin_massar_cloner(gisin_massar, rng):
    spec, iso = gisin_massar
    np.testing.assert_allclose((spec.coeff_a, spec.coeff_b, spec.coeff_c),
                               (math.sqrt(1 / 2), math.sqrt(1 / 3), math.sqrt(1 / 6)), atol=1e-15)
    assert isometry_defect(iso) < 1e-10
    assert abs(measured_reduction_factor(iso) - 5 / 9) < 1e-10
    psi = random_pure_qubit(rng)
    clones = clone_reduced_states(iso, psi)
    assert len(clones) == 3
    for clone in clones:
        assert abs(fidelity_pure(psi, clone) - 7 / 9) < 1e-9


def test_symmetric_state():
    np.testing.assert_allclose(symmetric_state(2, 1),
                               np.array([0, 1, 1, 0, 1, 0, 0, 0]) / math.sqrt(3), atol=1e-15)
    np.testing.assert_allclose(symmetric_state(3, 0), np.eye(8)[0])


def test_clone_isometry_validation():
    with pytest.raises(DimensionError):
        CloneIsometry(np.zeros((8, 2)), num_copies=2, ancilla_dim=4)
    with pytest.raises(DomainError):
        CloneIsometry(np.ones((16, 2)), num_copies=2, ancilla_dim=4)


def test_reduction_factor_rejects_anisotropic_map():
    """The identity into |psi>|0>|anc> copies perfectly into clone 1 only."""
    matrix = np.zeros((16, 2), dtype=complex)
    matrix[0, 0] = 1.0   # |0> -> |0>|0>|e0>
    matrix[8, 1] = 1.0   # |1> -> |1>|0>|e0>
    with pytest.raises(NotIsotropicError):
        measured_reduction_factor(CloneIsometry(matrix, num_copies=2, ancilla_dim=4))


def test_general_cloner_reduces_to_simple():
    eta = 0.6
    spec, iso = build_general_cloner(math.sqrt(eta), 0.0)
    simple, _ = build_simple_cloner(eta)
    assert spec.kind is ClonerKind.GENERAL_12
    assert abs(spec.eta - eta) < 1e-12
    assert abs(spec.coeff_b - simple.coeff_b) < 1e-12
    assert abs(spec.overlaps["<B~|A>"] - simple.overlaps["<B~|A>"]) < 1e-12
    assert check_general_constraints(spec, spec.realization).passed
    assert abs(measured_reduction_factor(iso) - eta) < 1e-10


def test_general_cloner_optimal_limit():
    spec, iso = build_general_cloner(math.sqrt(2 / 3), 0.0)
    assert abs(measured_reduction_factor(iso) - 2 / 3) < 1e-10


def test_general_cloner_with_c():
    a, c = GENERAL_CLONER_SAMPLE
    spec, iso = build_general_cloner(a, c)
    assert spec.coeff_c > 0
    assert abs(spec.coeff_a ** 2 + 2 * spec.coeff_b ** 2 + spec.coeff_c ** 2 - 1) < 1e-12
    report = check_general_constraints(spec, spec.realization)
    assert report.passed, report.residuals
    assert report.max_residual <= 1e-10
    assert isometry_defect(iso) <= 1e-10
    assert abs(measured_reduction_factor(iso) - (a * a - c * c)) < 1e-9


@pytest.mark.parametrize("a, c", [(0.1, 0.2), (0.9, 0.5), (0.5, -0.1)])
def test_general_cloner_domain(a, c):
    with pytest.raises(DomainError):
        build_general_cloner(a, c)


def test_general_cloner_infeasible_without_c():
    with pytest.raises(InfeasibleClonerError):
        build_general_cloner(0.9, 0.0)
