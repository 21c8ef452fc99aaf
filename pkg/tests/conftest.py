"""Shared fixtures."""

import math

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_app
from simulators.cloners import build_gisin_massar_3, build_simple_cloner
from simulators.linalg import FactorShape
from simulators.states import pure_density


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def bell_vector():
    return np.array([1, 0, 0, 1], dtype=np.complex128) / math.sqrt(2.0)


@pytest.fixture
def bell_state(bell_vector):
    return pure_density(bell_vector, FactorShape.qubits(2))


@pytest.fixture(scope="session")
def optimal_cloner():
    return build_simple_cloner(2.0 / 3.0)


@pytest.fixture(scope="session")
def gisin_massar():
    return build_gisin_massar_3()


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def client():
    app = create_app()
    app.config["TESTING"] = True
    return app.test_client()


def random_density(rng, dim):
    """Random full-rank density matrix of the given dimension."""
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(x)
    return q * (np.diag(r) / np.abs(np.diag(r)))
