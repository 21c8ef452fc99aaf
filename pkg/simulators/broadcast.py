"""
Broadcasting Pipeline

Applies the same local cloner to both halves of alpha|00> + beta|11>,
extracts the two-qubit reduced states of the clones, and provides the
closed-form pair states the pipeline is checked against.

Clone labels: site 1 holds a1, b1 (and c1 for 1->3), site 2 holds a2, b2
(and c2). Local pairs sit on one site, nonlocal pairs take one clone from
each site and carry different letters (a1 b2, b1 a2).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from config.settings import OPTIMAL_ETA
from simulators.cloners import ClonerSpec, CloneIsometry
from simulators.errors import DimensionError, DomainError
from simulators.linalg import FactorShape
from simulators.states import DensityOperator, EntangledInput, pure_density

logger = logging.getLogger(__name__)

CLONE_LETTERS = "abc"

_PLUS = np.array([0, 1, 1, 0], dtype=np.complex128) / math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class BroadcastResult:
    local_pairs: list[DensityOperator]
    nonlocal_pairs: list[DensityOperator]
    input: EntangledInput
    cloner: ClonerSpec | None
    local_labels: list[tuple[str, str]]
    nonlocal_labels: list[tuple[str, str]]

    def local_spread(self) -> float:
        return pair_spread(self.local_pairs)

    def nonlocal_spread(self) -> float:
        return pair_spread(self.nonlocal_pairs)


def pair_spread(pairs: list[DensityOperator]) -> float:
    """Max elementwise deviation of any pair from the first one."""
    if not pairs:
        return 0.0
    first = pairs[0].matrix
    return max(float(np.max(np.abs(p.matrix - first))) for p in pairs)


def run_broadcast(source: EntangledInput, cloner: CloneIsometry,
                  spec: ClonerSpec | None = None) -> BroadcastResult:
    """
    Clone both qubits of the shared pair locally and collect the pair states.

    The global output (V x V)(alpha|00> + beta|11>) is formed as a pure state
    on factors [copies..., ancilla, copies..., ancilla], turned into its
    density operator and partially traced down to every pair.

    Args:
        source: The shared entangled input
        cloner: A 1->2 or 1->3 clone isometry, used at both sites
        spec: Parameters of the cloner, recorded on the result

    Returns:
        BroadcastResult with the local and nonlocal pair states
    """
    if cloner.num_copies not in (2, 3):
        raise DimensionError(f"broadcasting supports 1->2 and 1->3 cloners, got 1->{cloner.num_copies}")
    site = cloner.output_shape
    shape = FactorShape(site.dims + site.dims)
    vector = np.kron(cloner.matrix, cloner.matrix) @ source.state_vector()
    if vector.size != shape.size:
        raise DimensionError(f"global state of size {vector.size} does not fit shape {shape.dims}")
    state = pure_density(vector, shape)
    logger.debug("broadcast alpha^2=%.6g through 1->%d cloner, global dimension %d",
                 source.alpha_sq, cloner.num_copies, shape.size)

    n = cloner.num_copies
    site_1 = list(range(n))
    site_2 = list(range(n + 1, 2 * n + 1))

    def label(index: int) -> str:
        if index < n:
            return f"{CLONE_LETTERS[index]}1"
        return f"{CLONE_LETTERS[index - n - 1]}2"

    local_indices = list(combinations(site_1, 2)) + list(combinations(site_2, 2))
    nonlocal_indices = [(i, j) for i, j in product(site_1, site_2) if j - n - 1 != i]

    return BroadcastResult(
        local_pairs=[state.reduce(pair) for pair in local_indices],
        nonlocal_pairs=[state.reduce(pair) for pair in nonlocal_indices],
        input=source,
        cloner=spec,
        local_labels=[(label(i), label(j)) for i, j in local_indices],
        nonlocal_labels=[(label(i), label(j)) for i, j in nonlocal_indices],
    )


def _check_eta(eta: float) -> None:
    if not 0.0 < eta <= OPTIMAL_ETA:
        raise DomainError(f"eta must be in (0, 2/3], got {eta!r}")


def _two_qubit(matrix) -> DensityOperator:
    return DensityOperator(matrix, FactorShape.qubits(2))


def closed_form_local(source: EntangledInput, eta: float) -> DensityOperator:
    """
    Same-site pair of clones:

        alpha^2 eta |00><00| + beta^2 eta |11><11| + (1 - eta) |+><+|

    with the normalized |+> = (|01> + |10>) / sqrt(2).
    """
    _check_eta(eta)
    matrix = (1.0 - eta) * np.outer(_PLUS, _PLUS)
    matrix[0, 0] += source.alpha_sq * eta
    matrix[3, 3] += (1.0 - source.alpha_sq) * eta
    return _two_qubit(matrix)


def _nonlocal_matrix(diagonal_00: float, diagonal_11: float,
                     diagonal_mixed: float, coherence: float) -> np.ndarray:
    matrix = np.diag([diagonal_00, diagonal_mixed, diagonal_mixed, diagonal_11]).astype(np.complex128)
    matrix[0, 3] = matrix[3, 0] = coherence
    return matrix


def closed_form_nonlocal(source: EntangledInput, eta: float) -> DensityOperator:
    """
    Cross-site pair of clones for a universal 1->2 cloner with reduction factor eta.

        [alpha^2 eta + ((1 - eta)/2)^2] |00><00| + [beta^2 eta + ((1 - eta)/2)^2] |11><11|
        + (1 - eta^2)/4 (|01><01| + |10><10|) + alpha beta eta^2 (|00><11| + |11><00|)
    """
    _check_eta(eta)
    noise = ((1.0 - eta) / 2.0) ** 2
    return _two_qubit(_nonlocal_matrix(
        diagonal_00=source.alpha_sq * eta + noise,
        diagonal_11=(1.0 - source.alpha_sq) * eta + noise,
        diagonal_mixed=(1.0 - eta * eta) / 4.0,
        coherence=source.alpha * source.beta * eta * eta,
    ))


def closed_form_nonlocal_3(source: EntangledInput) -> DensityOperator:
    """Cross-site pair of clones for the optimal 1->3 cloner (eta = 5/9)."""
    return _two_qubit(_nonlocal_matrix(
        diagonal_00=(45.0 * source.alpha_sq + 4.0) / 81.0,
        diagonal_11=(45.0 * (1.0 - source.alpha_sq) + 4.0) / 81.0,
        diagonal_mixed=14.0 / 81.0,
        coherence=25.0 * source.alpha * source.beta / 81.0,
    ))
