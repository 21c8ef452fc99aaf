"""
Separability Analysis

Peres-Horodecki (PPT) verdicts for two-qubit states, the analytic alpha^2
ranges for broadcast pairs, the reduction-factor threshold, and the
copy-count scaling law of nonlocal entanglement cloning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from config.settings import (
    BOUNDARY_TOL,
    ETA_LOWER_BOUND,
    OPTIMAL_ETA,
    PPT_TOLERANCE,
    WERNER_THRESHOLD,
)
from simulators import linalg
from simulators.errors import DimensionError, DomainError
from simulators.states import DensityOperator


class Verdict(str, Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"
    BOUNDARY = "Boundary"


class RangeKind(str, Enum):
    INSEPARABLE_NONLOCAL = "InseparableNonlocal"
    SEPARABLE_LOCAL = "SeparableLocal"
    NONLOCAL_CLONING = "NonlocalCloning"
    NUMERIC = "Numeric"


@dataclass(frozen=True)
class PptReport:
    min_eigenvalue: float
    spectrum: tuple[float, ...]
    verdict: Verdict
    tolerance: float

    @property
    def entangled(self) -> bool:
        return self.verdict is Verdict.ENTANGLED


@dataclass(frozen=True)
class AlphaRange:
    """
    Closed interval of alpha^2 values, possibly empty or a single point.

    Every analytic range has the shape 1/2 +- half_width.
    """

    lo: float | None
    hi: float | None
    kind: RangeKind
    note: str = ""

    @classmethod
    def empty(cls, kind: RangeKind, note: str = "") -> AlphaRange:
        return cls(lo=None, hi=None, kind=kind, note=note)

    @classmethod
    def centered(cls, half_width: float, kind: RangeKind) -> AlphaRange:
        return cls(lo=0.5 - half_width, hi=0.5 + half_width, kind=kind)

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    @property
    def is_point(self) -> bool:
        return not self.is_empty and self.lo == self.hi

    @property
    def width(self) -> float:
        return 0.0 if self.is_empty else self.hi - self.lo

    def contains(self, alpha_sq: float) -> bool:
        return not self.is_empty and self.lo <= alpha_sq <= self.hi

    def strictly_contains(self, alpha_sq: float) -> bool:
        return not self.is_empty and self.lo < alpha_sq < self.hi


@dataclass(frozen=True)
class NonlocalScaling:
    m: int
    s_nl: float
    verdict: Verdict


def ppt_verdict(rho: DensityOperator, tolerance: float = PPT_TOLERANCE) -> PptReport:
    """
    Peres-Horodecki verdict for a two-qubit state.

    The partial transpose is taken on the second qubit. For two qubits a
    positive partial transpose is necessary and sufficient for separability.
    States whose lowest eigenvalue lies within tolerance of zero are called
    Separable; the raw eigenvalue is always reported.
    """
    if rho.matrix.shape != (4, 4):
        raise DimensionError(f"ppt_verdict needs a two-qubit state, got {rho.matrix.shape}")
    spectrum = linalg.hermitian_eigenvalues(rho.partial_transpose(1))
    lowest = float(spectrum[0])
    verdict = Verdict.ENTANGLED if lowest < -tolerance else Verdict.SEPARABLE
    return PptReport(
        min_eigenvalue=lowest,
        spectrum=tuple(float(v) for v in spectrum),
        verdict=verdict,
        tolerance=tolerance,
    )


def _half_width(center_sq: float, offset_sq: float) -> float | None:
    """
    sqrt(center_sq - offset_sq), or None when the radicand is negative.

    Both arguments are squares of bounded terms; the difference is formed as
    (c - o)(c + o) of their roots to avoid cancellation near the threshold.
    Radicands within BOUNDARY_TOL of zero collapse to a zero half-width.
    """
    c, o = math.sqrt(center_sq), math.sqrt(offset_sq)
    radicand = (c - o) * (c + o)
    if abs(radicand) <= BOUNDARY_TOL:
        return 0.0
    if radicand < 0.0:
        return None
    return math.sqrt(radicand)


def inseparable_alpha_range(eta: float) -> AlphaRange:
    """
    alpha^2 values for which the nonlocal broadcast pair is entangled.

    1/2 +- sqrt(1/4 - (1 - eta^2)^2 / (16 eta^4)); empty below eta = 1/sqrt(3)
    and the single point {1/2} exactly at it.
    """
    if not 0.0 < eta <= OPTIMAL_ETA:
        raise DomainError(f"eta must be in (0, 2/3], got {eta!r}")
    offset = (1.0 - eta * eta) / (4.0 * eta * eta)
    half = _half_width(0.25, offset * offset)
    if half is None:
        return AlphaRange.empty(RangeKind.INSEPARABLE_NONLOCAL, note="eta < 1/sqrt(3)")
    return AlphaRange.centered(half, RangeKind.INSEPARABLE_NONLOCAL)


def local_separable_alpha_range(eta: float) -> AlphaRange:
    """alpha^2 values for which the local (same-site) pair is separable."""
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must be in (0, 1], got {eta!r}")
    offset = (1.0 - eta) / (2.0 * eta)
    half = _half_width(0.25, offset * offset)
    if half is None:
        return AlphaRange.empty(RangeKind.SEPARABLE_LOCAL, note="eta < 1/2")
    return AlphaRange.centered(half, RangeKind.SEPARABLE_LOCAL)


def nonlocal_cloning_range() -> AlphaRange:
    """alpha^2 range reachable by a single machine cloning the whole pair."""
    return AlphaRange.centered(math.sqrt(2.0) / 3.0, RangeKind.NONLOCAL_CLONING)


def _classify_scaled(s: float) -> Verdict:
    if s > WERNER_THRESHOLD + BOUNDARY_TOL:
        return Verdict.ENTANGLED
    if s < WERNER_THRESHOLD - BOUNDARY_TOL:
        return Verdict.SEPARABLE
    return Verdict.BOUNDARY


def nonlocal_scaling(m: int) -> NonlocalScaling:
    """Scaling parameter s_nl = (4 + M) / (5 M) of 1->M nonlocal entanglement cloning."""
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 1:
        raise DomainError(f"number of copies must be a positive integer, got {m!r}")
    s_nl = (4 + m) / (5 * m)
    return NonlocalScaling(m=int(m), s_nl=s_nl, verdict=_classify_scaled(s_nl))


def max_entangled_copies(limit: int = 64) -> int:
    """
    Largest M whose nonlocal copies are not separable.

    M = 6 sits exactly on the s = 1/3 boundary and is counted, giving 6.
    """
    best = 0
    for m in range(1, limit + 1):
        if nonlocal_scaling(m).verdict is not Verdict.SEPARABLE:
            best = m
    return best


def local_broadcast_max_copies() -> int:
    """Local cloning yields two entangled pairs at most; the 1->3 pipeline is separable."""
    return 2


def werner_is_separable(s: float) -> bool:
    return s <= WERNER_THRESHOLD + BOUNDARY_TOL


def eta_lower_bound() -> float:
    """Smallest reduction factor for which any input can be broadcast."""
    return ETA_LOWER_BOUND


def fidelity_threshold() -> float:
    return (1.0 + ETA_LOWER_BOUND) / 2.0
