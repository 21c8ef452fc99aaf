"""
Simulators Package

Dense linear algebra, quantum states, universal cloners and the
broadcasting pipeline.
"""

from simulators.broadcast import (
    BroadcastResult,
    closed_form_local,
    closed_form_nonlocal,
    closed_form_nonlocal_3,
    run_broadcast,
)
from simulators.cloners import (
    ClonerKind,
    ClonerSpec,
    CloneIsometry,
    build_general_cloner,
    build_gisin_massar_3,
    build_simple_cloner,
    measured_reduction_factor,
)
from simulators.states import DensityOperator, EntangledInput

__all__ = [
    'BroadcastResult',
    'ClonerKind',
    'ClonerSpec',
    'CloneIsometry',
    'DensityOperator',
    'EntangledInput',
    'build_general_cloner',
    'build_gisin_massar_3',
    'build_simple_cloner',
    'closed_form_local',
    'closed_form_nonlocal',
    'closed_form_nonlocal_3',
    'measured_reduction_factor',
    'run_broadcast',
]
