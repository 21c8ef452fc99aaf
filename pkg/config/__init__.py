"""
Configuration Package

Contains the numerical tolerances, budgets and default grids.
"""

from config.settings import (
    ALGEBRAIC_TOL,
    DEFAULT_ALPHA_GRID,
    DEFAULT_ETA_GRID,
    DEFAULT_SEED,
    EIGEN_TOL,
    HERMITICITY_TOL,
    OPTIMAL_ETA,
    PPT_TOLERANCE,
    TOOL_VERSION,
)

__all__ = [
    'ALGEBRAIC_TOL',
    'DEFAULT_ALPHA_GRID',
    'DEFAULT_ETA_GRID',
    'DEFAULT_SEED',
    'EIGEN_TOL',
    'HERMITICITY_TOL',
    'OPTIMAL_ETA',
    'PPT_TOLERANCE',
    'TOOL_VERSION',
]
