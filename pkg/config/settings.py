"""
Numerical Settings for the Broadcasting Toolkit

This module stores every tolerance, budget and default grid used by the
simulators and analyzers, so that no function hard-codes its own threshold.
"""

import math

TOOL_VERSION = "1.0.1"

# Linear algebra
ALGEBRAIC_TOL = 1e-10
HERMITICITY_TOL = 1e-12
EIGEN_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

# State validation
POSITIVITY_TOL = 1e-10

# Cloner verification
CONSTRAINT_TOL = 1e-10
ISOTROPY_TOL = 1e-9
SYMMETRY_TOL = 1e-10
RANDOM_PROBE_STATES = 20

# General-cloner feasibility search
DEFAULT_SEED = 20240917
SEARCH_RESTARTS = 200
SEARCH_ITERATIONS = 5000
GENERAL_ANCILLA_DIM = 6

# Separability
PPT_TOLERANCE = 1e-9
BOUNDARY_TOL = 1e-12
WERNER_THRESHOLD = 1.0 / 3.0

# Parameter scans
OPTIMAL_ETA = 2.0 / 3.0
ETA_LOWER_BOUND = 1.0 / math.sqrt(3.0)
BISECTION_TOL = 1e-6
THRESHOLD_STEP = 1e-3
MIN_THRESHOLD_STEP = 1e-5
MAX_SCALING_COPIES = 1000
DEFAULT_ETA_GRID = tuple(0.58 + k * (OPTIMAL_ETA - 0.58) / 8 for k in range(8)) + (OPTIMAL_ETA,)
DEFAULT_ALPHA_GRID = tuple(k / 100 for k in range(101))

# Output formatting
TABLE_DIGITS = 7

# HTTP service
DEFAULT_PORT = 5001
DEFAULT_HOST = "0.0.0.0"

# Verification suite
EIGEN_ORACLE_SAMPLES = 1000
EIGEN_ORACLE_TOL = 1e-8
PROPERTY_ETAS = (0.58, 0.60, 0.62, OPTIMAL_ETA)
GENERAL_CLONER_SAMPLE = (0.8, 0.1)
FORM_INVARIANCE_TOL = 1e-9
