"""
Analyzers Package

Separability verdicts, broadcast parameter scans and the verification suite.
"""

from analyzers.broadcast_scan import eta_threshold_scan, numeric_alpha_range, sweep
from analyzers.separability import (
    AlphaRange,
    PptReport,
    Verdict,
    inseparable_alpha_range,
    local_separable_alpha_range,
    ppt_verdict,
)
from analyzers.verification import run_verification

__all__ = [
    'AlphaRange',
    'PptReport',
    'Verdict',
    'eta_threshold_scan',
    'inseparable_alpha_range',
    'local_separable_alpha_range',
    'numeric_alpha_range',
    'ppt_verdict',
    'run_verification',
    'sweep',
]
