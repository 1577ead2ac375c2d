"""Moments, completion curves, score diagnostics and lower bounds."""

from .bounds import entropy_bound, huffman_bound, huffman_depth_counts
from .diagnostics import Violation, check_adaptive_submodular, harmonic_bound, score_trace
from .moments import (
    CostDistribution,
    StepCurve,
    completion_curve,
    cost_distribution,
    masc_objective,
    moment_direct,
    moment_integral,
)

__all__ = [
    "CostDistribution",
    "StepCurve",
    "cost_distribution",
    "completion_curve",
    "moment_direct",
    "moment_integral",
    "masc_objective",
    "score_trace",
    "harmonic_bound",
    "check_adaptive_submodular",
    "Violation",
    "entropy_bound",
    "huffman_bound",
    "huffman_depth_counts",
]
