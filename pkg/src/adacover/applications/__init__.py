"""Reductions of concrete problems to (multiple) adaptive-submodular cover."""

from .cover import build_minsum_setcover, build_ssc, coverage_granularity, sum_functions
from .odt import OdtInstance, build_odt, dedup_rows, odt_utility
from .viral import (
    CascadeNetwork,
    CascadeOutcome,
    build_multi_quota_viral,
    build_viral,
    cascade_outcome,
    cascade_scenarios,
    viral_utility,
)

__all__ = [
    "OdtInstance",
    "build_odt",
    "dedup_rows",
    "odt_utility",
    "CascadeNetwork",
    "CascadeOutcome",
    "cascade_outcome",
    "cascade_scenarios",
    "viral_utility",
    "build_viral",
    "build_multi_quota_viral",
    "build_ssc",
    "build_minsum_setcover",
    "sum_functions",
    "coverage_granularity",
]
