"""Minimum-cost adaptive-submodular cover: greedy policies, reductions,
moment analysis, lower bounds and an exact small-instance oracle."""

__version__ = "0.1.0"

from .core import (
    ExecutionTrace,
    Instance,
    Item,
    Policy,
    Step,
    UtilityModel,
    greedy_policy,
    greedy_step,
    marginal_benefit,
    masc_greedy_policy,
    run_policy,
    truncate_policy,
)
from .distribution import (
    ProductDistribution,
    ScenarioDistribution,
    condition,
    posterior_weight,
    product_to_scenarios,
    sample,
)
from .realization import EMPTY, PartialRealization, are_disjoint, is_subrealization

__all__ = [
    "PartialRealization",
    "EMPTY",
    "is_subrealization",
    "are_disjoint",
    "Item",
    "UtilityModel",
    "Policy",
    "Step",
    "ExecutionTrace",
    "Instance",
    "marginal_benefit",
    "greedy_step",
    "greedy_policy",
    "masc_greedy_policy",
    "run_policy",
    "truncate_policy",
    "ScenarioDistribution",
    "ProductDistribution",
    "posterior_weight",
    "condition",
    "sample",
    "product_to_scenarios",
]
