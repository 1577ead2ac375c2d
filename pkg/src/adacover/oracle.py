"""Exact optimal policies for desk-scale instances.

A memoized recursion over observation states computes the minimum of
``sum_r E[C_r^p]`` (one utility gives the plain single-cover objective).
For ``p = 1`` the objective is additive over steps: each step costs
``c_e * Pr[state] * (#uncovered utilities)``.  For ``p > 1`` the elapsed time
is part of the state and a utility covered at time ``t`` contributes
``Pr * t^p``.

States are keyed by the partial realization itself.  When the prior is an
explicit scenario set and every utility declares ``posterior_only``, states
with the same consistent-scenario set are merged, which is sound because the
utility values and every future split depend only on that set.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Policy, UtilityModel, _as_list, as_costs
from .distribution import Distribution, ScenarioDistribution
from .errors import CoverabilityViolation, InstanceTooLarge, NonIntegralCosts
from .realization import EMPTY, PartialRealization

DEFAULT_MAX_SCENARIOS = 12
DEFAULT_MAX_ITEMS = 10
DEFAULT_NODE_BUDGET = 10**7


class _Search:
    def __init__(
        self,
        fs: List[UtilityModel],
        dist: Distribution,
        costs: Tuple[Fraction, ...],
        p: int,
        additive: bool,
        full_keys: bool,
        node_budget: int,
    ):
        self.fs = fs
        self.dist = dist
        self.costs = costs
        self.p = p
        self.additive = additive
        self.node_budget = node_budget
        self.scen = isinstance(dist, ScenarioDistribution)
        self.merge = self.scen and not full_keys and all(f.posterior_only for f in fs)
        self.memo: Dict[object, Fraction] = {}
        self.choice: Dict[object, Optional[int]] = {}
        self._uncovered: Dict[PartialRealization, frozenset] = {}

    def uncovered(self, psi: PartialRealization) -> frozenset:
        u = self._uncovered.get(psi)
        if u is None:
            u = frozenset(r for r, f in enumerate(self.fs) if not f.covers(psi))
            self._uncovered[psi] = u
        return u

    def key(self, psi: PartialRealization, mask: int, t: Fraction):
        if self.merge:
            return mask if self.additive else (mask, t)
        return psi

    def children(self, psi, mask, weight, e):
        if self.scen:
            for o, sub in self.dist.split(mask, e).items():
                yield psi.extend(e, o), sub, self.dist.mask_weight(sub)
        else:
            for o, pr in self.dist.outcome_distribution(psi, e).items():
                yield psi.extend(e, o), 0, weight * pr

    def solve(self, psi: PartialRealization, mask: int, weight: Fraction, t: Fraction) -> Fraction:
        """Optimal unnormalized cost-to-go from ``psi`` reached at time ``t``."""
        key = self.key(psi, mask, t)
        if key in self.memo:
            return self.memo[key]
        open_now = self.uncovered(psi)
        if not open_now:
            self.memo[key] = Fraction(0)
            self.choice[key] = None
            return Fraction(0)
        if len(self.memo) >= self.node_budget:
            raise InstanceTooLarge(f"oracle exceeded its node budget of {self.node_budget}")

        best, best_e = None, None
        for e in range(len(self.costs)):
            if e in psi:
                continue
            c = self.costs[e]
            kids = list(self.children(psi, mask, weight, e))
            if self.merge and len(kids) == 1 and kids[0][1] == mask:
                continue  # observes nothing new about the hypothesis
            if self.additive:
                val = c * weight * len(open_now)
                for child, sub, w in kids:
                    val += self.solve(child, sub, w, t + c)
            else:
                t2 = t + c
                val = Fraction(0)
                for child, sub, w in kids:
                    newly = len(open_now - self.uncovered(child))
                    if newly:
                        val += w * newly * t2**self.p
                    val += self.solve(child, sub, w, t2)
            if best is None or val < best:
                best, best_e = val, e
        if best is None:
            raise CoverabilityViolation(f"no item can make progress at {psi!r}")
        self.memo[key] = best
        self.choice[key] = best_e
        return best

    def root(self) -> Fraction:
        mask = self.dist.consistent(EMPTY) if self.scen else 0
        return self.solve(EMPTY, mask, Fraction(1), Fraction(0))

    def policy(self) -> Policy:
        def decide(psi: PartialRealization) -> Optional[int]:
            mask = self.dist.consistent(psi) if self.scen else 0
            weight = self.dist.mask_weight(mask) if self.scen else self.dist.posterior_weight(psi)
            t = sum((self.costs[e] for e in psi), Fraction(0))
            self.solve(psi, mask, weight, t)
            return self.choice[self.key(psi, mask, t)]

        return Policy(decide, kind="oracle")


def _check_caps(dist: Distribution, n: int, max_scenarios: int, max_items: int) -> None:
    size = dist.support_size()
    if size > max_scenarios:
        raise InstanceTooLarge(f"{size} scenarios exceed the oracle cap of {max_scenarios}")
    if n > max_items:
        raise InstanceTooLarge(f"{n} items exceed the oracle cap of {max_items}")


def optimal_expected_cost(
    f: UtilityModel,
    dist: Distribution,
    costs: Sequence,
    max_scenarios: int = DEFAULT_MAX_SCENARIOS,
    max_items: int = DEFAULT_MAX_ITEMS,
    node_budget: int = DEFAULT_NODE_BUDGET,
    full_keys: bool = False,
) -> Tuple[Fraction, Policy]:
    """Minimum expected cover cost and a policy attaining it."""
    costs = as_costs(costs)
    _check_caps(dist, len(costs), max_scenarios, max_items)
    search = _Search([f], dist, costs, 1, True, full_keys, node_budget)
    return search.root(), search.policy()


def optimal_moment(
    f: UtilityModel,
    dist: Distribution,
    costs: Sequence,
    p: int,
    max_scenarios: int = DEFAULT_MAX_SCENARIOS,
    max_items: int = DEFAULT_MAX_ITEMS,
    node_budget: int = DEFAULT_NODE_BUDGET,
    full_keys: bool = False,
) -> Fraction:
    """Minimum ``E[C^p]`` over all policies; costs must be integral.

    Elapsed time is tracked explicitly even for ``p = 1``, so this path is
    independent of :func:`optimal_expected_cost`.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    costs = as_costs(costs)
    if any(c.denominator != 1 for c in costs):
        raise NonIntegralCosts("the moment oracle needs integer item costs")
    _check_caps(dist, len(costs), max_scenarios, max_items)
    return _Search([f], dist, costs, p, False, full_keys, node_budget).root()


def optimal_masc_sum(
    fs: Sequence[UtilityModel],
    dist: Distribution,
    costs: Sequence,
    p: int = 1,
    max_scenarios: int = 6,
    max_items: int = 8,
    node_budget: int = DEFAULT_NODE_BUDGET,
    full_keys: bool = False,
) -> Fraction:
    """Minimum of ``sum_r E[C_r^p]`` over all policies.

    For a point-mass prior the states are exactly the subsets of items
    already chosen, so this is a subset DP rather than a scan of orders.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    fs = _as_list(fs)
    costs = as_costs(costs)
    if dist.support_size() > 1:
        _check_caps(dist, len(costs), max_scenarios, max_items)
    elif len(costs) > max_items:
        raise InstanceTooLarge(f"{len(costs)} items exceed the oracle cap of {max_items}")
    return _Search(fs, dist, costs, p, p == 1, full_keys, node_budget).root()
