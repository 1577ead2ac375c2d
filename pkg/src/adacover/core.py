"""Utilities, policies, the adaptive greedy engines and policy execution.

Time semantics: item ``J_i`` occupies ``[start, end)`` where ``end`` is the
running sum of selected costs, and its outcome is observed only at ``end``.
A utility's cover time is therefore the end time of the step that first
brings it to its quota.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from .distribution import Distribution
from .errors import CoverabilityViolation, ItemAlreadyObserved, MismatchedQuota, PolicyStuck
from .realization import EMPTY, PartialRealization, is_subrealization

__all__ = [
    "Item",
    "UtilityModel",
    "Policy",
    "Step",
    "ExecutionTrace",
    "Instance",
    "is_subrealization",
    "marginal_benefit",
    "greedy_step",
    "greedy_policy",
    "masc_greedy_policy",
    "run_policy",
    "truncate_policy",
]

Number = Union[int, Fraction, float]


@dataclass(frozen=True)
class Item:
    id: int
    cost: Fraction

    def __post_init__(self):
        if self.cost <= 0:
            raise ValueError(f"item {self.id} has non-positive cost {self.cost}")


def as_costs(costs: Iterable) -> Tuple[Fraction, ...]:
    out = tuple(Fraction(c) for c in costs)
    for e, c in enumerate(out):
        if c <= 0:
            raise ValueError(f"item {e} has non-positive cost {c}")
    return out


@dataclass(frozen=True)
class UtilityModel:
    """A monotone utility over partial realizations with quota ``Q``.

    ``eta`` is the granularity: any value above ``Q - eta`` equals ``Q``.
    Exact utilities (ints or Fractions) compare against ``Q`` exactly;
    inexact ones use ``1e-9 * max(Q, 1)`` slack.

    ``posterior_only`` declares that the value depends on ``psi`` only through
    the set of scenarios consistent with it under the instance's own prior
    (true for hypothesis elimination).  The exact oracle uses it to merge
    states.
    """

    evaluate: Callable[[PartialRealization], Number]
    Q: Number
    eta: Number
    exact: bool = True
    name: str = ""
    posterior_only: bool = False

    def __call__(self, psi: PartialRealization) -> Number:
        return self.evaluate(psi)

    @property
    def tolerance(self) -> Number:
        return 0 if self.exact else 1e-9 * max(float(self.Q), 1.0)

    def is_covered(self, value: Number) -> bool:
        if self.exact:
            return value >= self.Q
        return value >= self.Q - self.tolerance

    def covers(self, psi: PartialRealization) -> bool:
        return self.is_covered(self.evaluate(psi))

    def scaled(self, factor: Number) -> "UtilityModel":
        """The same utility multiplied by a positive constant."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        ev = self.evaluate
        return UtilityModel(
            lambda psi: ev(psi) * factor,
            self.Q * factor,
            self.eta * factor,
            exact=self.exact,
            name=f"{factor}*{self.name}",
            posterior_only=self.posterior_only,
        )


@dataclass(frozen=True)
class Policy:
    """A decision rule ``psi -> item`` (``None`` means terminate)."""

    decide: Callable[[PartialRealization], Optional[int]]
    kind: str = "custom"

    def __call__(self, psi: PartialRealization) -> Optional[int]:
        return self.decide(psi)


@dataclass(frozen=True)
class Step:
    item: int
    outcome: int
    start: Fraction
    end: Fraction


@dataclass(frozen=True)
class ExecutionTrace:
    """Record of one policy run on one full realization.

    ``cover_times[r]`` is ``None`` when utility ``r`` was never covered (only
    possible for truncated or custom policies).
    """

    steps: Tuple[Step, ...]
    cost: Fraction
    cover_times: Tuple[Optional[Fraction], ...]

    @property
    def items(self) -> Tuple[int, ...]:
        return tuple(s.item for s in self.steps)

    def prefixes(self) -> List[PartialRealization]:
        """Observed realization before each step, plus the final one."""
        psi = EMPTY
        out = [psi]
        for s in self.steps:
            psi = psi.extend(s.item, s.outcome)
            out.append(psi)
        return out

    @property
    def final(self) -> PartialRealization:
        return self.prefixes()[-1]


@dataclass
class Instance:
    """Everything a policy run needs: utilities, prior and item costs."""

    utilities: Tuple[UtilityModel, ...]
    distribution: Distribution
    costs: Tuple[Fraction, ...]
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def utility(self) -> UtilityModel:
        if len(self.utilities) != 1:
            raise ValueError(f"instance has {len(self.utilities)} utilities")
        return self.utilities[0]

    @property
    def n_items(self) -> int:
        return len(self.costs)


def _as_list(fs) -> List[UtilityModel]:
    if isinstance(fs, UtilityModel):
        return [fs]
    return list(fs)


def marginal_benefit(
    f: UtilityModel, dist: Distribution, psi: PartialRealization, e: int
) -> Number:
    """Conditional expected gain of observing item ``e`` after ``psi``."""
    if e in psi:
        raise ItemAlreadyObserved(f"item {e} already in dom(psi)")
    probs = dist.outcome_distribution(psi, e)
    base = f(psi)
    total: Number = Fraction(0)
    for o, pr in probs.items():
        total += pr * (f(psi.extend(e, o)) - base)
    return total


def greedy_step(
    f: UtilityModel,
    dist: Distribution,
    psi: PartialRealization,
    remaining: Iterable[int],
    costs: Sequence[Fraction],
) -> int:
    """Item maximizing benefit-per-cost; ties go to the smallest id."""
    best, best_ratio = None, None
    for e in sorted(remaining):
        ratio = marginal_benefit(f, dist, psi, e) / costs[e]
        if best is None or ratio > best_ratio:
            best, best_ratio = e, ratio
    if best is None:
        raise CoverabilityViolation("no remaining items while utility is below quota")
    if best_ratio <= f.tolerance:
        raise CoverabilityViolation(
            f"every remaining item has zero marginal benefit at {psi!r} "
            f"(f={f(psi)}, Q={f.Q})"
        )
    return best


def greedy_policy(f: UtilityModel, dist: Distribution, costs: Sequence) -> Policy:
    """Adaptive greedy policy for a single utility.

    Decisions are memoized per partial realization; the memo is a pure cache,
    so the policy behaves as a function of ``psi`` alone.
    """
    costs = as_costs(costs)
    items = range(len(costs))
    memo: dict = {}

    def decide(psi: PartialRealization) -> Optional[int]:
        if psi in memo:
            return memo[psi]
        if f.covers(psi):
            choice = None
        else:
            choice = greedy_step(f, dist, psi, (e for e in items if e not in psi), costs)
        memo[psi] = choice
        return choice

    return Policy(decide, kind="greedy")


def masc_greedy_policy(fs: Sequence[UtilityModel], dist: Distribution, costs: Sequence) -> Policy:
    """Greedy policy for covering several utilities sharing one quota.

    Each item scores ``(1/c_e) * sum_r gain_r / (Q - f_r(psi))`` over the
    utilities not yet covered.
    """
    fs = _as_list(fs)
    if len({f.Q for f in fs}) > 1:
        raise MismatchedQuota("all utilities must share the same Q; rescale first")
    costs = as_costs(costs)
    items = range(len(costs))
    memo: dict = {}

    def decide(psi: PartialRealization) -> Optional[int]:
        if psi in memo:
            return memo[psi]
        open_fs = []
        for f in fs:
            v = f(psi)
            if not f.is_covered(v):
                open_fs.append((f, f.Q - v))
        if not open_fs:
            memo[psi] = None
            return None
        best, best_score = None, None
        for e in items:
            if e in psi:
                continue
            score = sum(
                (marginal_benefit(f, dist, psi, e) / gap for f, gap in open_fs),
                Fraction(0),
            ) / costs[e]
            if best is None or score > best_score:
                best, best_score = e, score
        if best is None or best_score <= max(f.tolerance for f, _ in open_fs):
            raise CoverabilityViolation(f"no item makes progress at {psi!r}")
        memo[psi] = best
        return best

    return Policy(decide, kind="masc-greedy")


def run_policy(
    policy: Policy,
    phi: PartialRealization,
    fs: Union[UtilityModel, Sequence[UtilityModel]],
    costs: Sequence,
) -> ExecutionTrace:
    """Simulate ``policy`` on the full realization ``phi``."""
    fs = _as_list(fs)
    costs = as_costs(costs)
    n = len(costs)
    psi = EMPTY
    t = Fraction(0)
    covers: List[Optional[Fraction]] = [t if f.covers(psi) else None for f in fs]
    steps: List[Step] = []
    while True:
        e = policy(psi)
        if e is None:
            break
        if e in psi or not 0 <= e < n:
            raise PolicyStuck(f"policy chose invalid item {e} at {psi!r}")
        if len(steps) >= n:
            raise PolicyStuck("policy selected more than n items")
        start, t = t, t + costs[e]
        psi = psi.extend(e, phi[e])
        steps.append(Step(e, phi[e], start, t))
        for r, f in enumerate(fs):
            if covers[r] is None and f.covers(psi):
                covers[r] = t
    return ExecutionTrace(tuple(steps), t, tuple(covers))


def truncate_policy(policy: Policy, k: Number, costs: Sequence) -> Policy:
    """Stop ``policy`` just before its committed cost would exceed ``k``.

    The committed cost at ``psi`` is the total cost of dom(psi).
    """
    if k < 0:
        raise ValueError("truncation budget must be non-negative")
    costs = as_costs(costs)

    def decide(psi: PartialRealization) -> Optional[int]:
        e = policy(psi)
        if e is None:
            return None
        spent = sum((costs[x] for x in psi), Fraction(0))
        return e if spent + costs[e] <= k else None

    return Policy(decide, kind=f"truncated-{policy.kind}")
