"""Prior and posterior machinery over full realizations.

Two backends are provided.  :class:`ScenarioDistribution` is an explicit,
possibly correlated, weighted list of full realizations; posteriors are exact
and computed with per-(item, outcome) scenario bitmasks.
:class:`ProductDistribution` keeps an independent marginal per item.

All probabilities are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import bisect
import itertools
import random
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import EnumerationTooLarge, ZeroProbabilityRealization
from .realization import PartialRealization

DEFAULT_ENUMERATION_CAP = 10**6


def _to_outcome_vector(scenario, n_items: Optional[int]) -> Tuple[int, ...]:
    if isinstance(scenario, PartialRealization):
        vec = tuple(o for _, o in scenario.pairs)
        if [e for e, _ in scenario.pairs] != list(range(len(vec))):
            raise ValueError("scenario realizations must have dom = {0..n-1}")
    else:
        vec = tuple(int(o) for o in scenario)
    if n_items is not None and len(vec) != n_items:
        raise ValueError(f"scenario has {len(vec)} items, expected {n_items}")
    return vec


class ScenarioDistribution:
    """Explicit prior: a finite set of full realizations with rational weights.

    Weights are normalized on construction; zero-weight scenarios are dropped
    and identical realizations are merged by summing their weights.
    """

    def __init__(
        self,
        scenarios: Iterable,
        weights: Optional[Iterable] = None,
        n_outcomes: Optional[int] = None,
    ):
        scenarios = list(scenarios)
        if not scenarios:
            raise ValueError("a scenario distribution needs at least one scenario")
        if weights is None:
            weights = [Fraction(1)] * len(scenarios)
        else:
            weights = [Fraction(w) for w in weights]
        if len(weights) != len(scenarios):
            raise ValueError("scenarios and weights differ in length")

        n_items = None
        merged: Dict[Tuple[int, ...], Fraction] = {}
        for s, w in zip(scenarios, weights):
            if w < 0:
                raise ValueError("negative scenario weight")
            vec = _to_outcome_vector(s, n_items)
            n_items = len(vec)
            if w == 0:
                continue
            merged[vec] = merged.get(vec, Fraction(0)) + w
        total = sum(merged.values(), Fraction(0))
        if total == 0:
            raise ValueError("all scenario weights are zero")

        self.n_items: int = n_items or 0
        self.scenarios: Tuple[Tuple[int, ...], ...] = tuple(merged)
        self.weights: Tuple[Fraction, ...] = tuple(w / total for w in merged.values())
        max_outcome = max((max(v) for v in self.scenarios if v), default=0)
        self.n_outcomes: int = max(n_outcomes or 0, max_outcome + 1)

        self._uniform = len(set(self.weights)) == 1
        self._full_mask = (1 << len(self.scenarios)) - 1
        # masks[e][o] = bitmask of scenarios whose item e has outcome o
        self._masks: List[Dict[int, int]] = [dict() for _ in range(self.n_items)]
        for i, vec in enumerate(self.scenarios):
            for e, o in enumerate(vec):
                self._masks[e][o] = self._masks[e].get(o, 0) | (1 << i)
        self._cdf: Optional[List[float]] = None

    # -- posterior queries -------------------------------------------------
    def consistent(self, psi: PartialRealization) -> int:
        """Bitmask of scenario indices consistent with ``psi``."""
        mask = self._full_mask
        for e, o in psi.pairs:
            mask &= self._masks[e].get(o, 0)
            if not mask:
                break
        return mask

    def mask_weight(self, mask: int) -> Fraction:
        if self._uniform:
            return self.weights[0] * mask.bit_count()
        total = Fraction(0)
        while mask:
            low = mask & -mask
            total += self.weights[low.bit_length() - 1]
            mask ^= low
        return total

    def posterior_weight(self, psi: PartialRealization) -> Fraction:
        """Pr[psi is a subrealization of Phi]."""
        return self.mask_weight(self.consistent(psi))

    def outcome_distribution(self, psi: PartialRealization, e: int) -> Dict[int, Fraction]:
        """Pr[Phi_e = w | psi] for every outcome w of positive probability."""
        mask = self.consistent(psi)
        if not mask:
            raise ZeroProbabilityRealization(f"{psi!r} has zero probability")
        total = self.mask_weight(mask)
        out = {}
        for o, m in sorted(self._masks[e].items()):
            sub = mask & m
            if sub:
                out[o] = self.mask_weight(sub) / total
        return out

    def split(self, mask: int, e: int) -> Dict[int, int]:
        """Partition a consistent-scenario mask by the outcome of item ``e``."""
        out = {}
        for o, m in sorted(self._masks[e].items()):
            sub = mask & m
            if sub:
                out[o] = sub
        return out

    def condition(self, psi: PartialRealization) -> "ScenarioDistribution":
        mask = self.consistent(psi)
        if not mask:
            raise ZeroProbabilityRealization(f"{psi!r} has zero probability")
        idx = [i for i in range(len(self.scenarios)) if mask >> i & 1]
        return ScenarioDistribution(
            [self.scenarios[i] for i in idx],
            [self.weights[i] for i in idx],
            n_outcomes=self.n_outcomes,
        )

    # -- enumeration and sampling -----------------------------------------
    def __len__(self) -> int:
        return len(self.scenarios)

    def support_size(self) -> int:
        return len(self.scenarios)

    def realizations(self) -> Iterator[Tuple[PartialRealization, Fraction]]:
        for vec, w in zip(self.scenarios, self.weights):
            yield PartialRealization.full(vec), w

    def sample(self, seed: int) -> PartialRealization:
        if self._cdf is None:
            acc, cdf = Fraction(0), []
            for w in self.weights:
                acc += w
                cdf.append(float(acc))
            cdf[-1] = 1.0
            self._cdf = cdf
        u = random.Random(seed).random()
        i = min(bisect.bisect_right(self._cdf, u), len(self.scenarios) - 1)
        return PartialRealization.full(self.scenarios[i])

    def __repr__(self) -> str:
        return f"ScenarioDistribution(n_items={self.n_items}, scenarios={len(self.scenarios)})"


class ProductDistribution:
    """Independent items, each with its own marginal over outcomes."""

    def __init__(self, marginals: Sequence[Sequence]):
        rows = []
        for e, vec in enumerate(marginals):
            vec = tuple(Fraction(x) for x in vec)
            if any(x < 0 for x in vec):
                raise ValueError(f"item {e} has a negative probability")
            if sum(vec, Fraction(0)) != 1:
                raise ValueError(f"marginal of item {e} does not sum to 1")
            rows.append(vec)
        self.marginals: Tuple[Tuple[Fraction, ...], ...] = tuple(rows)
        self.n_items = len(rows)
        self.n_outcomes = max((len(v) for v in rows), default=1)

    def _prob(self, e: int, o: int) -> Fraction:
        vec = self.marginals[e]
        return vec[o] if o < len(vec) else Fraction(0)

    def posterior_weight(self, psi: PartialRealization) -> Fraction:
        w = Fraction(1)
        for e, o in psi.pairs:
            w *= self._prob(e, o)
            if not w:
                break
        return w

    def outcome_distribution(self, psi: PartialRealization, e: int) -> Dict[int, Fraction]:
        if self.posterior_weight(psi) == 0:
            raise ZeroProbabilityRealization(f"{psi!r} has zero probability")
        return {o: p for o, p in enumerate(self.marginals[e]) if p}

    def support_size(self) -> int:
        size = 1
        for vec in self.marginals:
            size *= sum(1 for p in vec if p)
        return size

    def realizations(self) -> Iterator[Tuple[PartialRealization, Fraction]]:
        for phi, w in product_to_scenarios(self).realizations():
            yield phi, w

    def sample(self, seed: int) -> PartialRealization:
        rng = random.Random(seed)
        out = []
        for vec in self.marginals:
            u, acc, pick = rng.random(), 0.0, None
            for o, p in enumerate(vec):
                if not p:
                    continue
                acc += float(p)
                pick = o
                if u < acc:
                    break
            out.append(pick)
        return PartialRealization.full(out)

    def __repr__(self) -> str:
        return f"ProductDistribution(n_items={self.n_items})"


Distribution = Union[ScenarioDistribution, ProductDistribution]


def posterior_weight(dist: Distribution, psi: PartialRealization) -> Fraction:
    return dist.posterior_weight(psi)


def condition(dist: ScenarioDistribution, psi: PartialRealization) -> ScenarioDistribution:
    return dist.condition(psi)


def sample(dist: Distribution, seed: int) -> PartialRealization:
    return dist.sample(seed)


def product_to_scenarios(
    dist: ProductDistribution,
    items: Optional[Sequence[int]] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> ScenarioDistribution:
    """Enumerate an independent distribution as an explicit scenario set.

    ``items`` restricts the enumeration to a subset of items (renumbered
    0..len(items)-1 in the given order).  Zero-probability outcomes are
    dropped.  Raises :class:`EnumerationTooLarge` above ``cap`` scenarios.
    """
    items = list(range(dist.n_items)) if items is None else list(items)
    choices = []
    size = 1
    for e in items:
        opts = [(o, p) for o, p in enumerate(dist.marginals[e]) if p]
        choices.append(opts)
        size *= len(opts)
        if size > cap:
            raise EnumerationTooLarge(f"{size}+ scenarios exceeds cap {cap}")
    scenarios, weights = [], []
    for combo in itertools.product(*choices):
        w = Fraction(1)
        for _, p in combo:
            w *= p
        scenarios.append(tuple(o for o, _ in combo))
        weights.append(w)
    return ScenarioDistribution(scenarios, weights, n_outcomes=dist.n_outcomes)


def as_scenarios(dist: Distribution, cap: int = DEFAULT_ENUMERATION_CAP) -> ScenarioDistribution:
    if isinstance(dist, ScenarioDistribution):
        return dist
    return product_to_scenarios(dist, cap=cap)
