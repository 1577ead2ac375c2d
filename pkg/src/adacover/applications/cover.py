"""Coverage-style reductions: stochastic submodular cover, min-sum set cover,
and summing several utilities into one."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Hashable, Iterable, Mapping, Optional, Sequence, Tuple

from ..core import Instance, UtilityModel, as_costs
from ..distribution import (
    DEFAULT_ENUMERATION_CAP,
    ProductDistribution,
    ScenarioDistribution,
    product_to_scenarios,
)
from ..errors import CoverabilityViolation, MismatchedQuota, UncoverableElement
from ..realization import PartialRealization


def rational_gcd(values: Iterable) -> Fraction:
    """Largest rational ``g`` such that every value is an integer multiple of it."""
    vals = [Fraction(v) for v in values if v]
    if not vals:
        return Fraction(0)
    den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in vals), 1)
    num = reduce(gcd, (abs(int(v * den)) for v in vals))
    return Fraction(num, den)


def coverage_granularity(weights: Iterable, Q) -> Fraction:
    """Gap between ``Q`` and the largest weight-sum strictly below it.

    Every covered weight is a multiple of ``g = gcd(weights)``, so the largest
    value below ``Q`` is at most ``g * (ceil(Q/g) - 1)``.
    """
    Q = Fraction(Q)
    g = rational_gcd(weights)
    if Q <= 0 or g == 0:
        return Fraction(1) if Q <= 0 else Q
    steps = -((-Q) // g)  # ceil(Q / g)
    return Q - g * (steps - 1)


def build_ssc(
    coverage: Mapping[Tuple[int, int], Iterable[Hashable]],
    weights: Optional[Mapping[Hashable, object]],
    dist: ProductDistribution,
    Q,
    costs: Sequence,
    check: bool = True,
    eta=None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Instance:
    """Stochastic submodular cover with weighted coverage.

    ``coverage[(e, o)]`` is the set of ground elements covered when item ``e``
    is observed in state ``o``; ``weights`` maps elements to non-negative
    weights (default 1).  The utility is ``min(weight of union, Q)``.
    """
    costs = as_costs(costs)
    cov: Dict[Tuple[int, int], frozenset] = {
        (int(e), int(o)): frozenset(s) for (e, o), s in coverage.items()
    }
    ground = set().union(*cov.values()) if cov else set()
    if weights is None:
        w = {x: Fraction(1) for x in ground}
    else:
        w = {x: Fraction(weights[x]) for x in ground}
    if any(v < 0 for v in w.values()):
        raise ValueError("element weights must be non-negative")
    order = sorted(ground, key=repr)
    bit = {x: 1 << i for i, x in enumerate(order)}
    masks = {k: sum(bit[x] for x in s) for k, s in cov.items()}
    elem_w = [w[x] for x in order]
    Q = Fraction(Q)

    def raw(psi: PartialRealization) -> Fraction:
        mask = 0
        for pair in psi.pairs:
            mask |= masks.get(pair, 0)
        total = Fraction(0)
        while mask:
            low = mask & -mask
            total += elem_w[low.bit_length() - 1]
            mask ^= low
        return total

    def evaluate(psi: PartialRealization) -> Fraction:
        return min(raw(psi), Q)

    if check:
        for phi, _ in product_to_scenarios(dist, cap=cap).realizations():
            if raw(phi) < Q:
                raise CoverabilityViolation(f"quota {Q} unreachable under {phi!r}")
    if eta is None:
        eta = coverage_granularity(elem_w, Q)
    f = UtilityModel(evaluate, Q=Q, eta=Fraction(eta), name="ssc")
    return Instance((f,), dist, costs, name="ssc", meta={"kind": "ssc", "Q": Q})


def build_minsum_setcover(
    sets: Sequence[Iterable[Hashable]],
    costs: Optional[Sequence] = None,
    universe: Optional[Iterable[Hashable]] = None,
) -> Instance:
    """Min-sum set cover as deterministic multi-utility cover.

    One 0/1 utility per element, covered once a chosen set contains it; the
    prior is a point mass (every item has the single outcome 0).
    """
    sets = [frozenset(s) for s in sets]
    costs = as_costs(costs if costs is not None else [1] * len(sets))
    if len(costs) != len(sets):
        raise ValueError("one cost per set required")
    elements = sorted(set(universe) if universe is not None else set().union(*sets), key=repr)
    for x in elements:
        if not any(x in s for s in sets):
            raise UncoverableElement(f"element {x!r} is in no set")

    def make(x) -> UtilityModel:
        holders = frozenset(i for i, s in enumerate(sets) if x in s)

        def evaluate(psi: PartialRealization) -> int:
            return int(any(e in holders for e in psi))

        return UtilityModel(evaluate, Q=1, eta=1, name=f"cover({x!r})")

    dist = ScenarioDistribution([(0,) * len(sets)])
    return Instance(tuple(make(x) for x in elements), dist, costs, name="minsum",
                    meta={"kind": "minsum", "elements": elements})


def sum_functions(fs: Sequence[UtilityModel]) -> UtilityModel:
    """Single utility ``g = sum f_r`` with quota ``k * Q``.

    Its granularity is the smallest component granularity.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one utility")
    if len({f.Q for f in fs}) > 1:
        raise MismatchedQuota("utilities must share Q before summing")
    evals = [f.evaluate for f in fs]

    def evaluate(psi: PartialRealization):
        return sum(ev(psi) for ev in evals)

    return UtilityModel(
        evaluate,
        Q=fs[0].Q * len(fs),
        eta=min(f.eta for f in fs),
        exact=all(f.exact for f in fs),
        name="sum(" + ",".join(f.name for f in fs) + ")",
    )
