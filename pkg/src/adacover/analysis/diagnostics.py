"""Per-trace score diagnostic and an empirical adaptive-submodularity checker."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..core import ExecutionTrace, UtilityModel, marginal_benefit
from ..distribution import DEFAULT_ENUMERATION_CAP, Distribution, as_scenarios
from ..errors import InvalidTrace
from ..realization import EMPTY, PartialRealization

EXHAUSTIVE_CAP = 10**5


def harmonic_bound(Q, eta) -> float:
    """``1 + ln(Q / eta)``, the cap on any greedy trace score."""
    if Q <= 0:
        return 1.0
    return 1.0 + math.log(Q / eta)


def score_trace(trace: ExecutionTrace, f: UtilityModel) -> Fraction:
    """Sum of ``(f_{i+1} - f_i) / (Q - f_i)`` along the trace.

    This equals the time integral of the per-realization greedy score, since
    each step's score is held for exactly its item's cost.
    """
    values = [f(psi) for psi in trace.prefixes()]
    total = Fraction(0)
    for i, (before, after) in enumerate(zip(values, values[1:])):
        gap = f.Q - before
        if gap <= f.tolerance:
            raise InvalidTrace(f"step {i} selects an item after f reached Q")
        total += Fraction(after - before) / gap if f.exact else (after - before) / gap
    return total


@dataclass(frozen=True)
class Violation:
    psi: PartialRealization
    psi2: PartialRealization
    item: int
    delta: object  # benefit at psi
    delta2: object  # benefit at the extension psi2


def _positive_realizations(scen, n: int) -> List[PartialRealization]:
    """Every positive-probability partial realization (all projections)."""
    seen = set()
    for mask in range(1 << n):
        items = [e for e in range(n) if mask >> e & 1]
        for vec in scen.scenarios:
            seen.add(tuple((e, vec[e]) for e in items))
    return [PartialRealization(p) for p in sorted(seen, key=lambda p: (len(p), p))]


def check_adaptive_submodular(
    f: UtilityModel,
    dist: Distribution,
    trials: int = 1000,
    seed: int = 0,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> List[Violation]:
    """Search for ``psi <= psi2`` and ``e`` with Delta(e|psi) < Delta(e|psi2).

    Small instances (support size times 2^n at most ``exhaustive_cap``) are
    checked exhaustively over one-item extensions ``psi2 = psi + (e', o')``.
    That is complete: any violating pair is joined by a chain of one-item
    extensions, and some link of the chain must violate too.  Larger
    instances are probed with ``trials`` random prefix walks.  An empty list
    means no violation was found.
    """
    scen = as_scenarios(dist, cap=enumeration_cap)
    n = scen.n_items
    tol = f.tolerance
    cache: Dict[Tuple[PartialRealization, int], object] = {}

    def delta(psi, e):
        key = (psi, e)
        if key not in cache:
            cache[key] = marginal_benefit(f, dist, psi, e)
        return cache[key]

    violations: List[Violation] = []

    def compare(psi, psi2, e):
        d1, d2 = delta(psi, e), delta(psi2, e)
        if d1 < d2 - tol:
            violations.append(Violation(psi, psi2, e, d1, d2))

    if len(scen) * (1 << n) <= exhaustive_cap:
        for psi in _positive_realizations(scen, n):
            free = [e for e in range(n) if e not in psi]
            for e2 in free:
                for o in scen.outcome_distribution(psi, e2):
                    psi2 = psi.extend(e2, o)
                    for e in free:
                        if e != e2:
                            compare(psi, psi2, e)
        return violations

    rng = random.Random(seed)
    for _ in range(trials):
        phi = scen.sample(rng.getrandbits(63))
        order = list(range(n))
        rng.shuffle(order)
        if n < 2:
            break
        j = rng.randint(1, n - 1)  # psi2 = first j items, e = item j
        i = rng.randint(0, j - 1)  # psi = first i items
        psi = phi.restrict(order[:i])
        psi2 = phi.restrict(order[:j])
        compare(psi, psi2, order[j])
    return violations
