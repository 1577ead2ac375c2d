"""Adaptive viral marketing under the independent cascade model.

Items are nodes.  Seeding node ``w`` reveals the cascade outcome of ``w``:
every arc whose tail is reachable from ``w`` through active arcs is labelled
1 or 0, all other arcs are unknown (``None``).  Outcomes are interned to small
integers per node so that realizations stay integer-valued.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..core import Instance, UtilityModel, as_costs
from ..distribution import ScenarioDistribution
from ..errors import EnumerationTooLarge
from ..realization import PartialRealization

DEFAULT_ARC_CAP = 20

Arc = Tuple[int, int]


@dataclass(frozen=True)
class CascadeNetwork:
    """Directed graph with node activation costs and arc probabilities."""

    costs: Tuple[Fraction, ...]
    arcs: Tuple[Arc, ...]
    probs: Tuple[Fraction, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.costs)
        if len(self.arcs) != len(self.probs):
            raise ValueError("one probability per arc required")
        for (u, v), p in zip(self.arcs, self.probs):
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) is not allowed in the arc set")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) references an unknown node")
            if not 0 <= p <= 1:
                raise ValueError(f"arc ({u},{v}) has probability {p} outside [0,1]")

    @classmethod
    def build(cls, costs, arcs) -> "CascadeNetwork":
        """``arcs`` is a sequence of ``(u, v, p)`` triples."""
        arcs = list(arcs)
        return cls(
            as_costs(costs),
            tuple((int(u), int(v)) for u, v, _ in arcs),
            tuple(Fraction(p) for _, _, p in arcs),
        )

    @property
    def n(self) -> int:
        return len(self.costs)

    def out_arcs(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.n)]
        for i, (u, _) in enumerate(self.arcs):
            out[u].append(i)
        return out


@dataclass(frozen=True)
class CascadeOutcome:
    """Feedback from directly activating ``seed``.

    ``self_loops[v]`` is 1 for the seed and 0 otherwise; ``arcs[i]`` is
    1/0 for arcs whose tail the cascade reached and ``None`` otherwise.
    """

    seed: int
    self_loops: Tuple[int, ...]
    arcs: Tuple[Optional[int], ...]

    def label(self, net: CascadeNetwork, arc: Arc) -> Optional[int]:
        u, v = arc
        if u == v:
            return self.self_loops[u]
        return self.arcs[net.arcs.index(arc)]


def cascade_outcome(net: CascadeNetwork, x: Sequence[int], w: int) -> CascadeOutcome:
    """Label every arc of A' for seed ``w`` under arc realization ``x``."""
    out = net.out_arcs()
    reached = {w}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        for i in out[u]:
            v = net.arcs[i][1]
            if x[i] and v not in reached:
                reached.add(v)
                queue.append(v)
    arcs = tuple(int(bool(x[i])) if u in reached else None for i, (u, _) in enumerate(net.arcs))
    loops = tuple(int(v == w) for v in range(net.n))
    return CascadeOutcome(w, loops, arcs)


def viral_utility(net: CascadeNetwork, observed: Mapping[int, CascadeOutcome]) -> int:
    """Number of nodes with some in-arc of A' labelled 1 by an observed outcome."""
    influenced = set()
    for outcome in observed.values():
        for v, lab in enumerate(outcome.self_loops):
            if lab == 1:
                influenced.add(v)
        for (_, v), lab in zip(net.arcs, outcome.arcs):
            if lab == 1:
                influenced.add(v)
    return len(influenced)


def _influenced_mask(net: CascadeNetwork, outcome: CascadeOutcome) -> int:
    mask = 0
    for v, lab in enumerate(outcome.self_loops):
        if lab == 1:
            mask |= 1 << v
    for (_, v), lab in zip(net.arcs, outcome.arcs):
        if lab == 1:
            mask |= 1 << v
    return mask


@dataclass
class CascadeScenarios:
    """Interned cascade outcomes shared by every viral utility of a network."""

    net: CascadeNetwork
    distribution: ScenarioDistribution
    outcomes: List[List[CascadeOutcome]]  # outcomes[w][index]
    masks: List[List[int]]  # influenced-node bitmask per interned outcome

    def influence(self, psi: PartialRealization) -> int:
        mask = 0
        for w, o in psi.pairs:
            mask |= self.masks[w][o]
        return mask.bit_count()

    def decode(self, psi: PartialRealization) -> Dict[int, CascadeOutcome]:
        return {w: self.outcomes[w][o] for w, o in psi.pairs}


def _arc_realizations(net: CascadeNetwork, mode: str, samples: Optional[int], seed: Optional[int], arc_cap: int):
    if mode == "exact":
        free = [i for i, p in enumerate(net.probs) if 0 < p < 1]
        if len(free) > arc_cap:
            raise EnumerationTooLarge(
                f"{len(free)} uncertain arcs exceed the exact-mode cap of {arc_cap}"
            )
        base = [1 if p == 1 else 0 for p in net.probs]
        for bits in itertools.product((0, 1), repeat=len(free)):
            x = list(base)
            w = Fraction(1)
            for i, b in zip(free, bits):
                x[i] = b
                w *= net.probs[i] if b else 1 - net.probs[i]
            yield x, w
    elif mode in ("mc", "monte-carlo"):
        if samples is None or samples <= 0 or seed is None:
            raise ValueError("monte-carlo mode needs a positive sample count and a seed")
        rng = random.Random(seed)
        probs = [float(p) for p in net.probs]
        for _ in range(samples):
            yield [int(rng.random() < p) for p in probs], Fraction(1, samples)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def cascade_scenarios(
    net: CascadeNetwork,
    mode: str = "exact",
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    arc_cap: int = DEFAULT_ARC_CAP,
) -> CascadeScenarios:
    """Prior over node outcomes induced by the arc realizations.

    Exact mode enumerates every realization of arcs with probability strictly
    between 0 and 1; Monte-Carlo mode draws ``samples`` equal-weight arc
    realizations, fixing an empirical prior.
    """
    index: List[Dict[CascadeOutcome, int]] = [dict() for _ in range(net.n)]
    outcomes: List[List[CascadeOutcome]] = [[] for _ in range(net.n)]
    scenarios, weights = [], []
    for x, w in _arc_realizations(net, mode, samples, seed, arc_cap):
        if not w:
            continue
        vec = []
        for node in range(net.n):
            oc = cascade_outcome(net, x, node)
            k = index[node].get(oc)
            if k is None:
                k = index[node][oc] = len(outcomes[node])
                outcomes[node].append(oc)
            vec.append(k)
        scenarios.append(tuple(vec))
        weights.append(w)
    dist = ScenarioDistribution(scenarios, weights)
    masks = [[_influenced_mask(net, oc) for oc in per] for per in outcomes]
    return CascadeScenarios(net, dist, outcomes, masks)


def build_viral(
    net: CascadeNetwork,
    Q: int,
    mode: str = "exact",
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    arc_cap: int = DEFAULT_ARC_CAP,
) -> Instance:
    """Single-quota viral marketing: activate at least ``Q`` nodes."""
    if not 0 <= Q <= net.n:
        raise ValueError(f"quota {Q} must lie in [0, {net.n}]")
    cs = cascade_scenarios(net, mode, samples, seed, arc_cap)

    def evaluate(psi: PartialRealization) -> int:
        return min(cs.influence(psi), Q)

    f = UtilityModel(evaluate, Q=Q, eta=1, name=f"viral(Q={Q})")
    return Instance((f,), cs.distribution, net.costs, name="viral",
                    meta={"kind": "viral", "Q": Q, "scenarios": cs})


def build_multi_quota_viral(
    net: CascadeNetwork,
    quotas: Sequence[int],
    mode: str = "exact",
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    arc_cap: int = DEFAULT_ARC_CAP,
) -> Instance:
    """One normalized utility ``min(influence, Q_r) / Q_r`` per quota.

    All utilities have maximal value 1 and granularity ``1 / max(quotas)``.
    """
    quotas = [int(q) for q in quotas]
    if not quotas or any(q <= 0 for q in quotas):
        raise ValueError("quotas must be positive")
    if list(quotas) != sorted(quotas):
        raise ValueError("quotas must be non-decreasing")
    if quotas[-1] > net.n:
        raise ValueError(f"largest quota {quotas[-1]} exceeds {net.n} nodes")
    cs = cascade_scenarios(net, mode, samples, seed, arc_cap)
    eta = Fraction(1, quotas[-1])

    def make(q: int) -> UtilityModel:
        def evaluate(psi: PartialRealization) -> Fraction:
            return Fraction(min(cs.influence(psi), q), q)

        return UtilityModel(evaluate, Q=Fraction(1), eta=eta, name=f"viral(Q={q})/{q}")

    return Instance(tuple(make(q) for q in quotas), cs.distribution, net.costs,
                    name="multi-quota-viral",
                    meta={"kind": "viral", "quotas": quotas, "scenarios": cs})
