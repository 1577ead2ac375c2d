"""Cost distributions, non-completion curves and their moments."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from ..core import Policy, UtilityModel, _as_list, run_policy
from ..distribution import Distribution, as_scenarios


@dataclass(frozen=True)
class CostDistribution:
    """Finite law of a non-negative cost: ascending distinct atoms."""

    atoms: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        costs = [c for c, _ in self.atoms]
        if costs != sorted(set(costs)):
            raise ValueError("atom costs must be distinct and ascending")
        if any(w <= 0 for _, w in self.atoms) or any(c < 0 for c in costs):
            raise ValueError("weights must be positive and costs non-negative")
        if sum((w for _, w in self.atoms), Fraction(0)) != 1:
            raise ValueError("atom weights must sum to 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[object, object]]) -> "CostDistribution":
        """Merge (cost, weight) pairs; zero weights are dropped."""
        acc: dict = {}
        for c, w in pairs:
            c, w = Fraction(c), Fraction(w)
            if w:
                acc[c] = acc.get(c, Fraction(0)) + w
        return cls(tuple(sorted(acc.items())))

    def moment(self, p: int) -> Fraction:
        return moment_direct(self, p)

    @property
    def mean(self) -> Fraction:
        return self.moment(1)

    def tail(self) -> "StepCurve":
        """Step function ``t -> Pr[C > t]``."""
        remaining = Fraction(1)
        points = []
        for c, w in self.atoms:
            if c == 0:
                remaining -= w
                continue
            if not points:
                points.append((Fraction(0), remaining))
            remaining -= w
            points.append((c, remaining))
        if not points:
            points.append((Fraction(0), remaining))
        return StepCurve.from_points(points)


@dataclass(frozen=True)
class StepCurve:
    """Right-continuous step function on [0, inf).

    ``breakpoints[i] = (t_i, v_i)`` means the value is ``v_i`` on
    ``[t_i, t_{i+1})``; the last value extends to infinity.
    """

    breakpoints: Tuple[Tuple[Fraction, Fraction], ...]

    @classmethod
    def from_points(cls, points: Iterable[Tuple[object, object]]) -> "StepCurve":
        out: List[Tuple[Fraction, Fraction]] = []
        for t, v in points:
            t, v = Fraction(t), Fraction(v)
            if out and t == out[-1][0]:
                out[-1] = (t, v)
            elif out and v == out[-1][1]:
                continue
            else:
                out.append((t, v))
        if not out or out[0][0] != 0:
            raise ValueError("a step curve must start at t = 0")
        return cls(tuple(out))

    def __call__(self, t) -> Fraction:
        value = self.breakpoints[0][1]
        for bt, v in self.breakpoints:
            if bt > t:
                break
            value = v
        return value

    def __add__(self, other: "StepCurve") -> "StepCurve":
        times = sorted({t for t, _ in self.breakpoints} | {t for t, _ in other.breakpoints})
        return StepCurve.from_points((t, self(t) + other(t)) for t in times)

    def is_non_increasing(self) -> bool:
        vals = [v for _, v in self.breakpoints]
        return all(a >= b for a, b in zip(vals, vals[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "value"])
        for t, v in self.breakpoints:
            writer.writerow([str(t), str(v)])
        return buf.getvalue()


def moment_direct(cd: CostDistribution, p: int) -> Fraction:
    """``E[C^p]`` summed atom by atom."""
    if p < 1:
        raise ValueError("moment order must be >= 1")
    return sum((w * c**p for c, w in cd.atoms), Fraction(0))


def moment_integral(curve: StepCurve, p: int) -> Fraction:
    """``p * integral t^(p-1) * curve(t) dt``, evaluated piece by piece."""
    if p < 1:
        raise ValueError("moment order must be >= 1")
    bps = curve.breakpoints
    if bps[-1][1] != 0:
        raise ValueError("curve does not reach 0; the integral diverges")
    total = Fraction(0)
    for (t0, v), (t1, _) in zip(bps, bps[1:]):
        total += v * (t1**p - t0**p)
    return total


def cost_distribution(
    policy: Policy, dist: Distribution, fs, costs: Sequence
) -> Tuple[CostDistribution, List[CostDistribution]]:
    """Law of the terminal cost and of every utility's cover time.

    Runs the policy on every scenario of ``dist`` (independent priors are
    enumerated first).
    """
    fs = _as_list(fs)
    scen = as_scenarios(dist)
    terminal, per = [], [[] for _ in fs]
    for phi, w in scen.realizations():
        trace = run_policy(policy, phi, fs, costs)
        terminal.append((trace.cost, w))
        for r, t in enumerate(trace.cover_times):
            if t is None:
                raise ValueError(f"utility {r} is never covered under {phi!r}")
            per[r].append((t, w))
    return CostDistribution.from_pairs(terminal), [CostDistribution.from_pairs(x) for x in per]


def completion_curve(
    policy: Policy, dist: Distribution, fs, costs: Sequence, index: Optional[int] = None
) -> StepCurve:
    """Non-completion curve ``t -> Pr[not done by t]``.

    With ``index=None`` "done" means the policy terminated; otherwise it
    means utility ``index`` is covered.
    """
    terminal, per = cost_distribution(policy, dist, fs, costs)
    return (terminal if index is None else per[index]).tail()


def masc_objective(policy: Policy, dist: Distribution, fs, costs: Sequence, p: int) -> Fraction:
    """Sum over utilities of the p-th moment of their cover times."""
    _, per = cost_distribution(policy, dist, fs, costs)
    return sum((moment_direct(cd, p) for cd in per), Fraction(0))
