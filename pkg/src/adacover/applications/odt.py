"""Optimal decision tree with a uniform prior over hypotheses.

Utilities are kept in integer units: the value of ``psi`` is the number of
hypotheses eliminated by the observed tests, so ``Q = m - 1`` and
``eta = 1``.  Dividing by ``m`` gives the normalized form; the greedy argmax
is unaffected by that positive scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..core import Instance, UtilityModel, as_costs
from ..distribution import ScenarioDistribution
from ..errors import UnidentifiableInstance
from ..realization import PartialRealization


@dataclass(frozen=True)
class OdtInstance:
    """Hypothesis-by-test outcome matrix plus per-test costs.

    ``matrix[h][e]`` is the outcome of test ``e`` under hypothesis ``h``
    (1 = positive, 0 = negative; larger values for multiway tests).
    """

    matrix: Tuple[Tuple[int, ...], ...]
    costs: Tuple[Fraction, ...]
    test_names: Tuple[str, ...] = ()

    @classmethod
    def from_rows(cls, rows, costs=None, test_names=None, dedup: bool = True) -> "OdtInstance":
        matrix = [tuple(int(x) for x in r) for r in rows]
        n = len(matrix[0]) if matrix else 0
        if any(len(r) != n for r in matrix):
            raise ValueError("ragged ODT matrix")
        if dedup:
            matrix = dedup_rows(matrix)
        elif len(set(matrix)) != len(matrix):
            raise UnidentifiableInstance("two hypotheses share an outcome vector")
        costs = as_costs(costs if costs is not None else [1] * n)
        if len(costs) != n:
            raise ValueError("one cost per test required")
        names = tuple(test_names) if test_names else tuple(f"t{e}" for e in range(n))
        return cls(tuple(matrix), costs, names)

    @property
    def m(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.costs)

    def positive_set(self, e: int) -> frozenset:
        """T_e: hypotheses on which test ``e`` is positive."""
        return frozenset(h for h, row in enumerate(self.matrix) if row[e] == 1)


def dedup_rows(rows: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Drop repeated hypothesis rows, keeping first occurrences in order."""
    seen, out = set(), []
    for r in rows:
        r = tuple(r)
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def odt_utility(matrix: Sequence[Sequence[int]]) -> UtilityModel:
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    # elim[e][o]: hypotheses ruled out when test e shows outcome o
    elim = []
    for e in range(n):
        outcomes = {row[e] for row in matrix} | {0, 1}
        elim.append({
            o: sum(1 << h for h, row in enumerate(matrix) if row[e] != o) for o in outcomes
        })
    full = (1 << m) - 1

    def evaluate(psi: PartialRealization) -> int:
        mask = 0
        for e, o in psi.pairs:
            mask |= elim[e].get(o, full)
        return mask.bit_count()

    return UtilityModel(evaluate, Q=max(m - 1, 0), eta=1, name="odt", posterior_only=True)


def build_odt(odt, costs=None, dedup: bool = True) -> Instance:
    """Reduce an ODT matrix to a covering instance.

    ``odt`` is an :class:`OdtInstance` or a raw row sequence.  Scenario ``h``
    assigns every test its outcome under hypothesis ``h``, with weight 1/m.
    """
    if not isinstance(odt, OdtInstance):
        odt = OdtInstance.from_rows(odt, costs=costs, dedup=dedup)
    elif costs is not None:
        odt = OdtInstance(odt.matrix, as_costs(costs), odt.test_names)
    if odt.m == 0:
        raise ValueError("ODT instance has no hypotheses")
    if len(set(odt.matrix)) != odt.m:
        raise UnidentifiableInstance("two hypotheses share an outcome vector")
    dist = ScenarioDistribution(odt.matrix, n_outcomes=2)
    if len(dist) != odt.m:  # pragma: no cover - guarded by the check above
        raise UnidentifiableInstance("duplicate hypotheses")
    return Instance(
        (odt_utility(dist.scenarios),),
        dist,
        odt.costs,
        name="odt",
        meta={"m": odt.m, "n": odt.n, "kind": "odt"},
    )
