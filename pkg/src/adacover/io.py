"""Plain-text instance formats.

* scenario set: ``num den item:outcome item:outcome ...`` per line
* product marginals: one line per item of ``num/den`` probabilities
* ODT matrix CSV: header of test names, one 0/1 row per hypothesis, optional
  row starting with ``#costs`` followed by one cost per test
* cascade: ``nodes`` section of ``id cost`` lines, ``arcs`` section of
  ``u v num/den`` lines
* set cover: ``cost: e1 e2 ...`` per set
* stochastic cover (JSON): ``{"Q": .., "weights": {..}, "items": [{"cost": ..,
  "marginals": [..], "covers": [[..], ..]}]}``

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from .applications import CascadeNetwork, OdtInstance, build_ssc
from .core import Instance
from .distribution import ProductDistribution, ScenarioDistribution

PathLike = Union[str, Path]


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def format_fraction(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- scenario sets and product marginals ------------------------------------

def parse_scenarios(text: str) -> ScenarioDistribution:
    scenarios, weights = [], []
    for line in _lines(text):
        tok = line.split()
        if len(tok) < 2:
            raise ValueError(f"bad scenario line: {line!r}")
        w = Fraction(int(tok[0]), int(tok[1]))
        pairs = [tuple(int(v) for v in t.split(":")) for t in tok[2:]]
        items = [e for e, _ in pairs]
        if items != list(range(len(items))):
            raise ValueError(f"scenario items must be 0..n-1 ascending: {line!r}")
        scenarios.append(tuple(o for _, o in pairs))
        weights.append(w)
    return ScenarioDistribution(scenarios, weights)


def format_scenarios(dist: ScenarioDistribution) -> str:
    out = []
    for vec, w in zip(dist.scenarios, dist.weights):
        pairs = " ".join(f"{e}:{o}" for e, o in enumerate(vec))
        out.append(f"{w.numerator} {w.denominator} {pairs}".rstrip())
    return "\n".join(out) + "\n"


def parse_product(text: str) -> ProductDistribution:
    return ProductDistribution([[Fraction(t) for t in line.split()] for line in _lines(text)])


def format_product(dist: ProductDistribution) -> str:
    return "\n".join(" ".join(format_fraction(p) for p in vec) for vec in dist.marginals) + "\n"


# -- ODT matrices ------------------------------------------------------------

def parse_odt_csv(text: str, dedup: bool = True) -> OdtInstance:
    reader = csv.reader(io.StringIO(text))
    header, rows, costs = None, [], None
    for row in reader:
        cells = [c.strip() for c in row]
        if not cells or not any(cells):
            continue
        if cells[0].startswith("#costs"):
            costs = [Fraction(c) for c in cells[1:] if c]
            continue
        if cells[0].startswith("#"):
            continue
        if header is None:
            header = cells
            continue
        rows.append([int(c) for c in cells])
    if header is None:
        raise ValueError("ODT CSV has no header row")
    return OdtInstance.from_rows(rows, costs=costs, test_names=header, dedup=dedup)


def format_odt_csv(matrix: Sequence[Sequence[int]], costs=None, test_names=None) -> str:
    n = len(matrix[0]) if matrix else len(test_names or [])
    names = list(test_names) if test_names else [f"t{e}" for e in range(n)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    if costs is not None:
        writer.writerow(["#costs"] + [format_fraction(c) for c in costs])
    for row in matrix:
        writer.writerow(list(row))
    return buf.getvalue()


# -- cascade networks --------------------------------------------------------

def parse_cascade(text: str) -> CascadeNetwork:
    section = None
    labels: List[str] = []
    costs: List[Fraction] = []
    raw_arcs: List[Tuple[str, str, Fraction]] = []
    for line in _lines(text):
        low = line.lower()
        if low in ("nodes", "arcs"):
            section = low
            continue
        tok = line.split()
        if section == "nodes" and len(tok) == 2:
            labels.append(tok[0])
            costs.append(Fraction(tok[1]))
        elif section == "arcs" and len(tok) == 3:
            raw_arcs.append((tok[0], tok[1], Fraction(tok[2])))
        else:
            raise ValueError(f"unexpected line in cascade file: {line!r}")
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise ValueError("duplicate node id in cascade file")
    arcs = [(index[u], index[v], p) for u, v, p in raw_arcs]
    net = CascadeNetwork.build(costs, arcs)
    return CascadeNetwork(net.costs, net.arcs, net.probs, tuple(labels))


def format_cascade(net: CascadeNetwork) -> str:
    labels = net.labels or tuple(str(v) for v in range(net.n))
    out = ["nodes"] + [f"{labels[v]} {format_fraction(c)}" for v, c in enumerate(net.costs)]
    out.append("arcs")
    out += [f"{labels[u]} {labels[v]} {format_fraction(p)}" for (u, v), p in zip(net.arcs, net.probs)]
    return "\n".join(out) + "\n"


# -- set cover ---------------------------------------------------------------

def parse_setcover(text: str) -> Tuple[List[frozenset], List[Fraction]]:
    sets, costs = [], []
    for line in _lines(text):
        if ":" not in line:
            raise ValueError(f"set line needs 'cost: elements': {line!r}")
        cost, elems = line.split(":", 1)
        costs.append(Fraction(cost.strip()))
        sets.append(frozenset(elems.split()))
    return sets, costs


def format_setcover(sets, costs) -> str:
    return "\n".join(
        f"{format_fraction(c)}: {' '.join(sorted(map(str, s)))}" for s, c in zip(sets, costs)
    ) + "\n"


# -- stochastic submodular cover --------------------------------------------

def parse_ssc_json(text: str) -> Instance:
    data = json.loads(text)
    items = data["items"]
    marginals = [[Fraction(p) for p in it["marginals"]] for it in items]
    coverage = {}
    for e, it in enumerate(items):
        for o, elems in enumerate(it["covers"]):
            coverage[(e, o)] = [str(x) for x in elems]
    weights = data.get("weights")
    if weights is not None:
        weights = {str(k): Fraction(v) for k, v in weights.items()}
        for s in coverage.values():
            for x in s:
                weights.setdefault(x, Fraction(1))
    return build_ssc(
        coverage,
        weights,
        ProductDistribution(marginals),
        Fraction(data["Q"]),
        [Fraction(it.get("cost", 1)) for it in items],
    )


def read_text(path: PathLike) -> str:
    return Path(path).read_text()
