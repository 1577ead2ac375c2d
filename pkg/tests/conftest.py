"""Shared instance generators and brute-force reference oracles.

The brute-force helpers here deliberately avoid the package's own posterior
and DP code: they work on plain lists of (outcome vector, weight) pairs.
"""

from __future__ import annotations

import itertools
import random
import sys
from fractions import Fraction

import pytest

from adacover import PartialRealization, ProductDistribution
from adacover.applications import build_odt, build_ssc


def random_odt_rows(rng: random.Random, m_max: int, n_max: int, m_min: int = 2):
    """Random identifiable 0/1 matrix (rows deduplicated) with >= m_min rows."""
    while True:
        m = rng.randint(m_min, m_max)
        n = rng.randint(1, n_max)
        rows = []
        for _ in range(m):
            r = tuple(rng.randint(0, 1) for _ in range(n))
            if r not in rows:
                rows.append(r)
        if len(rows) >= m_min:
            return rows


def random_odt(rng, m_max=8, n_max=6, unit=True):
    rows = random_odt_rows(rng, m_max, n_max)
    n = len(rows[0])
    costs = [1] * n if unit else [rng.randint(1, 3) for _ in range(n)]
    return build_odt(rows, costs=costs)


def _fhat(coverage, weights, phi):
    covered = set()
    for e, o in enumerate(phi):
        covered |= coverage.get((e, o), set())
    return sum((weights[x] for x in covered), Fraction(0))


def random_ssc(rng, n_max=4, ground=4, n_outcomes=2):
    """Independent stochastic cover instance with Q set to the worst-case coverage."""
    while True:
        n = rng.randint(1, n_max)
        elems = [f"x{i}" for i in range(ground)]
        weights = {x: Fraction(rng.randint(1, 3)) for x in elems}
        coverage = {
            (e, o): set(x for x in elems if rng.random() < 0.5)
            for e in range(n)
            for o in range(n_outcomes)
        }
        marg = []
        for _ in range(n):
            cuts = sorted(rng.randint(1, 7) for _ in range(n_outcomes - 1))
            bounds = [0] + cuts + [8]
            marg.append([Fraction(b - a, 8) for a, b in zip(bounds, bounds[1:])])
        supports = [[o for o in range(n_outcomes) if marg[e][o]] for e in range(n)]
        worst = min(_fhat(coverage, weights, phi) for phi in itertools.product(*supports))
        if worst <= 0:
            continue
        Q = worst if rng.random() < 0.7 else Fraction(rng.randint(1, int(worst)))
        costs = [rng.randint(1, 3) for _ in range(n)]
        return build_ssc(coverage, weights, ProductDistribution(marg), Q, costs)


def explicit_scenarios(dist):
    """List of (outcome tuple, weight) pairs from any distribution backend."""
    out = []
    for phi, w in dist.realizations():
        out.append((tuple(o for _, o in phi.pairs), w))
    return out


def brute_benefit(f, scenarios, psi: PartialRealization, e: int):
    """Delta(e|psi) by filtering and reweighting an explicit scenario list."""
    cons = [(v, w) for v, w in scenarios if all(v[i] == o for i, o in psi.pairs)]
    total = sum(w for _, w in cons)
    base = f(psi)
    return sum(w / total * (f(psi.extend(e, v[e])) - base) for v, w in cons)


def brute_optimum(fs, scenarios, costs, p=1):
    """min over policies of sum_r E[C_r^p] by plain recursion without memoization."""
    costs = [Fraction(c) for c in costs]
    n = len(costs)

    def rec(psi, cons, t):
        open_fs = [f for f in fs if not f.covers(psi)]
        if not open_fs:
            return Fraction(0)
        best = None
        for e in range(n):
            if e in psi:
                continue
            t2 = t + costs[e]
            groups = {}
            for v, w in cons:
                groups.setdefault(v[e], []).append((v, w))
            val = Fraction(0)
            for o, sub in groups.items():
                child = psi.extend(e, o)
                mass = sum(w for _, w in sub)
                newly = sum(1 for f in open_fs if f.covers(child))
                val += mass * newly * t2**p + rec(child, sub, t2)
            if best is None or val < best:
                best = val
        assert best is not None, "uncoverable instance"
        return best

    return rec(PartialRealization(), list(scenarios), Fraction(0))


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.fixture
def odt3():
    """m=3 hypotheses, tests T_e1={h1}, T_e2={h2}, unit costs."""
    return build_odt([[1, 0], [0, 1], [0, 0]])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
