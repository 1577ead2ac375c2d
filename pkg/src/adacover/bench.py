"""Instance generation and Table-style benchmark reports."""

from __future__ import annotations

import csv
import io
import json
import logging
import random
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .analysis import (
    cost_distribution,
    entropy_bound,
    harmonic_bound,
    huffman_bound,
    moment_direct,
)
from .applications import (
    OdtInstance,
    build_minsum_setcover,
    build_multi_quota_viral,
    build_odt,
    build_viral,
    dedup_rows,
)
from .core import Instance, greedy_policy, masc_greedy_policy
from .errors import InstanceTooLarge, NonIntegralCosts
from .io import (
    format_fraction,
    parse_cascade,
    parse_odt_csv,
    parse_setcover,
    parse_ssc_json,
    read_text,
)
from .oracle import optimal_expected_cost, optimal_masc_sum, optimal_moment

log = logging.getLogger(__name__)

KINDS = ("odt", "viral", "ssc", "minsum")


def generate_wiser_like(
    m0: int,
    n: int,
    density: float,
    unknown_rate: float,
    seed: int,
    variation: int = 0,
    restrict: Optional[int] = None,
) -> List[List[int]]:
    """Random hypothesis-by-test matrix shaped like the toxin/symptom data.

    A base matrix with the given positive density and a mask of "unknown"
    entries are drawn from ``seed``.  Each ``variation`` fills the unknown
    entries with fair coins and, when ``restrict`` is set, keeps a random
    subset of that many tests.  Duplicate hypothesis rows are removed.
    """
    if m0 < 1 or n < 1:
        raise ValueError("need at least one hypothesis and one test")
    if not (0 <= density <= 1 and 0 <= unknown_rate <= 1):
        raise ValueError("density and unknown_rate must lie in [0, 1]")
    base_rng = random.Random(seed)
    base = [[int(base_rng.random() < density) for _ in range(n)] for _ in range(m0)]
    unknown = [[base_rng.random() < unknown_rate for _ in range(n)] for _ in range(m0)]
    fill_rng = random.Random(f"{seed}:{variation}")
    rows = [
        [fill_rng.randint(0, 1) if unk else x for x, unk in zip(row, mask)]
        for row, mask in zip(base, unknown)
    ]
    if restrict is not None:
        if not 1 <= restrict <= n:
            raise ValueError(f"restrict must lie in [1, {n}]")
        cols = sorted(fill_rng.sample(range(n), restrict))
        rows = [[row[c] for c in cols] for row in rows]
    return [list(r) for r in dedup_rows(rows)]


@dataclass
class BenchConfig:
    """What to benchmark and how to report it."""

    kind: str = "odt"
    instances: List[str] = field(default_factory=list)
    generator: Optional[Dict] = None  # keys: m0, n, density, unknown_rate, variations, restrict
    moments: List[int] = field(default_factory=lambda: [1, 2, 3])
    oracle: bool = False
    seed: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "csv"
    mc_samples: Optional[int] = None
    quotas: Optional[List[int]] = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not self.moments or any(p < 1 for p in self.moments):
            raise ValueError("moments must be a non-empty list of integers >= 1")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.generator is not None and self.kind != "odt":
            raise ValueError("the generator only produces ODT instances")
        needs_seed = self.generator is not None or self.mc_samples is not None
        if needs_seed and self.seed is None:
            raise ValueError("a seed is required for randomized steps")
        if not self.instances and self.generator is None:
            raise ValueError("give instance paths or a generator spec")


def load_instance(
    path: str,
    kind: str,
    quotas: Optional[Sequence[int]] = None,
    mc_samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Instance:
    text = read_text(path)
    if kind == "odt":
        return build_odt(parse_odt_csv(text))
    if kind == "ssc":
        return parse_ssc_json(text)
    if kind == "minsum":
        sets, costs = parse_setcover(text)
        return build_minsum_setcover(sets, costs)
    if kind == "viral":
        net = parse_cascade(text)
        quotas = list(quotas) if quotas else [net.n]
        mode = "mc" if mc_samples else "exact"
        if len(quotas) == 1:
            return build_viral(net, quotas[0], mode=mode, samples=mc_samples, seed=seed)
        return build_multi_quota_viral(net, quotas, mode=mode, samples=mc_samples, seed=seed)
    raise ValueError(f"unknown kind {kind!r}")


def theorem_bound(p: int, Q, eta) -> float:
    """Approximation factor ``(p+1)^(p+1) * (1 + ln(Q/eta))^p``."""
    return (p + 1) ** (p + 1) * harmonic_bound(Q, eta) ** p


def _ratio(num: Fraction, den: Fraction) -> Fraction:
    if den == 0:
        return Fraction(1) if num == 0 else Fraction(10**18)
    return Fraction(num) / den


def evaluate_instance(inst: Instance, moments: Sequence[int], oracle: bool = False, label: str = "") -> Dict:
    """One report row: greedy moments, ODT bounds, optional oracle columns."""
    fs = inst.utilities
    multi = len(fs) > 1
    if multi:
        policy = masc_greedy_policy(fs, inst.distribution, inst.costs)
    else:
        policy = greedy_policy(fs[0], inst.distribution, inst.costs)
    terminal, per = cost_distribution(policy, inst.distribution, fs, inst.costs)
    greedy = {
        p: (sum((moment_direct(cd, p) for cd in per), Fraction(0)) if multi else moment_direct(terminal, p))
        for p in moments
    }
    row: Dict = {"instance": label or inst.name, "kind": inst.meta.get("kind", inst.name)}
    if inst.meta.get("kind") == "odt":
        m = inst.meta["m"]
        row["m"] = m
        row["n"] = inst.meta["n"]
        row["entropy_bound"] = entropy_bound(m)
        row["sum_of_costs"] = greedy.get(1, moment_direct(terminal, 1)) * m
        row["mean_cost"] = moment_direct(terminal, 1)
        for p in moments:
            hb = huffman_bound(m, p)
            row[f"huffman_bound_p{p}"] = hb
            row[f"greedy_moment_p{p}"] = greedy[p] * m
            row[f"ratio_p{p}"] = _ratio(greedy[p] * m, hb)
    else:
        for p in moments:
            row[f"greedy_moment_p{p}"] = greedy[p]
    if oracle:
        Q, eta = fs[0].Q, min(f.eta for f in fs)
        for p in moments:
            try:
                if multi:
                    opt = optimal_masc_sum(fs, inst.distribution, inst.costs, p)
                elif p == 1:
                    opt, _ = optimal_expected_cost(fs[0], inst.distribution, inst.costs)
                else:
                    opt = optimal_moment(fs[0], inst.distribution, inst.costs, p)
            except (InstanceTooLarge, NonIntegralCosts) as exc:
                row[f"opt_p{p}"] = None
                row[f"opt_p{p}_reason"] = str(exc)
                continue
            ratio = _ratio(greedy[p], opt)
            row[f"opt_p{p}"] = opt
            row[f"opt_ratio_p{p}"] = ratio
            row[f"theorem_ok_p{p}"] = float(ratio) <= theorem_bound(p, Q, eta)
    return row


def _iter_instances(cfg: BenchConfig):
    for path in cfg.instances:
        yield Path(path).stem, load_instance(path, cfg.kind, cfg.quotas, cfg.mc_samples, cfg.seed)
    if cfg.generator is not None:
        g = dict(cfg.generator)
        variations = int(g.pop("variations", 1))
        for v in range(variations):
            rows = generate_wiser_like(seed=cfg.seed, variation=v, **g)
            yield f"gen{v + 1}", build_odt(OdtInstance.from_rows(rows))


def run_bench(cfg: BenchConfig) -> List[Dict]:
    """Evaluate every configured instance; write the report if ``cfg.out``."""
    cfg.validate()
    rows = []
    for label, inst in _iter_instances(cfg):
        log.info("evaluating %s", label)
        rows.append(evaluate_instance(inst, cfg.moments, cfg.oracle, label))
    text = format_report(rows, cfg.fmt)
    if cfg.out:
        Path(cfg.out).write_text(text)
    return rows


def _decimal6(x) -> str:
    if isinstance(x, float):
        return f"{x:.6f}"
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal("0.000001")))


def _cell(x, exact: bool):
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if exact:
        return format_fraction(x) if isinstance(x, Fraction) else x
    return _decimal6(x)


def format_report(rows: List[Dict], fmt: str = "csv") -> str:
    """CSV with 6-decimal rationals, or JSON with exact rational strings."""
    if fmt == "json":
        return json.dumps([{k: _cell(v, True) for k, v in r.items()} for r in rows], indent=2) + "\n"
    columns: List[str] = []
    for r in rows:
        columns += [k for k in r if k not in columns]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: ("" if r.get(k) is None else _cell(r.get(k), False)) for k in columns})
    return buf.getvalue()
