"""Instance grids that compare solver values against closed forms and bounds.

Each suite returns a list of :class:`InstanceRecord`; a record passes when
every one of its checks does.  Suites are deterministic: instance order and
all random graphs are fixed by seeds.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from . import formulas as F
from .families import (
    CaterpillarSpec,
    FamilyHSpec,
    gen_caterpillar,
    gen_complete,
    gen_cycle,
    gen_family_h,
    gen_generalized_petersen,
    gen_grs,
    gen_hjk,
    gen_hypercube,
    gen_kneser,
    gen_lexicographic,
    gen_multipartite,
    gen_path,
    gen_petersen,
    is_in_family_T,
    random_connected_bipartite_graph,
    random_connected_graph,
    random_tree,
)
from .graph import Graph, all_pairs_distances, basic_invariants
from .position import gpg_is_2_by_lines, gpg_prime_is_2_by_lines, in_class_G, in_class_G2, side_partition
from .solver import GameSolver, Player, gp_lower_number, gp_number, oracle_solve

REPORT_VERSION = 1


@dataclass
class Check:
    """One comparison.  ``kind`` is ``match`` (formula == solver), ``bound``
    (bound >= solver, or <= for lower bounds) or ``predicate``."""

    name: str
    kind: str
    expected: object
    observed: object
    applicable: bool = True
    lower: bool = False

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "not-applicable"
        if self.kind == "match":
            return "match" if self.expected == self.observed else "mismatch"
        if self.kind == "bound":
            ok = self.observed >= self.expected if self.lower else self.observed <= self.expected
            return "bound-ok" if ok else "bound-violated"
        return "holds" if self.expected == self.observed else "fails"

    @property
    def ok(self) -> bool:
        return self.verdict in ("match", "bound-ok", "holds", "not-applicable")

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "expected": self.expected,
            "observed": self.observed,
            "applicable": self.applicable,
            "verdict": self.verdict,
        }


@dataclass
class InstanceRecord:
    suite: str
    graph: str
    params: str
    n: int
    solver: Dict[str, int] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    nodes: int = 0
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "kind": "instance",
            "suite": self.suite,
            "graph": self.graph,
            "params": self.params,
            "n": self.n,
            "solver": self.solver,
            "checks": [c.as_dict() for c in self.checks],
            "verdict": "pass" if self.passed else "fail",
            "nodes": self.nodes,
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]


class _Instance:
    """Collects solver values and checks for one graph."""

    def __init__(self, suite: str, g: Graph, params: str = ""):
        self.g = g
        self.dist = all_pairs_distances(g)
        self.solver = GameSolver(g, self.dist)
        self.record = InstanceRecord(suite, g.name or f"n{g.n}", params, g.n)
        self._start = time.perf_counter()

    def gpg(self) -> int:
        return self._value("gpg", Player.BUILDER)

    def gpg_prime(self) -> int:
        return self._value("gpg_prime", Player.BLOCKER)

    def _value(self, key: str, first: Player) -> int:
        if key not in self.record.solver:
            self.record.solver[key] = self.solver.value((), first)
        return self.record.solver[key]

    def gp(self) -> int:
        if "gp" not in self.record.solver:
            self.record.solver["gp"] = gp_number(self.g, self.dist)
        return self.record.solver["gp"]

    def gp_lower(self) -> int:
        if "gp_lower" not in self.record.solver:
            self.record.solver["gp_lower"] = gp_lower_number(self.g, self.dist)
        return self.record.solver["gp_lower"]

    def match(self, name: str, expected, observed) -> None:
        self.record.checks.append(Check(name, "match", expected, observed))

    def formula(self, name: str, formula: F.Formula, observed) -> None:
        self.record.checks.append(Check(name, "match", formula.value, observed, formula.applicable))

    def bound(self, name: str, bound, observed, lower: bool = False, applicable: bool = True) -> None:
        self.record.checks.append(Check(name, "bound", bound, observed, applicable, lower))

    def predicate(self, name: str, expected, observed) -> None:
        self.record.checks.append(Check(name, "predicate", expected, observed))

    def done(self) -> InstanceRecord:
        self.record.nodes = self.solver.stats.nodes
        self.record.wall_time = time.perf_counter() - self._start
        return self.record


# -- corpora --------------------------------------------------------------------


def random_corpus(count: int = 100, seed: int = 0, n_range: Tuple[int, int] = (4, 10)) -> List[Graph]:
    """Connected graphs with n in ``n_range`` and n-1 <= m <= min(3n, C(n,2))."""
    out = []
    for i in range(count):
        s = seed + i
        rng = random.Random(s)
        n = rng.randint(*n_range)
        m = rng.randint(n - 1, min(3 * n, n * (n - 1) // 2))
        out.append(random_connected_graph(n, m, s))
    return out


def random_tree_corpus(count: int = 50, seed: int = 1000, n_range: Tuple[int, int] = (3, 14)) -> List[Graph]:
    rng = random.Random(seed)
    return [random_tree(rng.randint(*n_range), seed + i) for i in range(count)]


def random_bipartite_corpus(count: int = 30, seed: int = 2000) -> List[Graph]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, 12)
        out.append(random_connected_bipartite_graph(n, rng.randint(0, n), seed + i))
    return out


def multipartite_grid() -> List[Tuple[int, ...]]:
    grid = []
    for t in (2, 3, 4):
        for combo in combinations_with_replacement((4, 3, 2), t):
            grid.append(tuple(sorted(combo, reverse=True)))
    return grid


def family_h_grid() -> List[FamilyHSpec]:
    """Blocks k <= 3 with sizes in 2..4 (non-increasing), pendant lengths and
    hub paths <= 3, thinned to a deterministic sample of the full product."""
    specs = []
    for k in range(0, 4):
        for blocks in combinations_with_replacement((4, 3, 2), k):
            for pendant in product(range(4), repeat=k):
                for paths in ((), (1,), (3,), (1, 2), (2, 3, 1)):
                    if k == 0 and not paths:
                        continue
                    specs.append(FamilyHSpec(tuple(blocks), tuple(pendant), paths))
    rng = random.Random(3000)
    keep = [s for s in specs if s.order <= 20]
    small = [s for s in keep if s.k <= 1]
    rest = [s for s in keep if s.k > 1]
    return small + sorted(rng.sample(rest, min(60, len(rest))), key=_h_key)


def _h_key(spec: FamilyHSpec):
    return (spec.k, spec.blocks, spec.pendant, spec.paths_at_hub)


def caterpillar_grid(max_order: int = 14) -> Iterator[Tuple[CaterpillarSpec, tuple]]:
    """Every spec with k in 2..4, t entries in 0..3, t_1, t_k >= 1, each edge
    subdivided 0 or 1 times and total order <= ``max_order``.

    The second item is an isomorphism key: trees whose specs share it are
    isomorphic (leaf edges at one central vertex are interchangeable, and
    the central path may be read backwards).
    """
    for k in (2, 3, 4):
        for t in product(range(4), repeat=k):
            if t[0] < 1 or t[-1] < 1:
                continue
            central_edges = k - 1
            leaf_edges = sum(t)
            base = k + leaf_edges
            if base > max_order:
                continue
            for pattern in product((0, 1), repeat=central_edges + leaf_edges):
                if base + sum(pattern) > max_order:
                    continue
                central = pattern[:central_edges]
                counts = []
                pos = central_edges
                for ti in t:
                    counts.append(sum(pattern[pos:pos + ti]))
                    pos += ti
                key = (t, central, tuple(counts))
                rkey = (t[::-1], central[::-1], tuple(counts[::-1]))
                yield CaterpillarSpec(t, pattern), min(key, rkey)


def line_corpus() -> List[Graph]:
    graphs = random_corpus(60, seed=500, n_range=(2, 12))
    graphs += [gen_cycle(n) for n in range(3, 10)]
    graphs += [gen_path(n) for n in range(2, 6)]
    graphs += [gen_complete(n) for n in range(2, 6)]
    graphs += [gen_multipartite(p) for p in [(2, 2), (3, 2), (2, 2, 2), (3, 3), (4, 2, 2)]]
    graphs += [gen_petersen(), gen_hypercube(3), gen_grs(2, 1), gen_hjk(1, 1)]
    graphs += [gen_family_h(FamilyHSpec((3, 2), (3, 0), (3, 2, 1, 1)))]
    return graphs


# -- suites -----------------------------------------------------------------------


def suite_cycles() -> List[InstanceRecord]:
    out = []
    for n in range(3, 13):
        inst = _Instance("cycles", gen_cycle(n), f"n={n}")
        inst.formula("values", F.cycle_values(n), (inst.gpg(), inst.gpg_prime()))
        out.append(inst.done())
    return out


def suite_petersen() -> List[InstanceRecord]:
    g = gen_petersen()
    inst = _Instance("petersen", g)
    inst.match("values", (6, 6), (inst.gpg(), inst.gpg_prime()))
    inst.match("maxmin-bound", 6, F.gpg_upper_maxmin(g, inst.dist).value)
    sizes = sorted({side_partition(g, inst.dist, u, v).sizes() for u, v in g.edges})
    inst.match("edge-partition-sizes", [(3, 3, 4)], sizes)
    inst.predicate("pivot-class", True, in_class_G(g, inst.dist))
    inst.predicate("lines-gpg-2", False, gpg_is_2_by_lines(g, inst.dist))
    return [inst.done()]


def _check_bipartite(suite: str, g: Graph) -> InstanceRecord:
    inst = _Instance(suite, g)
    inst.formula("gpg", F.bipartite_gpg(g), inst.gpg())
    inst.predicate("lines-gpg-2", True, gpg_is_2_by_lines(g, inst.dist))
    inst.bound("edge-bound", F.gpg_upper_edge(g, inst.dist).value, inst.gpg())
    return inst.done()


def suite_bipartite() -> List[InstanceRecord]:
    graphs = random_bipartite_corpus()
    graphs += [gen_hypercube(3)]
    graphs += random_tree_corpus(10, seed=4000, n_range=(2, 12))
    graphs += [gen_cycle(n) for n in (4, 6, 8, 10, 12)]
    return [_check_bipartite("bipartite", g) for g in graphs]


def suite_multipartite() -> List[InstanceRecord]:
    out = []
    for parts in multipartite_grid():
        g = gen_multipartite(parts)
        inst = _Instance("multipartite", g, "parts=" + ",".join(map(str, parts)))
        inst.formula("values", F.multipartite_values(parts), (inst.gpg(), inst.gpg_prime()))
        inst.match("gp", max(parts[0], len(parts)), inst.gp())
        inst.match("gp_lower", min(parts[-1], len(parts)), inst.gp_lower())
        out.append(inst.done())
    for n in range(1, 9):
        inst = _Instance("multipartite", gen_complete(n), f"n={n}")
        inst.formula("values", F.complete_values(n), (inst.gpg(), inst.gpg_prime()))
        out.append(inst.done())
    return out


def suite_kneser() -> List[InstanceRecord]:
    out = []
    for n in range(4, 8):
        inst = _Instance("kneser", gen_kneser(n, 2), f"n={n}")
        inst.formula("values", F.kneser2_values(n), (inst.gpg(), inst.gpg_prime()))
        inst.formula("gp_lower", F.kneser2_gp_lower(n), inst.gp_lower())
        out.append(inst.done())
    return out


def suite_lines() -> List[InstanceRecord]:
    out = []
    for g in line_corpus():
        inst = _Instance("lines", g)
        inst.predicate("gpg-2", inst.gpg() == 2, gpg_is_2_by_lines(g, inst.dist))
        inst.predicate("gpg-prime-2", inst.gpg_prime() == 2, gpg_prime_is_2_by_lines(g, inst.dist))
        out.append(inst.done())
    return out


def suite_family_h() -> List[InstanceRecord]:
    out = []
    for spec in family_h_grid():
        g = gen_family_h(spec)
        params = f"blocks={spec.blocks} pendant={spec.pendant} paths={spec.paths_at_hub}"
        inst = _Instance("family-h", g, params)
        inst.match("gpg_prime", 2, inst.gpg_prime())
        inst.match("gpg", 2, inst.gpg())
        inst.predicate("lines-gpg-prime-2", True, gpg_prime_is_2_by_lines(g, inst.dist))
        out.append(inst.done())
    return out


GRS_GRID = [(4, 3), (5, 3), (6, 5), (4, 1), (6, 1)]


def suite_grs_hjk() -> List[InstanceRecord]:
    out = []
    for r, s in GRS_GRID:
        inst = _Instance("grs-hjk", gen_grs(r, s), f"r={r} s={s}")
        inst.formula("values", F.grs_values(r, s), (inst.gpg(), inst.gpg_prime()))
        out.append(inst.done())
    for j in range(1, 4):
        for k in range(1, j + 1):
            inst = _Instance("grs-hjk", gen_hjk(j, k), f"j={j} k={k}")
            inst.formula("values", F.hjk_values(j, k), (inst.gpg(), inst.gpg_prime()))
            out.append(inst.done())
    return out


def suite_trees() -> List[InstanceRecord]:
    out = []
    # one record per isomorphism key; each spec's formula is still checked
    by_key: Dict[tuple, List[CaterpillarSpec]] = {}
    for spec, key in caterpillar_grid():
        by_key.setdefault(key, []).append(spec)
    for key in sorted(by_key):
        specs = by_key[key]
        rep = specs[0]
        g = gen_caterpillar(rep)
        inst = _Instance("trees", g, f"t={rep.t} subdiv={key[1]}/{key[2]} specs={len(specs)}")
        value = inst.gpg_prime()
        formulas = {F.caterpillar_gpg_prime(s).value for s in specs}
        inst.match("caterpillar-formula", [value], sorted(formulas))
        out.append(inst.done())
    for g in random_tree_corpus():
        inst = _Instance("trees", g)
        bound = F.tree_gpg_prime_upper(g).value
        value = inst.gpg_prime()
        inst.bound("upper", bound, value)
        if g.n >= 3:
            inst.predicate("equality-iff-family", value == bound, is_in_family_T(g))
        out.append(inst.done())
    return out


def suite_classes() -> List[InstanceRecord]:
    cases = [
        (gen_cycle(5), True, True),
        (gen_petersen(), True, True),
        (gen_complete(5), True, True),
        (gen_generalized_petersen(10, 2), False, True),
        (gen_lexicographic(gen_complete(2), gen_cycle(5)), True, True),
    ]
    out = []
    for g, in_g, in_g2 in cases:
        inst = _Instance("classes", g)
        inst.predicate("class-G", in_g, in_class_G(g, inst.dist))
        inst.predicate("class-G2", in_g2, in_class_G2(g, inst.dist))
        out.append(inst.done())
    for g in random_corpus(40, seed=700):
        inst = _Instance("classes", g)
        member = in_class_G(g, inst.dist)
        inst.predicate("containment", True, (not member) or in_class_G2(g, inst.dist))
        if member:
            inst.bound("blocker-first-bound", F.gpg_prime_upper_pivot_class(g, inst.dist).value, inst.gpg_prime())
        out.append(inst.done())
    return out


def suite_bounds(oracle: bool = True) -> List[InstanceRecord]:
    out = []
    for idx, g in enumerate(random_corpus()):
        inst = _Instance("bounds", g, f"seed={idx}")
        gpg, gpgp = inst.gpg(), inst.gpg_prime()
        gp, gpl = inst.gp(), inst.gp_lower()
        inst.bound("gpg<=gp", gp, gpg)
        inst.bound("gpg>=gp_lower", gpl, gpg, lower=True)
        inst.bound("gpg_prime<=gp", gp, gpgp)
        inst.bound("gpg_prime>=gp_lower", gpl, gpgp, lower=True)
        maxmin = F.gpg_upper_maxmin(g, inst.dist).value
        edge = F.gpg_upper_edge(g, inst.dist).value
        inst.bound("maxmin-bound", maxmin, gpg)
        inst.bound("edge-bound", edge, gpg)
        inst.bound("maxmin<=edge", edge, maxmin)
        pivot = F.gpg_prime_upper_pivot_class(g, inst.dist)
        inst.bound("pivot-class-bound", pivot.value, gpgp, applicable=pivot.applicable)
        if oracle:
            inst.match("oracle", (gpg, gpgp), (oracle_solve(g, Player.BUILDER), oracle_solve(g, Player.BLOCKER)))
        reverse = GameSolver(g, inst.dist, order=list(reversed(range(g.n))))
        inst.match("reverse-order", (gpg, gpgp), (reverse.value((), Player.BUILDER), reverse.value((), Player.BLOCKER)))
        out.append(inst.done())
    return out


SUITES: Dict[str, Callable[[], List[InstanceRecord]]] = {
    "bounds": suite_bounds,
    "bipartite": suite_bipartite,
    "cycles": suite_cycles,
    "petersen": suite_petersen,
    "multipartite": suite_multipartite,
    "kneser": suite_kneser,
    "lines": suite_lines,
    "family-h": suite_family_h,
    "grs-hjk": suite_grs_hjk,
    "trees": suite_trees,
    "classes": suite_classes,
}


def run_suites(names: List[str]) -> List[InstanceRecord]:
    if names == ["all"]:
        names = list(SUITES)
    records = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
        records.extend(SUITES[name]())
    return records


# -- report format --------------------------------------------------------------
#
# JSON lines.  Line 1: {"kind": "header", "version", "command", "timestamp"}.
# Then one "instance" line per record (fields in the order of
# ``InstanceRecord.as_dict``), then {"kind": "summary", "pass", "fail", "suites"}.
# Only the header's timestamp varies between identical runs unless
# ``timings`` adds per-instance wall times.


def summarize(records: List[InstanceRecord]) -> dict:
    suites: Dict[str, Dict[str, int]] = {}
    for r in records:
        s = suites.setdefault(r.suite, {"pass": 0, "fail": 0})
        s["pass" if r.passed else "fail"] += 1
    passed = sum(1 for r in records if r.passed)
    return {"kind": "summary", "pass": passed, "fail": len(records) - passed, "suites": suites}


def format_report(
    command: str,
    records: List[InstanceRecord],
    timestamp: Optional[str] = None,
    timings: bool = False,
) -> str:
    header = {"kind": "header", "version": REPORT_VERSION, "command": command, "timestamp": timestamp}
    lines = [json.dumps(header)]
    lines.extend(json.dumps(r.as_dict(timings)) for r in records)
    lines.append(json.dumps(summarize(records)))
    return "\n".join(lines) + "\n"


def solver_summary(g: Graph, values: Dict[str, int]) -> Dict[str, object]:
    inv = basic_invariants(g)
    return {"n": g.n, "m": g.m, "connected": inv.is_connected, **values}
