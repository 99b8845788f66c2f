"""Closed-form game values and bounds.

Every function returns a :class:`Formula` that carries the value together
with the name of the result it comes from and whether that result's
hypotheses hold for the input.  A formula that does not apply is reported
as such, never as a number.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .families import CaterpillarSpec, FamilySpec, is_in_family_T
from .graph import DistanceMatrix, Graph, GraphError, all_pairs_distances, basic_invariants, is_connected, is_tree
from .position import in_class_G, side_partition


class FormulaError(ValueError):
    """Input outside the domain of a formula (not merely outside its hypotheses)."""


@dataclass(frozen=True)
class Formula:
    value: Any
    source: str
    applicable: bool = True
    reason: str = ""

    @classmethod
    def not_applicable(cls, source: str, reason: str) -> "Formula":
        return cls(None, source, False, reason)


def complete_values(n: int) -> Formula:
    if n < 1:
        raise FormulaError(f"K_n needs n >= 1, got {n}")
    return Formula((n, n), "complete")


def multipartite_values(parts: Sequence[int]) -> Formula:
    """(min(r_1, t), max(r_t, t)) for K_{r_1..r_t} with t >= 2 and every part >= 2."""
    src = "complete-multipartite"
    parts = sorted(parts, reverse=True)
    t = len(parts)
    if t < 2:
        return Formula.not_applicable(src, "needs at least two parts")
    if parts[-1] < 2:
        return Formula.not_applicable(src, "every part must have at least two vertices")
    return Formula((min(parts[0], t), max(parts[-1], t)), src)


def kneser2_values(n: int) -> Formula:
    src = "kneser-k2"
    if n < 4:
        return Formula.not_applicable(src, "needs n >= 4")
    return Formula((6, 6), src)


def kneser2_gp_lower(n: int) -> Formula:
    """Smallest maximal general position set size of K(n,2)."""
    src = "kneser-k2-lower-gp"
    if n < 3:
        return Formula.not_applicable(src, "needs n >= 3")
    if n == 3:
        value = 3
    elif n == 4:
        value = 6
    elif n == 5:
        value = 4
    elif n <= 11:
        value = n // 2
    else:
        value = 6
    return Formula(value, src)


def cycle_values(n: int) -> Formula:
    """Odd n: (3, 3); even n >= 6: (2, 3).  C3 and C4 are taken from the
    complete and complete bipartite results."""
    if n < 3:
        raise FormulaError(f"C_n needs n >= 3, got {n}")
    if n == 3:
        return Formula((3, 3), "complete")
    if n == 4:
        return Formula(multipartite_values([2, 2]).value, "complete-multipartite")
    if n % 2:
        return Formula((3, 3), "cycle-odd")
    return Formula((2, 3), "cycle-even")


def grs_values(r: int, s: int) -> Formula:
    """(r+2, s+2) when r > s >= 3 with s odd; (r+2, 3) when s = 1."""
    src = "glued-c4-triangles"
    if r < 1 or s < 1:
        raise FormulaError(f"G(r,s) needs r, s >= 1, got r={r}, s={s}")
    if s == 1:
        return Formula((r + 2, 3), src + "-s1")
    if s % 2 == 0:
        return Formula.not_applicable(src, "s must be odd")
    if s < 3 or r <= s:
        return Formula.not_applicable(src, "needs r > s >= 3")
    return Formula((r + 2, s + 2), src)


def hjk_values(j: int, k: int) -> Formula:
    src = "clique-with-three-hubs"
    if not j >= k >= 1:
        return Formula.not_applicable(src, "needs j >= k >= 1")
    return Formula((1 + j + k, j + 2), src)


def caterpillar_gpg_prime(spec: CaterpillarSpec) -> Formula:
    """min over central vertices i of max(leaves before i, leaves after i), plus 1.

    Edge subdivisions do not change the value.
    """
    src = "caterpillar-blocker-first"
    if not spec.formula_ready():
        return Formula.not_applicable(src, "needs leaves at both ends of the central path")
    t = spec.t
    total = sum(t)
    best = None
    before = 0
    for ti in t:
        after = total - before - ti
        cand = max(before, after)
        if best is None or cand < best:
            best = cand
        before += ti
    return Formula(best + 1, src)


def caterpillar_optimal_openings(spec: CaterpillarSpec) -> list[int]:
    """Indices (0-based) of central vertices attaining the minimum above."""
    t = spec.t
    total = sum(t)
    scores = []
    before = 0
    for ti in t:
        scores.append(max(before, total - before - ti))
        before += ti
    low = min(scores)
    return [i for i, sc in enumerate(scores) if sc == low]


def _require_tree(g: Graph, min_order: int) -> None:
    if not is_tree(g):
        raise FormulaError("input is not a tree")
    if g.n < min_order:
        raise FormulaError(f"tree needs order >= {min_order}, got {g.n}")


def tree_gpg_prime_upper(g: Graph) -> Formula:
    """leaves - max degree + 2."""
    _require_tree(g, 2)
    inv = basic_invariants(g)
    return Formula(inv.leaf_count - inv.max_degree + 2, "tree-upper-bound")


def tree_equality_holds(g: Graph) -> Formula:
    _require_tree(g, 3)
    return Formula(is_in_family_T(g), "tree-equality-family")


def bipartite_gpg(g: Graph) -> Formula:
    src = "connected-bipartite"
    inv = basic_invariants(g)
    if g.n < 2 or not inv.is_connected or not inv.is_bipartite:
        return Formula.not_applicable(src, "needs a connected bipartite graph of order >= 2")
    return Formula(2, src)


def _edge_equi_sizes(g: Graph, dist: Optional[DistanceMatrix]) -> tuple:
    if g.n < 2:
        raise FormulaError("bound needs n >= 2")
    if not is_connected(g):
        raise FormulaError("bound needs a connected graph")
    dist = dist if dist is not None else all_pairs_distances(g)
    return dist, {(u, v): len(side_partition(g, dist, u, v).equi) for u, v in g.edges}


def gpg_upper_maxmin(g: Graph, dist: Optional[DistanceMatrix] = None) -> Formula:
    """2 + max over u of min over neighbours v of |equidistant(u, v)|."""
    dist, sizes = _edge_equi_sizes(g, dist)
    best = 0
    for u in range(g.n):
        nbrs = g.neighbors(u)
        best = max(best, min(sizes[(min(u, v), max(u, v))] for v in nbrs))
    return Formula(2 + best, "builder-first-maxmin-bound")


def gpg_upper_edge(g: Graph, dist: Optional[DistanceMatrix] = None) -> Formula:
    """2 + max over edges of |equidistant set|."""
    _, sizes = _edge_equi_sizes(g, dist)
    return Formula(2 + max(sizes.values()), "builder-first-edge-bound")


def gpg_prime_upper_pivot_class(g: Graph, dist: Optional[DistanceMatrix] = None) -> Formula:
    """The edge bound, valid for the Blocker-first game on the equidistant-pivot class."""
    src = "blocker-first-edge-bound"
    dist, sizes = _edge_equi_sizes(g, dist)
    if not in_class_G(g, dist):
        return Formula.not_applicable(src, "graph is not in the equidistant-pivot class")
    return Formula(2 + max(sizes.values()), src)


def realisable_pair_witness(a: int, b: int) -> Optional[FamilySpec]:
    """A family instance with (gpg, gpg') = (a, b), for pairs known to be
    realisable; ``None`` for pairs left open or known impossible."""
    if a < 2 or b < 2:
        raise FormulaError(f"pair entries must be >= 2, got ({a}, {b})")
    if a == b:
        return FamilySpec("complete", (a,))
    if a < b:
        return FamilySpec("multipartite", (b,) * a)
    # a > b from here on
    if b == 2:
        return None
    if b % 2:
        return FamilySpec("grs", (a - 2, b - 2))
    j, k = b - 2, a - b + 1
    if j >= k >= 1:
        return FamilySpec("hjk", (j, k))
    return None


def graph_bounds(g: Graph, dist: Optional[DistanceMatrix] = None) -> dict:
    """Every applicable generic bound for a connected graph with n >= 2."""
    dist = dist if dist is not None else all_pairs_distances(g)
    out = {
        "gpg_maxmin": gpg_upper_maxmin(g, dist),
        "gpg_edge": gpg_upper_edge(g, dist),
        "gpg_prime_pivot_class": gpg_prime_upper_pivot_class(g, dist),
    }
    try:
        out["tree_upper"] = tree_gpg_prime_upper(g)
    except (FormulaError, GraphError):
        pass
    return out
