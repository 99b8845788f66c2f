"""Geodesic structure: general position sets, side partitions and lines."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .graph import (
    UNREACHABLE,
    DistanceMatrix,
    Graph,
    GraphError,
    VertexLike,
    VertexSet,
    all_pairs_distances,
    bits,
    is_connected,
)


class PositionError(ValueError):
    """Precondition violation in a geodesic predicate."""


def _dist(g: Graph, dist: Optional[DistanceMatrix]) -> DistanceMatrix:
    return dist if dist is not None else all_pairs_distances(g)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise PositionError(f"vertex {v} outside 0..{g.n - 1}")


@lru_cache(maxsize=128)
def geodesic_blockers(dist: DistanceMatrix) -> Tuple[Tuple[int, ...], ...]:
    """``table[a][b]`` is the mask of vertices ``z`` such that ``a, b, z``
    lie on a common shortest path (in any order).

    A set ``T`` is in general position iff ``table[a][b] & T == 0`` for all
    ``a, b`` in ``T``.
    """
    n = dist.n
    d = dist.d
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        da = d[a]
        for b in range(a + 1, n):
            dab = da[b]
            if dab == UNREACHABLE:
                continue
            db = d[b]
            mask = 0
            for z in range(n):
                if z == a or z == b:
                    continue
                daz = da[z]
                if daz == UNREACHABLE:
                    continue
                dbz = db[z]
                if dab == daz + dbz or daz == dab + dbz or dbz == dab + daz:
                    mask |= 1 << z
            table[a][b] = table[b][a] = mask
    return tuple(tuple(row) for row in table)


def is_general_position(g: Graph, dist: Optional[DistanceMatrix], s: VertexLike) -> bool:
    """True iff no member of ``s`` lies on a shortest path between two others.

    Direct O(|s|^3) triple scan; triples spanning components never count.
    """
    dist = _dist(g, dist)
    d = dist.d
    members = VertexSet.of(s).sorted()
    for x in members:
        for y in members:
            if y == x or d[x][y] == UNREACHABLE:
                continue
            for z in members:
                if z == x or z == y or d[y][z] == UNREACHABLE:
                    continue
                if d[x][z] == d[x][y] + d[y][z]:
                    return False
    return True


def forbidden_mask(blockers, chosen: int) -> int:
    """Vertices that cannot join ``chosen`` because of some pair inside it."""
    out = 0
    members = list(bits(chosen))
    for i, a in enumerate(members):
        row = blockers[a]
        for b in members[i + 1:]:
            out |= row[b]
    return out


def closure_is_general_position(blockers, chosen: int, playable: int) -> bool:
    """Whether ``chosen | playable`` is in general position."""
    union = chosen | playable
    members = list(bits(union))
    for i, a in enumerate(members):
        row = blockers[a]
        for b in members[i + 1:]:
            if row[b] & union:
                return False
    return True


def playable_vertices(g: Graph, dist: Optional[DistanceMatrix], s: VertexLike) -> VertexSet:
    """All vertices outside ``s`` whose addition keeps ``s`` in general position."""
    dist = _dist(g, dist)
    chosen = VertexSet.of(s)
    if chosen.mask >> g.n:
        raise PositionError("set contains vertices outside the graph")
    if not is_general_position(g, dist, chosen):
        raise PositionError(f"{chosen} is not in general position")
    blockers = geodesic_blockers(dist)
    return VertexSet(g.all_mask & ~chosen.mask & ~forbidden_mask(blockers, chosen.mask))


def closure_size(g: Graph, dist: Optional[DistanceMatrix], s: VertexLike) -> Optional[int]:
    """Exact final size of every continuation from ``s`` when the playable
    vertices together with ``s`` already form a general position set;
    ``None`` otherwise.
    """
    dist = _dist(g, dist)
    chosen = VertexSet.of(s)
    playable = playable_vertices(g, dist, chosen)
    if closure_is_general_position(geodesic_blockers(dist), chosen.mask, playable.mask):
        return len(chosen) + len(playable)
    return None


@dataclass(frozen=True)
class SidePartition:
    """Split of V(G) for an edge ``uv``: strictly closer to ``u``, strictly
    closer to ``v``, and equidistant."""

    w_uv: VertexSet
    w_vu: VertexSet
    equi: VertexSet

    def sizes(self) -> Tuple[int, int, int]:
        return len(self.w_uv), len(self.w_vu), len(self.equi)


def side_partition(g: Graph, dist: Optional[DistanceMatrix], u: int, v: int) -> SidePartition:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise PositionError(f"{u}{v} is not an edge")
    dist = _dist(g, dist)
    du, dv = dist.d[u], dist.d[v]
    w_uv = w_vu = equi = 0
    for w in range(g.n):
        # off-component vertices have both distances UNREACHABLE
        if du[w] == dv[w]:
            equi |= 1 << w
        elif du[w] < dv[w]:
            w_uv |= 1 << w
        else:
            w_vu |= 1 << w
    return SidePartition(VertexSet(w_uv), VertexSet(w_vu), VertexSet(equi))


def line(g: Graph, dist: Optional[DistanceMatrix], x: int, y: int) -> VertexSet:
    """Vertices ``z`` with d(x,y) = d(x,z) + d(z,y) or d(x,y) = |d(x,z) - d(z,y)|."""
    _check_vertex(g, x)
    _check_vertex(g, y)
    if x == y:
        raise PositionError("a line needs two distinct vertices")
    dist = _dist(g, dist)
    d = dist.d
    dxy = d[x][y]
    if dxy == UNREACHABLE:
        raise PositionError(f"{x} and {y} lie in different components")
    mask = 0
    for z in range(g.n):
        dxz, dzy = d[x][z], d[z][y]
        if dxz == UNREACHABLE:
            continue
        if dxy == dxz + dzy or dxy == abs(dxz - dzy):
            mask |= 1 << z
    return VertexSet(mask)


def is_universal_line(g: Graph, dist: Optional[DistanceMatrix], x: int, y: int) -> bool:
    return line(g, dist, x, y).mask == g.all_mask


def _universal_pairs(g: Graph, dist: Optional[DistanceMatrix]) -> list[int]:
    """``partners[x]`` = mask of ``y`` with ``{x, y}`` inducing a universal line."""
    if g.n < 2:
        raise PositionError("need at least two vertices")
    if not is_connected(g):
        raise GraphError("line tests need a connected graph")
    dist = _dist(g, dist)
    partners = [0] * g.n
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if is_universal_line(g, dist, x, y):
                partners[x] |= 1 << y
                partners[y] |= 1 << x
    return partners


def gpg_is_2_by_lines(g: Graph, dist: Optional[DistanceMatrix] = None) -> bool:
    """Every vertex lies in some pair inducing a universal line."""
    return all(_universal_pairs(g, dist))


def gpg_prime_is_2_by_lines(g: Graph, dist: Optional[DistanceMatrix] = None) -> bool:
    """Some vertex forms a universal line with every other vertex."""
    partners = _universal_pairs(g, dist)
    return any(p | 1 << u == g.all_mask for u, p in enumerate(partners))


def universal_hubs(g: Graph, dist: Optional[DistanceMatrix] = None) -> VertexSet:
    partners = _universal_pairs(g, dist)
    return VertexSet.of(u for u, p in enumerate(partners) if p | 1 << u == g.all_mask)


def _equidistant_pivot_class(g: Graph, dist: Optional[DistanceMatrix], exact_two: bool) -> bool:
    if not is_connected(g):
        raise GraphError("class membership is defined for connected graphs")
    dist = _dist(g, dist)
    d = dist.d
    for x in range(g.n):
        for y in range(g.n):
            dxy = d[x][y]
            if dxy < 2 or (exact_two and dxy != 2):
                continue
            if not any(d[x][z] == dxy for z in bits(g.adjacency[y])):
                return False
    return True


def in_class_G(g: Graph, dist: Optional[DistanceMatrix] = None) -> bool:
    """For all x, y at distance >= 2 some neighbour z of y has d(x,z) = d(x,y)."""
    return _equidistant_pivot_class(g, dist, exact_two=False)


def in_class_G2(g: Graph, dist: Optional[DistanceMatrix] = None) -> bool:
    """As :func:`in_class_G`, restricted to pairs at distance exactly 2."""
    return _equidistant_pivot_class(g, dist, exact_two=True)


def side_partition_sizes(g: Graph, dist: Optional[DistanceMatrix] = None) -> dict:
    """``{(u, v): (|W_uv|, |W_vu|, |equi|)}`` over every edge ``u < v``."""
    dist = _dist(g, dist)
    return {(u, v): side_partition(g, dist, u, v).sizes() for u, v in g.edges}

