"""Graph families used by the game: classic graphs, the two-player-order
constructions, caterpillars, the hub family with game value 2, and
seeded random graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .graph import Graph, GraphError, bits, build_graph, is_tree


class FamilyError(GraphError):
    """Generator parameters out of range."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


# -- classic graphs -----------------------------------------------------------


def gen_path(n: int) -> Graph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def gen_cycle(n: int) -> Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def gen_complete(n: int) -> Graph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return build_graph(n, combinations(range(n), 2), name=f"K{n}")


def gen_empty(n: int) -> Graph:
    _require(n >= 1, f"edgeless graph needs n >= 1, got {n}")
    return build_graph(n, [], name=f"E{n}")


def gen_star(n: int) -> Graph:
    """K_{1,n}; vertex 0 is the centre."""
    _require(n >= 1, f"star needs n >= 1 leaves, got {n}")
    labels = ["c"] + [f"l{i}" for i in range(1, n + 1)]
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)], labels, name=f"K1,{n}")


def gen_multipartite(parts: Sequence[int]) -> Graph:
    """Complete multipartite graph; ``parts`` must be non-increasing."""
    parts = list(parts)
    _require(len(parts) >= 1, "need at least one part")
    _require(all(p >= 1 for p in parts), f"part sizes must be positive: {parts}")
    _require(parts == sorted(parts, reverse=True), f"parts must be listed in non-increasing order: {parts}")
    owner = [i for i, p in enumerate(parts) for _ in range(p)]
    labels = []
    for i, p in enumerate(parts):
        labels.extend(f"p{i + 1}.{j + 1}" for j in range(p))
    edges = [(a, b) for a, b in combinations(range(len(owner)), 2) if owner[a] != owner[b]]
    return build_graph(len(owner), edges, labels, name="K" + ",".join(map(str, parts)))


def gen_cocktail_party(t: int) -> Graph:
    _require(t >= 2, f"cocktail-party graph needs t >= 2 parts, got {t}")
    return gen_multipartite([2] * t).with_name(f"CP{t}")


def gen_hypercube(d: int) -> Graph:
    _require(d >= 1, f"hypercube needs d >= 1, got {d}")
    n = 1 << d
    edges = [(v, v ^ 1 << i) for v in range(n) for i in range(d) if v < v ^ 1 << i]
    labels = [format(v, f"0{d}b") for v in range(n)]
    return build_graph(n, edges, labels, name=f"Q{d}")


def gen_kneser(n: int, k: int) -> Graph:
    """K(n,k): k-subsets of {1..n}, adjacent when disjoint."""
    _require(k >= 1 and n >= 2 * k, f"Kneser graph needs n >= 2k >= 2, got n={n}, k={k}")
    subsets = list(combinations(range(1, n + 1), k))
    edges = [
        (a, b)
        for a, b in combinations(range(len(subsets)), 2)
        if not set(subsets[a]) & set(subsets[b])
    ]
    labels = ["{" + ",".join(map(str, s)) + "}" for s in subsets]
    return build_graph(len(subsets), edges, labels, name=f"K({n},{k})")


def gen_generalized_petersen(n: int, k: int) -> Graph:
    """P(n,k): outer cycle 0..n-1, inner vertices n..2n-1 joined in steps of k."""
    _require(n >= 3 and 1 <= k and 2 * k < n, f"P(n,k) needs n >= 3 and 1 <= k < n/2, got n={n}, k={k}")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((n + i, n + (i + k) % n))
        edges.append((i, n + i))
    labels = [f"o{i}" for i in range(n)] + [f"i{i}" for i in range(n)]
    return build_graph(2 * n, edges, labels, name=f"P({n},{k})")


def gen_petersen() -> Graph:
    return gen_generalized_petersen(5, 2).with_name("Petersen")


def gen_lexicographic(g: Graph, h: Graph) -> Graph:
    """G o H: (a,b) ~ (a',b') iff aa' in E(G), or a = a' and bb' in E(H).

    Vertex (a, b) gets id ``a * n(H) + b``.
    """
    _require(g.n >= 1 and h.n >= 1, "both factors need at least one vertex")
    nh = h.n
    edges = []
    for a, a2 in g.edges:
        for b in range(nh):
            for b2 in range(nh):
                edges.append((a * nh + b, a2 * nh + b2))
    for a in range(g.n):
        for b, b2 in h.edges:
            edges.append((a * nh + b, a * nh + b2))
    labels = [f"({g.label(a)},{h.label(b)})" for a in range(g.n) for b in range(nh)]
    name = f"{g.name or 'G'}o{h.name or 'H'}"
    return build_graph(g.n * nh, edges, labels, name=name)


# -- player-order constructions ---------------------------------------------


def gen_grs(r: int, s: int) -> Graph:
    """r four-cycles and s triangles glued along a common edge xy.

    Ids: x=0, y=1, x_i = 1+i, y_i = 1+r+i (i = 1..r), w_j = 1+2r+j.
    """
    _require(r >= 1 and s >= 1, f"G(r,s) needs r, s >= 1, got r={r}, s={s}")
    x, y = 0, 1
    xs = [2 + i for i in range(r)]
    ys = [2 + r + i for i in range(r)]
    ws = [2 + 2 * r + j for j in range(s)]
    edges = [(x, y)]
    for xi, yi in zip(xs, ys):
        edges += [(x, xi), (y, yi), (xi, yi)]
    for w in ws:
        edges += [(w, x), (w, y)]
    labels = ["x", "y"] + [f"x{i + 1}" for i in range(r)] + [f"y{i + 1}" for i in range(r)] + [f"w{j + 1}" for j in range(s)]
    return build_graph(2 * r + s + 2, edges, labels, name=f"G({r},{s})")


def gen_hjk(j: int, k: int) -> Graph:
    """Clique J1+J2+K1+K2 (sizes j, j, k, k) plus z ~ J1+J2 and x_i ~ J_i+K_i.

    Ids run through J1, J2, K1, K2, then z, x1, x2.
    """
    _require(j >= k >= 1, f"H(j,k) needs j >= k >= 1, got j={j}, k={k}")
    j1 = list(range(0, j))
    j2 = list(range(j, 2 * j))
    k1 = list(range(2 * j, 2 * j + k))
    k2 = list(range(2 * j + k, 2 * j + 2 * k))
    z, x1, x2 = 2 * (j + k), 2 * (j + k) + 1, 2 * (j + k) + 2
    clique = j1 + j2 + k1 + k2
    edges = list(combinations(clique, 2))
    edges += [(z, v) for v in j1 + j2]
    edges += [(x1, v) for v in j1 + k1]
    edges += [(x2, v) for v in j2 + k2]
    labels = (
        [f"J1.{i + 1}" for i in range(j)]
        + [f"J2.{i + 1}" for i in range(j)]
        + [f"K1.{i + 1}" for i in range(k)]
        + [f"K2.{i + 1}" for i in range(k)]
        + ["z", "x1", "x2"]
    )
    return build_graph(z + 3, edges, labels, name=f"H({j},{k})")


# -- trees ----------------------------------------------------------------------


def _subdivide(
    n: int, edges: List[Tuple[int, int]], counts: Sequence[int], labels: List[str]
) -> Tuple[int, List[Tuple[int, int]], List[str]]:
    out = []
    labels = list(labels)
    for (a, b), c in zip(edges, counts):
        prev = a
        for step in range(c):
            labels.append(f"s{labels[a]}-{labels[b]}.{step + 1}")
            out.append((prev, n))
            prev = n
            n += 1
        out.append((prev, b))
    return n, out, labels


@dataclass(frozen=True)
class CaterpillarSpec:
    """Path u_1..u_k with t_i leaves at u_i, each edge subdivided.

    ``subdivisions`` is either one count applied to every edge or a list
    with one count per edge of the unsubdivided tree, in this order:
    central edges u_1u_2, ..., u_{k-1}u_k, then leaf edges grouped by
    u_1, u_2, ..., u_k.
    """

    t: Tuple[int, ...]
    subdivisions: Union[int, Tuple[int, ...]] = 0

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        if not isinstance(self.subdivisions, int):
            object.__setattr__(self, "subdivisions", tuple(self.subdivisions))
        _require(len(self.t) >= 2, f"caterpillar needs k >= 2 central vertices, got {len(self.t)}")
        _require(all(x >= 0 for x in self.t), f"leaf counts must be non-negative: {self.t}")
        counts = self.edge_subdivisions()
        _require(all(c >= 0 for c in counts), "subdivision counts must be non-negative")

    @property
    def k(self) -> int:
        return len(self.t)

    @property
    def base_edge_count(self) -> int:
        return self.k - 1 + sum(self.t)

    def edge_subdivisions(self) -> Tuple[int, ...]:
        if isinstance(self.subdivisions, int):
            return (self.subdivisions,) * self.base_edge_count
        _require(
            len(self.subdivisions) == self.base_edge_count,
            f"expected {self.base_edge_count} subdivision counts, got {len(self.subdivisions)}",
        )
        return self.subdivisions

    @property
    def order(self) -> int:
        return self.k + sum(self.t) + sum(self.edge_subdivisions())

    def formula_ready(self) -> bool:
        return self.t[0] >= 1 and self.t[-1] >= 1


def gen_caterpillar(spec: CaterpillarSpec) -> Graph:
    """Ids: u_1..u_k are 0..k-1, then leaves, then subdivision vertices."""
    k = spec.k
    labels = [f"u{i + 1}" for i in range(k)]
    edges = [(i, i + 1) for i in range(k - 1)]
    n = k
    for i, ti in enumerate(spec.t):
        for leaf in range(ti):
            labels.append(f"l{i + 1}.{leaf + 1}")
            edges.append((i, n))
            n += 1
    n, edges, labels = _subdivide(n, edges, spec.edge_subdivisions(), labels)
    name = "T" + ",".join(map(str, spec.t))
    if spec.subdivisions:
        name += "/sub"
    return build_graph(n, edges, labels, name=name)


def _tree_leaves_and_branches(g: Graph) -> Tuple[int, List[int]]:
    degrees = [g.degree(v) for v in range(g.n)]
    return sum(1 for d in degrees if d == 1), [v for v in range(g.n) if degrees[v] >= 3]


def is_in_family_T(g: Graph) -> bool:
    """Stars, and subdivisions of caterpillars T_{t_1..t_k} with
    t_1 >= 1 and t_k >= t_1 + ... + t_{k-1}.

    Structurally: every vertex of degree >= 3 lies on one path, and one end
    branch vertex b of that path carries at least half of the leaves
    (deg(b) - 1 >= leaves / 2).  Trees with at most two branch vertices
    always qualify.
    """
    _require(is_tree(g), "family membership is defined for trees only")
    _require(g.n >= 3, "family membership needs a tree of order >= 3")
    leaves, branch = _tree_leaves_and_branches(g)
    if len(branch) <= 2:
        return True
    ends = _path_ends_covering(g, branch)
    if ends is None:
        return False
    return any(2 * (g.degree(b) - 1) >= leaves for b in ends)


def _path_ends_covering(g: Graph, targets: List[int]) -> Optional[Tuple[int, int]]:
    """Two targets whose tree path contains every target, or ``None``."""
    target_mask = 0
    for v in targets:
        target_mask |= 1 << v
    # the farthest target from any target is an end of the covering path
    a = _farthest_target(g, targets[0], target_mask)[0]
    b, parent = _farthest_target(g, a, target_mask)
    on_path = 0
    v = b
    while v != -1:
        on_path |= 1 << v
        v = parent[v]
    if target_mask & ~on_path:
        return None
    return a, b


def _farthest_target(g: Graph, source: int, target_mask: int) -> Tuple[int, List[int]]:
    parent = [-1] * g.n
    seen = 1 << source
    frontier = [source]
    best = source
    while frontier:
        nxt = []
        for u in frontier:
            for w in bits(g.adjacency[u] & ~seen):
                seen |= 1 << w
                parent[w] = u
                nxt.append(w)
                if target_mask >> w & 1:
                    best = w
        frontier = nxt
    return best, parent


# -- the hub family with value 2 ----------------------------------------------


@dataclass(frozen=True)
class FamilyHSpec:
    """Blocks K_{2,n_i} sharing the hub u, a pendant path at each block's
    second apex u_i', and extra paths hanging from u.

    Path lengths count the added vertices (= added edges).
    """

    blocks: Tuple[int, ...] = ()
    pendant: Optional[Tuple[int, ...]] = None
    paths_at_hub: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        pendant = (0,) * len(self.blocks) if self.pendant is None else tuple(self.pendant)
        object.__setattr__(self, "pendant", pendant)
        object.__setattr__(self, "paths_at_hub", tuple(self.paths_at_hub))
        _require(all(b >= 2 for b in self.blocks), f"block sizes must be >= 2: {self.blocks}")
        _require(len(pendant) == len(self.blocks), "need one pendant length per block")
        _require(all(p >= 0 for p in pendant), "pendant lengths must be non-negative")
        _require(all(p >= 0 for p in self.paths_at_hub), "hub path lengths must be non-negative")
        _require(self.order >= 2, "family member needs order >= 2")

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def order(self) -> int:
        pendant = self.pendant or ()
        return 1 + sum(b + 1 for b in self.blocks) + sum(pendant) + sum(self.paths_at_hub)


def gen_family_h(spec: FamilyHSpec) -> Graph:
    """Hub u has id 0."""
    labels = ["u"]
    edges: List[Tuple[int, int]] = []

    def new(label: str) -> int:
        labels.append(label)
        return len(labels) - 1

    def hang_path(at: int, length: int, tag: str) -> None:
        prev = at
        for step in range(length):
            v = new(f"{tag}.{step + 1}")
            edges.append((prev, v))
            prev = v

    for i, (size, pend) in enumerate(zip(spec.blocks, spec.pendant)):
        apex = new(f"u'{i + 1}")
        for m in range(size):
            v = new(f"b{i + 1}.{m + 1}")
            edges += [(0, v), (apex, v)]
        hang_path(apex, pend, f"q{i + 1}")
    for i, length in enumerate(spec.paths_at_hub):
        hang_path(0, length, f"h{i + 1}")
    return build_graph(len(labels), edges, labels, name="H-family")


# -- seeded random graphs --------------------------------------------------------
#
# All randomness comes from ``random.Random(seed)`` (Mersenne Twister), which
# produces the same stream for a given integer seed on every platform.


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    _require(n >= 1, f"tree needs n >= 1, got {n}")
    rng = random.Random(seed)
    if n == 1:
        return build_graph(1, [], name=f"tree{n}s{seed}")
    if n == 2:
        return build_graph(2, [(0, 1)], name=f"tree{n}s{seed}")
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    edges = []
    for v in prufer:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return build_graph(n, edges, name=f"tree{n}s{seed}")


def random_connected_graph(n: int, m: int, seed: int) -> Graph:
    """A random spanning tree plus ``m - n + 1`` distinct random extra edges."""
    _require(n >= 1, f"need n >= 1, got {n}")
    _require(n - 1 <= m <= n * (n - 1) // 2, f"m={m} infeasible for a connected graph on {n} vertices")
    tree = random_tree(n, seed)
    rng = random.Random(f"extra-{seed}")
    present = set(tree.edges)
    spare = [e for e in combinations(range(n), 2) if e not in present]
    extra = rng.sample(spare, m - (n - 1))
    return build_graph(n, list(tree.edges) + extra, name=f"rand{n},{m}s{seed}")


def random_connected_bipartite_graph(n: int, extra: int, seed: int) -> Graph:
    """A random tree plus up to ``extra`` random edges across its 2-colouring."""
    tree = random_tree(n, seed)
    colour = [0] * n
    stack, seen = [0], {0}
    while stack:
        u = stack.pop()
        for w in tree.neighbors(u):
            if w not in seen:
                seen.add(w)
                colour[w] = 1 - colour[u]
                stack.append(w)
    present = set(tree.edges)
    spare = [(a, b) for a, b in combinations(range(n), 2) if colour[a] != colour[b] and (a, b) not in present]
    rng = random.Random(f"bip-{seed}")
    chosen = rng.sample(spare, min(extra, len(spare)))
    return build_graph(n, list(tree.edges) + chosen, name=f"bip{n}s{seed}")


# -- named descriptors -----------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus parameters; ``build()`` produces the graph."""

    family: str
    params: Tuple = field(default_factory=tuple)

    def build(self) -> Graph:
        try:
            builder = GENERATORS[self.family]
        except KeyError:
            raise FamilyError(f"unknown family {self.family!r}") from None
        return builder(*self.params)

    def __str__(self) -> str:
        return f"{self.family}{self.params}"


GENERATORS: Dict[str, Callable[..., Graph]] = {
    "path": gen_path,
    "cycle": gen_cycle,
    "complete": gen_complete,
    "empty": gen_empty,
    "star": gen_star,
    "cocktail": gen_cocktail_party,
    "hypercube": gen_hypercube,
    "multipartite": lambda *parts: gen_multipartite(parts),
    "kneser": gen_kneser,
    "petersen": gen_generalized_petersen,
    "grs": gen_grs,
    "hjk": gen_hjk,
    "caterpillar": lambda t, subdivisions=0: gen_caterpillar(CaterpillarSpec(tuple(t), subdivisions)),
    "family-h": lambda blocks=(), pendant=None, paths=(): gen_family_h(FamilyHSpec(tuple(blocks), pendant, tuple(paths))),
    "random-tree": random_tree,
    "random-graph": random_connected_graph,
}
