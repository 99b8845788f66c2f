"""Simple undirected graphs, vertex sets and unweighted distances.

Vertices are dense integers ``0..n-1``.  Vertex subsets are bit masks
(bit ``v`` set iff ``v`` is a member); :class:`VertexSet` wraps a mask for
the public API while the search code works on raw ``int`` masks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

VERTEX_CAP = 64
UNREACHABLE = -1


class GraphError(ValueError):
    """Invalid graph construction or input."""


class GraphFormatError(GraphError):
    """Malformed graph text."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, order=True)
class VertexSet:
    """Order-independent set of vertex ids backed by a bit mask.

    Two sets with the same members are equal and hash alike; ``key`` is the
    canonical mask.
    """

    mask: int = 0

    @classmethod
    def of(cls, vertices: Union["VertexSet", Iterable[int]] = ()) -> "VertexSet":
        if isinstance(vertices, VertexSet):
            return vertices
        mask = 0
        for v in vertices:
            if v < 0:
                raise GraphError(f"negative vertex id {v}")
            mask |= 1 << v
        return cls(mask)

    @property
    def key(self) -> int:
        return self.mask

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | VertexSet.of(other).mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & VertexSet.of(other).mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & ~VertexSet.of(other).mask)

    def add(self, v: int) -> "VertexSet":
        return VertexSet(self.mask | 1 << v)

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~VertexSet.of(other).mask == 0

    def sorted(self) -> list[int]:
        return list(bits(self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({self.sorted()})"


VertexLike = Union[VertexSet, Iterable[int]]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Build with :func:`build_graph`; the constructor assumes its inputs are
    already normalised (sorted, deduplicated, loop-free pairs).
    """

    n: int
    edges: Tuple[Tuple[int, int], ...]
    labels: Optional[Tuple[str, ...]] = None
    name: str = ""

    @cached_property
    def adjacency(self) -> Tuple[int, ...]:
        """Neighbourhood bit mask of every vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def label(self, v: int) -> str:
        if self.labels is None:
            return str(v)
        return self.labels[v]

    def with_name(self, name: str) -> "Graph":
        return Graph(self.n, self.edges, self.labels, name)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<Graph{tag} n={self.n} m={self.m}>"


def build_graph(
    n: int,
    edge_list: Iterable[Tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
    name: str = "",
    max_vertices: int = VERTEX_CAP,
) -> Graph:
    """Build a simple graph, dropping duplicate edges.

    Raises :class:`GraphError` on self-loops, out-of-range endpoints,
    a label list of the wrong length, or ``n`` above ``max_vertices``.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    if n > max_vertices:
        raise GraphError(f"graph has {n} vertices; the cap is {max_vertices}")
    seen = set()
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        seen.add((min(u, v), max(u, v)))
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise GraphError(f"expected {n} labels, got {len(labels)}")
    return Graph(n, tuple(sorted(seen)), labels, name)


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs shortest-path lengths; ``UNREACHABLE`` across components."""

    n: int
    d: Tuple[Tuple[int, ...], ...]

    def __call__(self, u: int, v: int) -> int:
        return self.d[u][v]

    def reachable(self, u: int, v: int) -> bool:
        return self.d[u][v] != UNREACHABLE

    def diameter(self) -> Optional[int]:
        """Largest distance, or ``None`` when the graph is disconnected."""
        best = 0
        for row in self.d:
            for x in row:
                if x == UNREACHABLE:
                    return None
                best = max(best, x)
        return best


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        for w in bits(adj[u]):
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph, max_vertices: int = VERTEX_CAP) -> DistanceMatrix:
    if g.n > max_vertices:
        raise GraphError(f"graph has {g.n} vertices; the cap is {max_vertices}")
    return DistanceMatrix(g.n, tuple(tuple(bfs_distances(g, s)) for s in range(g.n)))


def components(g: Graph) -> list[int]:
    """Connected components as bit masks, ordered by smallest member."""
    remaining = g.all_mask
    comps = []
    adj = g.adjacency
    while remaining:
        start = remaining & -remaining
        comp = frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_bipartite(g: Graph) -> bool:
    colour = [-1] * g.n
    adj = g.adjacency
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in bits(adj[u]):
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


@dataclass(frozen=True)
class GraphInvariants:
    is_connected: bool
    is_bipartite: bool
    is_tree: bool
    max_degree: int
    leaf_count: int
    diameter: Optional[int]


def basic_invariants(g: Graph, dist: Optional[DistanceMatrix] = None) -> GraphInvariants:
    """Connectivity, bipartiteness, tree-ness, Δ, leaf count and diameter.

    ``diameter`` is ``None`` for a disconnected graph.
    """
    connected = is_connected(g)
    degrees = [g.degree(v) for v in range(g.n)]
    diameter = None
    if connected:
        dist = dist or all_pairs_distances(g)
        diameter = dist.diameter()
    return GraphInvariants(
        is_connected=connected,
        is_bipartite=is_bipartite(g),
        is_tree=is_tree(g),
        max_degree=max(degrees, default=0),
        leaf_count=sum(1 for d in degrees if d == 1),
        diameter=diameter,
    )


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, ``None`` for forests."""
    best = None
    adj = g.adjacency
    for s in range(g.n):
        dist = [UNREACHABLE] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in bits(adj[u]):
                if dist[w] == UNREACHABLE:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cycle = dist[u] + dist[w] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


# -- text format ------------------------------------------------------------
#
#   c <free comment>
#   c label <v> <text>        (optional, written by ``write_graph(labels=True)``)
#   p gp <n> <m>
#   e <u> <v>                 (m lines, 0-based ids)


def format_graph(g: Graph, labels: bool = False, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    if g.name:
        lines.append(f"c name {g.name}")
    if labels and g.labels is not None:
        lines.extend(f"c label {v} {g.labels[v]}" for v in range(g.n))
    lines.append(f"p gp {g.n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str, max_vertices: int = VERTEX_CAP) -> Graph:
    header = None
    edges = []
    labels: dict[int, str] = {}
    name = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tag = line.split(maxsplit=1)[0]
        if tag == "c":
            parts = line.split(maxsplit=3)
            if len(parts) >= 3 and parts[1] == "label":
                try:
                    labels[int(parts[2])] = parts[3] if len(parts) > 3 else ""
                except ValueError:
                    pass
            elif len(parts) >= 3 and parts[1] == "name":
                name = line.split(maxsplit=2)[2]
            continue
        fields = line.split()
        if tag == "p":
            if header is not None:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(fields) != 4 or fields[1] != "gp":
                raise GraphFormatError(f"line {lineno}: expected 'p gp <n> <m>', got {line!r}")
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header field in {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError(f"line {lineno}: negative header field")
        elif tag == "e":
            if header is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>', got {line!r}")
            try:
                edges.append((int(fields[1]), int(fields[2])))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {tag!r}")
    if header is None:
        raise GraphFormatError("missing 'p gp <n> <m>' header")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    label_list = None
    if labels:
        label_list = [labels.get(v, str(v)) for v in range(n)]
    try:
        return build_graph(n, edges, label_list, name, max_vertices=max_vertices)
    except GraphFormatError:
        raise
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None


def read_graph(path, max_vertices: int = VERTEX_CAP) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), max_vertices=max_vertices)


def write_graph(g: Graph, path, labels: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g, labels=labels))
