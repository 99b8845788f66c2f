import itertools

from hypothesis import strategies as st

from gpgame.families import random_connected_graph
from gpgame.graph import build_graph


@st.composite
def small_graphs(draw, min_n=1, max_n=8, connected=False):
    """Arbitrary simple graphs; with ``connected`` a random spanning tree is included."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected and n > 1:
        parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
        chosen = list(chosen) + [(p, v) for v, p in zip(range(1, n), parents)]
    return build_graph(n, chosen)


def seeded_connected_graphs(count, seed, n_lo=4, n_hi=10, density=3):
    import random

    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(n_lo, n_hi)
        m = rng.randint(n - 1, min(density * n, n * (n - 1) // 2))
        out.append(random_connected_graph(n, m, seed * 1000 + i))
    return out


def floyd_warshall(g):
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(g.n)] for i in range(g.n)]
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for k in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d
