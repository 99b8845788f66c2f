import networkx as nx
import pytest

from gpgame.families import (
    GENERATORS,
    CaterpillarSpec,
    FamilyError,
    FamilyHSpec,
    FamilySpec,
    gen_caterpillar,
    gen_cocktail_party,
    gen_complete,
    gen_cycle,
    gen_empty,
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
    gen_star,
    is_in_family_T,
    random_connected_bipartite_graph,
    random_connected_graph,
    random_tree,
)
from gpgame.formulas import tree_gpg_prime_upper
from gpgame.graph import basic_invariants, build_graph, girth, is_bipartite, is_connected, is_tree
from gpgame.position import gpg_prime_is_2_by_lines, in_class_G
from gpgame.solver import Player, game_values, solve_game


def nxg(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestClassicFamilies:
    def test_degenerate_cases(self):
        assert gen_path(1).n == 1 and gen_path(1).m == 0
        assert nx.is_isomorphic(nxg(gen_cycle(3)), nxg(gen_complete(3)))
        assert nx.is_isomorphic(nxg(gen_cocktail_party(2)), nxg(gen_cycle(4)))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_orders_and_sizes(self, n):
        assert (gen_path(n).n, gen_path(n).m) == (n, n - 1)
        assert (gen_complete(n).m) == n * (n - 1) // 2
        assert gen_star(n).n == n + 1 and gen_star(n).m == n
        assert gen_empty(n).m == 0
        if n >= 3:
            assert gen_cycle(n).m == n

    @pytest.mark.parametrize("parts, edges", [((2, 2), 4), ((4, 2), 8), ((3, 3, 3), 27)])
    def test_multipartite(self, parts, edges):
        assert gen_multipartite(parts).m == edges

    def test_multipartite_two_two_is_c4(self):
        assert nx.is_isomorphic(nxg(gen_multipartite((2, 2))), nxg(gen_cycle(4)))

    def test_hypercube(self):
        q3 = gen_hypercube(3)
        assert (q3.n, q3.m) == (8, 12) and is_bipartite(q3)


class TestKneserPetersen:
    def test_kneser_5_2_is_petersen(self):
        k, p = gen_kneser(5, 2), gen_generalized_petersen(5, 2)
        assert (k.n, k.m) == (10, 15) and girth(k) == 5
        assert all(k.degree(v) == 3 for v in range(k.n))
        assert nx.is_isomorphic(nxg(k), nxg(p))
        assert nx.is_isomorphic(nxg(gen_petersen()), nxg(k))

    def test_kneser_4_2_matching(self):
        g = gen_kneser(4, 2)
        assert (g.n, g.m) == (6, 3) and not is_connected(g)

    def test_kneser_6_2(self):
        g = gen_kneser(6, 2)
        assert (g.n, g.m) == (15, 45)

    def test_p10_2(self):
        g = gen_generalized_petersen(10, 2)
        assert (g.n, g.m) == (20, 30) and girth(g) == 5
        assert all(g.degree(v) == 3 for v in range(g.n))

    def test_kneser_labels(self):
        assert gen_kneser(4, 2).labels[0] == "{1,2}"


class TestLexicographic:
    def test_k2_k2(self):
        assert nx.is_isomorphic(nxg(gen_lexicographic(gen_complete(2), gen_complete(2))), nxg(gen_complete(4)))

    def test_path_with_independent_pair(self):
        assert nx.is_isomorphic(nxg(gen_lexicographic(gen_path(2), gen_empty(2))), nxg(gen_cycle(4)))

    def test_k2_c5(self):
        g = gen_lexicographic(gen_complete(2), gen_cycle(5))
        assert g.n == 10 and in_class_G(g)

    def test_matches_networkx(self):
        g, h = gen_cycle(4), gen_path(3)
        ours = gen_lexicographic(g, h)
        assert nx.is_isomorphic(nxg(ours), nx.lexicographic_product(nxg(g), nxg(h)))


class TestConstructions:
    def test_grs_orders(self):
        assert gen_grs(6, 5).n == 19
        assert gen_grs(4, 3).n == 13

    def test_hjk_order(self):
        assert gen_hjk(2, 1).n == 9

    def test_grs_even_s_allowed(self):
        assert gen_grs(3, 4).n > 0


class TestCaterpillars:
    def test_bare_path(self):
        assert nx.is_isomorphic(nxg(gen_caterpillar(CaterpillarSpec((0, 0, 0)))), nxg(gen_path(3)))

    def test_end_leaves_extend_path(self):
        assert nx.is_isomorphic(nxg(gen_caterpillar(CaterpillarSpec((1, 0, 0, 1)))), nxg(gen_path(6)))

    def test_two_zero_three(self):
        g = gen_caterpillar(CaterpillarSpec((2, 0, 3)))
        assert g.n == 8 and is_tree(g) and basic_invariants(g).leaf_count == 5

    def test_per_edge_subdivisions(self):
        spec = CaterpillarSpec((1, 1), (2, 0, 1))
        g = gen_caterpillar(spec)
        assert g.n == spec.order == 7 and is_tree(g)

    @pytest.mark.parametrize("bad", [dict(t=(3,)), dict(t=(1, -1)), dict(t=(1, 1), subdivisions=(1,))])
    def test_rejections(self, bad):
        with pytest.raises(FamilyError):
            CaterpillarSpec(**bad).edge_subdivisions()


class TestFamilyT:
    def test_star(self):
        assert is_in_family_T(gen_star(7))

    def test_subdivided_one_zero_two(self):
        assert is_in_family_T(gen_caterpillar(CaterpillarSpec((1, 0, 2), 1)))

    def test_reversible_orientation(self):
        # read from the far end this is T_{1,0,3}
        g = gen_caterpillar(CaterpillarSpec((3, 0, 1)))
        assert is_in_family_T(g)
        assert solve_game(g, Player.BLOCKER).value == tree_gpg_prime_upper(g).value

    def test_three_branch_vertices_outside(self):
        g = gen_caterpillar(CaterpillarSpec((2, 2, 2)))
        assert not is_in_family_T(g)
        assert solve_game(g, Player.BLOCKER).value < tree_gpg_prime_upper(g).value

    def test_spider(self):
        edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
        assert is_in_family_T(build_graph(7, edges))

    def test_paths(self):
        assert is_in_family_T(gen_path(7))

    @pytest.mark.parametrize("seed", range(40))
    def test_recogniser_matches_solver(self, seed):
        g = random_tree(7 + seed % 7, seed + 5000)
        equal = solve_game(g, Player.BLOCKER).value == tree_gpg_prime_upper(g).value
        assert is_in_family_T(g) == equal


class TestFamilyH:
    def test_single_block(self):
        g = gen_family_h(FamilyHSpec((3,)))
        assert nx.is_isomorphic(nxg(g), nxg(gen_multipartite((3, 2))))

    def test_path_only(self):
        assert nx.is_isomorphic(nxg(gen_family_h(FamilyHSpec((), None, (3,)))), nxg(gen_path(4)))

    def test_drawn_member(self):
        spec = FamilyHSpec((3, 2), (3, 0), (3, 2, 1, 1))
        g = gen_family_h(spec)
        assert g.n == spec.order
        assert gpg_prime_is_2_by_lines(g)
        assert game_values(g) == (2, 2)

    @pytest.mark.parametrize("bad", [dict(blocks=(1,)), dict(blocks=(2,), pendant=(1, 1)), dict(blocks=(), paths_at_hub=())])
    def test_rejections(self, bad):
        with pytest.raises(FamilyError):
            FamilyHSpec(**bad)


class TestRandom:
    def test_tree_deterministic(self):
        assert random_tree(5, 1) == random_tree(5, 1)
        assert random_tree(5, 1).edges == ((0, 3), (0, 4), (1, 2), (1, 4))

    def test_single_vertex(self):
        assert random_tree(1, 9).n == 1

    def test_connected_graph_contract(self):
        g = random_connected_graph(8, 12, 7)
        assert is_connected(g) and g.m == 12
        assert g == random_connected_graph(8, 12, 7)

    @pytest.mark.parametrize("seed", range(20))
    def test_trees_and_bipartite(self, seed):
        assert is_tree(random_tree(3 + seed, seed))
        b = random_connected_bipartite_graph(10, 5, seed)
        assert is_connected(b) and is_bipartite(b)

    def test_infeasible_edge_count(self):
        with pytest.raises(FamilyError):
            random_connected_graph(4, 7, 0)


def test_family_spec_dispatch():
    assert FamilySpec("kneser", (5, 2)).build().n == 10
    with pytest.raises(FamilyError):
        FamilySpec("nope", ()).build()
    assert {"kneser", "grs", "hjk", "caterpillar", "family-h"} <= set(GENERATORS)


@pytest.mark.parametrize("g", [gen_petersen(), gen_grs(4, 3), gen_hjk(3, 1), gen_family_h(FamilyHSpec((2, 3), (1, 2), (1,)))])
def test_generators_are_simple(g):
    assert len(set(g.edges)) == g.m
    assert all(u < v for u, v in g.edges)
    assert not any(g.has_edge(v, v) for v in range(g.n))
