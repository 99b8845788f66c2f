import pytest

from gpgame.families import (
    CaterpillarSpec,
    FamilySpec,
    gen_caterpillar,
    gen_complete,
    gen_cycle,
    gen_hypercube,
    gen_multipartite,
    gen_path,
    gen_petersen,
    gen_star,
    random_connected_bipartite_graph,
)
from gpgame.formulas import (
    FormulaError,
    bipartite_gpg,
    caterpillar_gpg_prime,
    complete_values,
    cycle_values,
    gpg_prime_upper_pivot_class,
    gpg_upper_edge,
    gpg_upper_maxmin,
    graph_bounds,
    grs_values,
    hjk_values,
    kneser2_gp_lower,
    kneser2_values,
    multipartite_values,
    realisable_pair_witness,
    tree_equality_holds,
    tree_gpg_prime_upper,
)
from gpgame.solver import Player, game_values, solve_game
from conftest import seeded_connected_graphs


class TestClosedForms:
    @pytest.mark.parametrize("parts, values", [((4, 2), (2, 2)), ((3, 3, 3), (3, 3)), ((5, 2, 2), (3, 3)), ((2, 5, 2), (3, 3))])
    def test_multipartite(self, parts, values):
        assert multipartite_values(parts).value == values

    @pytest.mark.parametrize("parts", [(4,), (3, 1)])
    def test_multipartite_outside_hypotheses(self, parts):
        f = multipartite_values(parts)
        assert not f.applicable and f.value is None and f.reason

    def test_kneser(self):
        assert kneser2_values(5).value == (6, 6)
        assert not kneser2_values(3).applicable
        assert [kneser2_gp_lower(n).value for n in (4, 5, 6, 7, 11, 12, 20)] == [6, 4, 3, 3, 5, 6, 6]

    @pytest.mark.parametrize("n, values", [(7, (3, 3)), (8, (2, 3)), (4, (2, 2)), (3, (3, 3)), (12, (2, 3))])
    def test_cycles(self, n, values):
        assert cycle_values(n).value == values

    def test_cycle_provenance(self):
        assert cycle_values(4).source == "complete-multipartite"
        with pytest.raises(FormulaError):
            cycle_values(2)

    def test_grs(self):
        assert grs_values(6, 5).value == (8, 7)
        assert grs_values(4, 1).value == (6, 3)
        assert not grs_values(5, 4).applicable
        assert not grs_values(3, 3).applicable

    def test_hjk(self):
        assert hjk_values(3, 2).value == (6, 5)
        assert not hjk_values(1, 2).applicable

    def test_complete(self):
        assert complete_values(4).value == (4, 4)


class TestCaterpillarFormula:
    @pytest.mark.parametrize("t, value", [((1, 1), 2), ((2, 0, 3), 3), ((1, 5), 2)])
    def test_values(self, t, value):
        assert caterpillar_gpg_prime(CaterpillarSpec(t)).value == value

    def test_needs_end_leaves(self):
        assert not caterpillar_gpg_prime(CaterpillarSpec((0, 2))).applicable

    @pytest.mark.parametrize("t", [(2, 0, 3), (1, 2, 1), (3, 1, 1, 2)])
    def test_subdivision_invariant(self, t):
        base = CaterpillarSpec(t)
        variants = [CaterpillarSpec(t, 1), CaterpillarSpec(t, 2)]
        variants.append(CaterpillarSpec(t, tuple(i % 2 for i in range(base.base_edge_count))))
        expected = caterpillar_gpg_prime(base).value
        assert expected == solve_game(gen_caterpillar(base), Player.BLOCKER).value
        for spec in variants:
            assert caterpillar_gpg_prime(spec).value == expected
            if spec.order <= 16:
                assert solve_game(gen_caterpillar(spec), Player.BLOCKER).value == expected


class TestTreeFormulas:
    def test_star(self):
        g = gen_star(6)
        assert tree_gpg_prime_upper(g).value == 2 and tree_equality_holds(g).value

    def test_path(self):
        g = gen_path(7)
        assert tree_gpg_prime_upper(g).value == 2 and tree_equality_holds(g).value

    def test_rejects_non_tree(self):
        with pytest.raises(FormulaError):
            tree_gpg_prime_upper(gen_cycle(5))


class TestBounds:
    @pytest.mark.parametrize("n", [2, 3, 5, 7])
    def test_complete(self, n):
        g = gen_complete(n)
        assert gpg_upper_maxmin(g).value == gpg_upper_edge(g).value == n

    def test_petersen(self):
        assert gpg_upper_maxmin(gen_petersen()).value == 6
        assert gpg_prime_upper_pivot_class(gen_petersen()).value == 6

    @pytest.mark.parametrize("g", [gen_cycle(8), gen_hypercube(3), random_connected_bipartite_graph(11, 6, 3)])
    def test_bipartite(self, g):
        assert gpg_upper_edge(g).value == 2 == bipartite_gpg(g).value

    def test_pivot_class_gate(self):
        assert not gpg_prime_upper_pivot_class(gen_path(4)).applicable

    @pytest.mark.parametrize("g", seeded_connected_graphs(40, seed=13, n_lo=2, n_hi=9), ids=lambda g: g.name)
    def test_bounds_dominate(self, g):
        gpg, gpg_prime = game_values(g)
        b = graph_bounds(g)
        assert b["gpg_maxmin"].value <= b["gpg_edge"].value
        assert gpg <= b["gpg_maxmin"].value
        if b["gpg_prime_pivot_class"].applicable:
            assert gpg_prime <= b["gpg_prime_pivot_class"].value
        if "tree_upper" in b:
            assert gpg_prime <= b["tree_upper"].value


class TestWitnesses:
    def test_known(self):
        assert realisable_pair_witness(3, 5) == FamilySpec("multipartite", (5, 5, 5))
        assert realisable_pair_witness(7, 5) == FamilySpec("grs", (5, 3))
        assert realisable_pair_witness(7, 4) is None
        assert realisable_pair_witness(5, 2) is None

    # (6, 7) is omitted: its 42-vertex witness takes ~10 s to solve
    @pytest.mark.parametrize("a, b", [(a, b) for a in range(2, 8) for b in range(2, 8) if (a, b) != (6, 7)])
    def test_witness_values(self, a, b):
        spec = realisable_pair_witness(a, b)
        if spec is not None:
            assert game_values(spec.build()) == (a, b)

    def test_domain(self):
        with pytest.raises(FormulaError):
            realisable_pair_witness(1, 3)


def test_bipartite_gate():
    assert not bipartite_gpg(gen_cycle(5)).applicable
    assert bipartite_gpg(gen_multipartite((3, 2))).value == 2
