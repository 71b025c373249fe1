import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artin_polyfree.errors import UnsupportedPresentation
from artin_polyfree.kernel import (
    KernelGenerator,
    delta,
    eliminate,
    h_freeness,
    instantiate_relation,
    omega_membership,
    poly_free_tower,
    psi,
    rho,
    verify_relation,
    vertex_params,
)
from artin_polyfree.rewriting import words_equal
from artin_polyfree.words import ArtinGraph, LexOrder, free_reduce, triangle_graph
from strategies import words

TRI = triangle_graph(4, 4, 4)
P = TRI.parse_word
PATH = ArtinGraph.from_edges(["a", "b", "r"], [("a", "b", 4), ("b", "r", 4)])


@pytest.mark.parametrize("k,expected", [(2, (2, 0, -1, 1)), (1, (1, 0, -1, 0)), (3, (2, -1, -2, 1))])
def test_vertex_params_examples(k, expected):
    p = vertex_params(k)
    assert (p.p_plus, p.p_minus, p.n_minus, p.n_plus) == expected


def test_vertex_params_identities():
    for k in range(1, 101):
        p = vertex_params(k)
        assert p.p_minus - 1 == p.n_minus and p.p_plus - 1 == p.n_plus
        assert p.p_plus - p.p_minus == k == p.n_plus - p.n_minus
        if k >= 2:
            assert p.p_plus >= 2 and p.n_plus > 0 and p.n_minus < 0 and p.p_minus <= 0
    with pytest.raises(ValueError):
        vertex_params(0)


def test_psi_examples():
    r = TRI.gen("c")
    assert psi(P("c a c^-1 b"), r) == P("a b")
    assert psi(P("c b c b b^-1 c^-1 b^-1 c^-1"), r) == ()
    assert psi((), r) == ()


@given(words(TRI, 8), words(TRI, 8))
def test_psi_is_a_retraction(u, v):
    r = 3
    assert psi(u + v, r) == free_reduce(psi(u, r) + psi(v, r))
    g1 = tuple(x for x in u if abs(x) != r)
    assert psi(g1, r) == free_reduce(g1)


@settings(max_examples=60, deadline=None)
@given(words(TRI, 8), st.integers(0, 8), st.integers(0, 2))
def test_psi_kills_relators(w, pos, which):
    rel = TRI.relators()[which]
    pos = min(pos, len(w))
    tri_c = TRI.without("c")
    assert words_equal(psi(w, 3), psi(w[:pos] + rel + w[pos:], 3), tri_c)


def test_omega_examples():
    assert omega_membership(P("a^2"), TRI, "c") == {(1, 1)}
    assert omega_membership(P("a^-1 b^-1 a^-1 b^-1"), TRI, "c") == {(1, -1), (2, -1)}
    assert omega_membership(P("a b"), TRI, "c") == frozenset()
    assert omega_membership((), TRI, "c") == frozenset()


def test_rho_and_delta_examples():
    h = P("a^-1 b^-1 a^-1 b^-1")
    assert rho(h, "a", -1, TRI, "c") == P("a b^-1 a^-1 b^-1")
    found, alpha = delta(h, TRI, "c")
    assert found == {P("a b^-1 a^-1 b"), P("b a^-1 b^-1 a")} and alpha == 2
    assert rho(P("b^2"), "b", 1, TRI, "c") == ()
    with pytest.raises(ValueError):
        rho(P("a b"), "a", 1, TRI, "c")


def test_relation_examples():
    g = PATH
    rel = instantiate_relation(g.parse_word("b^2"), "b", 1, g, "r")
    assert rel.to_text(g).endswith("r^(b^2) = r^(b) . r . (r^(b))^-1")
    rel = instantiate_relation(g.parse_word("b^-1"), "b", -1, g, "r")
    assert rel.to_text(g).endswith("r^(b^-1) = (r)^-1 . r^(b) . r")
    with pytest.raises(ValueError):
        instantiate_relation(g.parse_word("a b"), "b", -1, g, "r")


@pytest.mark.parametrize("g_word", ["", "b", "b a b", "a^-1 b", "a b^-1 a"])
@pytest.mark.parametrize("lead,sign", [("b^2", 1), ("b^-1", -1)])
def test_relations_hold_by_engine_and_oracle(g_word, lead, sign):
    g = PATH
    h = g.parse_word(f"{lead} {g_word}")
    if (g.gen("b"), sign) not in omega_membership(h, g, "r"):
        with pytest.raises(ValueError):
            instantiate_relation(h, "b", sign, g, "r")
        return
    rel = instantiate_relation(h, "b", sign, g, "r", verify=False)
    assert verify_relation(rel, g, "engine")
    assert verify_relation(rel, g, "oracle", budget=18)


def test_broken_relation_is_detected():
    g = PATH
    rel = instantiate_relation(g.parse_word("b^2"), "b", 1, g, "r")
    forged = type(rel)(rel.base, rel.vertex, rel.sign, rel.lhs, rel.rhs[:1], rel.r)
    assert not verify_relation(forged, g, "engine")
    assert not verify_relation(forged, g, "oracle")


def test_elimination_example():
    st = eliminate(TRI, "c", 4)
    assert st.omega_index == [P("a^-1 b^-1 a^-1 b^-1")]
    assert [k.conjugator for k, _ in st.eliminated] == [P("b a^-1 b^-1 a")]
    assert KernelGenerator(()) in st.retained
    assert KernelGenerator(P("a b^-1 a^-1 b")) in st.retained
    text = st.to_text()
    assert "eliminated: b a^-1 b^-1 a via R(a^-1 b^-1 a^-1 b^-1) vertex a sign -" in text
    assert text.startswith("# graph ")


def test_elimination_partitions_lambda():
    st = eliminate(TRI, "c", 5)
    gens = [k.conjugator for k in st.retained] + [k.conjugator for k, _ in st.eliminated]
    assert len(gens) == len(set(gens))
    for g in gens:
        assert omega_membership(g, TRI, "c") == frozenset()
    assert not st.escaped


def test_single_edge_has_no_eliminations():
    g = ArtinGraph.from_edges(["r", "b"], [("r", "b", 4)])
    st = eliminate(g, "r", 5)
    assert st.eliminated == [] and st.omega_index == []
    assert [k.conjugator for k in st.retained] == [(), (2,)]


def test_order_is_checked():
    with pytest.raises(ValueError):
        eliminate(TRI, "c", 3, LexOrder((-1, 1, 2, -2, 3, -3)))
    with pytest.raises(ValueError):
        eliminate(PATH, "r", 3, LexOrder((1, -1, 2, -2, 3, -3)))


def test_h_freeness_small():
    n, eng, orc = h_freeness(TRI, "c", 3)
    assert n == 1 + 4 + 12 + 36 and eng == [] and orc == []


def test_towers():
    steps = poly_free_tower(TRI, 3)
    assert len(steps) == 3
    steps = poly_free_tower(triangle_graph(6, 4, 8), 2)
    assert [s.removed for s in steps] == ["a", "b", "c"]
    sec6 = ArtinGraph.from_edges(["r", "b", "c"], [("r", "b", 4), ("r", "c", 2), ("b", "c", 4)])
    steps = poly_free_tower(sec6, 2)
    assert steps[0].removed == "c"
    square = ArtinGraph.from_edges(list("abcd"), [("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)])
    with pytest.raises(UnsupportedPresentation, match="edge b-c with label 2"):
        poly_free_tower(square)
    with pytest.raises(UnsupportedPresentation, match="odd label"):
        poly_free_tower(triangle_graph(4, 4, 5))


def test_k1_neighbour_parameters_are_used():
    g = ArtinGraph.from_edges(["x", "b", "c"], [("x", "b", 4), ("x", "c", 2), ("b", "c", 4)])
    x = g.gen("x")
    assert omega_membership(g.parse_word("x b"), g, "c") == {(x, 1)}
    assert omega_membership(g.parse_word("x^-1"), g, "c") == {(x, -1)}
    rel = instantiate_relation(g.parse_word("x b"), "x", 1, g, "c")
    assert rel.to_text(g).endswith("c^(x b) = c^(b)")
