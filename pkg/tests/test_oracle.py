import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artin_polyfree.dihedral import garside_equal
from artin_polyfree.errors import SearchBudgetExceeded
from artin_polyfree.oracle import (
    Ball,
    Distinct,
    Equal,
    Inconclusive,
    abelianization,
    closure,
    invariant_key,
    neighbours,
    relator_equal,
)
from artin_polyfree.words import INF, dihedral_graph, free_reduce, inverse, triangle_graph
from strategies import words

A4 = dihedral_graph(4)
TRI = triangle_graph(4, 4, 4)
a, b = 1, 2


def test_relator_equal_examples():
    res = relator_equal((a, b, a, b), (b, a, b, a), A4, 8)
    assert isinstance(res, Equal) and res.chain[0] == (a, b, a, b) and res.chain[-1] == (b, a, b, a)
    res = relator_equal((b, b) + (a, b, a) * 2, (a, a) + (b, a, b) * 2, A4, 12)
    assert isinstance(res, Equal)
    assert relator_equal((a,), (b,), A4, 10) == Distinct("invariant")


def test_equal_chain_is_made_of_moves():
    res = relator_equal((b, b) + (a, b, a) * 2, (a, a) + (b, a, b) * 2, A4, 12)
    for x, y in zip(res.chain, res.chain[1:]):
        assert y in set(neighbours(x, A4, 12)) or x in set(neighbours(y, A4, 12))


def test_component_exhaustion_and_inconclusive():
    res = relator_equal((a, b, a), (b, a, b), A4, 6, prefilter=None)
    assert res == Distinct("component_exhausted")
    res = relator_equal((a, b, a, b, a, b), (a, a, b, b, a, b), A4, 12, max_nodes=5, prefilter=None)
    assert isinstance(res, Inconclusive)
    with pytest.raises(ValueError):
        relator_equal((a, b), (a,), A4, 1)


def test_closure_cap():
    with pytest.raises(SearchBudgetExceeded):
        closure((a, b, a, b), A4, 12, max_nodes=3)
    assert closure((a,), A4, 1) == frozenset({(a,)})


def test_ball_counts():
    assert len(Ball(dihedral_graph(INF), 3).classes) == 1 + 4 + 12 + 36
    assert len(Ball(TRI, 1).classes) == 7
    ball = Ball(A4, 2)
    assert len(ball.classes) == 1 + 4 + 12


def test_geodesics_of():
    ball = Ball(A4, 4)
    assert set(ball.geodesics_of((a, b, a, b))) == {(a, b, a, b), (b, a, b, a)}
    assert ball.geodesics_of((a,)) == ((a,),)
    big = Ball(A4, 8)
    assert (b, b) + (a, b, a) * 2 in big.geodesics_of((a, a) + (b, a, b) * 2)
    with pytest.raises(KeyError):
        ball.locate((a,) * 5)


def test_dump_format():
    lines = Ball(A4, 1).dump().splitlines()
    assert lines[0] == "class 0: e"
    assert lines[1] == "    e"
    assert lines[2].startswith("class 1: ")


def test_ball_matches_garside_on_dihedral():
    ball = Ball(A4, 5, method="bfs_relator_moves")
    reps = [geos[0] for geos in ball.classes]
    for i, u in enumerate(reps):
        for v in reps[i + 1:]:
            assert not garside_equal(u, v, 4)
    for w in ball.words:
        assert garside_equal(w, ball.canonical(ball.locate(w)), 4)


@settings(max_examples=100, deadline=None)
@given(words(TRI, 8), st.integers(0, 8), st.integers(0, 2), st.booleans())
def test_prefilters_are_invariants(w, pos, which, inv):
    rel = TRI.relators()[which]
    if inv:
        rel = inverse(rel)
    pos = min(pos, len(w))
    v = free_reduce(w[:pos] + rel + w[pos:])
    assert abelianization(w, TRI) == abelianization(v, TRI)
    assert invariant_key(w, TRI, "retractions") == invariant_key(v, TRI, "retractions")
