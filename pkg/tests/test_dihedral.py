import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artin_polyfree.dihedral import (
    GeodesicAmongSeveral,
    NotGeodesic,
    UniqueGeodesic,
    classify_geodesic,
    critical_words,
    find_critical,
    garside_equal,
    garside_normal_form,
    nu,
    pn_stats,
    tau,
)
from artin_polyfree.errors import AlphabetError
from artin_polyfree.oracle import Ball
from artin_polyfree.words import INF, dihedral_graph, free_reduce, inverse
from strategies import words

a, b = 1, 2
A4 = dihedral_graph(4)


def test_pn_stats_examples():
    assert pn_stats((a, b, -a, -b), 4).total == 4
    assert pn_stats((a, b, a, b, a), 4).p == 4
    assert pn_stats((-a, -b, -a), 6) == pn_stats((-b, -a, -b), 6)
    with pytest.raises(AlphabetError):
        pn_stats((1, 2, 3), 4)
    with pytest.raises(ValueError):
        pn_stats((1, -1), 4)


def test_classification_examples():
    assert isinstance(classify_geodesic((a, b, a), 4), UniqueGeodesic)
    assert isinstance(classify_geodesic((a, b, a, b), 4), GeodesicAmongSeveral)
    ng = classify_geodesic((b, a, b, a, -b), 4)
    assert isinstance(ng, NotGeodesic)
    assert ng.span == (0, 4) and ng.witness == (b, a, b, a)
    assert isinstance(classify_geodesic((a, b) * 10, INF), UniqueGeodesic)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_classification_matches_ball(m):
    g = dihedral_graph(m)
    ball = Ball(g, 6, method="bfs_relator_moves")
    for w in ball.words:
        geo_len = ball.geodesic_length(w)
        c = classify_geodesic(w, m)
        assert isinstance(c, NotGeodesic) == (geo_len < len(w))
        if not isinstance(c, NotGeodesic):
            unique = len(ball.geodesics_of(w)) == 1
            assert isinstance(c, UniqueGeodesic) == unique


def test_critical_forms():
    assert find_critical((a, b, a), 3).form == "pure_alternating_pos"
    assert find_critical((a, a, b, a), 3).form == "pos_right"
    assert find_critical((a, b, a, a), 3).form == "pos_left"
    assert find_critical((-a, -a, -b, -a), 3).form == "neg_right"
    assert find_critical((a, b, -a, -b), 4).form == "unsigned_pos_first"
    assert find_critical((-a, -b, a, b), 4).form == "unsigned_neg_first"
    assert find_critical((a, b, a, b, a), 4) is None
    assert find_critical((a, a, b, a, a), 3) is None
    assert find_critical((a, b), INF) is None


def test_tau_examples():
    assert tau(find_critical((b, a, b, a), 4)) == (a, b, a, b)
    assert tau(find_critical((a, a, b, a), 3)) == (b, a, b, b)
    assert tau(find_critical((a, b, -a, -b), 4)) == (-b, -a, b, a)


def test_nu():
    assert nu((a, -b), 3, (a, b)) == (b, -a)
    assert nu((a, -b), 4, (a, b)) == (a, -b)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_tau_is_an_involution_preserving_the_element(m):
    count = 0
    for c in critical_words(m, 8):
        w, t = c.word, tau(c)
        c2 = find_critical(t, m)
        assert c2 is not None
        assert tau(c2) == w
        assert garside_equal(w, t, m)
        assert (c2.p, c2.n) == (c.p, c.n)
        assert abs(w[0]) != abs(t[0]) and abs(w[-1]) != abs(t[-1])
        count += 1
    assert count > 0


@pytest.mark.parametrize("m", [3, 4, 6])
def test_garside_classes_match_relator_bfs(m):
    g = dihedral_graph(m)
    bfs = Ball(g, 6, method="bfs_relator_moves")
    gar = Ball(g, 6, method="garside_dihedral")
    assert bfs.classes == gar.classes
    assert not bfs.unresolved


def test_garside_form_basics():
    f = garside_normal_form((a, b, a, b), 4)
    assert f.delta_power == 1 and f.factors == ()
    f = garside_normal_form((-a,), 4)
    assert f.delta_power == -1 and f.factors == ((b, a, b),)
    assert garside_normal_form((), 4).key == (0, ())
    with pytest.raises(AlphabetError):
        garside_normal_form((1, 3, 2), 4)
    with pytest.raises(ValueError):
        garside_normal_form((a,), INF)


@settings(max_examples=200)
@given(words(A4, 10), st.integers(0, 10), st.sampled_from([0, 1, 2, 3]), st.booleans())
def test_garside_key_is_invariant_under_relator_insertion(w, pos, rot, inv):
    rel = (a, b, a, b, -a, -b, -a, -b)
    rel = rel[rot:] + rel[:rot]
    if inv:
        rel = inverse(rel)
    pos = min(pos, len(w))
    assert garside_equal(w, w[:pos] + rel + w[pos:], 4)


@given(words(A4, 10))
def test_garside_form_round_trips(w):
    f = garside_normal_form(w, 4, (a, b))
    assert garside_equal(f.to_word(), w, 4)
    assert garside_equal(w + inverse(w), (), 4)
    assert garside_equal(free_reduce(w), w, 4)


def test_distinct_elements_are_separated():
    assert not garside_equal((a,), (b,), 4)
    assert not garside_equal((a, b, a), (b, a, b), 4)
    assert garside_equal((a, b, a), (b, a, b), 3)
