import pytest
from hypothesis import given
from hypothesis import strategies as st

from artin_polyfree.dihedral import NotGeodesic, classify_geodesic, garside_equal
from artin_polyfree.errors import UnsupportedPresentation
from artin_polyfree.geodesics import (
    LEMMA_IDS,
    cached_ball,
    has_geodesic_prefix,
    initial_letters,
    max_initial_power,
    minimal_intersection_word,
    verify_lemma,
)
from artin_polyfree.words import dihedral_graph, triangle_graph

A4 = dihedral_graph(4)
TRI = triangle_graph(4, 4, 4)
a, b = 1, 2


def test_geodesic_prefix_examples():
    g = (a, a) + (b, a, b) * 2
    assert has_geodesic_prefix(g, (b, b), A4)
    assert has_geodesic_prefix(g, (a, a), A4)
    assert not has_geodesic_prefix(g, (-a,), A4)
    assert has_geodesic_prefix((a, b, a, b), (b,), A4)
    assert not has_geodesic_prefix((a,), (a, a), A4)


def test_initial_letters_and_powers():
    assert initial_letters((b, a, b, a), A4).initials == {a, b}
    assert initial_letters((a, b, a), A4).initials == {a}
    assert max_initial_power((a, a) + (b, a, b) * 2, b, A4) == 2
    assert max_initial_power((a, b), b, A4) == 0


def test_initial_letters_match_ball():
    ball = cached_ball(TRI, 4)
    for cid, geos in ball.elements():
        want = {w[0] for w in geos if w}
        assert initial_letters(geos[0], TRI).initials == want


@pytest.mark.parametrize("label,s,t,w,wh", [
    (4, 1, 1, (b, a, b, a), (a, b, a, b)),
    (4, 2, 2, (b, b) + (a, b, a) * 2, (a, a) + (b, a, b) * 2),
    (4, -1, 1, (b, -a, -b, -a), (-a, -b, -a, b)),
    (4, -2, 1, (b, a, b, -a, -a), (-a, -a, b, a, b)),
])
def test_minimal_intersection_examples(label, s, t, w, wh):
    assert minimal_intersection_word(label, s, t) == (w, wh)


def test_minimal_intersection_errors():
    with pytest.raises(ValueError):
        minimal_intersection_word(5, 1, 1)
    with pytest.raises(ValueError):
        minimal_intersection_word(4, 2, -1)


@given(st.sampled_from([4, 6, 8]), st.integers(1, 3), st.integers(0, 2), st.booleans())
def test_minimal_intersection_words_are_equal_geodesics(label, t, extra, negative):
    s = t + extra
    if negative:
        s, t = -s, -t
    w, wh = minimal_intersection_word(label, s, t)
    assert garside_equal(w, wh, label)
    assert len(w) == len(wh) == abs(s) + abs(t) * (label - 1)
    assert not isinstance(classify_geodesic(w, label), NotGeodesic)
    assert w[:abs(t)] == (b if t > 0 else -b,) * abs(t)
    assert wh[:abs(s)] == (a if s > 0 else -a,) * abs(s)


HOLDING = ["L3.1", "L3.2", "L3.3", "L3.5", "C3.6", "L3.7", "L3.8", "L3.10"]


@pytest.mark.parametrize("lemma", HOLDING)
@pytest.mark.parametrize("graph,radius", [(A4, 6), (dihedral_graph(6), 7), (TRI, 4)])
def test_geodesic_statements_hold(lemma, graph, radius):
    rep = verify_lemma(lemma, graph, radius)
    assert rep.checked > 0
    assert rep.violations == [] and rep.engine_agrees


KERNEL_HOLDING = ["L5.3", "L5.4", "L5.8", "L5.10", "L5.12/C5.13", "L5.15", "L5.16-len", "H-free", "Commute"]


@pytest.mark.parametrize("lemma", KERNEL_HOLDING)
def test_kernel_statements_hold(lemma):
    rep = verify_lemma(lemma, TRI, 4 if lemma != "Commute" else 2)
    assert rep.checked > 0
    assert rep.violations == [] and rep.engine_agrees


def test_mixed_sign_statement_fails_only_at_unit_power():
    """Found while verifying: with one letter of each sign the minimal words are not unique at t = 1."""
    rep = verify_lemma("L3.9", A4, 7)
    assert rep.violations
    assert all(v.startswith("t=1 ") for v in rep.violations)
    assert rep.checked > len(rep.violations)


def test_shortlex_descent_counterexample():
    """Found while verifying: rho can raise the shortlex representative at equal length."""
    rep = verify_lemma("L5.11", TRI, 4, r="c")
    assert "a b a^-1 b^-1 (b, -)" in rep.violations
    assert rep.engine_agrees


def test_report_format_and_errors():
    rep = verify_lemma("Initials", A4, 3, graph_name="A2(4)")
    assert rep.lemma_id == "L3.10"
    assert rep.to_text().startswith("lemma L3.10 graph A2(4) radius 3: checked ")
    assert rep.to_text().endswith("violations 0")
    with pytest.raises(ValueError):
        verify_lemma("L9.9", A4, 3)
    with pytest.raises(UnsupportedPresentation):
        verify_lemma("L3.7", triangle_graph(3, 3, 3), 3)
    assert "L5.16-len" in LEMMA_IDS
