"""Shared hypothesis strategies."""

from hypothesis import strategies as st


def letters(graph):
    gens = graph.generators
    return st.sampled_from([s * g for g in gens for s in (1, -1)])


def words(graph, max_size=10):
    return st.lists(letters(graph), max_size=max_size).map(tuple)
