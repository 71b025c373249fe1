"""Shortlex rewriting for large Artin groups and free bases for the kernels of their poly-free towers."""

from .dihedral import classify_geodesic, find_critical, garside_equal, garside_normal_form, tau
from .errors import (
    AlphabetError,
    DegeneratePairError,
    SearchBudgetExceeded,
    SoundnessAlarm,
    UnsupportedPresentation,
    WordSyntaxError,
)
from .geodesics import has_geodesic_prefix, initial_letters, minimal_intersection_word, verify_lemma
from .kernel import (
    delta,
    eliminate,
    instantiate_relation,
    omega_membership,
    poly_free_tower,
    psi,
    rho,
    rho_set,
    vertex_params,
)
from .oracle import Ball, enumerate_ball, relator_equal
from .rewriting import (
    ShortlexNormalizer,
    is_geodesic,
    search_leftward_lex_reduction,
    search_rightward_length_reduction,
    shortlex_normalize,
    words_equal,
)
from .words import ArtinGraph, LexOrder, dihedral_graph, load_graph, parse_graph, parse_word, render_word, triangle_graph

__all__ = [name for name in dir() if not name.startswith("_")]
