"""Lex and length reductions on the (4,4,4) triangle group, printed step by step."""

from artin_polyfree import (
    ShortlexNormalizer,
    search_leftward_lex_reduction,
    search_rightward_length_reduction,
    triangle_graph,
)

g = triangle_graph(4, 4, 4)
order = g.default_order()

w = g.parse_word("c b c a b a c b c b")
tr = search_leftward_lex_reduction(w, g, order)
print("lex reduction of", g.render_word(w))
print(tr.to_text(g))
print()

w = g.parse_word("a^-1 b^3 a b c^-1 a^2 c b^-1 a b a")
tr = search_rightward_length_reduction(w, g)
print("length reduction of", g.render_word(w))
print(tr.to_text(g))
print()

eng = ShortlexNormalizer(g, order)
for text in ("a b a b a^-1", "c a c a c^-1 a^-1", "b a b a b^-1 a^-1 b^-1 a^-1"):
    print(f"{text:30} -> {g.render_word(eng.normalize(g.parse_word(text))) or 'e'}")
