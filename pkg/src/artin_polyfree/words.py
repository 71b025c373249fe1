"""
Letters, words, lexicographic orders and labelled graphs.

A *letter* is a nonzero int: ``+g`` is the generator with id ``g`` and ``-g``
its inverse, so ``abs(x)`` is the name of ``x`` and ``-x`` its inverse. A
*word* is a tuple of letters; the empty tuple is the identity. Generator ids
are fixed by the graph that declares them and survive vertex deletion, so a
word over a subgraph is literally a word over the original graph.

Graph text format::

    [vertices]
    a
    b
    [edges]
    a b 4
    [order]
    a a^-1 b b^-1

Edge labels are integers >= 2 or ``inf``; a missing edge also means ``inf``.
"""

from __future__ import annotations

import dataclasses
import math
import re
from typing import Iterable, Mapping, Sequence

from .errors import AlphabetError, DegeneratePairError, WordSyntaxError

Letter = int
Word = tuple[int, ...]

INF = math.inf


def name(x: Letter) -> int:
    return abs(x)


def inverse(w: Sequence[Letter]) -> Word:
    return tuple(-x for x in reversed(w))


def is_freely_reduced(w: Sequence[Letter]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def free_reduce(w: Iterable[Letter]) -> Word:
    """Delete adjacent inverse pairs until none remain (stack scan, one pass)."""
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def power(x: Letter, k: int) -> Word:
    """The word x^k; negative k gives |k| copies of the inverse."""
    return (x,) * k if k >= 0 else (-x,) * (-k)


def leading_power(w: Sequence[Letter]) -> tuple[Letter | None, int]:
    """Return (x, t) where w begins with exactly t copies of x = w[0]."""
    if not w:
        return None, 0
    t = 1
    while t < len(w) and w[t] == w[0]:
        t += 1
    return w[0], t


def alternating(x: Letter, y: Letter, m: int, side: str = "left") -> Word:
    """Alternating product of x and y of length m.

    ``side="left"`` starts with x (the product written m(x,y)); ``side="right"``
    ends with y (written (x,y)m). For even m both give the same word.
    """
    if abs(x) == abs(y):
        raise DegeneratePairError(f"letters {x} and {y} have the same name")
    if m < 0:
        raise ValueError("length must be non-negative")
    if side == "left":
        first, second = x, y
    elif side == "right":
        first, second = (y, x) if m % 2 else (x, y)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return tuple(first if i % 2 == 0 else second for i in range(m))


def negative_count(w: Sequence[Letter]) -> int:
    return sum(1 for x in w if x < 0)


def exponent_sums(w: Sequence[Letter]) -> dict[int, int]:
    sums: dict[int, int] = {}
    for x in w:
        sums[abs(x)] = sums.get(abs(x), 0) + (1 if x > 0 else -1)
    return {g: s for g, s in sums.items() if s}


@dataclasses.dataclass(frozen=True)
class LexOrder:
    """A total order on signed letters, listed from smallest to largest."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.ranking)) != len(self.ranking) or 0 in self.ranking:
            raise ValueError("ranking must list distinct nonzero letters")
        if set(self.ranking) != {-x for x in self.ranking}:
            raise ValueError("ranking must contain every letter together with its inverse")
        object.__setattr__(self, "_rank", {x: i for i, x in enumerate(self.ranking)})

    @classmethod
    def from_generators(cls, gens: Iterable[int]) -> "LexOrder":
        """Order g1 < g1^-1 < g2 < g2^-1 < ..."""
        ranking: list[int] = []
        for g in gens:
            ranking += [g, -g]
        return cls(tuple(ranking))

    @property
    def polyfree_compatible(self) -> bool:
        return all(self._rank[g] < self._rank[-g] for g in self.ranking if g > 0)

    def rank(self, x: Letter) -> int:
        try:
            return self._rank[x]
        except KeyError:
            raise AlphabetError(f"letter {x} is not in the order's alphabet") from None

    def key(self, w: Sequence[Letter]) -> tuple[int, ...]:
        """Sort key realising the lexicographic order (proper prefixes come first)."""
        rank = self._rank
        try:
            return tuple(rank[x] for x in w)
        except KeyError as exc:
            raise AlphabetError(f"letter {exc.args[0]} is not in the order's alphabet") from None

    def shortlex_key(self, w: Sequence[Letter]) -> tuple[int, tuple[int, ...]]:
        return len(w), self.key(w)

    def less(self, x: Letter, y: Letter) -> bool:
        return self.rank(x) < self.rank(y)

    def with_first(self, x: Letter) -> "LexOrder":
        """Same order with x moved to the front."""
        self.rank(x)
        return LexOrder((x,) + tuple(y for y in self.ranking if y != x))


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def lex_compare(u: Sequence[Letter], v: Sequence[Letter], order: LexOrder) -> int:
    """-1, 0 or 1 as u is lex-smaller, equal or larger than v."""
    return _cmp(order.key(u), order.key(v))


def shortlex_compare(u: Sequence[Letter], v: Sequence[Letter], order: LexOrder) -> int:
    return _cmp(order.shortlex_key(u), order.shortlex_key(v))


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TOKEN_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")


@dataclasses.dataclass(frozen=True)
class ArtinGraph:
    """Simple labelled graph defining an Artin group.

    ``names`` maps generator ids to vertex names in declaration order;
    ``edges`` holds ``(i, j, label)`` with ``i < j``. Absent pairs carry
    label ``INF``.
    """

    names: tuple[tuple[int, str], ...]
    edges: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self):
        ids = [g for g, _ in self.names]
        if len(set(ids)) != len(ids) or any(g <= 0 for g in ids):
            raise ValueError("generator ids must be distinct positive integers")
        labels = {}
        for i, j, m in self.edges:
            if i == j:
                raise ValueError("loops are not allowed")
            if i not in ids or j not in ids:
                raise ValueError(f"edge ({i}, {j}) uses an undeclared vertex")
            key = frozenset((i, j))
            if key in labels:
                raise ValueError(f"multiple edges between {i} and {j}")
            if not (m == INF or (m == int(m) and m >= 2)):
                raise ValueError(f"edge label must be an integer >= 2 or inf, got {m}")
            labels[key] = m
        object.__setattr__(self, "_labels", labels)
        object.__setattr__(self, "_by_name", {s: g for g, s in self.names})

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[tuple[str, str, float]] = ()) -> "ArtinGraph":
        for v in vertices:
            if not _NAME_RE.match(v):
                raise WordSyntaxError(f"invalid vertex name {v!r}")
        index = {v: i + 1 for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise ValueError("duplicate vertex names")
        es = []
        for u, v, m in edges:
            i, j = sorted((index[u], index[v]))
            es.append((i, j, m))
        return cls(tuple((i + 1, v) for i, v in enumerate(vertices)), tuple(sorted(es)))

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.names)

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return tuple(s for _, s in self.names)

    def gen(self, vertex: str | int) -> int:
        if isinstance(vertex, int):
            if vertex not in self.generators:
                raise AlphabetError(f"no generator with id {vertex}")
            return vertex
        try:
            return self._by_name[vertex]
        except KeyError:
            raise AlphabetError(f"unknown generator {vertex!r}") from None

    def vertex_name(self, g: int) -> str:
        for h, s in self.names:
            if h == abs(g):
                return s
        raise AlphabetError(f"no generator with id {g}")

    def label(self, u: int, v: int) -> float:
        return self._labels.get(frozenset((abs(u), abs(v))), INF)

    def finite_edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, int(m)) for i, j, m in self.edges if m != INF]

    def neighbors(self, v: int) -> list[int]:
        """Generators joined to v by a finite label."""
        v = abs(v)
        return [j if i == v else i for i, j, m in self.edges if m != INF and v in (i, j)]

    @property
    def is_even(self) -> bool:
        return all(m % 2 == 0 for _, _, m in self.finite_edges())

    @property
    def is_large(self) -> bool:
        return all(m >= 3 for _, _, m in self.finite_edges())

    @property
    def is_large_even(self) -> bool:
        return all(m >= 4 and m % 2 == 0 for _, _, m in self.finite_edges())

    def without(self, vertex: str | int) -> "ArtinGraph":
        g = self.gen(vertex)
        return ArtinGraph(
            tuple(p for p in self.names if p[0] != g),
            tuple(e for e in self.edges if g not in e[:2]),
        )

    def default_order(self) -> LexOrder:
        return LexOrder.from_generators(self.generators)

    def relators(self) -> list[Word]:
        """Cyclic words m(u,v) m(v,u)^-1, one per finite edge."""
        out = []
        for i, j, m in self.finite_edges():
            out.append(alternating(i, j, m) + inverse(alternating(j, i, m)))
        return out

    def check_word(self, w: Sequence[Letter]) -> None:
        gens = set(self.generators)
        for x in w:
            if abs(x) not in gens:
                raise AlphabetError(f"letter {x} is not a generator of this graph")

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self)

    def render_word(self, w: Sequence[Letter]) -> str:
        return render_word(w, self)

    def describe(self) -> str:
        parts = []
        for i, j, m in self.edges:
            lab = "inf" if m == INF else str(int(m))
            parts.append(f"{self.vertex_name(i)}-{self.vertex_name(j)}:{lab}")
        return "(" + " ".join(self.vertex_names) + (" | " + " ".join(parts) if parts else "") + ")"

    def to_text(self, order: LexOrder | None = None) -> str:
        lines = ["[vertices]", *self.vertex_names, "[edges]"]
        for i, j, m in self.edges:
            lines.append(f"{self.vertex_name(i)} {self.vertex_name(j)} {'inf' if m == INF else int(m)}")
        if order is not None:
            lines += ["[order]", " ".join(render_word((x,), self) for x in order.ranking)]
        return "\n".join(lines) + "\n"


def parse_word(text: str, graph: ArtinGraph) -> Word:
    """Parse whitespace-separated tokens ``name`` or ``name^k`` (k a nonzero integer)."""
    out: list[int] = []
    for tok in text.split():
        mt = _TOKEN_RE.match(tok)
        if not mt:
            raise WordSyntaxError(f"malformed token {tok!r}")
        g = graph.gen(mt.group(1))
        k = 1 if mt.group(2) is None else int(mt.group(2))
        if k == 0:
            raise WordSyntaxError(f"zero exponent in {tok!r}")
        out.extend(power(g, k))
    return tuple(out)


def render_word(w: Sequence[Letter], graph: ArtinGraph) -> str:
    """Render a word, collapsing runs of a letter into powers."""
    toks = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = (j - i) * (1 if w[i] > 0 else -1)
        s = graph.vertex_name(w[i])
        toks.append(s if k == 1 else f"{s}^{k}")
        i = j
    return " ".join(toks)


def parse_graph(text: str) -> tuple[ArtinGraph, LexOrder]:
    """Parse the graph text format; returns the graph and its order (default if absent)."""
    section = None
    vertices: list[str] = []
    edge_lines: list[tuple[int, list[str]]] = []
    order_toks: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("vertices", "edges", "order"):
                raise WordSyntaxError(f"line {lineno}: unknown section [{section}]")
            continue
        if section == "vertices":
            vertices.extend(line.split())
        elif section == "edges":
            edge_lines.append((lineno, line.split()))
        elif section == "order":
            order_toks.extend(line.split())
        else:
            raise WordSyntaxError(f"line {lineno}: content outside any section")
    edges = []
    for lineno, parts in edge_lines:
        if len(parts) != 3:
            raise WordSyntaxError(f"line {lineno}: expected 'u v m'")
        u, v, lab = parts
        if lab.lower() in ("inf", "infinity"):
            m: float = INF
        else:
            try:
                m = int(lab)
            except ValueError:
                raise WordSyntaxError(f"line {lineno}: bad label {lab!r}") from None
            if m < 2:
                raise WordSyntaxError(f"line {lineno}: label must be >= 2")
        for s in (u, v):
            if s not in vertices:
                raise WordSyntaxError(f"line {lineno}: unknown vertex {s!r}")
        edges.append((u, v, m))
    try:
        graph = ArtinGraph.from_edges(vertices, edges)
    except ValueError as exc:
        if isinstance(exc, WordSyntaxError):
            raise
        raise WordSyntaxError(str(exc)) from None
    if order_toks:
        letters = parse_word(" ".join(order_toks), graph)
        try:
            order = LexOrder(letters)
        except ValueError as exc:
            raise WordSyntaxError(f"[order]: {exc}") from None
        if set(order.ranking) != {s * g for g in graph.generators for s in (1, -1)}:
            raise WordSyntaxError("[order] must list every letter and inverse exactly once")
    else:
        order = graph.default_order()
    return graph, order


def load_graph(path) -> tuple[ArtinGraph, LexOrder]:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def dihedral_graph(m: float, names: Sequence[str] = ("a", "b")) -> ArtinGraph:
    """A_2(m): two vertices joined by an edge labelled m (``INF`` gives the free group)."""
    return ArtinGraph.from_edges(list(names), [(names[0], names[1], m)])


def triangle_graph(m_ab: float, m_bc: float, m_ac: float, names: Sequence[str] = ("a", "b", "c")) -> ArtinGraph:
    a, b, c = names
    return ArtinGraph.from_edges([a, b, c], [(a, b, m_ab), (b, c, m_bc), (a, c, m_ac)])


def words_from_text(graph: ArtinGraph, texts: Iterable[str]) -> list[Word]:
    return [parse_word(t, graph) for t in texts]


def restrict(w: Sequence[Letter], keep: Mapping[int, object] | set[int]) -> Word:
    """Delete letters whose name is not in ``keep`` and freely reduce (a retraction for even graphs)."""
    return free_reduce(x for x in w if abs(x) in keep)
