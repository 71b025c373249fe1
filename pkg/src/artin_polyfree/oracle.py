"""
Ground truth at desk scale, independent of the rewriting engine.

Two words are joined by a *relator move* when one is obtained from the other
by replacing a factor ``s`` with ``t`` where ``s t^-1`` is a cyclic rotation of
a defining relator or its inverse, followed by free reduction. Searches only
visit freely reduced words up to a length budget, so a negative answer means
"not connected within the budget" unless an invariant separates the words.

Invariants used as prefilters: the abelianization, and for even graphs the
retractions onto every pair of generators (compared with the dihedral Garside
form, or free reduction when the pair spans no edge).
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Sequence

from .dihedral import garside_normal_form
from .errors import SearchBudgetExceeded
from .words import INF, ArtinGraph, LexOrder, Word, free_reduce, inverse, restrict


@lru_cache(maxsize=64)
def relator_moves(graph: ArtinGraph) -> dict[int, tuple[tuple[Word, Word], ...]]:
    """Moves s -> t indexed by the first letter of s (|s| >= 1)."""
    pairs: set[tuple[Word, Word]] = set()
    for rel in graph.relators():
        for cyc in (rel, inverse(rel)):
            L = len(cyc)
            for r in range(L):
                rho = cyc[r:] + cyc[:r]
                for k in range(1, L + 1):
                    pairs.add((rho[:k], inverse(rho[k:])))
    out: dict[int, list] = defaultdict(list)
    for s, t in sorted(pairs):
        out[s[0]].append((s, t))
    return {k: tuple(v) for k, v in out.items()}


def neighbours(w: Word, graph: ArtinGraph, budget: int) -> Iterable[Word]:
    moves = relator_moves(graph)
    n = len(w)
    for i in range(n):
        for s, t in moves.get(w[i], ()):
            ls = len(s)
            if i + ls <= n and w[i:i + ls] == s:
                nw = free_reduce(w[:i] + t + w[i + ls:])
                if len(nw) <= budget:
                    yield nw


# -- invariants --------------------------------------------------------------


def _odd_components(graph: ArtinGraph) -> dict[int, int]:
    parent = {g: g for g in graph.generators}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, m in graph.finite_edges():
        if m % 2:
            parent[find(i)] = find(j)
    return {g: find(g) for g in graph.generators}


def abelianization(w: Sequence[int], graph: ArtinGraph) -> tuple:
    comp = _odd_components(graph)
    sums: dict[int, int] = defaultdict(int)
    for x in w:
        sums[comp[abs(x)]] += 1 if x > 0 else -1
    return tuple(sorted((g, s) for g, s in sums.items() if s))


def retraction_key(w: Sequence[int], graph: ArtinGraph) -> tuple:
    """Images under the retractions onto each pair of generators (even graphs only)."""
    keys = []
    for a, b in itertools.combinations(graph.generators, 2):
        img = restrict(w, {a, b})
        m = graph.label(a, b)
        keys.append(img if m == INF else garside_normal_form(img, m, (a, b)).key)
    return tuple(keys)


def invariant_key(w: Sequence[int], graph: ArtinGraph, prefilter: str | None) -> tuple:
    if prefilter is None or prefilter == "none":
        return ()
    if prefilter == "abelian":
        return abelianization(w, graph)
    if prefilter == "retractions":
        if not graph.is_even:
            raise ValueError("retraction prefilter needs an even graph")
        if len(graph.generators) < 2:
            return abelianization(w, graph)
        return abelianization(w, graph), retraction_key(w, graph)
    raise ValueError(f"unknown prefilter {prefilter!r}")


def default_prefilter(graph: ArtinGraph) -> str:
    return "retractions" if graph.is_even else "abelian"


# -- pairwise equality -------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Equal:
    chain: tuple[Word, ...]


@dataclasses.dataclass(frozen=True)
class Distinct:
    method: str  # "invariant" or "component_exhausted"


@dataclasses.dataclass(frozen=True)
class Inconclusive:
    visited: int


def relator_equal(u: Sequence[int], v: Sequence[int], graph: ArtinGraph, budget: int,
                  max_nodes: int = 2_000_000, prefilter: str | None = "default"):
    """Bidirectional breadth-first search over relator moves within ``budget``."""
    u, v = free_reduce(u), free_reduce(v)
    if budget < max(len(u), len(v)):
        raise ValueError("budget must be at least the length of both words")
    if u == v:
        return Equal((u,))
    if prefilter == "default":
        prefilter = default_prefilter(graph)
    if invariant_key(u, graph, prefilter) != invariant_key(v, graph, prefilter):
        return Distinct("invariant")
    parents = ({u: None}, {v: None})
    frontiers = ([u], [v])
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        nxt = []
        for w in frontiers[side]:
            for nw in neighbours(w, graph, budget):
                if nw in mine:
                    continue
                mine[nw] = w
                if nw in other:
                    return Equal(_chain(nw, parents, side))
                nxt.append(nw)
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)
        if len(parents[0]) + len(parents[1]) > max_nodes:
            return Inconclusive(len(parents[0]) + len(parents[1]))
    return Distinct("component_exhausted")


def _chain(meet: Word, parents, side: int) -> tuple[Word, ...]:
    def walk(p, w):
        out = []
        while w is not None:
            out.append(w)
            w = p[w]
        return out

    a = walk(parents[0], meet)[::-1]
    b = walk(parents[1], meet)[1:]
    return tuple(a + b)


def closure(u: Sequence[int], graph: ArtinGraph, budget: int, max_nodes: int = 2_000_000) -> frozenset[Word]:
    """Every freely reduced word of length <= budget reachable from u by relator moves."""
    u = free_reduce(u)
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for w in frontier:
            for nw in neighbours(w, graph, budget):
                if nw not in seen:
                    seen.add(nw)
                    nxt.append(nw)
        frontier = nxt
        if len(seen) > max_nodes:
            raise SearchBudgetExceeded(f"relator-move component exceeds {max_nodes} words")
    return frozenset(seen)


# -- balls -------------------------------------------------------------------


def freely_reduced_words(graph: ArtinGraph, radius: int) -> list[Word]:
    """All freely reduced words of length <= radius, grouped by length."""
    letters = [s * g for g in graph.generators for s in (1, -1)]
    layer: list[Word] = [()]
    out = [()]
    for _ in range(radius):
        layer = [w + (x,) for w in layer for x in letters if not w or w[-1] != -x]
        out.extend(layer)
    return out


class _UF:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            if a < b:
                self.p[b] = a
            else:
                self.p[a] = b


class Ball:
    """Freely reduced words of length <= radius, partitioned into group elements.

    ``method="garside_dihedral"`` (single finite edge only) classifies by the
    Garside normal form. ``method="bfs_relator_moves"`` joins words by relator
    moves within the ball, then decides the remaining pairs that share the
    prefilter key by exploring their relator-move components with length
    budget ``radius + slack``. ``unresolved`` lists pairs whose comparison hit
    the node cap; it is empty whenever the partition is trustworthy.
    """

    def __init__(self, graph: ArtinGraph, radius: int, method: str | None = None,
                 prefilter: str | None = "default", slack: int | None = None,
                 max_words: int = 10_000_000, max_nodes: int = 2_000_000,
                 order: LexOrder | None = None):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        self.graph = graph
        self.radius = radius
        self.order = order or graph.default_order()
        fin = graph.finite_edges()
        if method is None:
            method = "garside_dihedral" if len(graph.generators) == 2 and len(fin) == 1 else "bfs_relator_moves"
        self.method = method
        self.prefilter = default_prefilter(graph) if prefilter == "default" else prefilter
        self.slack = slack if slack is not None else max([m for _, _, m in fin], default=0)
        letters = 2 * len(graph.generators)
        est = sum(letters * (letters - 1) ** (k - 1) for k in range(1, radius + 1)) + 1
        if est > max_words:
            raise SearchBudgetExceeded(f"ball of radius {radius} has about {est} words (cap {max_words})")
        self.words = freely_reduced_words(graph, radius)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.unresolved: list[tuple[Word, Word]] = []
        if method == "garside_dihedral":
            if len(fin) != 1 or len(graph.generators) != 2:
                raise ValueError("garside_dihedral needs a single finite edge")
            a, b, m = fin[0]
            labels = [garside_normal_form(w, m, (a, b)).key for w in self.words]
        elif method == "bfs_relator_moves":
            labels = self._bfs_labels(max_nodes)
        else:
            raise ValueError(f"unknown method {method!r}")
        self._build(labels)

    def _bfs_labels(self, max_nodes: int) -> list[int]:
        g, words, index = self.graph, self.words, self.index
        uf = _UF(len(words))
        for i, w in enumerate(words):
            for nw in neighbours(w, g, self.radius):
                uf.union(i, index[nw])
        roots = sorted({uf.find(i) for i in range(len(words))})
        buckets: dict[tuple, list[int]] = defaultdict(list)
        for r in roots:
            buckets[invariant_key(words[r], g, self.prefilter)].append(r)
        budget = self.radius + self.slack
        for comps in buckets.values():
            if len(comps) < 2:
                continue
            seen_in: dict[Word, int] = {}
            for r in comps:
                if uf.find(r) != r:
                    continue
                try:
                    cl = closure(words[r], g, budget, max_nodes)
                except SearchBudgetExceeded:
                    self.unresolved.append((words[r], words[r]))
                    continue
                hit = None
                for w in cl:
                    j = seen_in.get(w)
                    if j is not None:
                        hit = j
                        break
                if hit is not None:
                    uf.union(hit, r)
                    continue
                for w in cl:
                    seen_in[w] = r
        return [uf.find(i) for i in range(len(words))]

    def _build(self, labels) -> None:
        order = self.order
        groups: dict = defaultdict(list)
        for w, lab in zip(self.words, labels):
            groups[lab].append(w)
        classes = []
        for members in groups.values():
            members.sort(key=order.shortlex_key)
            shortest = len(members[0])
            classes.append(tuple(w for w in members if len(w) == shortest))
        classes.sort(key=lambda c: order.shortlex_key(c[0]))
        self.classes: tuple[tuple[Word, ...], ...] = tuple(classes)
        self._class_of: dict[Word, int] = {}
        lab_to_cid = {}
        for cid, geos in enumerate(classes):
            lab_to_cid[labels[self.index[geos[0]]]] = cid
        for w, lab in zip(self.words, labels):
            self._class_of[w] = lab_to_cid[lab]

    def __len__(self) -> int:
        return len(self.classes)

    def locate(self, w: Sequence[int]) -> int:
        w = free_reduce(w)
        try:
            return self._class_of[w]
        except KeyError:
            raise KeyError("word is longer than the ball radius") from None

    def canonical(self, cid: int) -> Word:
        return self.classes[cid][0]

    def geodesics_of(self, w: Sequence[int]) -> tuple[Word, ...]:
        return self.classes[self.locate(w)]

    def geodesic_length(self, w: Sequence[int]) -> int:
        return len(self.geodesics_of(w)[0])

    def elements(self, max_length: int | None = None) -> Iterable[tuple[int, tuple[Word, ...]]]:
        for cid, geos in enumerate(self.classes):
            if max_length is None or len(geos[0]) <= max_length:
                yield cid, geos

    def dump(self) -> str:
        g = self.graph
        lines = []
        for cid, geos in enumerate(self.classes):
            lines.append(f"class {cid}: {g.render_word(geos[0]) or 'e'}")
            for w in geos:
                lines.append(f"    {g.render_word(w) or 'e'}")
        return "\n".join(lines)


def enumerate_ball(graph: ArtinGraph, radius: int, **kw) -> Ball:
    return Ball(graph, radius, **kw)
