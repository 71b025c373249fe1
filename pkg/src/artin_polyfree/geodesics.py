"""
Geodesic prefixes, initial letters, and bounded-radius verifiers for the
structural facts about geodesics in large (even) Artin groups.

The decision procedure for "g has a geodesic representative starting with u"
is the length identity ``|sl(u^-1 g)| == |sl(g)| - |u|``. Each verifier
evaluates its statement twice: once on exhaustive Cayley-ball data from the
oracle and once through the rewriting engine; any disagreement between the two
is reported as a violation in its own right.
"""

from __future__ import annotations

import dataclasses
import itertools
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import SoundnessAlarm, UnsupportedPresentation
from .oracle import Ball
from .rewriting import normalizer_for
from .words import (
    INF,
    ArtinGraph,
    LexOrder,
    Word,
    alternating,
    free_reduce,
    inverse,
    leading_power,
    power,
)


# -- engine-side queries ---------------------------------------------------


def has_geodesic_prefix(g: Sequence[int], u: Sequence[int], graph: ArtinGraph, order: LexOrder | None = None) -> bool:
    n = normalizer_for(graph, order)
    glen = len(n.normalize(g))
    if len(u) > glen:
        return False
    return len(n.normalize(inverse(u) + tuple(g))) == glen - len(u)


@dataclasses.dataclass(frozen=True)
class InitialLetterReport:
    element: Word
    initials: frozenset[int]


def initial_letters(g: Sequence[int], graph: ArtinGraph, order: LexOrder | None = None) -> InitialLetterReport:
    """Letters that begin some geodesic of g, decided two ways that must agree."""
    order = order or graph.default_order()
    sl = normalizer_for(graph, order).normalize(g)
    by_length = set()
    by_order = set()
    for x in order.ranking:
        if has_geodesic_prefix(sl, (x,), graph, order):
            by_length.add(x)
        first = normalizer_for(graph, order.with_first(x)).normalize(sl)
        if first and first[0] == x:
            by_order.add(x)
    if by_length != by_order:
        raise SoundnessAlarm(f"initial letters disagree for {sl}: {sorted(by_length)} vs {sorted(by_order)}")
    return InitialLetterReport(sl, frozenset(by_length))


def max_initial_power(g: Sequence[int], x: int, graph: ArtinGraph, order: LexOrder | None = None) -> int:
    glen = len(normalizer_for(graph, order).normalize(g))
    t = 0
    while t < glen and has_geodesic_prefix(g, power(x, t + 1), graph, order):
        t += 1
    return t


def minimal_intersection_word(label: int, s: int, t: int, a: int = 1, b: int = 2) -> tuple[Word, Word]:
    """Shortest pair of equal geodesics starting with b^t and a^s respectively.

    ``label`` is the (even) edge label 2m between a and b. Supported
    parameters: s >= t >= 1 and s <= t <= -1 (length |s| + |t|(2m-1)); s = -1
    with t >= 1, and t = 1 with s <= -1 (length |power| + 2m - 1).
    """
    if label == INF or label % 2 or label < 4:
        raise ValueError("label must be an even integer >= 4")
    L = label - 1
    if s >= t >= 1:
        w = power(b, t) + alternating(a, b, L) * t + power(a, s - t)
        wh = power(a, s) + alternating(b, a, L) * t
        return w, wh
    if s <= t <= -1:
        w = power(b, t) + alternating(-a, -b, L) * (-t) + power(a, -abs(s - t))
        wh = power(a, s) + alternating(-b, -a, L) * (-t)
        return w, wh
    if s == -1 and t >= 1:
        x = alternating(-a, -b, L)
        return power(b, t) + x, x + power(b, t)
    if t == 1 and s <= -1:
        y = alternating(b, a, L)
        return y + power(a, s), power(a, s) + y
    raise ValueError(f"parameters (s={s}, t={t}) are outside the supported patterns")


# -- verification context --------------------------------------------------


@lru_cache(maxsize=32)
def cached_ball(graph: ArtinGraph, radius: int) -> Ball:
    return Ball(graph, radius)


class _Ctx:
    """Oracle ball plus engine for one graph; elements are ball class ids."""

    def __init__(self, graph: ArtinGraph, radius: int, order: LexOrder | None, lookup_slack: int = 0):
        if not graph.is_large:
            raise UnsupportedPresentation(f"graph {graph.describe()} is not large")
        self.graph = graph
        self.radius = radius
        self.order = order or graph.default_order()
        self.ball = cached_ball(graph, radius + lookup_slack)
        self.engine = normalizer_for(graph, self.order)
        self.letters = self.order.ranking
        self.mismatches: list[str] = []

    def elements(self, max_len: int | None = None):
        lim = self.radius if max_len is None else max_len
        return [cid for cid, geos in self.ball.elements(lim)]

    def geos(self, cid: int) -> tuple[Word, ...]:
        return self.ball.classes[cid]

    def length(self, cid: int) -> int:
        return len(self.ball.classes[cid][0])

    def locate(self, w: Sequence[int]) -> int:
        return self.ball.locate(free_reduce(w))

    def has_prefix(self, cid: int, u: Sequence[int]) -> bool:
        u = tuple(u)
        return any(w[:len(u)] == u for w in self.ball.classes[cid])

    def initials(self, cid: int) -> frozenset[int]:
        return frozenset(w[0] for w in self.ball.classes[cid] if w)

    def sl(self, cid: int, order: LexOrder | None = None) -> Word:
        order = order or self.order
        return min(self.ball.classes[cid], key=order.key)

    def render(self, w: Sequence[int]) -> str:
        return self.graph.render_word(w) or "e"

    # engine cross-checks, recorded rather than raised
    def check_engine_sl(self, cid: int, order: LexOrder | None = None) -> None:
        order = order or self.order
        want = self.sl(cid, order)
        got = normalizer_for(self.graph, order).normalize(self.ball.classes[cid][0])
        if got != want:
            self.mismatches.append(f"engine sl {self.render(got)} != oracle {self.render(want)}")

    def check_engine_initials(self, cid: int) -> None:
        g = self.ball.classes[cid][0]
        eng = frozenset(x for x in self.letters if has_geodesic_prefix(g, (x,), self.graph, self.order))
        if eng != self.initials(cid):
            self.mismatches.append(f"engine initials differ for {self.render(g)}")


@dataclasses.dataclass
class LemmaReport:
    lemma_id: str
    graph_name: str
    radius: int
    checked: int = 0
    violations: list[str] = dataclasses.field(default_factory=list)
    engine_agrees: bool = True
    notes: list[str] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        head = (f"lemma {self.lemma_id} graph {self.graph_name} radius {self.radius}: "
                f"checked {self.checked} violations {len(self.violations)}")
        return "\n".join([head, *self.violations])


# -- geodesic structure in a large group -------------------------------------


def _lemma_no_inverse_initials(ctx: _Ctx, rep: LemmaReport) -> None:
    for cid in ctx.elements():
        ini = ctx.initials(cid)
        rep.checked += 1
        ctx.check_engine_initials(cid)
        if any(-x in ini for x in ini):
            rep.violations.append(ctx.render(ctx.geos(cid)[0]))


def _lemma_power_geodesic(ctx: _Ctx, rep: LemmaReport) -> None:
    # b^t w geodesic <=> b w geodesic, over every freely reduced word of the ball
    for w in ctx.ball.words:
        if len(w) > ctx.radius:
            continue
        x, t = leading_power(w)
        if t < 2:
            continue
        rest = w[t:]
        long_geo = ctx.length(ctx.locate(w)) == len(w)
        short = (x,) + rest
        short_geo = ctx.length(ctx.locate(short)) == len(short)
        rep.checked += 1
        if long_geo != ctx.engine.is_geodesic(w):
            ctx.mismatches.append(f"engine geodesic test differs on {ctx.render(w)}")
        if long_geo != short_geo:
            rep.violations.append(ctx.render(w))


def _lemma_extension(ctx: _Ctx, rep: LemmaReport) -> None:
    for cid in ctx.elements(ctx.radius - 1):
        for w in ctx.geos(cid):
            if not w:
                continue
            x, tmax = leading_power(w)
            for t in range(1, tmax + 1):
                rest = w[t:]
                for h in ctx.letters:
                    wh = ctx.locate(w + (h,))
                    if ctx.has_prefix(wh, power(x, t)):
                        continue
                    rep.checked += 1
                    if not ctx.has_prefix(ctx.locate(rest + (h,)), (-x,)):
                        rep.violations.append(f"{ctx.render(w)} . {ctx.render((h,))}")


def _lead(w: Sequence[int], x: int) -> int:
    t = 0
    while t < len(w) and w[t] == x:
        t += 1
    return t


def _lemma_first_letter_growth(ctx: _Ctx, rep: LemmaReport) -> None:
    for x in ctx.letters:
        order = ctx.order.with_first(x)
        for cid in ctx.elements(ctx.radius - 1):
            slu = ctx.sl(cid, order)
            for l in ctx.letters:
                if slu and slu[-1] == -l:
                    continue
                ul = ctx.locate(slu + (l,))
                if ctx.length(ul) != len(slu) + 1:
                    continue
                slul = ctx.sl(ul, order)
                s = _lead(slul, x)
                if s <= 1 or _lead(slu, x) >= s:
                    continue
                rep.checked += 1
                ctx.check_engine_sl(ul, order)
                if _lead(slu, x) != s - 1:
                    rep.violations.append(f"{ctx.render(slu)} . {ctx.render((l,))} (first letter {ctx.render((x,))})")


def _lemma_prefix_chain(ctx: _Ctx, rep: LemmaReport) -> None:
    for x in ctx.letters:
        order = ctx.order.with_first(x)
        for cid in ctx.elements():
            for w in ctx.geos(cid):
                if not w or abs(w[0]) == abs(x):
                    continue
                s = _lead(ctx.sl(cid, order), x)
                if s == 0:
                    continue
                rep.checked += 1
                want = 1
                for k in range(1, len(w) + 1):
                    if _lead(ctx.sl(ctx.locate(w[:k]), order), x) == want:
                        want += 1
                        if want > s:
                            break
                if want <= s:
                    rep.violations.append(f"{ctx.render(w)} (first letter {ctx.render((x,))})")


def _edge_pairs(graph: ArtinGraph):
    """Ordered pairs of distinct adjacent generators with even label."""
    for i, j, m in graph.finite_edges():
        if m % 2 == 0:
            yield i, j, m
            yield j, i, m


def _elements_with_prefixes(ctx: _Ctx, u: Word, v: Word) -> list[int]:
    return [cid for cid in ctx.elements() if ctx.has_prefix(cid, u) and ctx.has_prefix(cid, v)]


def _lemma_intersection_minimal(ctx: _Ctx, rep: LemmaReport) -> None:
    for a, b, label in _edge_pairs(ctx.graph):
        half = label // 2
        for sign in (1, -1):
            for t in range(1, ctx.radius + 1):
                for s in range(t, ctx.radius + 1):
                    length = s + t * (2 * half - 1)
                    S, T = sign * s, sign * t
                    found = _elements_with_prefixes(ctx, power(b, T), power(a, S))
                    if length > ctx.radius:
                        if any(ctx.length(c) < length for c in found):
                            rep.checked += 1
                            rep.violations.append(f"s={S} t={T}: element shorter than {length}")
                        continue
                    rep.checked += 1
                    w, wh = minimal_intersection_word(label, S, T, a, b)
                    target = ctx.locate(w)
                    minimal = sorted({c for c in found if ctx.length(c) == min(ctx.length(f) for f in found)}) if found else []
                    ok = (
                        ctx.locate(wh) == target
                        and ctx.length(target) == length == len(w)
                        and minimal == [target]
                        and w in ctx.geos(target) and wh in ctx.geos(target)
                    )
                    if ok:
                        ctx.check_engine_sl(target)
                        if not ctx.engine.equal(w, wh):
                            ctx.mismatches.append(f"engine says {ctx.render(w)} != {ctx.render(wh)}")
                    else:
                        rep.violations.append(
                            f"s={S} t={T} a={ctx.render((a,))} b={ctx.render((b,))}: minimal "
                            + ", ".join(ctx.render(ctx.geos(c)[0]) for c in minimal)
                        )


def _lemma_no_mixed_squares(ctx: _Ctx, rep: LemmaReport) -> None:
    for cid in ctx.elements():
        rep.checked += 1
        pos = {w[0] for w in ctx.geos(cid) if len(w) >= 2 and w[0] > 0 and w[1] == w[0]}
        neg = {w[0] for w in ctx.geos(cid) if len(w) >= 2 and w[0] < 0 and w[1] == w[0]}
        if any(abs(p) != abs(n) for p in pos for n in neg):
            rep.violations.append(ctx.render(ctx.geos(cid)[0]))


def _lemma_mixed_unit(ctx: _Ctx, rep: LemmaReport) -> None:
    """Minimal elements with geodesics starting b^t and a^-1 (or a^-t and b)."""
    for a, b, label in _edge_pairs(ctx.graph):
        half = label // 2
        for t in range(1, ctx.radius + 1):
            length = t + 2 * half - 1
            branches = [(power(b, t), (-a,), minimal_intersection_word(label, -1, t, a, b))]
            branches.append((power(a, -t), (b,), minimal_intersection_word(label, -t, 1, a, b)))
            for first, second, (w, wh) in branches:
                found = _elements_with_prefixes(ctx, first, second)
                if length > ctx.radius:
                    if any(ctx.length(c) < length for c in found):
                        rep.checked += 1
                        rep.violations.append(f"t={t}: element shorter than {length}")
                    continue
                rep.checked += 1
                # words w of minimal length beginning with `first` whose element also
                # has a geodesic beginning with `second`
                minimal_words = sorted(
                    {g for c in found if ctx.length(c) == length for g in ctx.geos(c) if g[:len(first)] == first}
                )
                expected = sorted({w if w[:len(first)] == first else wh})
                shortest = min((ctx.length(c) for c in found), default=None)
                if shortest != length or minimal_words != expected or ctx.locate(w) != ctx.locate(wh):
                    rep.violations.append(
                        f"t={t} start {ctx.render(first)}/{ctx.render(second)}: minimal words "
                        + ", ".join(ctx.render(x) for x in minimal_words)
                    )
                elif not ctx.engine.equal(w, wh):
                    ctx.mismatches.append(f"engine says {ctx.render(w)} != {ctx.render(wh)}")


def _lemma_initials_bound(ctx: _Ctx, rep: LemmaReport) -> None:
    for cid in ctx.elements():
        rep.checked += 1
        ctx.check_engine_initials(cid)
        if len(ctx.initials(cid)) > 2:
            rep.violations.append(ctx.render(ctx.geos(cid)[0]))


_GEODESIC_LEMMAS: dict[str, Callable[[_Ctx, LemmaReport], None]] = {
    "L3.1": _lemma_no_inverse_initials,
    "L3.2": _lemma_power_geodesic,
    "L3.3": _lemma_extension,
    "L3.5": _lemma_first_letter_growth,
    "C3.6": _lemma_prefix_chain,
    "L3.7": _lemma_intersection_minimal,
    "L3.8": _lemma_no_mixed_squares,
    "L3.9": _lemma_mixed_unit,
    "L3.10": _lemma_initials_bound,
}

_ALIASES = {"Initials": "L3.10", "L5.12": "L5.12/C5.13", "C5.13": "L5.12/C5.13"}

KERNEL_LEMMAS = ("L5.3", "L5.4", "L5.8", "L5.10", "L5.11", "L5.12/C5.13", "L5.15", "L5.16-len", "H-free", "Commute")
LEMMA_IDS = tuple(_GEODESIC_LEMMAS) + KERNEL_LEMMAS


def verify_lemma(lemma_id: str, graph: ArtinGraph, radius: int, order: LexOrder | None = None,
                 graph_name: str | None = None, r: str | int | None = None) -> LemmaReport:
    """Check one statement exhaustively over the Cayley ball of the given radius.

    Kernel-side statements (L5.x, H-free, Commute) quantify over the removed
    vertex ``r``; by default every vertex whose removal leaves a large even
    graph is tried.
    """
    lemma_id = _ALIASES.get(lemma_id, lemma_id)
    name = graph_name or graph.describe()
    rep = LemmaReport(lemma_id, name, radius)
    if radius < 1:
        rep.notes.append("radius 0: only the identity, statement holds vacuously")
        return rep
    if lemma_id in _GEODESIC_LEMMAS:
        if lemma_id in ("L3.7", "L3.8", "L3.9", "L3.10") and not graph.is_large_even:
            raise UnsupportedPresentation(f"{lemma_id} is stated for large even graphs")
        ctx = _Ctx(graph, radius, order)
        _GEODESIC_LEMMAS[lemma_id](ctx, rep)
        _merge_mismatches(rep, ctx.mismatches)
        return rep
    if lemma_id in KERNEL_LEMMAS:
        from .kernel import verify_kernel_lemma

        verify_kernel_lemma(lemma_id, graph, radius, order, r, rep)
        return rep
    raise ValueError(f"unknown lemma id {lemma_id!r}; known: {', '.join(LEMMA_IDS)}")


def _merge_mismatches(rep: LemmaReport, mismatches: Iterable[str]) -> None:
    mism = list(dict.fromkeys(mismatches))
    if mism:
        rep.engine_agrees = False
        rep.violations.extend(f"engine/oracle disagreement: {m}" for m in mism)
