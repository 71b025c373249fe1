"""
Shortlex normal forms in large Artin groups by critical sequences.

A critical sequence applies tau to a critical factor, then to a new critical
factor that overlaps the previous result in a power of its boundary letter and
brings in exactly one new generator name, and so on in a fixed direction.
A word is shortlex minimal exactly when it is freely reduced and admits neither
a rightward sequence ending in a free cancellation nor a leftward sequence that
makes it lex-smaller. ``ShortlexNormalizer`` builds sl(w) one letter at a time
and keeps every sequence it applied as a ``ReductionTrace``.
"""

from __future__ import annotations

import dataclasses
from typing import Iterator, Sequence

from .dihedral import CriticalWord, _find_critical, tau
from .errors import SearchBudgetExceeded, SoundnessAlarm, UnsupportedPresentation, WordSyntaxError
from .words import INF, ArtinGraph, LexOrder, Word, free_reduce, is_freely_reduced


@dataclasses.dataclass(frozen=True)
class TraceStep:
    span: tuple[int, int]
    critical: CriticalWord
    result: Word


@dataclasses.dataclass(frozen=True)
class ReductionTrace:
    """One critical sequence. ``output`` is freely reduced; ``tail`` is the
    letter cancelled outside the last tau image (None for lex reductions)."""

    input: Word
    direction: str
    kind: str
    steps: tuple[TraceStep, ...]
    output: Word
    tail: int | None = None

    def replay(self) -> Word:
        w = self.input
        for st in self.steps:
            i, j = st.span
            c = _find_critical(w[i:j], st.critical.m)
            if c is None or c.word != st.critical.word:
                raise SoundnessAlarm(f"span {st.span} is not the recorded critical word")
            r = tau(c)
            if r != st.result:
                raise SoundnessAlarm(f"tau at span {st.span} differs from the recorded result")
            w = w[:i] + r + w[j:]
        return free_reduce(w)

    def to_text(self, graph: ArtinGraph) -> str:
        lines = [
            f"input: {graph.render_word(self.input)}",
            f"direction: {self.direction} kind: {self.kind}",
        ]
        for k, st in enumerate(self.steps, 1):
            lines.append(
                f"step {k}: span [{st.span[0]},{st.span[1]}) form {st.critical.form} "
                f"tau-> {graph.render_word(st.result)}"
            )
        lines.append(f"result: {graph.render_word(self.output)}")
        return "\n".join(lines)


def replay_text(text: str, graph: ArtinGraph) -> tuple[Word, Word]:
    """Replay a serialized trace; returns (recomputed output, recorded output)."""
    w: Word | None = None
    recorded: Word | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("input:"):
            w = graph.parse_word(line[len("input:"):])
        elif line.startswith("step "):
            if w is None:
                raise WordSyntaxError("trace has a step before its input line")
            try:
                span_txt = line.split("span [", 1)[1].split(")", 1)[0]
                i, j = (int(s) for s in span_txt.split(","))
            except (IndexError, ValueError):
                raise WordSyntaxError(f"malformed step line: {line!r}") from None
            names = {abs(x) for x in w[i:j]}
            if len(names) != 2 or not (0 <= i < j <= len(w)):
                raise WordSyntaxError(f"span [{i},{j}) is not a two-generator factor")
            a, b = names
            c = _find_critical(w[i:j], int(graph.label(a, b))) if graph.label(a, b) != INF else None
            if c is None:
                raise WordSyntaxError(f"span [{i},{j}) is not critical")
            w = w[:i] + tau(c) + w[j:]
        elif line.startswith("result:"):
            recorded = graph.parse_word(line[len("result:"):])
    if w is None or recorded is None:
        raise WordSyntaxError("trace must contain input and result lines")
    return free_reduce(w), recorded


def _critical_at(w: Word, i: int, j: int, graph: ArtinGraph) -> CriticalWord | None:
    names = {abs(x) for x in w[i:j]}
    if len(names) != 2:
        return None
    a, b = names
    m = graph.label(a, b)
    if m == INF:
        return None
    return _find_critical(w[i:j], int(m))


def find_critical_subwords(w: Sequence[int], graph: ArtinGraph) -> list[tuple[tuple[int, int], CriticalWord]]:
    """All critical factors of w, sorted by start then end."""
    w = tuple(w)
    out = []
    n = len(w)
    for i in range(n):
        names = {abs(w[i])}
        for j in range(i + 1, n):
            names.add(abs(w[j]))
            if len(names) > 2:
                break
            c = _critical_at(w, i, j + 1, graph)
            if c is not None:
                out.append(((i, j + 1), c))
    return out


@dataclasses.dataclass
class _Budget:
    limit: int
    used: int = 0

    def spend(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"more than {self.limit} tau-moves")


def _boundary_cancel(w: Word, i: int, j: int) -> tuple[str, int] | None:
    if j < len(w) and w[j - 1] == -w[j]:
        return "right", w[j]
    if i > 0 and w[i - 1] == -w[i]:
        return "left", w[i - 1]
    return None


def _sequences(w: Word, graph: ArtinGraph, direction: str, starts, budget: _Budget) -> Iterator[tuple]:
    """Yield (steps, word, cancel) for every prefix of every critical sequence.

    ``starts`` lists the spans of the first critical factor. ``cancel`` is
    None while the current word is freely reduced; a cancellation ends the
    sequence.
    """
    max_depth = max(len(w), 1)

    def rec(word: Word, i: int, j: int, names: frozenset, steps: tuple):
        if len(steps) >= max_depth:
            return
        if direction == "right":
            x = word[j - 1]
            run = 1
            while j - run - 1 >= i and word[j - run - 1] == x:
                run += 1
            if j >= len(word) or abs(word[j]) in names:
                return
            new = abs(word[j])
            pair = {abs(x), new}
            for s in range(1, run + 1):
                a = j - s
                e = j + 1
                while e <= len(word) and abs(word[e - 1]) in pair:
                    c = _critical_at(word, a, e, graph)
                    if c is not None:
                        yield from apply(word, a, e, c, steps)
                    e += 1
        else:
            x = word[i]
            run = 1
            while i + run < j and word[i + run] == x:
                run += 1
            if i == 0 or abs(word[i - 1]) in names:
                return
            new = abs(word[i - 1])
            pair = {abs(x), new}
            for s in range(1, run + 1):
                e = i + s
                a = i - 1
                while a >= 0 and abs(word[a]) in pair:
                    c = _critical_at(word, a, e, graph)
                    if c is not None:
                        yield from apply(word, a, e, c, steps)
                    a -= 1

    def apply(word: Word, a: int, e: int, c: CriticalWord, steps: tuple):
        budget.spend()
        r = tau(c)
        nw = word[:a] + r + word[e:]
        st = steps + (TraceStep((a, e), c, r),)
        cancel = _boundary_cancel(nw, a, e)
        yield st, nw, cancel
        if cancel is None:
            yield from rec(nw, a, e, frozenset((abs(x) for x in c.gens)), st)

    for (a, e) in starts:
        c = _critical_at(w, a, e, graph)
        if c is not None:
            yield from apply(w, a, e, c, ())


def _all_starts(w: Word, graph: ArtinGraph, ending_at: int | None = None) -> list[tuple[int, int]]:
    spans = [span for span, _ in find_critical_subwords(w, graph)]
    if ending_at is not None:
        spans = [s for s in spans if s[1] == ending_at]
    return spans


def _length_candidates(w: Word, graph: ArtinGraph, direction: str, starts, budget: _Budget):
    for steps, nw, cancel in _sequences(w, graph, direction, starts, budget):
        if cancel is not None:
            side, tail = cancel
            yield ReductionTrace(w, "rightward" if direction == "right" else "leftward",
                                 "length_reducing", steps, free_reduce(nw), tail)


def _lex_candidates(w: Word, graph: ArtinGraph, order: LexOrder, starts, budget: _Budget):
    key = order.key(w)
    for steps, nw, cancel in _sequences(w, graph, "left", starts, budget):
        if cancel is None and order.key(nw) < key:
            yield ReductionTrace(w, "leftward", "lex_reducing", steps, nw)


def _pick(cands, order: LexOrder) -> ReductionTrace | None:
    best = None
    best_key = None
    for t in cands:
        k = (order.shortlex_key(t.output), len(t.steps))
        if best is None or k < best_key:
            best, best_key = t, k
    return best


def _prepare(w: Sequence[int], graph: ArtinGraph) -> Word:
    w = tuple(w)
    graph.check_word(w)
    if not is_freely_reduced(w):
        raise ValueError("input word is not freely reduced")
    return w


def _default_budget(w: Sequence[int], graph: ArtinGraph) -> int:
    return max(len(w), 1) ** 2 * len(graph.generators) ** 2


def search_rightward_length_reduction(
    w: Sequence[int], graph: ArtinGraph, order: LexOrder | None = None, max_moves: int | None = None
) -> ReductionTrace | None:
    """A rightward critical sequence ending in a free cancellation, or None.

    When several exist, the one with the shortlex-least output (then fewest
    steps) is returned, using ``order`` or the graph's default order.
    """
    w = _prepare(w, graph)
    order = order or graph.default_order()
    budget = _Budget(max_moves if max_moves is not None else _default_budget(w, graph))
    return _pick(_length_candidates(w, graph, "right", _all_starts(w, graph), budget), order)


def search_leftward_lex_reduction(
    w: Sequence[int], graph: ArtinGraph, order: LexOrder, max_moves: int | None = None
) -> ReductionTrace | None:
    """A leftward critical sequence giving a freely reduced lex-smaller word.

    Among all such sequences the one with the lex-least output is returned.
    """
    w = _prepare(w, graph)
    budget = _Budget(max_moves if max_moves is not None else _default_budget(w, graph))
    return _pick(_lex_candidates(w, graph, order, _all_starts(w, graph), budget), order)


class ShortlexNormalizer:
    """Incremental shortlex normalizer for a large Artin group.

    Results of appending a letter to an already normal word are cached, so
    normalizing many words that share prefixes (as a ball enumeration does)
    is cheap. ``max_moves`` overrides the per-word tau-move cap
    ``|w|^2 * |V|^2``.
    """

    def __init__(self, graph: ArtinGraph, order: LexOrder | None = None, max_moves: int | None = None,
                 check_fixpoint: bool = True):
        if not graph.is_large:
            raise UnsupportedPresentation(
                "shortlex rewriting needs every finite label to be at least 3; "
                f"graph {graph.describe()} has a smaller label"
            )
        self.graph = graph
        self.order = order or graph.default_order()
        self.max_moves = max_moves
        self.check_fixpoint = check_fixpoint
        self._step_cache: dict[tuple[Word, int], tuple[Word, tuple[ReductionTrace, ...]]] = {}

    def _reduce_once(self, u: Word, budget: _Budget, restricted: bool) -> ReductionTrace | None:
        g, order = self.graph, self.order
        starts = _all_starts(u, g)
        t = _pick(_length_candidates(u, g, "right", starts, budget), order)
        if t is not None:
            return t
        left_starts = [s for s in starts if s[1] == len(u)] if restricted else starts
        t = _pick(_length_candidates(u, g, "left", left_starts, budget), order)
        if t is not None:
            return t
        return _pick(_lex_candidates(u, g, order, left_starts, budget), order)

    def _append(self, u: Word, a: int, budget: _Budget) -> tuple[Word, tuple[ReductionTrace, ...]]:
        key = (u, a)
        hit = self._step_cache.get(key)
        if hit is not None:
            return hit
        if u and u[-1] == -a:
            res = (u[:-1], ())
        else:
            v = u + (a,)
            traces = []
            t = self._reduce_once(v, budget, restricted=True)
            while t is not None:
                traces.append(t)
                if self.order.shortlex_key(t.output) >= self.order.shortlex_key(v):
                    raise SoundnessAlarm("a reduction did not decrease the word")
                v = t.output
                t = self._reduce_once(v, budget, restricted=False) if self.check_fixpoint else None
            res = (v, tuple(traces))
        self._step_cache[key] = res
        return res

    def normalize_with_traces(self, w: Sequence[int]) -> tuple[Word, list[ReductionTrace]]:
        w = tuple(w)
        self.graph.check_word(w)
        limit = self.max_moves if self.max_moves is not None else _default_budget(w, self.graph)
        budget = _Budget(limit)
        u: Word = ()
        traces: list[ReductionTrace] = []
        for a in w:
            u, ts = self._append(u, a, budget)
            traces.extend(ts)
        return u, traces

    def normalize(self, w: Sequence[int]) -> Word:
        return self.normalize_with_traces(w)[0]

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.normalize(u) == self.normalize(v)

    def is_geodesic(self, w: Sequence[int]) -> bool:
        return len(self.normalize(w)) == len(w)

    def geodesic_length(self, w: Sequence[int]) -> int:
        return len(self.normalize(w))


_NORMALIZERS: dict[tuple[ArtinGraph, LexOrder], ShortlexNormalizer] = {}


def normalizer_for(graph: ArtinGraph, order: LexOrder | None = None) -> ShortlexNormalizer:
    order = order or graph.default_order()
    key = (graph, order)
    n = _NORMALIZERS.get(key)
    if n is None:
        n = _NORMALIZERS[key] = ShortlexNormalizer(graph, order)
    return n


def shortlex_normalize(w: Sequence[int], graph: ArtinGraph, order: LexOrder | None = None) -> tuple[Word, list[ReductionTrace]]:
    return ShortlexNormalizer(graph, order).normalize_with_traces(w)


def words_equal(u: Sequence[int], v: Sequence[int], graph: ArtinGraph, order: LexOrder | None = None) -> bool:
    return normalizer_for(graph, order).equal(u, v)


def is_geodesic(w: Sequence[int], graph: ArtinGraph, order: LexOrder | None = None) -> bool:
    return normalizer_for(graph, order).is_geodesic(w)
