"""
Two-generator machinery for the dihedral Artin group A_2(m).

``pn_stats`` measures the longest positive and negative alternating runs,
``find_critical`` recognises the rewrite sites and ``tau`` rewrites them.
``garside_normal_form`` is an exact solution to the word problem that shares
no code with the rewriting engine: an element is stored as ``Delta^k`` times a
left-weighted list of proper positive alternating factors.
"""

from __future__ import annotations

import dataclasses
from functools import lru_cache
from typing import Sequence

from .errors import AlphabetError
from .words import INF, Word, alternating, free_reduce, is_freely_reduced

# Forms of critical words. "pos_right" means a positive word whose unique
# alternating block of length m sits at the right end (xi+ block), "pos_left"
# the block at the left end (block xi+); likewise for negative words.
FORMS = (
    "pure_alternating_pos",
    "pure_alternating_neg",
    "pos_left",
    "pos_right",
    "neg_left",
    "neg_right",
    "unsigned_pos_first",
    "unsigned_neg_first",
)


def _names(w: Sequence[int]) -> list[int]:
    seen: list[int] = []
    for x in w:
        if abs(x) not in seen:
            seen.append(abs(x))
    return seen


def _check_two_generator(w: Sequence[int]) -> None:
    if not is_freely_reduced(w):
        raise ValueError("word is not freely reduced")
    if len(_names(w)) > 2:
        raise AlphabetError("word involves more than two generators")


def _other(name: int, pair: Sequence[int]) -> int:
    a, b = pair
    return b if name == a else a


def _runs(w: Sequence[int], positive: bool) -> list[tuple[int, int]]:
    """Maximal alternating same-sign runs as half-open spans."""
    out = []
    i, n = 0, len(w)
    while i < n:
        if (w[i] > 0) != positive:
            i += 1
            continue
        j = i + 1
        while j < n and (w[j] > 0) == positive and abs(w[j]) != abs(w[j - 1]):
            j += 1
        out.append((i, j))
        i = j
    return out


@dataclasses.dataclass(frozen=True)
class PNStats:
    p: int
    n: int
    m: float

    @property
    def total(self) -> int:
        return self.p + self.n


def pn_stats(w: Sequence[int], m: float) -> PNStats:
    _check_two_generator(w)
    r1 = max((j - i for i, j in _runs(w, True)), default=0)
    r2 = max((j - i for i, j in _runs(w, False)), default=0)
    cap = INF if m == INF else int(m)
    return PNStats(int(min(r1, cap)), int(min(r2, cap)), m)


@dataclasses.dataclass(frozen=True)
class UniqueGeodesic:
    stats: PNStats


@dataclasses.dataclass(frozen=True)
class GeodesicAmongSeveral:
    stats: PNStats


@dataclasses.dataclass(frozen=True)
class NotGeodesic:
    stats: PNStats
    witness: Word
    span: tuple[int, int]


def classify_geodesic(w: Sequence[int], m: float):
    """Classify a freely reduced two-generator word by p + n against m.

    For a non-geodesic word the witness is the shortest (then leftmost) factor
    with p + n = m; one always exists because p + n grows by at most one per
    appended letter.
    """
    w = tuple(w)
    st = pn_stats(w, m)
    if m == INF or st.total < m:
        return UniqueGeodesic(st)
    if st.total == m:
        return GeodesicAmongSeveral(st)
    for length in range(1, len(w) + 1):
        for i in range(len(w) - length + 1):
            if pn_stats(w[i:i + length], m).total == m:
                return NotGeodesic(st, w[i:i + length], (i, i + length))
    raise AssertionError("unreachable: no witness factor")


@dataclasses.dataclass(frozen=True)
class CriticalWord:
    """A critical word together with its decomposition.

    ``head`` and ``tail`` are the spans of the leading and trailing alternating
    blocks (one of them is empty for positive or negative words), ``middle``
    the span of the free part (xi or eta).
    """

    word: Word
    form: str
    m: int
    gens: tuple[int, int]
    p: int
    n: int
    head: tuple[int, int]
    middle: tuple[int, int]
    tail: tuple[int, int]

    @property
    def xi(self) -> Word:
        i, j = self.middle
        return self.word[i:j]


def _count_blocks(w: Sequence[int], m: int, positive: bool) -> list[int]:
    """Start positions of same-sign alternating factors of length exactly m."""
    starts = []
    for i, j in _runs(w, positive):
        starts.extend(range(i, j - m + 1))
    return starts


def _is_alternating_block(w: Sequence[int], positive: bool) -> bool:
    return all((x > 0) == positive for x in w) and all(abs(w[i]) != abs(w[i + 1]) for i in range(len(w) - 1))


@lru_cache(maxsize=1 << 16)
def _find_critical(w: Word, m: int) -> CriticalWord | None:
    names = _names(w)
    if len(names) != 2:
        return None
    st = pn_stats(w, m)
    if st.total != m:
        return None
    gens = tuple(sorted(names))
    L = len(w)
    positive = all(x > 0 for x in w)
    negative = all(x < 0 for x in w)
    if positive or negative:
        starts = _count_blocks(w, m, positive)
        if len(starts) != 1:
            return None
        s = starts[0]
        sign = "pos" if positive else "neg"
        if L == m:
            return CriticalWord(w, f"pure_alternating_{sign}", m, gens, st.p, st.n, (0, m), (m, m), (m, m))
        if s == 0:
            return CriticalWord(w, f"{sign}_left", m, gens, st.p, st.n, (0, m), (m, L), (L, L))
        if s == L - m:
            return CriticalWord(w, f"{sign}_right", m, gens, st.p, st.n, (0, 0), (0, L - m), (L - m, L))
        return None
    p, n = st.p, st.n
    if p == 0 or n == 0 or L < m:
        return None
    if w[0] > 0:
        first, last, form = p, n, "unsigned_pos_first"
    else:
        first, last, form = n, p, "unsigned_neg_first"
    head, tail = w[:first], w[L - last:]
    if not (_is_alternating_block(head, w[0] > 0) and _is_alternating_block(tail, w[0] < 0)):
        return None
    return CriticalWord(w, form, m, gens, p, n, (0, first), (first, L - last), (L - last, L))


def find_critical(w: Sequence[int], m: float) -> CriticalWord | None:
    """Return the decomposition of w if it is a critical word for label m, else None."""
    w = tuple(w)
    _check_two_generator(w)
    if m == INF:
        return None
    return _find_critical(w, int(m))


def nu(w: Sequence[int], m: int, gens: Sequence[int]) -> Word:
    """Conjugation by Delta: identity for even m, swap of the two names for odd m."""
    if m % 2 == 0:
        return tuple(w)
    a, b = gens
    return tuple((b if abs(x) == a else a) * (1 if x > 0 else -1) for x in w)


def tau(c: CriticalWord) -> Word:
    w, m, gens = c.word, c.m, c.gens
    xi = c.xi
    v = nu(xi, m, gens)
    f = c.form
    if f == "pure_alternating_pos" or f == "pure_alternating_neg":
        # (x,y)_m -> (y,x)_m: same length, the other end letter
        y = w[-1]
        x = _other(abs(y), gens) * (1 if y > 0 else -1)
        return alternating(y, x, m, "right")
    if f == "pos_right":
        z = abs(xi[0])
        t = _other(z, gens)
        return alternating(t, z, m, "left") + v
    if f == "pos_left":
        z = abs(xi[-1])
        t = _other(z, gens)
        return v + alternating(z, t, m, "right")
    if f == "neg_right":
        z = abs(xi[0])
        t = _other(z, gens)
        return alternating(-t, -z, m, "left") + v
    if f == "neg_left":
        z = abs(xi[-1])
        t = _other(z, gens)
        return v + alternating(-z, -t, m, "right")
    x = abs(w[0])
    y = _other(x, gens)
    t = abs(w[-1])
    z = _other(t, gens)
    if f == "unsigned_pos_first":
        return alternating(-y, -x, c.n, "left") + v + alternating(t, z, c.p, "right")
    if f == "unsigned_neg_first":
        return alternating(y, x, c.p, "left") + v + alternating(-t, -z, c.n, "right")
    raise ValueError(f"unknown form {f!r}")


# ---------------------------------------------------------------------------
# Garside normal form


@dataclasses.dataclass(frozen=True)
class GarsideForm:
    delta_power: int
    factors: tuple[Word, ...]
    m: int
    gens: tuple[int, int]

    @property
    def key(self) -> tuple:
        return self.delta_power, self.factors

    def to_word(self) -> Word:
        """A (not necessarily geodesic) word for the element."""
        a, b = self.gens
        delta = alternating(a, b, self.m)
        k = self.delta_power
        d = delta * k if k >= 0 else tuple(-x for x in reversed(delta)) * (-k)
        return free_reduce(d + tuple(x for f in self.factors for x in f))


def _pair(words: Sequence[Sequence[int]], gens: Sequence[int] | None) -> tuple[int, int]:
    if gens is not None:
        a, b = gens
        if a == b:
            raise ValueError("generator pair must be two distinct names")
        return tuple(sorted((abs(a), abs(b))))
    names = sorted({abs(x) for w in words for x in w})
    if len(names) > 2:
        raise AlphabetError("word involves more than two generators")
    while len(names) < 2:
        # a placeholder name keeps Delta well defined
        cand = 1
        while cand in names:
            cand += 1
        names.append(cand)
    return tuple(sorted(names))


def _normalize_factors(k: int, factors: list[list[int]], m: int, gens) -> tuple[int, list[list[int]]]:
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(factors) - 1:
            left, right = factors[i], factors[i + 1]
            if abs(left[-1]) != abs(right[0]):
                left.append(right.pop(0))
                if not right:
                    del factors[i + 1]
                if len(left) == m:
                    del factors[i]
                    k += 1
                    if m % 2:
                        factors[:i] = [list(nu(f, m, gens)) for f in factors[:i]]
                changed = True
                break
            i += 1
    return k, factors


def garside_normal_form(w: Sequence[int], m: float, gens: Sequence[int] | None = None) -> GarsideForm:
    if m == INF:
        raise ValueError("label is infinite; compare freely reduced words instead")
    m = int(m)
    pair = _pair([w], gens)
    for x in w:
        if abs(x) not in pair:
            raise AlphabetError(f"letter {x} outside the generator pair {pair}")
    k = 0
    factors: list[list[int]] = []
    for x in w:
        if x > 0:
            factors.append([x])
            if m == 1:
                raise ValueError("label must be at least 2")
        else:
            # x^-1 = Delta^-1 d with d x = Delta, and F Delta^-1 = Delta^-1 nu(F)
            d = alternating(_other(-x, pair), -x, m, "right")[:-1]
            k -= 1
            if m % 2:
                factors = [list(nu(f, m, pair)) for f in factors]
            if d:
                factors.append(list(d))
        k, factors = _normalize_factors(k, factors, m, pair)
    return GarsideForm(k, tuple(tuple(f) for f in factors), m, pair)


def garside_equal(u: Sequence[int], v: Sequence[int], m: float) -> bool:
    if m == INF:
        return free_reduce(u) == free_reduce(v)
    pair = _pair([u, v], None)
    return garside_normal_form(u, m, pair).key == garside_normal_form(v, m, pair).key


def critical_words(m: int, max_len: int, gens: tuple[int, int] = (1, 2)):
    """Yield every critical word of length <= max_len over the generator pair."""
    a, b = gens
    letters = (a, -a, b, -b)

    def extend(prefix: list[int]):
        if prefix:
            c = _find_critical(tuple(prefix), m) if len(set(map(abs, prefix))) == 2 else None
            if c is not None:
                yield c
        if len(prefix) == max_len:
            return
        for x in letters:
            if prefix and prefix[-1] == -x:
                continue
            prefix.append(x)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])
