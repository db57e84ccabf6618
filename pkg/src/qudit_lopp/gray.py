"""Reflected d-ary Gray code.

Words are tuples of digits, most significant digit first.  Under an odd
digit the order of the remaining suffixes is reversed, so consecutive words
differ in exactly one position, by ±1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import DimensionCap, IndexOutOfRange, InvalidWord

Word = tuple

TABLE_CAP = 2**20


def _check_d(d: int) -> None:
    if d < 2:
        raise IndexOutOfRange(f"dimension must be >= 2, got {d}")


def gray_word(d: int, n: int, k: int) -> Word:
    """The k-th word of the reflected Gray order on [d]^n."""
    _check_d(d)
    if not 0 <= k < d**n:
        raise IndexOutOfRange(f"index {k} outside [0, {d**n - 1}]")
    digits = []
    for m in range(n - 1, -1, -1):
        size = d**m
        q, r = divmod(k, size)
        digits.append(q)
        k = size - 1 - r if q % 2 else r
    return tuple(digits)


def gray_index(d: int, w: Sequence[int]) -> int:
    """Position of ``w`` in the reflected Gray order; inverse of :func:`gray_word`."""
    _check_d(d)
    w = tuple(w)
    for x in w:
        if not 0 <= x < d:
            raise IndexOutOfRange(f"digit {x} outside [0, {d - 1}]")
    # evaluate the recursion from the last digit outwards
    idx = 0
    for pos in range(len(w) - 1, -1, -1):
        h = w[pos]
        size = d ** (len(w) - 1 - pos)
        idx = h * size + idx if h % 2 == 0 else (h + 1) * size - 1 - idx
    return idx


def lex_index(d: int, w: Sequence[int]) -> int:
    """Computational-basis index (first digit most significant)."""
    idx = 0
    for x in w:
        idx = idx * d + x
    return idx


def lex_word(d: int, n: int, k: int) -> Word:
    digits = []
    for _ in range(n):
        k, r = divmod(k, d)
        digits.append(r)
    return tuple(reversed(digits))


def parity(w: Sequence[int]) -> int:
    """XOR of the digit parities."""
    p = 0
    for x in w:
        p ^= x & 1
    return p


def parity_tail(u: Sequence[int], n: int, d: int) -> Word:
    """0^n if Parity(u) = 0, else (d-1)^n."""
    return (0,) * n if parity(u) == 0 else (d - 1,) * n


@dataclass(frozen=True)
class GrayBlock:
    prefix: Word
    start: int
    direction: int


def block_info(d: int, u: Sequence[int]) -> GrayBlock:
    """Block of the d words ``u·x`` inside the order on [d]^{|u|+1}."""
    u = tuple(u)
    direction = -1 if parity(u) else 1
    first = u + ((0,) if direction == 1 else (d - 1,))
    return GrayBlock(u, gray_index(d, first), direction)


def neighbor_decompose(d: int, n: int, t: int) -> tuple[Word, int, int, Word]:
    """(u, v, ε, w) with G(t) = u·v·w and G(t+1) = u·(v+ε)·w."""
    if not 0 <= t < d**n - 1:
        raise IndexOutOfRange(f"mode {t} has no successor in [0, {d**n - 1}]")
    a = gray_word(d, n, t)
    b = gray_word(d, n, t + 1)
    diffs = [p for p in range(n) if a[p] != b[p]]
    assert len(diffs) == 1 and abs(a[diffs[0]] - b[diffs[0]]) == 1
    p = diffs[0]
    return a[:p], a[p], b[p] - a[p], a[p + 1:]


@dataclass(frozen=True)
class GrayContext:
    """Cached forward and inverse Gray tables for fixed (d, n)."""

    d: int
    n: int
    words: tuple = field(repr=False, compare=False, default=())
    index: dict = field(repr=False, compare=False, default_factory=dict)

    def word(self, k: int) -> Word:
        return self.words[k]

    def neighbor(self, t: int) -> tuple[Word, int, int, Word]:
        return neighbor_decompose(self.d, self.n, t)

    @property
    def size(self) -> int:
        return len(self.words)


@lru_cache(maxsize=64)
def gray_context(d: int, n: int) -> GrayContext:
    _check_d(d)
    if d**n > TABLE_CAP:
        raise DimensionCap(f"Gray table of {d}^{n} entries exceeds {TABLE_CAP}")
    words = tuple(gray_word(d, n, k) for k in range(d**n))
    return GrayContext(d, n, words, {w: k for k, w in enumerate(words)})


def gray_to_lex(d: int, n: int) -> list[int]:
    """perm[t] = computational index of the t-th Gray word."""
    ctx = gray_context(d, n)
    return [lex_index(d, w) for w in ctx.words]


def check_word(d: int, w: Sequence[int]) -> Word:
    w = tuple(w)
    if any(not (isinstance(x, int) and 0 <= x < d) for x in w):
        raise InvalidWord(f"word {w} has digits outside [0, {d - 1}]")
    return w
