"""Linear-optical circuits and the gadgets used by the Gray-code encoding.

A LOPP circuit uses the shared structural nodes (Empty, Wire, SwapGen, Seq,
Par) plus :class:`Phase` and :class:`BeamSplitter`.  Arity counts modes.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Sequence

from . import gray
from .errors import ArityMismatch, IndexOutOfRange, InvalidWord, ModeCountNotPower, ValidationError
from .ir import (
    EMPTY,
    SWAP,
    WIRE,
    Empty,
    Par,
    Seq,
    SwapGen,
    Term,
    Wire,
    _child,
    compose,
    fold_dag,
    id_circuit,
    pad,
    tensor,
)


class Phase(Term):
    """Phase shifter e^{iθ} on one mode."""

    __slots__ = ("theta",)

    def __init__(self, theta: float):
        object.__setattr__(self, "theta", float(theta))
        self._init(1)

    def _fields(self):
        return (self.theta,)


class BeamSplitter(Term):
    """Two-mode beam splitter [[cos θ, i sin θ], [i sin θ, cos θ]]."""

    __slots__ = ("theta",)

    def __init__(self, theta: float):
        object.__setattr__(self, "theta", float(theta))
        self._init(2)

    def _fields(self):
        return (self.theta,)


def validate_lopp(t: Term, path: str = "") -> int:
    """Return the mode count, checking sequential arities."""
    try:
        return fold_dag(t, _check_lopp_node)
    except ValidationError:
        return _validate_lopp(t, path)


def _check_lopp_node(t: Term, vals: list) -> int:
    if isinstance(t, Seq):
        if vals[0] != vals[1]:
            raise ArityMismatch("sequential mode-count mismatch")
        return vals[0]
    if isinstance(t, Par):
        return vals[0] + vals[1]
    if isinstance(t, (Empty, Wire, SwapGen, Phase, BeamSplitter)):
        return t.arity
    raise ValidationError("not a LOPP generator")


def _validate_lopp(t: Term, path: str = "") -> int:
    where = path or "root"
    if isinstance(t, (Empty, Wire, SwapGen, Phase, BeamSplitter)):
        return t.arity
    if isinstance(t, Seq):
        a = _validate_lopp(t.left, _child(path, "seq.left"))
        b = _validate_lopp(t.right, _child(path, "seq.right"))
        if a != b:
            raise ArityMismatch(f"sequential mode counts {a} != {b}", _child(path, "seq.right"))
        return a
    if isinstance(t, Par):
        return _validate_lopp(t.top, _child(path, "par.top")) + _validate_lopp(
            t.bottom, _child(path, "par.bottom")
        )
    raise ValidationError(f"node {type(t).__name__} is not a LOPP generator", where)


def id_modes(m: int) -> Term:
    return id_circuit(m)


def log_d(d: int, m: int) -> int:
    """r with d^r = m, else ModeCountNotPower."""
    r, x = 0, 1
    while x < m:
        x *= d
        r += 1
    if x != m:
        raise ModeCountNotPower(f"{m} modes is not a power of {d}")
    return r


def adjacent_swap(m: int, t: int) -> Term:
    """SwapGen on modes (t, t+1) of an m-mode register."""
    return pad(SWAP, t, m - t - 2)


def reversal(m: int) -> Term:
    """ρ: mode t goes to m-1-t, as a bubble-sort network of adjacent swaps."""
    if m <= 1:
        return id_circuit(m)
    swaps = []
    for i in range(m - 1):
        for j in range(m - 1 - i):
            swaps.append(adjacent_swap(m, j))
    # swaps are listed in application order
    return compose(list(reversed(swaps)))


def mirror(q: int, c: Term) -> Term:
    """Rev^q(C): C for even q, ρ∘C∘ρ for odd q."""
    if q % 2 == 0:
        return c
    rho = reversal(c.arity)
    return compose([rho, c, rho])


def graylift_ams(d: int, p: int, c: Term) -> Term:
    """AMS^p(C) on d^{p+m} modes; semantically I_p ⊗ C in the Gray basis."""
    log_d(d, c.arity)
    t = c
    for _ in range(p):
        t = tensor([mirror(q, t) for q in range(d)])
    return t


def graylift_jams(d: int, j: int, p: int, c: Term) -> Term:
    """jAMS^p(C) on d^{p+1+m} modes; semantically I_p ⊗ ctrl_j(C)."""
    if not 0 <= j < d:
        raise IndexOutOfRange(f"control digit {j} outside [0, {d - 1}]")
    log_d(d, c.arity)
    blank = id_circuit(c.arity)
    t = tensor([mirror(q, c if q == j else blank) for q in range(d)])
    for _ in range(p):
        t = tensor([mirror(q, t) for q in range(d)])
    return t


def hadamard_bs() -> Term:
    """Two-mode Hadamard built from one beam splitter and two phases."""
    p = Par(WIRE, Phase(-math.pi / 2))
    return compose([p, BeamSplitter(math.pi / 4), p])


def hadamard_network(d: int, i: int) -> Term:
    """Hadamard on modes (i, i+1) of d modes."""
    if not 0 <= i <= d - 2:
        raise IndexOutOfRange(f"Hadamard level {i} outside [0, {d - 2}]")
    return pad(hadamard_bs(), i, d - i - 2)


# ---------------------------------------------------------------------------
# Word swaps


def word_swap(d: int, w1: Sequence[int], w2: Sequence[int]) -> Term:
    """Mode circuit exchanging the Gray modes of words w1 and w2 (|w1| = |w2|)."""
    w1 = gray.check_word(d, w1)
    w2 = gray.check_word(d, w2)
    if len(w1) != len(w2) or w1 == w2:
        raise InvalidWord(f"word_swap needs distinct words of equal length, got {w1}, {w2}")
    return _word_swap(d, w1, w2)


def _boundary_suffix(d: int, pref: tuple, lo: int, hi: int, m: int) -> tuple:
    """Shared suffix of the touching ends of the blocks pref·lo and pref·hi."""
    last = gray.gray_word(d, m, d**m - 1) if m else ()
    ends = {}
    for v in (lo, hi):
        a = gray.gray_index(d, pref + (v,) + (0,) * m)
        b = gray.gray_index(d, pref + (v,) + last)
        ends[v] = (min(a, b), max(a, b))
    first = lo if ends[lo][0] < ends[hi][0] else hi
    n = len(pref) + 1 + m
    return gray.gray_word(d, n, ends[first][1])[len(pref) + 1:]


@lru_cache(maxsize=None)
def _word_swap(d: int, w1: tuple, w2: tuple) -> Term:
    n = len(w1)
    i1, i2 = gray.gray_index(d, w1), gray.gray_index(d, w2)
    if abs(i1 - i2) == 1:
        return adjacent_swap(d**n, min(i1, i2))
    diffs = [p for p in range(n) if w1[p] != w2[p]]
    if len(diffs) == 1:
        p = diffs[0]
        if w1[p] > w2[p]:
            w1, w2 = w2, w1
        lo, hi = w1[p], w2[p]
        pref, suf = w1[:p], w1[p + 1:]
        if hi - lo == 1:
            bnd = _boundary_suffix(d, pref, lo, hi, len(suf))
            assert suf != bnd, "adjacent words must have been caught by the base case"
            q = next(x for x in range(len(suf)) if suf[x] != bnd[x])
            step = 1 if bnd[q] > suf[q] else -1
            suf2 = suf[:q] + (suf[q] + step,) + suf[q + 1:]
            v1, v2 = pref + (lo,) + suf2, pref + (hi,) + suf2
            a, b = _word_swap(d, w1, v1), _word_swap(d, w2, v2)
            return compose([a, b, _word_swap(d, v1, v2), b, a])
        mid = pref + (hi - 1,) + suf
        bridge = _word_swap(d, w2, mid)
        return compose([bridge, _word_swap(d, w1, mid), bridge])
    f, l = diffs[0], diffs[-1]
    w2p = w2[: f + 1] + w1[f + 1 : l] + w2[l:]
    wp = w1[:l] + (w2[l],) + w1[l + 1:]
    a = _word_swap(d, w1, wp)
    core = compose([a, _word_swap(d, wp, w2p), a])
    if w2p == w2:
        return core
    b = _word_swap(d, w2, w2p)
    return compose([b, core, b])


def saturated_word_swap(
    d: int, k: int, l: int, q: Sequence[int], p: Sequence[int]
) -> Term:
    """Exchange digit pair q with p at positions (k, k+1) for every context.

    Prefixes β range over [d]^k and suffixes α over [d]^l.
    """
    q, p = tuple(q), tuple(p)
    if len(q) != 2 or len(p) != 2:
        raise InvalidWord("saturated swaps act on digit pairs")
    gray.check_word(d, q + p)
    if q == p:
        return id_modes(d ** (k + 2 + l))
    factors = []
    for beta in itertools.product(range(d), repeat=k):
        for alpha in itertools.product(range(d), repeat=l):
            factors.append(_word_swap(d, beta + q + alpha, beta + p + alpha))
    return compose(factors)


@lru_cache(maxsize=None)
def _block_swap_last(d: int, k: int, l: int) -> Term:
    """σ^d_{k,l,1}: moves the last digit in front of the preceding l digits."""
    m = d ** (k + l + 1)
    if l == 0:
        return id_modes(m)
    factors = []
    for j in range(l):  # j = 0 is applied last
        for x in range(d):
            for y in range(x + 1, d):
                factors.append(saturated_word_swap(d, k + j, l - j - 1, (x, y), (y, x)))
    return compose(factors)


def mode_block_swap(d: int, a: int, b: int, c: int) -> Term:
    """σ^d_{a,b,c} on d^{a+b+c} modes; semantically I_a ⊗ σ_{b,c}."""
    if min(a, b, c) < 0:
        raise ValueError("block sizes must be nonnegative")
    return _mode_block_swap(d, a, b, c)


@lru_cache(maxsize=None)
def _mode_block_swap(d: int, a: int, b: int, c: int) -> Term:
    if b == 0 or c == 0:
        return id_modes(d ** (a + b + c))
    if c == 1:
        return _block_swap_last(d, a, b)
    return compose([_block_swap_last(d, a, b + c - 1), _mode_block_swap(d, a, b + 1, c - 1)])


def mode_count(t: Term) -> int:
    return t.arity


__all__ = [
    "Phase",
    "BeamSplitter",
    "validate_lopp",
    "id_modes",
    "reversal",
    "mirror",
    "graylift_ams",
    "graylift_jams",
    "hadamard_bs",
    "hadamard_network",
    "word_swap",
    "saturated_word_swap",
    "mode_block_swap",
    "EMPTY",
    "WIRE",
    "SWAP",
]
