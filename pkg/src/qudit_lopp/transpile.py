"""Gray-code encoder (qudit → LOPP) and decoder (LOPP → qudit)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import gray
from .errors import ArityMismatch, DimensionCap, OffsetOutOfRange, ValidationError
from .ir import (
    Ctrl,
    GlobalPhase,
    Hadamard,
    Par,
    Seq,
    SwapGen,
    Term,
    block_swap_term,
    id_circuit,
    is_id_circuit,
    is_identity_tree,
    iterated_control,
    rx_gate,
    tensor,
    validate,
    x_gate,
)
from .lopp import (
    BeamSplitter,
    Phase,
    graylift_ams,
    graylift_jams,
    hadamard_network,
    id_modes,
    mode_block_swap,
    validate_lopp,
)

MODE_CAP = 2**12


@dataclass(frozen=True)
class EncodingContext:
    d: int
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("context sizes must be nonnegative")


@dataclass(frozen=True)
class DecodingContext:
    d: int
    n: int
    t: int = 0


def encode(ctx: EncodingContext, c: Term, mode_cap: int = MODE_CAP) -> Term:
    """E^a_b(C): a LOPP circuit on d^{a+n+b} modes."""
    validate(c, ctx.d)
    if ctx.d ** (ctx.a + c.arity + ctx.b) > mode_cap:
        raise DimensionCap(f"encoding needs {ctx.d}^{ctx.a + c.arity + ctx.b} modes, cap {mode_cap}")
    return _encode(ctx.d, ctx.a, ctx.b, c, {})


def _encode(d: int, a: int, b: int, c: Term, memo: dict) -> Term:
    key = (a, b, c)
    hit = memo.get(key)
    if hit is not None:
        return hit
    n = c.arity
    if isinstance(c, Seq):
        out = Seq(_encode(d, a, b, c.left, memo), _encode(d, a, b, c.right, memo))
    elif is_id_circuit(c):
        out = id_modes(d ** (a + n + b))
    elif isinstance(c, Par):
        n1, n2 = c.top.arity, c.bottom.arity
        out = Seq(_encode(d, a + n1, b, c.bottom, memo), _encode(d, a, b + n2, c.top, memo))
    elif isinstance(c, SwapGen):
        out = Seq(
            mode_block_swap(d, a, b, 2),
            Seq(mode_block_swap(d, a + b, 1, 1), mode_block_swap(d, a, 2, b)),
        )
    elif isinstance(c, GlobalPhase):
        out = tensor([Phase(c.theta) for _ in range(d ** (a + b))])
    elif isinstance(c, Hadamard):
        core = graylift_ams(d, a + b, hadamard_network(d, c.r))
        out = Seq(mode_block_swap(d, a, b, 1), Seq(core, mode_block_swap(d, a, 1, b)))
    elif isinstance(c, Ctrl):
        inner = _encode(d, 0, 0, c.body, memo)
        core = graylift_jams(d, c.k, a + b, inner)
        out = Seq(mode_block_swap(d, a, b, n), Seq(core, mode_block_swap(d, a, n, b)))
    else:
        raise ValidationError(f"cannot encode node {type(c).__name__}")
    memo[key] = out
    return out


def lambda_wrap(u: Sequence[int], w: Sequence[int], g: Term) -> Term:
    """Λ^u_w(g): apply g to the wire between u and w iff they hold |u> and |w>."""
    if g.arity != 1:
        raise ArityMismatch(f"Λ wraps a one-wire gate, got arity {g.arity}")
    u, w = list(u), list(w)
    core = iterated_control(u + w, g)
    if not w:
        return core
    left = _pad_top(len(u), block_swap_term(len(w), 1))
    right = _pad_top(len(u), block_swap_term(1, len(w)))
    return Seq(left, Seq(core, right))


def _pad_top(a: int, t: Term) -> Term:
    return Par(id_circuit(a), t) if a else t


def decode(ctx: DecodingContext, c: Term) -> Term:
    """D^t_n(L): a qudit circuit on n wires."""
    m = validate_lopp(c)
    if ctx.t < 0 or ctx.t + m > ctx.d**ctx.n:
        raise OffsetOutOfRange(f"modes [{ctx.t}, {ctx.t + m}) exceed {ctx.d}^{ctx.n}")
    return _decode(ctx.d, ctx.n, ctx.t, c, {})


def _decode(d: int, n: int, t: int, c: Term, memo: dict) -> Term:
    key = (t, c)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if is_identity_tree(c):
        out = id_circuit(n)
    elif isinstance(c, Seq):
        out = Seq(_decode(d, n, t, c.left, memo), _decode(d, n, t, c.right, memo))
    elif isinstance(c, Par):
        out = Seq(_decode(d, n, t + c.top.arity, c.bottom, memo), _decode(d, n, t, c.top, memo))
    elif isinstance(c, Phase):
        out = iterated_control(gray.gray_word(d, n, t), GlobalPhase(c.theta))
    elif isinstance(c, (SwapGen, BeamSplitter)):
        u, v, eps, w = gray.neighbor_decompose(d, n, t)
        if isinstance(c, SwapGen):
            g = x_gate(d, v, v + eps)
        else:
            g = rx_gate(d, v, v + eps, c.theta)
        out = lambda_wrap(u, w, g)
    else:
        raise ValidationError(f"cannot decode node {type(c).__name__}")
    memo[key] = out
    return out


def gray_support(d: int, n: int, t: int, modes: int) -> set[int]:
    """Computational indices of the Gray words at modes t .. t+modes-1."""
    return {gray.lex_index(d, gray.gray_word(d, n, s)) for s in range(t, t + modes)}
