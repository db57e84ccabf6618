"""Separation of qudit circuits into controlled layers.

:func:`separate` pushes parallel composition outward and controls inward until
the circuit is a sequential chain of single-generator layers, padded with
identity wires, with wire permutations as explicit segments between them.
Generators come from the finite family

    id_n, ph θ, Hadamard (= H^{(r,r+1)}), ctrl_k(ph θ), ctrl_k(ctrl_l(ph π)).

Controlled gates outside this family are rewritten with the decompositions of
:mod:`qudit_lopp.decomp`; swaps that end up under a control are expanded with
the swap axiom's controlled form.  Uncontrolled swaps are kept as explicit
permutation segments.

Each call either rewrites its argument in place (same frame) or splits it into
strictly smaller parts (a recursion step).  The optional ``trace`` callback
receives every (parent, child) pair of a recursion step so that the
termination measure can be checked to decrease.
"""

from __future__ import annotations

import math
import sys
from collections import Counter
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from . import decomp
from .ir import (
    WIRE,
    Ctrl,
    Empty,
    GlobalPhase,
    Hadamard,
    Par,
    Seq,
    SwapGen,
    Term,
    Wire,
    block_swap_term,
    fold_dag,
    id_circuit,
    is_identity_tree,
    pad,
    validate,
)

FUEL = 5_000_000

Trace = Callable[[Term, Term], None]


class Measure(NamedTuple):
    """μ(C) = (non-identity gate count, total control depth), ordered lexicographically."""

    gate_count: int
    control_depth: int


def measure(c: Term) -> Measure:
    def node(t: Term, vals: list) -> tuple[int, int]:
        if isinstance(t, (Hadamard, GlobalPhase, SwapGen)):
            return (1, 0)
        if isinstance(t, Ctrl):
            g, s = vals[0]
            return (g, s + g)
        if isinstance(t, (Seq, Par)):
            return (vals[0][0] + vals[1][0], vals[0][1] + vals[1][1])
        return (0, 0)

    return Measure(*fold_dag(c, node))


def is_permutation_tree(t: Term) -> bool:
    """Built from SwapGen, Wire, Empty, Seq and Par only."""
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, (Seq, Par)):
            stack += [x.left, x.right] if isinstance(x, Seq) else [x.top, x.bottom]
        elif not isinstance(x, (SwapGen, Wire, Empty)):
            return False
    return True


def wire_permutation(t: Term) -> tuple[int, ...]:
    """p with output wire p[i] carrying input wire i, for a permutation tree."""

    def node(x: Term, vals: list) -> tuple:
        if isinstance(x, Empty):
            return ()
        if isinstance(x, Wire):
            return (0,)
        if isinstance(x, SwapGen):
            return (1, 0)
        if isinstance(x, Par):
            top, bot = vals
            return top + tuple(len(top) + i for i in bot)
        if isinstance(x, Seq):
            f, g = vals  # g first
            return tuple(f[g[i]] for i in range(len(g)))
        raise ValueError(f"{type(x).__name__} is not a permutation generator")

    return fold_dag(t, node)


def is_generator(t: Term) -> bool:
    """Membership in the generating family (identity trees excluded)."""
    if isinstance(t, (Hadamard, GlobalPhase)):
        return True
    if isinstance(t, Ctrl):
        b = t.body
        if isinstance(b, GlobalPhase):
            return True
        return isinstance(b, Ctrl) and isinstance(b.body, GlobalPhase) and b.body.theta == math.pi
    return False


def _swaps_to_controls(t: Term, d: int) -> Term:
    """Replace every SwapGen by the controlled-exchange form of the swap axiom."""
    s = decomp.swap_from_controls(d)

    def node(x: Term, vals: list) -> Term:
        if isinstance(x, SwapGen):
            return s
        if isinstance(x, Seq):
            return Seq(*vals)
        if isinstance(x, Par):
            return Par(*vals)
        if isinstance(x, Ctrl):
            return Ctrl(x.k, vals[0])
        return x

    return fold_dag(t, node)


def _conjugation(body: Term) -> Optional[tuple[Term, Term, Term]]:
    """Match Seq(P, Seq(Y, Q)) with permutation trees P, Q inverse to each other."""
    if not (isinstance(body, Seq) and isinstance(body.right, Seq)):
        return None
    p, y, q = body.left, body.right.left, body.right.right
    if not (is_permutation_tree(p) and is_permutation_tree(q)) or is_permutation_tree(y):
        return None
    pp, qq = wire_permutation(p), wire_permutation(q)
    if any(pp[qq[i]] != i for i in range(len(qq))):
        return None
    return p, y, q


class _Separator:
    def __init__(self, d: int, trace: Optional[Trace]):
        self.d = d
        self.trace = trace
        self.memo: dict[Term, Term] = {}
        self.frames = 0

    def step(self, parent: Term, child: Term) -> Term:
        if self.trace is not None:
            self.trace(parent, child)
        return self.run(child)

    def run(self, t: Term) -> Term:
        hit = self.memo.get(t)
        if hit is not None:
            return hit
        self.frames += 1
        if self.frames > FUEL:
            raise RuntimeError("separate exceeded its fuel bound")
        out = self._sep(t)
        self.memo[t] = out
        return out

    def _sep(self, t: Term) -> Term:
        if is_identity_tree(t):
            return id_circuit(t.arity)
        if is_generator(t) or is_permutation_tree(t):
            return t
        if isinstance(t, Par):
            f1, f2 = t.top, t.bottom
            n1, n2 = f1.arity, f2.arity
            if is_identity_tree(f1):
                return pad(self.run(f2), n1, 0)
            if is_identity_tree(f2):
                return pad(self.run(f1), 0, n2)
            return Seq(pad(self.step(t, f1), 0, n2), pad(self.step(t, f2), n1, 0))
        if isinstance(t, Seq):
            if is_identity_tree(t.left):
                return self.run(t.right)
            if is_identity_tree(t.right):
                return self.run(t.left)
            return Seq(self.step(t, t.left), self.step(t, t.right))
        if isinstance(t, Ctrl):
            return self._sep_ctrl(t)
        raise TypeError(f"unexpected node {type(t).__name__}")

    def _sep_ctrl(self, t: Ctrl) -> Term:
        d, m, f1 = self.d, t.k, t.body
        if is_permutation_tree(f1):
            return self.run(Ctrl(m, _swaps_to_controls(f1, d)))
        if isinstance(f1, Seq):
            if is_identity_tree(f1.left):
                return self.run(Ctrl(m, f1.right))
            if is_identity_tree(f1.right):
                return self.run(Ctrl(m, f1.left))
            conj = _conjugation(f1)
            if conj is not None:
                p, y, q = conj
                return Seq(Par(WIRE, p), Seq(self.step(t, Ctrl(m, y)), Par(WIRE, q)))
            return Seq(self.step(t, Ctrl(m, f1.left)), self.step(t, Ctrl(m, f1.right)))
        if isinstance(f1, Par):
            g, h = f1.top, f1.bottom
            ng, nh = g.arity, h.arity
            if is_identity_tree(h):
                return pad(self.run(Ctrl(m, g)), 0, nh)
            if is_identity_tree(g):
                inner = self.run(Ctrl(m, h))
                if ng == 0 or nh == 0:
                    return pad(inner, 0, ng)
                return Seq(
                    Par(WIRE, block_swap_term(nh, ng)),
                    Seq(pad(inner, 0, ng), Par(WIRE, block_swap_term(ng, nh))),
                )
            return self._sep_ctrl_par(t, m, g, h)
        if isinstance(f1, Hadamard):
            return self.run(decomp.controlled_hadamard(d, m, f1.r))
        if isinstance(f1, Ctrl):
            n, g = f1.k, f1.body
            if isinstance(g, GlobalPhase):
                return self.run(decomp.double_controlled_phase(d, m, n, g.theta))
            if isinstance(g, Ctrl) and isinstance(g.body, GlobalPhase):
                return self.run(decomp.triple_controlled_phase(d, m, n, g.k, g.body.theta))
            inner = self.step(t, f1)
            return self.run(Ctrl(m, inner))
        raise TypeError(f"unexpected controlled node {type(f1).__name__}")

    def _sep_ctrl_par(self, t: Ctrl, m: int, g: Term, h: Term) -> Term:
        # h is brought next to the control, handled, and moved back before g
        ng, nh = g.arity, h.arity
        sg = pad(self.step(t, Ctrl(m, g)), 0, nh)
        sh = pad(self.step(t, Ctrl(m, h)), 0, ng)
        if ng == 0 or nh == 0:
            return Seq(sg, sh)
        to_top = Par(WIRE, block_swap_term(ng, nh))
        back = Par(WIRE, block_swap_term(nh, ng))
        return Seq(sg, Seq(back, Seq(sh, to_top)))


def separate(c: Term, d: int, trace: Optional[Trace] = None) -> Term:
    """Layered circuit with the same semantics as ``c``."""
    validate(c, d)
    limit = sys.getrecursionlimit()
    if limit < 20000:
        sys.setrecursionlimit(20000)
    try:
        return _Separator(d, trace).run(c)
    finally:
        sys.setrecursionlimit(limit)


# ---------------------------------------------------------------------------
# Layer form


@dataclass(frozen=True)
class Layer:
    """ctrl_u(id_p ⊗ G ⊗ id_q)."""

    u: tuple[int, ...]
    p: int
    gate: Term
    q: int

    @property
    def arity(self) -> int:
        return len(self.u) + self.p + self.gate.arity + self.q


@dataclass(frozen=True)
class Perm:
    """Explicit wire permutation segment (pad included in the mapping)."""

    mapping: tuple[int, ...]
    term: Term


@dataclass
class LayerForm:
    ok: bool
    segments: list  # Layer | Perm, in application order
    cd: Counter

    def __bool__(self) -> bool:
        return self.ok

    @property
    def layers(self) -> list[Layer]:
        return [s for s in self.segments if isinstance(s, Layer)]


def _parse_layer(t: Term) -> Optional[Layer]:
    p = q = 0
    x = t
    while isinstance(x, Par):
        if is_identity_tree(x.top) and not is_identity_tree(x.bottom):
            p, x = p + x.top.arity, x.bottom
        elif is_identity_tree(x.bottom) and not is_identity_tree(x.top):
            q, x = q + x.bottom.arity, x.top
        else:
            break
    # controls are read into the word u, so a layer's gate is the uncontrolled core
    if isinstance(x, Ctrl) and p == 0 and q == 0:
        inner = _parse_layer(x.body)
        if inner is not None:
            return Layer((x.k,) + inner.u, inner.p, inner.gate, inner.q)
    if is_generator(x):
        return Layer((), p, x, q)
    return None


def _flatten(t: Term, above: int, below: int, out: list) -> bool:
    if is_identity_tree(t):
        return True
    if is_permutation_tree(t):
        mp = wire_permutation(t)
        full = tuple(range(above)) + tuple(above + i for i in mp) + tuple(
            above + len(mp) + i for i in range(below)
        )
        out.append(Perm(full, pad(t, above, below)))
        return True
    layer = _parse_layer(t)
    if layer is not None:
        out.append(Layer(layer.u, layer.p + above, layer.gate, layer.q + below))
        return True
    if isinstance(t, Seq):
        return _flatten(t.right, above, below, out) and _flatten(t.left, above, below, out)
    if isinstance(t, Par):
        # identity padding distributes over sequential composition
        if is_identity_tree(t.top):
            return _flatten(t.bottom, above + t.top.arity, below, out)
        if is_identity_tree(t.bottom):
            return _flatten(t.top, above, below + t.bottom.arity, out)
    return False


def is_layer_form(c: Term) -> LayerForm:
    """Parse ``c`` as a chain of controlled layers and permutation segments.

    Returns a truthy :class:`LayerForm` on success; ``cd`` is the multiset of
    control-word lengths of the layers.
    """
    segs: list = []
    ok = _flatten(c, 0, 0, segs)
    if not ok:
        return LayerForm(False, [], Counter())
    return LayerForm(True, segs, Counter(len(s.u) for s in segs if isinstance(s, Layer)))


def layer_signature(form: LayerForm) -> list[tuple]:
    """Comparable description of a parsed layer sequence."""
    out = []
    for s in form.segments:
        if isinstance(s, Layer):
            out.append(("layer", s.u, s.p, s.gate, s.q))
        else:
            out.append(("perm", s.mapping))
    return out
