"""Decomposition equations shared by the derived-rule catalog and the normaliser.

Each builder returns the right-hand side of an equation whose left-hand side
is the controlled gate named in the function.
"""

from __future__ import annotations

import math

import numpy as np

from .angles import two_level_circuit
from .ir import (
    WIRE,
    Ctrl,
    GlobalPhase,
    Par,
    Term,
    compose,
    expand_box,
    h_gate,
    level_phase,
    x_gate,
)

_C8, _S8 = math.cos(math.pi / 8), math.sin(math.pi / 8)
# V diag(1, -1) V† = H on a two-level block
_V = np.array([[_C8, -_S8], [_S8, _C8]], dtype=complex)


def hadamard_eigenbasis(d: int, r: int) -> tuple[Term, Term]:
    """(V, V†) on levels (r, r+1)."""
    return two_level_circuit(_V, d, r, r + 1), two_level_circuit(_V.conj().T, d, r, r + 1)


def controlled_hadamard(d: int, m: int, r: int) -> Term:
    """ctrl_m(H_r) = (id ⊗ V) ∘ ctrl_m(ctrl_{r+1}(π)) ∘ (id ⊗ V†)."""
    v, vd = hadamard_eigenbasis(d, r)
    return compose([Par(WIRE, v), Ctrl(m, level_phase(r + 1, math.pi)), Par(WIRE, vd)])


def controlled_phase_split(d: int, k: int, theta: float) -> Term:
    """ctrl_k(ph θ) = (ph θ ⊗ id) ∘ Π_{l≠k} ctrl_l(ph −θ)."""
    box = expand_box(lambda l: level_phase(l, -theta), d, lambda l: l != k, arity=1)
    return compose([Par(GlobalPhase(theta), WIRE), box])


def controlled_x(d: int, m: int, i: int, j: int) -> Term:
    """ctrl_m(X^{(i,j)}) written with one doubly controlled π phase."""
    lo, hi = min(i, j), max(i, j)
    h = Par(WIRE, h_gate(d, lo, hi))
    return compose([h, Ctrl(m, level_phase(hi, math.pi)), h])


def double_controlled_phase(d: int, m: int, n: int, beta: float) -> Term:
    """ctrl_m(ctrl_n(ph β)) from ctrl_m(ph β/d), target phases and π-controlled X gates."""
    a = beta / d
    factors: list[Term] = [Par(level_phase(m, a), WIRE)]
    for l in range(d):
        if l == n:
            continue
        cx = controlled_x(d, m, n, l)
        factors += [Par(WIRE, level_phase(n, a)), cx, Par(WIRE, level_phase(n, -a)), cx]
    return compose(factors)


def triple_controlled_phase(d: int, m: int, n: int, k: int, alpha: float) -> Term:
    """ctrl_m(ctrl_n(ctrl_k(ph α))) from doubly controlled phases and controlled X gates."""
    a = alpha / d
    outer = Ctrl(m, Par(WIRE, Ctrl(k, GlobalPhase(a))))
    factors: list[Term] = [outer]
    for l in range(d):
        if l == n:
            continue
        cx = Par(Ctrl(m, x_gate(d, n, l)), WIRE)
        factors += [
            Par(WIRE, Ctrl(n, Ctrl(k, GlobalPhase(a)))),
            cx,
            Par(WIRE, Ctrl(n, Ctrl(k, GlobalPhase(-a)))),
            cx,
        ]
    return compose(factors)


def swap_from_controls(d: int) -> Term:
    """Π_{i<j} of the exchange |i,j> <-> |j,i>, each built as CX∘XC∘CX."""
    def block(i: int) -> Term:
        return expand_box(lambda j: exchange(d, i, j), d, lambda j: j > i, arity=2)

    return expand_box(block, d, arity=2)


def cx_lower(d: int, i: int, j: int) -> Term:
    """X^{(i,j)} on wire 2 when wire 1 holds j."""
    return Ctrl(j, x_gate(d, i, j))


def cx_upper(d: int, i: int, j: int) -> Term:
    """X^{(i,j)} on wire 1 when wire 2 holds j, without swaps."""
    h = Par(h_gate(d, i, j), WIRE)
    return compose([h, Ctrl(j, Ctrl(j, GlobalPhase(math.pi))), h])


def exchange(d: int, i: int, j: int) -> Term:
    return compose([cx_lower(d, i, j), cx_upper(d, i, j), cx_lower(d, i, j)])
