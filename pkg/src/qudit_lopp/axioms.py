"""Axiom catalogs and the numerical soundness harness.

Three catalogs are available through :func:`catalog`:

``qc``
    core and auxiliary schemata of the qudit calculus;
``qc-derived``
    end equations of derived rules, checked for soundness only;
``lopp``
    the five non-structural linear-optical axioms.

A schema samples its own parameters for a given dimension and builds the two
sides.  Schemata whose side conditions cannot be met for a dimension (for
example four distinct levels when d = 3) declare a minimum dimension and are
reported as SKIP there.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import angles as ang
from . import decomp
from .decomp import cx_lower, cx_upper, swap_from_controls
from .errors import SideConditionViolated
from .ir import (
    EMPTY,
    SWAP,
    WIRE,
    Ctrl,
    GlobalPhase,
    Hadamard,
    Par,
    Term,
    compose,
    expand_box,
    h_gate,
    level_phase,
    rx_gate,
    x_gate,
)
from .lopp import BeamSplitter, Phase
from .semantics import DEFAULT_TOL, interp_lopp_sp, interp_qudit, residual

PI = math.pi
Params = dict


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    theory: str
    sample: Callable[[random.Random, int], Params] = field(repr=False)
    build: Callable[[int, Params], tuple[Term, Term]] = field(repr=False)
    min_d: int = 2
    side: Optional[Callable[[int, Params], Optional[str]]] = field(default=None, repr=False)
    summary: str = ""


@dataclass(frozen=True)
class AxiomInstance:
    schema: str
    theory: str
    d: int
    params: Params
    lhs: Term
    rhs: Term


# ---------------------------------------------------------------------------
# sampling helpers

_SPECIAL = [0.0, PI / 2, PI, -PI / 2, 3 * PI / 2, 2 * PI, -PI]


def _angle(rng: random.Random) -> float:
    if rng.random() < 0.15:
        return rng.choice(_SPECIAL)
    return rng.uniform(-2 * PI, 2 * PI)


def _levels(rng: random.Random, d: int, m: int) -> list[int]:
    return rng.sample(range(d), m)


def _distinct(*xs: int) -> bool:
    return len(set(xs)) == len(xs)


def _in_range(d: int, *xs: int) -> bool:
    return all(0 <= x < d for x in xs)


def _requires(*checks: Callable[[int, Params], bool], msg: str):
    def side(d: int, p: Params) -> Optional[str]:
        return None if all(c(d, p) for c in checks) else msg

    return side


def _levels_ok(*names: str, distinct: tuple = ()):
    def check(d: int, p: Params) -> bool:
        if not _in_range(d, *(p[n] for n in names)):
            return False
        return _distinct(*(p[n] for n in distinct)) if distinct else True

    return check


def seq(*fs: Term) -> Term:
    return compose(list(fs))


def ph(theta: float) -> Term:
    return GlobalPhase(theta)


def lp(k: int, theta: float) -> Term:
    return level_phase(k, theta)


def cc(k: int, l: int, theta: float) -> Term:
    return Ctrl(k, Ctrl(l, GlobalPhase(theta)))


def upper(g: Term) -> Term:
    """A one-wire gate on wire 1 controlled by wire 2, via conjugation by swaps."""
    return seq(SWAP, g, SWAP)


# ---------------------------------------------------------------------------
# Two-level Euler (EH) shapes


def eh_lhs(d: int, i: int, j: int, a0: float, a2: float) -> Term:
    h = h_gate(d, i, j)
    return seq(h, lp(j, a0), h, lp(j, a2), h)


def eh_rhs(d: int, i: int, j: int, betas: tuple) -> Term:
    b0, b1, b2, b3 = betas
    h = h_gate(d, i, j)
    return seq(lp(j, b0), h, lp(i, b1), lp(j, b2), h, lp(j, b3))


def _xzx_from(g: tuple) -> tuple:
    return ang.zxz_to_xzx(*g)


# ---------------------------------------------------------------------------
# Core and auxiliary schemata


def _qc_schemata() -> list[AxiomSchema]:
    S: list[AxiomSchema] = []
    add = S.append

    add(AxiomSchema(
        "Sum", "qc",
        lambda r, d: {"t1": _angle(r), "t2": _angle(r)},
        lambda d, p: (seq(ph(p["t1"]), ph(p["t2"])), ph(p["t1"] + p["t2"])),
        summary="two global phases fuse into their sum",
    ))
    add(AxiomSchema(
        "2π", "qc",
        lambda r, d: {},
        lambda d, p: (ph(2 * PI), EMPTY),
        summary="a full-turn phase is the empty circuit",
    ))
    add(AxiomSchema(
        "XH", "qc",
        lambda r, d: dict(zip("ijk", _levels(r, d, 3))),
        lambda d, p: (
            seq(x_gate(d, p["i"], p["j"]), h_gate(d, p["j"], p["k"])),
            seq(h_gate(d, p["i"], p["k"]), x_gate(d, p["i"], p["j"])),
        ),
        min_d=3,
        side=_requires(_levels_ok("i", "j", "k", distinct=("i", "j", "k")), msg="i, j, k must be pairwise distinct"),
        summary="a level transposition relabels a two-level Hadamard",
    ))
    add(AxiomSchema(
        "H²", "qc",
        lambda r, d: {"r": r.randrange(d - 1)},
        lambda d, p: (seq(Hadamard(p["r"]), Hadamard(p["r"])), WIRE),
        side=_requires(lambda d, p: 0 <= p["r"] < d - 1, msg="r must be < d-1"),
        summary="Hadamard is an involution",
    ))
    add(AxiomSchema(
        "HHd", "qc",
        lambda r, d: dict(zip("ijkl", _levels(r, d, 4))),
        lambda d, p: (
            seq(h_gate(d, p["i"], p["j"]), h_gate(d, p["k"], p["l"])),
            seq(h_gate(d, p["k"], p["l"]), h_gate(d, p["i"], p["j"])),
        ),
        min_d=4,
        side=_requires(_levels_ok("i", "j", "k", "l", distinct=("i", "j", "k", "l")),
                       msg="indices i, j, k, l must be pairwise distinct"),
        summary="Hadamards on disjoint level pairs commute",
    ))
    add(AxiomSchema(
        "HPd", "qc",
        lambda r, d: {**dict(zip("ijk", _levels(r, d, 3))), "t": _angle(r)},
        lambda d, p: (
            seq(h_gate(d, p["i"], p["j"]), lp(p["k"], p["t"])),
            seq(lp(p["k"], p["t"]), h_gate(d, p["i"], p["j"])),
        ),
        min_d=3,
        side=_requires(_levels_ok("i", "j", "k", distinct=("i", "j", "k")), msg="i, j, k must be pairwise distinct"),
        summary="a level phase outside a Hadamard's pair commutes with it",
    ))
    add(AxiomSchema(
        "HCd", "qc",
        lambda r, d: {**dict(zip("ijk", _levels(r, d, 3))), "l": r.randrange(d)},
        lambda d, p: (
            seq(Par(h_gate(d, p["i"], p["j"]), WIRE), cc(p["k"], p["l"], PI)),
            seq(cc(p["k"], p["l"], PI), Par(h_gate(d, p["i"], p["j"]), WIRE)),
        ),
        min_d=3,
        side=_requires(_levels_ok("i", "j", "k", "l", distinct=("i", "j", "k")), msg="i, j, k must be pairwise distinct"),
        summary="a Hadamard on the control wire commutes with a CZ keyed outside its pair",
    ))

    def eh_build(d, p):
        i, j, a0, a2 = p["i"], p["j"], p["a0"], p["a2"]
        return eh_lhs(d, i, j, a0, a2), eh_rhs(d, i, j, ang.eh_angles(a0, a2))

    add(AxiomSchema(
        "EH", "qc",
        lambda r, d: {**dict(zip("ij", _levels(r, d, 2))), "a0": _angle(r), "a2": _angle(r)},
        eh_build,
        side=_requires(_levels_ok("i", "j", distinct=("i", "j")), msg="i and j must differ"),
        summary="two-level Euler identity for Hadamard/phase alternations",
    ))

    def three_rx(d, p):
        i, j, k = p["i"], p["j"], p["k"]
        g = (p["g1"], p["g2"], p["g3"])
        dl = _xzx_from(g)
        a = lambda t: rx_gate(d, i, j, t)  # noqa: E731
        b = lambda t: rx_gate(d, j, k, t)  # noqa: E731
        return seq(a(g[0]), b(g[1]), a(g[2])), seq(b(dl[0]), a(dl[1]), b(dl[2]))

    add(AxiomSchema(
        "3Rx", "qc",
        lambda r, d: {**dict(zip("ijk", _levels(r, d, 3))), "g1": _angle(r), "g2": _angle(r), "g3": _angle(r)},
        three_rx,
        min_d=3,
        side=_requires(_levels_ok("i", "j", "k", distinct=("i", "j", "k")), msg="i, j, k must be pairwise distinct"),
        summary="ZXZ = XZX for two-level rotations on a level chain",
    ))

    def three_crx(d, p):
        a, c, i, j = p["a"], p["c"], p["i"], p["j"]
        g = (p["g1"], p["g2"], p["g3"])
        dl = _xzx_from(g)
        A = lambda t: Ctrl(a, rx_gate(d, i, j, t))  # noqa: E731
        B = lambda t: upper(Ctrl(j, rx_gate(d, a, c, t)))  # noqa: E731
        return seq(A(g[0]), B(g[1]), A(g[2])), seq(B(dl[0]), A(dl[1]), B(dl[2]))

    add(AxiomSchema(
        "3CRx", "qc",
        lambda r, d: {**dict(zip("ac", _levels(r, d, 2))), **dict(zip("ij", _levels(r, d, 2))),
                      "g1": _angle(r), "g2": _angle(r), "g3": _angle(r)},
        three_crx,
        side=_requires(_levels_ok("a", "c", "i", "j", distinct=("a", "c")),
                       lambda d, p: p["i"] != p["j"], msg="a != c and i != j required"),
        summary="controlled form of the ZXZ = XZX rotation identity on two wires",
    ))
    add(AxiomSchema(
        "S", "qc",
        lambda r, d: {},
        lambda d, p: (swap_from_controls(d), SWAP),
        summary="the swap as a product of controlled level exchanges",
    ))
    add(AxiomSchema(
        "TP", "qc",
        lambda r, d: {"t": _angle(r)},
        lambda d, p: (expand_box(lambda k: Ctrl(k, ph(p["t"])), d), Par(WIRE, ph(p["t"]))),
        summary="a phase controlled on every value is uncontrolled",
    ))
    add(AxiomSchema(
        "TH", "qc",
        lambda r, d: {"r": r.randrange(d - 1)},
        lambda d, p: (expand_box(lambda k: Ctrl(k, Hadamard(p["r"])), d), Par(WIRE, Hadamard(p["r"]))),
        summary="a Hadamard controlled on every value is uncontrolled",
    ))

    # distinct controls commute, for the named target shapes
    def commuting(name, mk_u, mk_v, summary):
        def sample(r, d):
            k, l = _levels(r, d, 2)
            return {"k": k, "l": l, "u": mk_u(r, d), "v": mk_v(r, d)}

        def build(d, p):
            u, v = _shape(d, p["u"]), _shape(d, p["v"])
            a, b = Ctrl(p["k"], u), Ctrl(p["l"], v)
            return seq(a, b), seq(b, a)

        add(AxiomSchema(name, "qc", sample, build,
                        side=_requires(lambda d, p: p["k"] != p["l"], msg="k and l must differ"),
                        summary=summary))

    commuting("PPc", _sh_p, _sh_p, "phases under distinct controls commute")
    commuting("Pπc", _sh_pw, _sh_z, "a phase and a controlled π phase under distinct controls commute")
    commuting("ππdc", _sh_cz, _sh_cz, "two CZ gates under distinct controls commute")
    commuting("HCc", _sh_h_top, _sh_cz, "a Hadamard and a CZ under distinct controls commute")
    commuting("HHc", _sh_h, _sh_h, "Hadamards under distinct controls commute")
    commuting("HPc", _sh_h, _sh_lp, "a Hadamard and a level phase under distinct controls commute")
    commuting("ππc", _sh_z, _sh_z, "controlled π phases under distinct controls commute")

    add(AxiomSchema(
        "CompP", "qc",
        lambda r, d: {"a": r.randrange(d), "b": r.randrange(d), "t": _angle(r)},
        lambda d, p: (
            seq(SWAP, cc(p["a"], p["b"], p["t"])),
            seq(cc(p["b"], p["a"], p["t"]), SWAP),
        ),
        summary="swapping two controls of a phase",
    ))
    add(AxiomSchema(
        "Compπ", "qc",
        lambda r, d: {"a": r.randrange(d), "b": r.randrange(d), "c": r.randrange(d)},
        lambda d, p: (
            seq(Par(SWAP, WIRE), Ctrl(p["a"], cc(p["b"], p["c"], PI))),
            seq(Ctrl(p["b"], cc(p["a"], p["c"], PI)), Par(SWAP, WIRE)),
        ),
        summary="swapping the outer controls of a triply controlled π phase",
    ))
    return S


# target shapes for the commuting families: tuples (kind, args...)

def _sh_p(r, d):
    return ("ph", _angle(r))


def _sh_pw(r, d):
    return ("phw", _angle(r))


def _sh_lp(r, d):
    return ("lp", r.randrange(d), _angle(r))


def _sh_z(r, d):
    return ("lp", r.randrange(d), PI)


def _sh_cz(r, d):
    return ("cc", r.randrange(d), r.randrange(d), PI)


def _sh_ccp(r, d):
    return ("cc", r.randrange(d), r.randrange(d), _angle(r))


def _sh_h(r, d):
    i, j = _levels(r, d, 2)
    return ("h", i, j)


def _sh_h_top(r, d):
    i, j = _levels(r, d, 2)
    return ("h_top", i, j)


def _sh_ch(r, d):
    i, j = _levels(r, d, 2)
    return ("ch", r.randrange(d), i, j)


def _sh_cnot(r, d):
    i, j = _levels(r, d, 2)
    return ("cnot", r.randrange(d), i, j)


def _shape(d: int, s: tuple) -> Term:
    kind, *a = s
    if kind == "ph":
        return ph(a[0])
    if kind == "phw":
        return Par(ph(a[0]), WIRE)
    if kind == "lp":
        return lp(a[0], a[1])
    if kind == "cc":
        return cc(a[0], a[1], a[2])
    if kind == "h":
        return h_gate(d, a[0], a[1])
    if kind == "h_top":
        return Par(h_gate(d, a[0], a[1]), WIRE)
    if kind == "ch":
        return Ctrl(a[0], h_gate(d, a[1], a[2]))
    if kind == "cnot":
        return Ctrl(a[0], x_gate(d, a[1], a[2]))
    if kind == "ph_top":
        return Par(lp(a[0], a[1]), WIRE)
    if kind == "ph_bot":
        return Par(WIRE, lp(a[0], a[1]))
    if kind == "flip":
        return upper(_shape(d, a[0]))
    raise ValueError(kind)


def _flip(mk):
    return lambda r, d: ("flip", mk(r, d))


def _top(mk):
    return lambda r, d: ("ph_top",) + mk(r, d)[1:]


def _bot(mk):
    return lambda r, d: ("ph_bot",) + mk(r, d)[1:]


# ---------------------------------------------------------------------------
# Derived rules


def _derived_schemata() -> list[AxiomSchema]:
    S: list[AxiomSchema] = []
    add = S.append
    two = lambda r, d: dict(zip("ij", _levels(r, d, 2)))  # noqa: E731
    three = lambda r, d: dict(zip("ijk", _levels(r, d, 3)))  # noqa: E731
    ij_distinct = _requires(_levels_ok("i", "j", distinct=("i", "j")), msg="i and j must differ")
    ijk_distinct = _requires(_levels_ok("i", "j", "k", distinct=("i", "j", "k")), msg="i, j, k must be pairwise distinct")

    def simple(name, sample, build, min_d=2, side=None, summary=""):
        add(AxiomSchema(name, "qc-derived", sample, build, min_d=min_d, side=side, summary=summary))

    simple("0Phase", lambda r, d: {}, lambda d, p: (ph(0.0), EMPTY), summary="the zero phase is empty")
    simple("πSign", lambda r, d: {}, lambda d, p: (ph(-PI), ph(PI)), summary="phases -π and π agree")
    simple("XII+1", lambda r, d: {"r": r.randrange(d - 1)},
           lambda d, p: (seq(x_gate(d, p["r"], p["r"] + 1), x_gate(d, p["r"], p["r"] + 1)), WIRE),
           summary="adjacent transposition is an involution")
    simple("XInv", lambda r, d: {"i": r.randrange(d), "j": r.randrange(d)},
           lambda d, p: (seq(x_gate(d, p["i"], p["j"]), x_gate(d, p["i"], p["j"])), WIRE),
           summary="transposition is an involution")
    simple("HInv", lambda r, d: {"i": r.randrange(d), "j": r.randrange(d)},
           lambda d, p: (seq(h_gate(d, p["i"], p["j"]), h_gate(d, p["i"], p["j"])), WIRE),
           summary="two-level Hadamard is an involution")
    simple("HTot", two,
           lambda d, p: (expand_box(lambda k: Ctrl(k, h_gate(d, p["i"], p["j"])), d),
                         Par(WIRE, h_gate(d, p["i"], p["j"]))),
           side=ij_distinct, summary="two-level Hadamard controlled on every value")
    simple("RxTot", lambda r, d: {**two(r, d), "t": _angle(r)},
           lambda d, p: (expand_box(lambda k: Ctrl(k, rx_gate(d, p["i"], p["j"], p["t"])), d),
                         Par(WIRE, rx_gate(d, p["i"], p["j"], p["t"]))),
           side=ij_distinct, summary="two-level rotation controlled on every value")
    simple("HDec", two,
           lambda d, p: (h_gate(d, p["i"], p["j"]), eh_rhs(d, p["i"], p["j"], ang.eh_angles(0.0, 0.0))),
           side=ij_distinct, summary="Hadamard through the Euler rule at zero angles")
    simple("XCtrl", lambda r, d: {**two(r, d), "t": _angle(r)},
           lambda d, p: (seq(x_gate(d, p["i"], p["j"]), lp(p["i"], p["t"])),
                         seq(lp(p["j"], p["t"]), x_gate(d, p["i"], p["j"]))),
           side=ij_distinct, summary="transposition moves a level phase from i to j")
    simple("XCtrlSym", lambda r, d: {**two(r, d), "t": _angle(r)},
           lambda d, p: (seq(x_gate(d, p["i"], p["j"]), lp(p["j"], p["t"])),
                         seq(lp(p["i"], p["t"]), x_gate(d, p["i"], p["j"]))),
           side=ij_distinct, summary="transposition moves a level phase from j to i")
    simple("RxSym", lambda r, d: {**two(r, d), "t": _angle(r)},
           lambda d, p: (rx_gate(d, p["i"], p["j"], p["t"]), rx_gate(d, p["j"], p["i"], p["t"])),
           side=ij_distinct, summary="two-level rotation is symmetric in its levels")
    simple("XX1", three,
           lambda d, p: (seq(x_gate(d, p["i"], p["j"]), x_gate(d, p["j"], p["k"])),
                         seq(x_gate(d, p["i"], p["k"]), x_gate(d, p["i"], p["j"]))),
           min_d=3, side=ijk_distinct, summary="transposition products, first form")
    simple("XX2", three,
           lambda d, p: (seq(x_gate(d, p["i"], p["j"]), x_gate(d, p["j"], p["k"])),
                         seq(x_gate(d, p["j"], p["k"]), x_gate(d, p["i"], p["k"]))),
           min_d=3, side=ijk_distinct, summary="transposition products, second form")

    def hch(d, p):
        k, i, j = p["k"], p["i"], p["j"]
        h = Par(WIRE, h_gate(d, i, j))
        return seq(h, cc(k, j, PI), h), Ctrl(k, x_gate(d, i, j))

    simple("HCH", lambda r, d: {**two(r, d), "k": r.randrange(d)}, hch, side=ij_distinct,
           summary="Hadamards around a CZ give a controlled transposition")

    def php(d, p):
        i, j = p["i"], p["j"]
        h, x = h_gate(d, i, j), x_gate(d, i, j)
        return seq(lp(j, PI), h, lp(j, PI)), seq(lp(i, PI), lp(j, PI), x, h, x)

    simple("PHP", two, php, side=ij_distinct, summary="π phases around a Hadamard")

    def chc(d, p):
        k = p["k"]
        lhs, rhs = php(d, p)
        return Ctrl(k, lhs), Ctrl(k, rhs)

    simple("CHC", lambda r, d: {**two(r, d), "k": r.randrange(d)}, chc, side=ij_distinct,
           summary="controlled form of the π phases around a Hadamard")
    simple("HPH", two,
           lambda d, p: (seq(h_gate(d, p["i"], p["j"]), lp(p["j"], PI), h_gate(d, p["i"], p["j"])),
                         x_gate(d, p["i"], p["j"])),
           side=ij_distinct, summary="Hadamards around a π phase give a transposition")
    simple("CXC", lambda r, d: {**two(r, d), "k": r.randrange(d), "t": _angle(r)},
           lambda d, p: (seq(Ctrl(p["k"], x_gate(d, p["i"], p["j"])), cc(p["k"], p["i"], p["t"]),
                             Ctrl(p["k"], x_gate(d, p["i"], p["j"]))),
                         cc(p["k"], p["j"], p["t"])),
           side=ij_distinct, summary="controlled transposition moves a controlled phase")
    simple("CHDec", lambda r, d: {"m": r.randrange(d), "r": r.randrange(d - 1)},
           lambda d, p: (Ctrl(p["m"], Hadamard(p["r"])), decomp.controlled_hadamard(d, p["m"], p["r"])),
           summary="controlled Hadamard through a CZ and a basis change")
    simple("EP", lambda r, d: {"k": r.randrange(d), "t": _angle(r)},
           lambda d, p: (Ctrl(p["k"], ph(p["t"])), decomp.controlled_phase_split(d, p["k"], p["t"])),
           summary="a controlled phase as a global phase and opposite phases elsewhere")
    simple("CCPDec", lambda r, d: {"m": r.randrange(d), "n": r.randrange(d), "t": _angle(r)},
           lambda d, p: (cc(p["m"], p["n"], p["t"]), decomp.double_controlled_phase(d, p["m"], p["n"], p["t"])),
           summary="doubly controlled phase from singly controlled phases and CZ gates")
    simple("CCCPDec", lambda r, d: {"m": r.randrange(d), "n": r.randrange(d), "k": r.randrange(d), "t": _angle(r)},
           lambda d, p: (Ctrl(p["m"], cc(p["n"], p["k"], p["t"])),
                         decomp.triple_controlled_phase(d, p["m"], p["n"], p["k"], p["t"])),
           summary="triply controlled phase from doubly controlled phases")

    fam = [
        ("CCP-CP", _sh_ccp, _top(_sh_lp)),
        ("CCn-CP", _sh_cz, _bot(_sh_lp)),
        ("CH-CP", _sh_ch, _top(_sh_lp)),
        ("CCP-CCPx", _sh_ccp, _flip(_sh_ccp)),
        ("CCP-CCP", _sh_ccp, _sh_ccp),
        ("CCP-CHx", _sh_ccp, _flip(_sh_ch)),
        ("CCn-CPx", _sh_cz, _top(_sh_lp)),
        ("CCn-CHx", _sh_cz, _flip(_sh_ch)),
        ("CH-CHx", _sh_ch, _flip(_sh_ch)),
        ("CNOT-CHx", _sh_cnot, _flip(_sh_ch)),
        ("CCP-CNOT", _sh_ccp, _sh_cnot),
        ("CCn-CH2π", _sh_cz, _sh_ch),
        ("CCn-CCn4", _sh_cz, None),
        ("CCn-CCn3", _sh_cz, _flip(_sh_cz)),
        ("CCP-CCn", _sh_ccp, _sh_cz),
        ("CCn-CCn", _sh_cz, _sh_cz),
    ]
    for name, mk_u, mk_v in fam:
        def sample(r, d, mk_u=mk_u, mk_v=mk_v):
            k, l = _levels(r, d, 2)
            u = mk_u(r, d)
            return {"k": k, "l": l, "u": u, "v": u if mk_v is None else mk_v(r, d)}

        def build(d, p):
            a, b = Ctrl(p["k"], _shape(d, p["u"])), Ctrl(p["l"], _shape(d, p["v"]))
            return seq(a, b), seq(b, a)

        simple(name, sample, build, side=_requires(lambda d, p: p["k"] != p["l"], msg="k and l must differ"),
               summary="gates under distinct controls commute")

    def h_ccp(r, d):
        m, l, b = _levels(r, d, 3)
        return {"m": m, "l": l, "b": b, "a": r.randrange(d), "t": _angle(r)}

    simple("H–CCP", h_ccp,
           lambda d, p: (seq(Par(WIRE, h_gate(d, p["m"], p["l"])), cc(p["a"], p["b"], p["t"])),
                         seq(cc(p["a"], p["b"], p["t"]), Par(WIRE, h_gate(d, p["m"], p["l"])))),
           min_d=3, side=_requires(_levels_ok("m", "l", "b", distinct=("m", "l", "b")), msg="m, l, b must be pairwise distinct"),
           summary="a target Hadamard commutes with a controlled phase keyed outside its pair")

    def crossed(r, d):
        i, j, k = _levels(r, d, 3)
        l, m, n = _levels(r, d, 3)
        return {"i": i, "j": j, "k": k, "l": l, "m": m, "n": n}

    crossed_side = _requires(
        _levels_ok("i", "j", "k", distinct=("i", "j", "k")),
        _levels_ok("l", "m", "n", distinct=("l", "m", "n")),
        msg="i, j, k and l, m, n must each be pairwise distinct",
    )

    def crossed_rule(lower_kind, upper_kind):
        def build(d, p):
            lo = Ctrl(p["n"], (h_gate if lower_kind == "H" else x_gate)(d, p["i"], p["j"]))
            hi = upper(Ctrl(p["k"], (h_gate if upper_kind == "H" else x_gate)(d, p["l"], p["m"])))
            return seq(lo, hi), seq(hi, lo)

        return build

    simple("CH–HC", crossed, crossed_rule("H", "H"), min_d=3, side=crossed_side,
           summary="controlled Hadamards in opposite directions commute")
    simple("CX–HC", crossed, crossed_rule("X", "H"), min_d=3, side=crossed_side,
           summary="controlled X and reversed controlled Hadamard commute")
    simple("CX–XC", crossed, crossed_rule("X", "X"), min_d=3, side=crossed_side,
           summary="controlled X gates in opposite directions commute")
    simple("RxXX", lambda r, d: {**two(r, d), "t": _angle(r)},
           lambda d, p: (seq(rx_gate(d, p["i"], p["j"], p["t"]), x_gate(d, p["i"], p["j"])),
                         seq(x_gate(d, p["i"], p["j"]), rx_gate(d, p["i"], p["j"], p["t"]))),
           side=ij_distinct, summary="a two-level rotation commutes with its transposition")
    simple("CX-XC-CX", lambda r, d: dict(zip("ij", sorted(_levels(r, d, 2)))),
           lambda d, p: (seq(cx_lower(d, p["i"], p["j"]), cx_upper(d, p["i"], p["j"]), cx_lower(d, p["i"], p["j"])),
                         seq(cx_upper(d, p["i"], p["j"]), cx_lower(d, p["i"], p["j"]), cx_upper(d, p["i"], p["j"]))),
           side=ij_distinct, summary="both three-gate patterns exchange |i,j> and |j,i>")

    def euler_rhs(d, i, j, a1, a2, a3):
        return ang.two_level_circuit(_rx_z_rx(a1, a2, a3), d, i, j)

    def euler(d, p):
        i, j = p["i"], p["j"]
        a1, a2, a3 = p["a1"], p["a2"], p["a3"]
        lhs = seq(rx_gate(d, i, j, a1), lp(j, a2), rx_gate(d, i, j, a3))
        return lhs, euler_rhs(d, i, j, a1, a2, a3)

    def euler_b(d, p):
        i, j = p["i"], p["j"]
        a1, a2, a3 = p["a1"], p["a2"], p["a3"]
        x0 = ang.pi_split(a1, a2, a3)
        lhs = seq(rx_gate(d, i, j, a1), lp(j, x0), lp(j, a2 - x0), rx_gate(d, i, j, a3))
        return lhs, euler_rhs(d, i, j, a1, a2, a3)

    eul_sample = lambda r, d: {**two(r, d), "a1": _angle(r), "a2": _angle(r), "a3": _angle(r)}  # noqa: E731
    simple("EulerB", eul_sample, euler_b, side=ij_distinct,
           summary="rotation-phase-rotation with the phase split at the normalised root")
    simple("Euler", eul_sample, euler, side=ij_distinct,
           summary="rotation-phase-rotation rewritten in Hadamard/phase Euler form")
    return S


def _rx_z_rx(a1: float, a2: float, a3: float) -> np.ndarray:
    def rx(t):
        return np.array([[math.cos(t), 1j * math.sin(t)], [1j * math.sin(t), math.cos(t)]])

    return rx(a1) @ np.diag([1, complex(math.cos(a2), math.sin(a2))]) @ rx(a3)


# ---------------------------------------------------------------------------
# Linear optics


def bs_euler_lhs(a: float, b: float) -> Term:
    q = BeamSplitter(PI / 4)
    return seq(q, Par(WIRE, Phase(a)), q, Par(WIRE, Phase(b)), q)


def bs_euler_rhs(a: float, b: float) -> Term:
    b0, b1, b2, b3 = ang.eh_angles(a + PI, b + PI)
    q = BeamSplitter(PI / 4)
    return seq(Par(WIRE, Phase(b0)), q, Par(Phase(b1), Phase(b2 - PI)), q, Par(WIRE, Phase(b3)))


def _lopp_schemata() -> list[AxiomSchema]:
    S: list[AxiomSchema] = []

    def add(name, sample, build, summary):
        S.append(AxiomSchema(name, "lopp", sample, build, summary=summary))

    add("A", lambda r, d: {"t1": _angle(r), "t2": _angle(r)},
        lambda d, p: (seq(Phase(p["t1"]), Phase(p["t2"])), Phase(p["t1"] + p["t2"])),
        "phase shifters add")
    add("2π", lambda r, d: {}, lambda d, p: (Phase(2 * PI), WIRE), "a full-turn phase shifter is a wire")
    add("SW", lambda r, d: {},
        lambda d, p: (SWAP, seq(Par(Phase(-PI / 2), Phase(-PI / 2)), BeamSplitter(PI / 2))),
        "the mode swap from a balanced-out beam splitter")
    add("E", lambda r, d: {"a": _angle(r), "b": _angle(r)},
        lambda d, p: (bs_euler_lhs(p["a"], p["b"]), bs_euler_rhs(p["a"], p["b"])),
        "three-beam-splitter Euler identity on two modes")

    def three_bs(d, p):
        g = (p["g1"], p["g2"], p["g3"])
        dl = _xzx_from(g)
        A = lambda t: Par(BeamSplitter(t), WIRE)  # noqa: E731
        B = lambda t: Par(WIRE, BeamSplitter(t))  # noqa: E731
        return seq(A(g[0]), B(g[1]), A(g[2])), seq(B(dl[0]), A(dl[1]), B(dl[2]))

    add("3BS", lambda r, d: {"g1": _angle(r), "g2": _angle(r), "g3": _angle(r)}, three_bs,
        "ZXZ = XZX for beam splitters on three modes")
    return S


# ---------------------------------------------------------------------------
# Public API

_CATALOGS: dict[str, list[AxiomSchema]] = {}


def catalog(theory: str) -> list[AxiomSchema]:
    if theory not in ("qc", "qc-derived", "lopp"):
        raise ValueError(f"unknown theory {theory!r}")
    if theory not in _CATALOGS:
        _CATALOGS[theory] = {
            "qc": _qc_schemata,
            "qc-derived": _derived_schemata,
            "lopp": _lopp_schemata,
        }[theory]()
    return list(_CATALOGS[theory])


def schema(name: str, theory: Optional[str] = None) -> AxiomSchema:
    for th in ([theory] if theory else ["qc", "qc-derived", "lopp"]):
        for s in catalog(th):
            if s.name == name:
                return s
    raise KeyError(name)


def instantiate(s: AxiomSchema, d: int, params: Params) -> AxiomInstance:
    if d < s.min_d:
        raise SideConditionViolated(f"{s.name} needs d >= {s.min_d}, got {d}")
    if s.side is not None:
        msg = s.side(d, params)
        if msg:
            raise SideConditionViolated(f"{s.name}: {msg}")
    lhs, rhs = s.build(d, params)
    if lhs.arity != rhs.arity:
        raise SideConditionViolated(f"{s.name}: sides have arities {lhs.arity} and {rhs.arity}")
    return AxiomInstance(s.name, s.theory, d, dict(params), lhs, rhs)


def sample_instance(s: AxiomSchema, d: int, rng: random.Random) -> AxiomInstance:
    return instantiate(s, d, s.sample(rng, d))


def semantics_of(inst: AxiomInstance) -> tuple[np.ndarray, np.ndarray]:
    if inst.theory == "lopp":
        return interp_lopp_sp(inst.lhs), interp_lopp_sp(inst.rhs)
    return interp_qudit(inst.lhs, inst.d), interp_qudit(inst.rhs, inst.d)


def check_instance(inst: AxiomInstance, tol: float = DEFAULT_TOL) -> float:
    """Max-entry residual between the two sides (the instance passes iff <= tol)."""
    a, b = semantics_of(inst)
    return residual(a, b)


@dataclass(frozen=True)
class SchemaReport:
    name: str
    d: int
    instances: int
    max_residual: float
    status: str

    def line(self) -> str:
        r = "nan" if self.instances == 0 else f"{self.max_residual:.3e}"
        return f"{self.name} d={self.d} instances={self.instances} max_residual={r} {self.status}"


def instance_rng(seed: int, name: str, d: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{d}:{index}")


def run_schema(s: AxiomSchema, d: int, samples: int = 200, seed: int = 0, tol: float = DEFAULT_TOL) -> SchemaReport:
    if d < s.min_d:
        return SchemaReport(s.name, d, 0, 0.0, "SKIP")
    worst = 0.0
    for idx in range(samples):
        inst = sample_instance(s, d, instance_rng(seed, s.name, d, idx))
        worst = max(worst, check_instance(inst, tol))
    return SchemaReport(s.name, d, samples, worst, "PASS" if worst <= tol else "FAIL")


def run_harness(theory: str, d: int, samples: int = 200, seed: int = 0, tol: float = DEFAULT_TOL) -> list[SchemaReport]:
    return [run_schema(s, d, samples, seed, tol) for s in catalog(theory)]


# re-exported angle relations
eh_angles = ang.eh_angles
euler_so3 = ang.euler_so3
pi_split = ang.pi_split
synth_two_level = ang.synth_two_level
