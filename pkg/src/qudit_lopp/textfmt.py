"""S-expression text format for qudit and linear-optical circuits.

Qudit grammar::

    C ::= empty | wire | swap | (id N) | (H R) | (ph THETA)
        | (seq C C) | (par C C) | (ctrl K C)

Linear-optical grammar::

    L ::= empty | wire | swap | (id N) | (ps THETA) | (bs THETA) | (seq L L) | (par L L)

THETA is a decimal or a pi-expression such as ``pi``, ``-pi/4``, ``3pi/2`` or
``3*pi/2``.  ``;`` starts a comment.  The printer emits angles as the shortest
round-trip decimal, so ``parse(print(t)) == t``.
"""

from __future__ import annotations

import math
import re
from typing import Iterator, Literal

from .errors import CircuitSyntaxError
from .ir import EMPTY, SWAP, WIRE, Ctrl, Empty, GlobalPhase, Hadamard, Par, Seq, SwapGen, Term, Wire, id_circuit, is_id_circuit
from .lopp import BeamSplitter, Phase

Kind = Literal["qudit", "lopp"]

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")
_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_DECIMAL = re.compile(rf"[+-]?{_NUM}$")
_PI = re.compile(rf"([+-]?)({_NUM})?\*?pi(?:/({_NUM}))?$")
_INT = re.compile(r"\d+$")

_ATOMS = {"empty": EMPTY, "wire": WIRE, "swap": SWAP}
# argument slots per form: "int", "angle" or "C" (a circuit)
_FORMS = {
    "qudit": {
        "id": ("int",), "H": ("int",), "ph": ("angle",),
        "seq": ("C", "C"), "par": ("C", "C"), "ctrl": ("int", "C"),
    },
    "lopp": {"id": ("int",), "ps": ("angle",), "bs": ("angle",), "seq": ("C", "C"), "par": ("C", "C")},
}


def parse_angle(s: str) -> float:
    """Decimal or pi-expression; raises ValueError otherwise."""
    if _DECIMAL.match(s):
        x = float(s)
    else:
        m = _PI.match(s)
        if not m:
            raise ValueError(f"bad angle {s!r}")
        sign, num, den = m.groups()
        x = (float(num) if num else 1.0) * math.pi / (float(den) if den else 1.0)
        if sign == "-":
            x = -x
    if not math.isfinite(x):
        raise ValueError(f"angle {s!r} is not finite")
    return x


def _tokens(text: str) -> Iterator[tuple[str, int, int]]:
    line, col0 = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        start = m.start()
        if not tok.isspace() and not tok.startswith(";"):
            yield tok, line, start - col0 + 1
        nl = tok.count("\n")
        if nl:
            line += nl
            col0 = start + tok.rindex("\n") + 1


def parse(text: str, kind: Kind = "qudit") -> Term:
    """Parse one circuit; the result is not validated against a dimension."""
    forms = _FORMS[kind]
    toks = list(_tokens(text))
    if not toks:
        raise CircuitSyntaxError("empty input", 1, 1)
    # frames: [head, line, col, args]
    stack: list[list] = []
    result = None
    i = 0
    while i < len(toks):
        tok, ln, col = toks[i]
        i += 1
        if result is not None and not stack:
            raise CircuitSyntaxError(f"unexpected {tok!r} after the circuit", ln, col)
        if tok == "(":
            if i >= len(toks):
                raise CircuitSyntaxError("unterminated form", ln, col)
            head, hl, hc = toks[i]
            i += 1
            if head not in forms:
                raise CircuitSyntaxError(f"unknown form {head!r} for {kind} circuits", hl, hc)
            stack.append([head, ln, col, []])
            continue
        if tok == ")":
            if not stack:
                raise CircuitSyntaxError("unbalanced ')'", ln, col)
            head, fl, fc, args = stack.pop()
            value = _build(head, forms[head], args, fl, fc)
        else:
            value = _atom(tok, ln, col, stack, forms)
        if stack:
            stack[-1][3].append((value, ln, col))
        else:
            result = value
    if stack:
        _, ln, col, _ = stack[-1]
        raise CircuitSyntaxError("unterminated form", ln, col)
    return result


def _atom(tok: str, ln: int, col: int, stack: list, forms: dict):
    if stack:
        head, _, _, args = stack[-1]
        slots = forms[head]
        if len(args) >= len(slots):
            raise CircuitSyntaxError(f"too many arguments to {head!r}", ln, col)
        want = slots[len(args)]
        if want == "int":
            if not _INT.match(tok):
                raise CircuitSyntaxError(f"expected a nonnegative integer, got {tok!r}", ln, col)
            return int(tok)
        if want == "angle":
            try:
                return parse_angle(tok)
            except ValueError as e:
                raise CircuitSyntaxError(str(e), ln, col) from None
    if tok in _ATOMS:
        return _ATOMS[tok]
    raise CircuitSyntaxError(f"unknown atom {tok!r}", ln, col)


def _build(head: str, slots: tuple, args: list, ln: int, col: int) -> Term:
    if len(args) != len(slots):
        raise CircuitSyntaxError(f"({head} ...) takes {len(slots)} argument(s), got {len(args)}", ln, col)
    for (v, al, ac), want in zip(args, slots):
        if want == "C" and not isinstance(v, Term):
            raise CircuitSyntaxError(f"expected a circuit in ({head} ...)", al, ac)
        if want != "C" and isinstance(v, Term):
            raise CircuitSyntaxError(f"expected a number in ({head} ...)", al, ac)
    vals = [a[0] for a in args]
    if head == "id":
        return id_circuit(vals[0])
    if head == "H":
        return Hadamard(vals[0])
    if head == "ph":
        return GlobalPhase(vals[0])
    if head == "ps":
        return Phase(vals[0])
    if head == "bs":
        return BeamSplitter(vals[0])
    if head == "seq":
        return Seq(vals[0], vals[1])
    if head == "par":
        return Par(vals[0], vals[1])
    return Ctrl(vals[0], vals[1])


def parse_qudit(text: str) -> Term:
    return parse(text, "qudit")


def parse_lopp(text: str) -> Term:
    return parse(text, "lopp")


def looks_like_lopp(text: str) -> bool:
    heads = {m.group(1) for m in re.finditer(r"\(\s*([^\s();]+)", text)}
    return bool(heads & {"ps", "bs"}) and not heads & {"H", "ph", "ctrl", "id"}


# ---------------------------------------------------------------------------
# Printing


def format_angle(x: float) -> str:
    return repr(float(x))


def to_text(t: Term) -> str:
    """Canonical single-line text; ``(id N)`` for canonical identity trees with N >= 2."""
    out: list[str] = []
    stack: list = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            out.append(x)
            continue
        if isinstance(x, Empty):
            out.append("empty")
        elif isinstance(x, Wire):
            out.append("wire")
        elif isinstance(x, SwapGen):
            out.append("swap")
        elif x.arity >= 2 and isinstance(x, Par) and is_id_circuit(x):
            out.append(f"(id {x.arity})")
        elif isinstance(x, Hadamard):
            out.append(f"(H {x.r})")
        elif isinstance(x, GlobalPhase):
            out.append(f"(ph {format_angle(x.theta)})")
        elif isinstance(x, Phase):
            out.append(f"(ps {format_angle(x.theta)})")
        elif isinstance(x, BeamSplitter):
            out.append(f"(bs {format_angle(x.theta)})")
        elif isinstance(x, Seq):
            out.append("(seq ")
            stack += [")", x.right, " ", x.left]
        elif isinstance(x, Par):
            out.append("(par ")
            stack += [")", x.bottom, " ", x.top]
        elif isinstance(x, Ctrl):
            out.append(f"(ctrl {x.k} ")
            stack += [")", x.body]
        else:
            raise TypeError(f"cannot print {type(x).__name__}")
    return "".join(out)
