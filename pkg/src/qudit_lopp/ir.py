"""Raw circuit terms for the qudit IR.

Terms are immutable trees with a cached arity and a cached structural hash.
The structural constructors (Empty, Wire, SwapGen, Seq, Par) are shared with
the linear-optical IR in :mod:`qudit_lopp.lopp`; there the arity counts modes
instead of wires.

Composition convention: ``Seq(f, g)`` is ``f ∘ g``, so ``g`` acts first and
the semantics is ``⟦f⟧ @ ⟦g⟧``.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Optional, Sequence

from .errors import ArityMismatch, IndexOutOfRange, MissingAngle, ValidationError


class Term:
    """Base class of all circuit nodes."""

    __slots__ = ("arity", "_hash")
    arity: int

    def _fields(self) -> tuple:
        return ()

    def _init(self, arity: int) -> None:
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + self._fields()))

    def __setattr__(self, name, value):
        raise AttributeError("terms are immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        # explicit stack: deep terms would overflow a recursive comparison
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b) or a._hash != b._hash:
                return False
            for x, y in zip(a._fields(), b._fields()):
                if isinstance(x, Term):
                    stack.append((x, y))
                elif x != y:
                    return False
        return True

    def __repr__(self) -> str:
        fields = ", ".join(repr(f) for f in self._fields())
        return f"{type(self).__name__}({fields})"

    def __reduce__(self):
        return (type(self), self._fields())


class Empty(Term):
    __slots__ = ()

    def __init__(self):
        self._init(0)


class Wire(Term):
    __slots__ = ()

    def __init__(self):
        self._init(1)


class SwapGen(Term):
    __slots__ = ()

    def __init__(self):
        self._init(2)


class Hadamard(Term):
    """Hadamard mixing levels r and r+1."""

    __slots__ = ("r",)

    def __init__(self, r: int):
        object.__setattr__(self, "r", int(r))
        self._init(1)

    def _fields(self):
        return (self.r,)


class GlobalPhase(Term):
    __slots__ = ("theta",)

    def __init__(self, theta: float):
        object.__setattr__(self, "theta", float(theta))
        self._init(0)

    def _fields(self):
        return (self.theta,)


class Seq(Term):
    """``left ∘ right``; ``right`` is applied first."""

    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._init(left.arity)

    def _fields(self):
        return (self.left, self.right)


class Par(Term):
    """``top ⊗ bottom``; ``top`` occupies the first (most significant) wires."""

    __slots__ = ("top", "bottom")

    def __init__(self, top: Term, bottom: Term):
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        self._init(top.arity + bottom.arity)

    def _fields(self):
        return (self.top, self.bottom)


class Ctrl(Term):
    """Apply ``body`` iff the new first wire holds basis value ``k``."""

    __slots__ = ("k", "body")

    def __init__(self, k: int, body: Term):
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "body", body)
        self._init(1 + body.arity)

    def _fields(self):
        return (self.k, self.body)


EMPTY = Empty()
WIRE = Wire()
SWAP = SwapGen()


# ---------------------------------------------------------------------------
# Validation


def _child(path: str, step: str) -> str:
    return f"{path}.{step}" if path else step


def children(t: Term) -> tuple:
    if isinstance(t, Seq):
        return (t.left, t.right)
    if isinstance(t, Par):
        return (t.top, t.bottom)
    if isinstance(t, Ctrl):
        return (t.body,)
    return ()


def fold_dag(t: Term, fn: Callable[[Term, list], object]) -> object:
    """Bottom-up evaluation of ``fn(node, child_values)``, once per shared node.

    Iterative, so deep trees do not hit the recursion limit.
    """
    memo: dict[int, object] = {}
    keep = []
    stack = [(t, False)]
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        kids = children(node)
        if ready:
            memo[key] = fn(node, [memo[id(k)] for k in kids])
            keep.append(node)
            continue
        stack.append((node, True))
        for k in kids:
            if id(k) not in memo:
                stack.append((k, False))
    return memo[id(t)]


def validate(term: Term, d: int, path: str = "") -> int:
    """Check node-local constraints for dimension ``d`` and return the arity."""
    if d < 2:
        raise ValidationError(f"dimension must be >= 2, got {d}", path or "root")
    try:
        return fold_dag(term, lambda node, vals: _check_node(node, d, vals))
    except ValidationError:
        pass
    # slow path, only to locate the offending node
    return _validate(term, d, path)


def _check_node(t: Term, d: int, vals: list) -> int:
    if isinstance(t, Seq):
        if vals[0] != vals[1]:
            raise ArityMismatch("sequential arity mismatch")
        return vals[0]
    if isinstance(t, Par):
        return vals[0] + vals[1]
    if isinstance(t, Ctrl):
        if not 0 <= t.k < d:
            raise IndexOutOfRange("control out of range")
        return 1 + vals[0]
    if isinstance(t, Hadamard):
        if not 0 <= t.r < d - 1:
            raise IndexOutOfRange("Hadamard out of range")
        return 1
    if isinstance(t, (Empty, Wire, SwapGen, GlobalPhase)):
        return t.arity
    raise ValidationError("not a qudit generator")


def _validate(t: Term, d: int, path: str) -> int:
    where = path or "root"
    if isinstance(t, (Empty, Wire, SwapGen, GlobalPhase)):
        return t.arity
    if isinstance(t, Hadamard):
        if not 0 <= t.r < d - 1:
            raise IndexOutOfRange(f"Hadamard level {t.r} outside [0, {d - 2}]", where)
        return 1
    if isinstance(t, Seq):
        a = _validate(t.left, d, _child(path, "seq.left"))
        b = _validate(t.right, d, _child(path, "seq.right"))
        if a != b:
            raise ArityMismatch(f"sequential arities {a} != {b}", _child(path, "seq.right"))
        return a
    if isinstance(t, Par):
        return _validate(t.top, d, _child(path, "par.top")) + _validate(
            t.bottom, d, _child(path, "par.bottom")
        )
    if isinstance(t, Ctrl):
        if not 0 <= t.k < d:
            raise IndexOutOfRange(f"control value {t.k} outside [0, {d - 1}]", where)
        return 1 + _validate(t.body, d, _child(path, "ctrl.body"))
    raise ValidationError(f"node {type(t).__name__} is not a qudit generator", where)


def recompute_arity(t: Term) -> int:
    """Arity computed from scratch, ignoring the cache."""
    if isinstance(t, Seq):
        return recompute_arity(t.left)
    if isinstance(t, Par):
        return recompute_arity(t.top) + recompute_arity(t.bottom)
    if isinstance(t, Ctrl):
        return 1 + recompute_arity(t.body)
    return _LEAF_ARITY[type(t).__name__]


_LEAF_ARITY = {
    "Empty": 0, "Wire": 1, "SwapGen": 2, "Hadamard": 1, "GlobalPhase": 0,
    "Phase": 1, "BeamSplitter": 2,
}


# ---------------------------------------------------------------------------
# Builders


def id_circuit(n: int) -> Term:
    """Canonical identity tree: id_0 = Empty, id_1 = Wire, id_n = id_{n-1} ⊗ Wire."""
    if n < 0:
        raise ValueError("negative arity")
    if n == 0:
        return EMPTY
    t: Term = WIRE
    for _ in range(n - 1):
        t = Par(t, WIRE)
    return t


def is_id_circuit(t: Term) -> bool:
    """True iff ``t`` is literally ``id_circuit(t.arity)``."""
    return t == id_circuit(t.arity)


def is_identity_tree(t: Term) -> bool:
    """Syntactic identity: built from Empty, Wire, Par, Seq and Ctrl only."""
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, (Empty, Wire)):
            continue
        if isinstance(x, Par):
            stack += [x.top, x.bottom]
        elif isinstance(x, Seq):
            stack += [x.left, x.right]
        elif isinstance(x, Ctrl):
            stack.append(x.body)
        else:
            return False
    return True


def compose(factors: Sequence[Term], arity: Optional[int] = None) -> Term:
    """Balanced ``f1 ∘ f2 ∘ ... ∘ fn`` (the last factor acts first).

    An empty list yields ``id_circuit(arity)``.
    """
    factors = list(factors)
    if not factors:
        if arity is None:
            raise ValueError("empty composition needs an arity")
        return id_circuit(arity)

    def build(lo: int, hi: int) -> Term:
        if hi - lo == 1:
            return factors[lo]
        mid = (lo + hi) // 2
        return Seq(build(lo, mid), build(mid, hi))

    return build(0, len(factors))


def tensor(factors: Sequence[Term]) -> Term:
    """Balanced parallel composition, first factor on top; empty list is Empty."""
    factors = list(factors)
    if not factors:
        return EMPTY

    def build(lo: int, hi: int) -> Term:
        if hi - lo == 1:
            return factors[lo]
        mid = (lo + hi) // 2
        return Par(build(lo, mid), build(mid, hi))

    return build(0, len(factors))


def pad(t: Term, above: int, below: int) -> Term:
    """``id_above ⊗ t ⊗ id_below``, omitting empty identities."""
    if above:
        t = Par(id_circuit(above), t)
    if below:
        t = Par(t, id_circuit(below))
    return t


def block_swap_term(m: int, n: int) -> Term:
    """σ_{m,n}: maps the wire layout (m, n) to (n, m)."""
    if m < 0 or n < 0:
        raise ValueError("block sizes must be nonnegative")
    if m == 0 or n == 0:
        return id_circuit(m + n)
    if m == 1 and n == 1:
        return SWAP
    if n == 1:
        return Seq(Par(block_swap_term(m - 1, 1), id_circuit(1)), Par(id_circuit(m - 1), SWAP))
    return Seq(Par(id_circuit(1), block_swap_term(m, n - 1)), Par(block_swap_term(m, 1), id_circuit(n - 1)))


def iterated_control(u: Iterable[int], body: Term, d: Optional[int] = None) -> Term:
    """ctrl_u(body): the first digit of ``u`` becomes the outermost control."""
    u = list(u)
    if d is not None:
        for pos, k in enumerate(u):
            if not 0 <= k < d:
                raise IndexOutOfRange(f"control digit {k} outside [0, {d - 1}]", f"word[{pos}]")
    t = body
    for k in reversed(u):
        t = Ctrl(k, t)
    return t


def phase(theta: float) -> Term:
    return GlobalPhase(theta)


def level_phase(k: int, theta: float) -> Term:
    """Phase e^{iθ} on level k of one wire."""
    return Ctrl(k, GlobalPhase(theta))


# ---------------------------------------------------------------------------
# Derived single-wire gates


def _check_levels(d: int, *levels: int) -> None:
    for x in levels:
        if not 0 <= x < d:
            raise IndexOutOfRange(f"level {x} outside [0, {d - 1}]")


def _x_adjacent(r: int) -> Term:
    return compose([Hadamard(r), level_phase(r + 1, math.pi), Hadamard(r)])


def x_gate(d: int, i: int, j: int) -> Term:
    """X^{(i,j)}: transposition of levels i and j."""
    _check_levels(d, i, j)
    if i == j:
        return WIRE
    if i > j:
        i, j = j, i
    if j == i + 1:
        return _x_adjacent(i)
    # S_{i+1,j} walks level j down to i+1; its inverse is the reversed product.
    ladder = [_x_adjacent(r) for r in range(i + 1, j)]
    return compose(list(reversed(ladder)) + [_x_adjacent(i)] + ladder)


def h_gate(d: int, i: int, j: int) -> Term:
    """H^{(i,j)}: Hadamard on span{|i>, |j>} in the ordered basis (|i>, |j>)."""
    _check_levels(d, i, j)
    if i == j:
        return WIRE
    if i < j:
        if j == i + 1:
            return Hadamard(i)
        x = x_gate(d, j, i + 1)
        return compose([x, Hadamard(i), x])
    x = x_gate(d, j, i)
    return compose([x, h_gate(d, j, i), x])


def rx_gate(d: int, i: int, j: int, theta: float) -> Term:
    """Rx^{(i,j)}(θ): block [[cos θ, i sin θ], [i sin θ, cos θ]] on levels i, j."""
    _check_levels(d, i, j)
    if i == j:
        raise IndexOutOfRange("Rx needs two distinct levels")
    h = h_gate(d, i, j)
    return compose([h, level_phase(i, theta), level_phase(j, -theta), h])


def derived_gate(kind: str, d: int, i: int, j: int, theta: Optional[float] = None) -> Term:
    kind = kind.upper() if kind.lower() != "rx" else "Rx"
    if kind == "X":
        return x_gate(d, i, j)
    if kind == "H":
        return h_gate(d, i, j)
    if kind == "Rx":
        if theta is None:
            raise MissingAngle("Rx requires an angle")
        return rx_gate(d, i, j, theta)
    raise ValueError(f"unknown derived gate kind {kind!r}")


def expand_box(
    body: Callable[[int], Term],
    d: int,
    predicate: Optional[Callable[[int], bool]] = None,
    arity: Optional[int] = None,
) -> Term:
    """Indexed box: body(k) for admitted k, applied in increasing k."""
    ks = [k for k in range(d) if predicate is None or predicate(k)]
    factors = [body(k) for k in ks]
    if factors:
        a = factors[0].arity
        for k, f in zip(ks, factors):
            if f.arity != a:
                raise ArityMismatch(f"box instance k={k} has arity {f.arity}, expected {a}")
        if arity is not None and arity != a:
            raise ArityMismatch(f"box arity {a} != declared {arity}")
    elif arity is None:
        arity = body(0).arity
    # increasing k means k = first admitted acts first, i.e. sits rightmost
    return compose(list(reversed(factors)), arity=arity)


