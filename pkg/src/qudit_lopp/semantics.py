"""Dense unitary semantics for qudit and linear-optical circuits."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from . import gray
from .errors import DimensionCap, DimMismatch, IndexOutOfRange, ModeCountNotPower, ValidationError
from .ir import fold_dag, Ctrl, Empty, GlobalPhase, Hadamard, Par, Seq, SwapGen, Term, Wire, validate
from .lopp import BeamSplitter, Phase, log_d, validate_lopp

DEFAULT_TOL = 1e-9
DEFAULT_CAP = 2**10

_QUARTER = {0: 1.0 + 0j, 1: 1j, 2: -1.0 + 0j, 3: -1j}


def expi(theta: float) -> complex:
    """e^{iθ}, exact when θ is a float multiple of π/2."""
    r = theta / (math.pi / 2)
    k = round(r)
    if r == k and abs(k) < 2**52:
        return _QUARTER[k % 4]
    return complex(math.cos(theta), math.sin(theta))


def hadamard_matrix(d: int, r: int) -> np.ndarray:
    if not 0 <= r < d - 1:
        raise IndexOutOfRange(f"Hadamard level {r} outside [0, {d - 2}]")
    h = np.eye(d, dtype=complex)
    s = 1 / math.sqrt(2)
    h[r, r] = h[r, r + 1] = h[r + 1, r] = s
    h[r + 1, r + 1] = -s
    return h


def swap_matrix(d: int) -> np.ndarray:
    n = d * d
    u = np.zeros((n, n), dtype=complex)
    for i in range(d):
        for j in range(d):
            u[j * d + i, i * d + j] = 1
    return u


def block_swap_matrix(d: int, m: int, n: int) -> np.ndarray:
    """Unitary sending |x, y> (x on m wires, y on n) to |y, x>."""
    dm, dn = d**m, d**n
    u = np.zeros((dm * dn, dm * dn), dtype=complex)
    for x in range(dm):
        for y in range(dn):
            u[y * dm + x, x * dn + y] = 1
    return u


def controlled_extension(k: int, u: np.ndarray, d: int) -> np.ndarray:
    """|k><k| ⊗ U + Σ_{l≠k} |l><l| ⊗ I."""
    if not 0 <= k < d:
        raise IndexOutOfRange(f"control value {k} outside [0, {d - 1}]")
    n = u.shape[0]
    out = np.eye(d * n, dtype=complex)
    out[k * n:(k + 1) * n, k * n:(k + 1) * n] = u
    return out


def interp_qudit(c: Term, d: int, cap: int = DEFAULT_CAP, check: bool = True) -> np.ndarray:
    """⟦C⟧ as a d^arity square matrix."""
    if check:
        validate(c, d)
    if d**c.arity > cap:
        raise DimensionCap(f"dimension {d}^{c.arity} exceeds cap {cap}")
    return fold_dag(c, lambda node, vals: _qudit_node(node, d, vals))


def _qudit_node(t: Term, d: int, vals: list) -> np.ndarray:
    if isinstance(t, Seq):
        return vals[0] @ vals[1]
    if isinstance(t, Par):
        return np.kron(vals[0], vals[1])
    if isinstance(t, Ctrl):
        return controlled_extension(t.k, vals[0], d)
    if isinstance(t, Empty):
        return np.ones((1, 1), dtype=complex)
    if isinstance(t, Wire):
        return np.eye(d, dtype=complex)
    if isinstance(t, SwapGen):
        return swap_matrix(d)
    if isinstance(t, Hadamard):
        return hadamard_matrix(d, t.r)
    if isinstance(t, GlobalPhase):
        return np.array([[expi(t.theta)]], dtype=complex)
    raise ValidationError(f"node {type(t).__name__} has no qudit semantics")


# ---------------------------------------------------------------------------
# Linear optics


def lopp_gates(c: Term, offset: int = 0) -> list[tuple[str, int, float]]:
    """Generators of a LOPP circuit in application order as (kind, mode, θ)."""
    out: list[tuple[str, int, float]] = []
    stack: list[tuple[Term, int]] = [(c, offset)]
    # depth-first, pushing the part that acts later first
    while stack:
        t, t0 = stack.pop()
        if isinstance(t, Seq):
            stack.append((t.left, t0))
            stack.append((t.right, t0))
        elif isinstance(t, Par):
            stack.append((t.bottom, t0 + t.top.arity))
            stack.append((t.top, t0))
        elif isinstance(t, Phase):
            out.append(("ps", t0, t.theta))
        elif isinstance(t, BeamSplitter):
            out.append(("bs", t0, t.theta))
        elif isinstance(t, SwapGen):
            out.append(("swap", t0, 0.0))
        elif isinstance(t, (Empty, Wire)):
            pass
        else:
            raise ValidationError(f"node {type(t).__name__} is not a LOPP generator")
    return out


def interp_lopp_sp(c: Term, cap: int = DEFAULT_CAP, check: bool = True) -> np.ndarray:
    """Single-photon semantics: one row/column per mode."""
    if check:
        validate_lopp(c)
    m = c.arity
    if m > cap:
        raise DimensionCap(f"{m} modes exceeds cap {cap}")
    u = np.eye(m, dtype=complex)
    for kind, t, theta in lopp_gates(c):
        if kind == "ps":
            u[t] *= expi(theta)
        elif kind == "swap":
            u[[t, t + 1]] = u[[t + 1, t]]
        else:
            co, si = math.cos(theta), 1j * math.sin(theta)
            a, b = u[t].copy(), u[t + 1].copy()
            u[t] = co * a + si * b
            u[t + 1] = si * a + co * b
    return u


def gray_permutation(d: int, n: int) -> np.ndarray:
    """𝔊 with 𝔊[lex(G(t)), t] = 1."""
    perm = gray.gray_to_lex(d, n)
    g = np.zeros((d**n, d**n))
    g[perm, np.arange(d**n)] = 1
    return g


def interp_lopp_gray(c: Term, d: int, n: Optional[int] = None, cap: int = DEFAULT_CAP) -> np.ndarray:
    """𝔊 ⟦L⟧_sp 𝔊† on d^n modes, read in the computational basis."""
    if n is None:
        n = log_d(d, c.arity)
    if c.arity != d**n:
        raise ModeCountNotPower(f"{c.arity} modes is not {d}^{n}")
    sp = interp_lopp_sp(c, cap=cap)
    perm = np.array(gray.gray_to_lex(d, n))
    out = np.zeros_like(sp)
    out[np.ix_(perm, perm)] = sp
    return out


# ---------------------------------------------------------------------------
# Comparisons


def residual(u: np.ndarray, v: np.ndarray) -> float:
    if u.shape != v.shape:
        raise DimMismatch(f"shapes {u.shape} and {v.shape} differ")
    return float(np.max(np.abs(u - v))) if u.size else 0.0


def unitary_equal(u: np.ndarray, v: np.ndarray, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Entrywise max-norm equality with no global-phase quotient."""
    r = residual(u, v)
    return r <= tol, r


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return u.shape[0] == u.shape[1] and residual(u.conj().T @ u, np.eye(u.shape[0])) <= tol


def support_indices(u: np.ndarray, tol: float = DEFAULT_TOL) -> set[int]:
    """Indices whose row or column differs from the identity beyond tol."""
    dev = np.abs(u - np.eye(u.shape[0])) > tol
    return set(np.flatnonzero(dev.any(axis=0) | dev.any(axis=1)).tolist())


def dump_matrix(u: np.ndarray) -> str:
    """Text dump: header ``dim N`` then one ``re im`` pair per line, row-major."""
    lines = [f"dim {u.shape[0]}"]
    for z in u.reshape(-1):
        lines.append(f"{float(z.real)!r} {float(z.imag)!r}")
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> np.ndarray:
    """Inverse of :func:`dump_matrix`; the header line is optional."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if rows and rows[0][0] == "dim":
        n = int(rows[0][1])
        rows = rows[1:]
    else:
        n = math.isqrt(len(rows))
    if len(rows) != n * n:
        raise DimMismatch(f"expected {n * n} entries, found {len(rows)}")
    vals = np.array([complex(float(r[0]), float(r[1])) for r in rows])
    return vals.reshape(n, n)
