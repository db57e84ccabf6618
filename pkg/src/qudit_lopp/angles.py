"""Angle relations used by the Euler-type axioms, plus two-level synthesis."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import IndexOutOfRange, NotRotation, NotUnitary
from .ir import Term, compose, h_gate, level_phase

TWO_PI = 2 * math.pi
ZERO_TOL = 1e-12


def canon(x: float) -> float:
    """Representative of x in [0, 2π)."""
    y = math.fmod(x, TWO_PI)
    if y < 0:
        y += TWO_PI
    return 0.0 if y >= TWO_PI else y


def eh_angles(alpha0: float, alpha2: float) -> tuple[float, float, float, float]:
    """Right-hand angles (β0, β1, β2, β3) of the two-level Euler rule."""
    s, t = (alpha0 + alpha2) / 2, (alpha0 - alpha2) / 2
    z = complex(-math.sin(s), math.cos(t))
    zp = complex(math.cos(s), -math.sin(t))
    half = (math.pi + alpha0 + alpha2) / 2
    if abs(zp) <= ZERO_TOL:
        az = cmath.phase(z)
        b = (2 * az, half - az, half - az, 0.0)
    elif abs(z) <= ZERO_TOL:
        azp = cmath.phase(zp)
        b = (2 * azp, s - azp, math.pi + s - azp, 0.0)
    else:
        az, azp = cmath.phase(z), cmath.phase(zp)
        e = cmath.phase(complex(abs(z / zp), 1.0))
        b = (az + azp, -e + half - az, e + half - az, az - azp)
    return tuple(canon(x) for x in b)


# ---------------------------------------------------------------------------
# SO(3)


def rot_x(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])


def rot_z(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])


def check_rotation(r: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise NotRotation("expected a 3x3 matrix")
    if np.max(np.abs(r.T @ r - np.eye(3))) > tol or abs(np.linalg.det(r) - 1) > tol:
        raise NotRotation("matrix is not in SO(3)")
    return r


def euler_so3(r: np.ndarray, convention: str = "zxz") -> tuple[float, float, float]:
    """Euler angles with R = Rz(a1) Rx(a2) Rz(a3) (zxz) or Rx(a1) Rz(a2) Rx(a3) (xzx).

    In the gimbal cases the last rotation is set to 0.
    """
    r = check_rotation(r)
    if convention == "xzx":
        c = r[0, 0]
        if c >= 1 - ZERO_TOL:
            return math.atan2(r[2, 1], r[2, 2]), 0.0, 0.0
        if c <= -1 + ZERO_TOL:
            # with a2 = π only a1 - a3 = atan2(-r32, r33) is fixed
            return math.atan2(-r[2, 1], r[2, 2]), math.pi, 0.0
        return math.atan2(r[2, 0], r[1, 0]), math.acos(c), math.atan2(r[0, 2], -r[0, 1])
    if convention == "zxz":
        c = r[2, 2]
        if c >= 1 - ZERO_TOL:
            return math.atan2(-r[0, 1], r[0, 0]), 0.0, 0.0
        if c <= -1 + ZERO_TOL:
            # with a2 = π only a1 - a3 = atan2(r12, r11) is fixed
            return math.atan2(r[0, 1], r[0, 0]), math.pi, 0.0
        return math.atan2(r[0, 2], -r[1, 2]), math.acos(c), math.atan2(r[2, 0], r[2, 1])
    raise ValueError(f"unknown convention {convention!r}")


def zxz_matrix(a1: float, a2: float, a3: float) -> np.ndarray:
    return rot_z(a1) @ rot_x(a2) @ rot_z(a3)


def xzx_matrix(a1: float, a2: float, a3: float) -> np.ndarray:
    return rot_x(a1) @ rot_z(a2) @ rot_x(a3)


def zxz_to_xzx(g1: float, g2: float, g3: float) -> tuple[float, float, float]:
    return euler_so3(zxz_matrix(g1, g2, g3), "xzx")


# ---------------------------------------------------------------------------
# π-normalised split


def split_residual(alpha1: float, alpha2: float, alpha3: float, x: float) -> float:
    """N(x) = sin α1 cos x cos α3 + cos α1 sin α3 cos(α2 − x)."""
    return math.sin(alpha1) * math.cos(x) * math.cos(alpha3) + math.cos(alpha1) * math.sin(
        alpha3
    ) * math.cos(alpha2 - x)


def pi_split(alpha1: float, alpha2: float, alpha3: float, max_iter: int = 200) -> float:
    """Root of N on [−π/2, π/2] by bisection."""
    a = math.sin(alpha1) * math.cos(alpha3)
    b = math.cos(alpha1) * math.sin(alpha3)
    # N(x) = (a + b cos α2) cos x + b sin α2 sin x
    if abs(a + b * math.cos(alpha2)) <= ZERO_TOL and abs(b * math.sin(alpha2)) <= ZERO_TOL:
        return 0.0
    f = lambda x: split_residual(alpha1, alpha2, alpha3, x)  # noqa: E731
    lo, hi = -math.pi / 2, math.pi / 2
    flo = f(lo)
    if flo == 0:
        return lo
    if f(hi) == 0:
        return hi
    for _ in range(max_iter):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo if abs(f(lo)) <= abs(f(hi)) else hi


# ---------------------------------------------------------------------------
# Two-level synthesis


def two_level_euler(u2: np.ndarray, tol: float = 1e-9) -> tuple[float, float, float, float]:
    """(θ, α, β, γ) with U = e^{iθ} Z(α) H Z(β) H Z(γ), Z(x) = diag(1, e^{ix})."""
    u2 = np.asarray(u2, dtype=complex)
    if u2.shape != (2, 2) or np.max(np.abs(u2.conj().T @ u2 - np.eye(2))) > tol:
        raise NotUnitary("expected a 2x2 unitary")
    # H Z(β) H = e^{iβ/2} [[c, -is], [-is, c]] with c = cos(β/2), s = sin(β/2)
    c = min(1.0, abs(u2[0, 0]))
    half = math.acos(c)
    s = math.sin(half)
    if s <= ZERO_TOL:
        phi = cmath.phase(u2[0, 0])
        alpha, gamma = cmath.phase(u2[1, 1]) - phi, 0.0
    elif c <= ZERO_TOL:
        gamma = 0.0
        phi = cmath.phase(u2[0, 1]) + math.pi / 2
        alpha = cmath.phase(u2[1, 0]) + math.pi / 2 - phi
    else:
        phi = cmath.phase(u2[0, 0])
        alpha = cmath.phase(u2[1, 0]) + math.pi / 2 - phi
        gamma = cmath.phase(u2[0, 1]) + math.pi / 2 - phi
    beta = 2 * half
    return phi - half, alpha, beta, gamma


def two_level_circuit(u2: np.ndarray, d: int, i: int, j: int) -> Term:
    """One-wire circuit acting as U2 on span{|i>, |j>} (ordered basis), identity elsewhere."""
    if i == j or not (0 <= i < d and 0 <= j < d):
        raise IndexOutOfRange(f"levels ({i}, {j}) invalid for d={d}")
    theta, alpha, beta, gamma = two_level_euler(u2)
    h = h_gate(d, i, j)
    return compose(
        [
            level_phase(i, theta),
            level_phase(j, theta),
            level_phase(j, alpha),
            h,
            level_phase(j, beta),
            h,
            level_phase(j, gamma),
        ]
    )


def synth_two_level(u2: np.ndarray, d: int, r: int) -> Term:
    """One-wire circuit acting as U2 on span{|r>, |r+1>} and as identity elsewhere."""
    if not 0 <= r <= d - 2:
        raise IndexOutOfRange(f"level {r} outside [0, {d - 2}]")
    return two_level_circuit(u2, d, r, r + 1)
