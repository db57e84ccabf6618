"""Seeded random circuits for the property suites."""

from __future__ import annotations

import math
import random

import numpy as np

from .ir import SWAP, WIRE, Ctrl, GlobalPhase, Hadamard, Par, Seq, Term
from .lopp import BeamSplitter, Phase

_SPECIAL = (0.0, math.pi / 2, math.pi, -math.pi / 2, 2 * math.pi)


def random_angle(rng: random.Random) -> float:
    if rng.random() < 0.15:
        return rng.choice(_SPECIAL)
    return rng.uniform(-2 * math.pi, 2 * math.pi)


def random_circuit(rng: random.Random, d: int, n: int, depth: int) -> Term:
    """Raw qudit circuit on n wires with at most ``depth`` nested constructors."""
    if depth <= 0 or rng.random() < 0.2:
        return _leaf(rng, d, n)
    r = rng.random()
    if r < 0.4:
        return Seq(random_circuit(rng, d, n, depth - 1), random_circuit(rng, d, n, depth - 1))
    if r < 0.7 and n >= 1:
        k = rng.randint(0, n)
        return Par(random_circuit(rng, d, k, depth - 1), random_circuit(rng, d, n - k, depth - 1))
    if n >= 1:
        return Ctrl(rng.randrange(d), random_circuit(rng, d, n - 1, depth - 1))
    return GlobalPhase(random_angle(rng))


def _leaf(rng: random.Random, d: int, n: int) -> Term:
    if n == 0:
        return GlobalPhase(random_angle(rng))
    if n == 1:
        r = rng.random()
        if r < 0.6:
            return Hadamard(rng.randrange(d - 1))
        if r < 0.8:
            return Ctrl(rng.randrange(d), GlobalPhase(random_angle(rng)))
        return WIRE
    if n == 2 and rng.random() < 0.3:
        return SWAP
    return Ctrl(rng.randrange(d), _leaf(rng, d, n - 1))


def random_lopp(rng: random.Random, m: int, depth: int) -> Term:
    """Random linear-optical circuit on m modes."""
    if depth <= 0 or rng.random() < 0.2:
        if m == 1:
            return Phase(random_angle(rng))
        if m == 2:
            r = rng.random()
            return BeamSplitter(random_angle(rng)) if r < 0.6 else (SWAP if r < 0.8 else Par(Phase(random_angle(rng)), WIRE))
        k = rng.randint(1, m - 1)
        return Par(random_lopp(rng, k, 0), random_lopp(rng, m - k, 0))
    if rng.random() < 0.5 or m == 1:
        return Seq(random_lopp(rng, m, depth - 1), random_lopp(rng, m, depth - 1))
    k = rng.randint(1, m - 1)
    return Par(random_lopp(rng, k, depth - 1), random_lopp(rng, m - k, depth - 1))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
