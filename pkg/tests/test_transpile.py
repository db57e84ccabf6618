import math
import random

import numpy as np
import pytest

from qudit_lopp import gray
from qudit_lopp.errors import ArityMismatch, DimensionCap, OffsetOutOfRange
from qudit_lopp.ir import SWAP, WIRE, Ctrl, GlobalPhase, Hadamard, Par, id_circuit
from qudit_lopp.lopp import BeamSplitter, Phase, graylift_jams, id_modes
from qudit_lopp.sampling import random_circuit
from qudit_lopp.semantics import interp_lopp_gray, interp_lopp_sp, interp_qudit, support_indices
from qudit_lopp.transpile import (
    DecodingContext,
    EncodingContext,
    decode,
    encode,
    gray_support,
    lambda_wrap,
)


def test_encode_identity_and_phase():
    assert encode(EncodingContext(3, 1, 0), id_circuit(1)) == id_modes(9)
    t = encode(EncodingContext(2, 1, 1), GlobalPhase(0.4))
    assert np.allclose(interp_lopp_sp(t), np.exp(0.4j) * np.eye(4))


def test_encode_cap():
    with pytest.raises(DimensionCap):
        encode(EncodingContext(3, 4, 4), WIRE)


@pytest.mark.parametrize("d,n", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_encode_semantics(d, n):
    rng = random.Random(f"enc:{d}:{n}")
    for _ in range(15):
        c = random_circuit(rng, d, n, 5)
        u = interp_lopp_gray(encode(EncodingContext(d), c), d, n)
        assert np.allclose(u, interp_qudit(c, d), atol=1e-9)


def test_decode_identity_and_phase():
    assert decode(DecodingContext(3, 2), id_modes(9)) == id_circuit(2)
    assert decode(DecodingContext(3, 2, 0), Phase(0.7)) == Ctrl(0, Ctrl(0, GlobalPhase(0.7)))
    with pytest.raises(OffsetOutOfRange):
        decode(DecodingContext(3, 2, 8), BeamSplitter(0.1))


def test_decode_beam_splitter_support():
    t = decode(DecodingContext(3, 2, 2), BeamSplitter(0.3))
    assert support_indices(interp_qudit(t, 3)) == {2, 5}
    assert gray_support(3, 2, 2, 2) == {2, 5}


def test_decode_swap_single_digit():
    t = decode(DecodingContext(3, 1, 0), SWAP)
    p = np.eye(3)
    p[[0, 1]] = p[[1, 0]]
    assert np.allclose(interp_qudit(t, 3), p)


def test_lambda_wrap():
    g = Hadamard(0)
    assert lambda_wrap((), (), g) == g
    u = interp_qudit(lambda_wrap((1,), (2,), g), 3)
    allowed = {1 * 9 + a * 3 + 2 for a in range(3)}
    assert support_indices(u) <= allowed
    with pytest.raises(ArityMismatch):
        lambda_wrap((), (), SWAP)


def test_jams_decodes_to_control():
    d, n = 2, 1
    c = BeamSplitter(0.9)
    lifted = graylift_jams(d, 1, 1, c)
    dec = interp_qudit(decode(DecodingContext(d, 3), lifted), d)
    inner = interp_qudit(decode(DecodingContext(d, n), c), d)
    ctrl = np.eye(d * d**n, dtype=complex)
    ctrl[d**n:, d**n:] = inner
    assert np.allclose(dec, np.kron(np.eye(d), ctrl))


@pytest.mark.parametrize("d,a,b", [(2, 1, 0), (2, 0, 1), (3, 1, 0)])
def test_retraction_small(d, a, b):
    rng = random.Random(f"ret:{d}:{a}:{b}")
    for _ in range(10):
        c = random_circuit(rng, d, 1, 4)
        dec = decode(DecodingContext(d, a + 1 + b), encode(EncodingContext(d, a, b), c))
        want = np.kron(np.kron(np.eye(d**a), interp_qudit(c, d)), np.eye(d**b))
        assert np.allclose(interp_qudit(dec, d, check=False), want, atol=1e-9)


def test_gray_support_matches_words():
    s = gray_support(3, 2, 3, 3)
    assert s == {gray.lex_index(3, w) for w in [(1, 2), (1, 1), (1, 0)]}
    assert math.isclose(len(s), 3)
