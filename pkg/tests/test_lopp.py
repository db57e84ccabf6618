import itertools
import math
import random

import numpy as np
import pytest

from qudit_lopp import gray
from qudit_lopp.errors import IndexOutOfRange, InvalidWord, ModeCountNotPower
from qudit_lopp.ir import SWAP, WIRE, Hadamard, Par, id_circuit
from qudit_lopp.lopp import (
    BeamSplitter,
    Phase,
    graylift_ams,
    graylift_jams,
    hadamard_bs,
    hadamard_network,
    mirror,
    mode_block_swap,
    reversal,
    saturated_word_swap,
    validate_lopp,
    word_swap,
)
from qudit_lopp.sampling import random_lopp
from qudit_lopp.semantics import block_swap_matrix, interp_lopp_gray, interp_lopp_sp, interp_qudit, swap_matrix


def test_validate_lopp():
    assert validate_lopp(Par(BeamSplitter(0.1), Phase(0.2))) == 3
    with pytest.raises(Exception):
        validate_lopp(Hadamard(0))


def test_reversal_and_mirror():
    rng = random.Random(0)
    for m in (1, 2, 3, 4, 9):
        r = np.eye(m)[::-1]
        assert np.allclose(interp_lopp_sp(reversal(m)), r)
        c = random_lopp(rng, m, 3)
        assert mirror(2, c) is c
        assert np.allclose(interp_lopp_sp(mirror(1, c)), r @ interp_lopp_sp(c) @ r)
        assert np.allclose(interp_lopp_sp(mirror(1, mirror(1, c))), interp_lopp_sp(c))


def test_ams_shapes():
    c = BeamSplitter(0.3)
    assert graylift_ams(2, 0, c) == c
    assert graylift_ams(2, 1, c) == Par(c, mirror(1, c))
    t = graylift_ams(3, 1, Par(c, WIRE))
    assert t.arity == 9
    with pytest.raises(ModeCountNotPower):
        graylift_ams(3, 1, c)


def test_jams_shapes():
    c = Par(BeamSplitter(0.3), WIRE)
    blank = id_circuit(3)
    t = graylift_jams(3, 1, 0, c)
    assert np.allclose(
        interp_lopp_sp(t),
        interp_lopp_sp(Par(Par(blank, mirror(1, c)), blank)),
    )
    assert np.allclose(interp_lopp_sp(graylift_jams(2, 0, 0, BeamSplitter(0.2))), interp_lopp_sp(Par(BeamSplitter(0.2), id_circuit(2))))
    with pytest.raises(IndexOutOfRange):
        graylift_jams(2, 2, 0, BeamSplitter(0.2))


def test_hadamard_network():
    s = 1 / math.sqrt(2)
    assert np.allclose(interp_lopp_sp(hadamard_bs()), [[s, s], [s, -s]])
    u = interp_lopp_sp(hadamard_network(3, 1))
    assert np.allclose(u[0], [1, 0, 0]) and np.allclose(u[1:, 1:], [[s, s], [s, -s]])
    for d in range(2, 6):
        for i in range(d - 1):
            assert np.allclose(interp_lopp_sp(hadamard_network(d, i)), interp_qudit(Hadamard(i), d))
    with pytest.raises(IndexOutOfRange):
        hadamard_network(3, 2)


def transposition(d, n, w1, w2):
    p = np.eye(d**n)
    a, b = gray.lex_index(d, w1), gray.lex_index(d, w2)
    p[[a, b]] = p[[b, a]]
    return p


@pytest.mark.parametrize("d,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2)])
def test_word_swap_all_pairs(d, n):
    ws = list(itertools.product(range(d), repeat=n))
    for w1, w2 in itertools.combinations(ws, 2):
        u = interp_lopp_gray(word_swap(d, w1, w2), d, n)
        assert np.array_equal(u, transposition(d, n, w1, w2))


def test_word_swap_base_and_errors():
    assert word_swap(2, (0,), (1,)) == SWAP
    with pytest.raises(InvalidWord):
        word_swap(2, (0,), (0,))
    with pytest.raises(InvalidWord):
        word_swap(2, (0,), (0, 1))
    with pytest.raises(InvalidWord):
        word_swap(2, (0,), (2,))


@pytest.mark.parametrize("d", [2, 3])
def test_saturated_word_swap(d):
    for k, l in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        u = interp_lopp_gray(saturated_word_swap(d, k, l, (0, 1), (1, 0)), d, k + 2 + l)
        want = np.kron(np.kron(np.eye(d**k), transposition(d, 2, (0, 1), (1, 0))), np.eye(d**l))
        assert np.array_equal(u, want)


def test_saturated_range_d2():
    t = saturated_word_swap(2, 1, 0, (0, 1), (1, 0))
    parts = [word_swap(2, (b, 0, 1), (b, 1, 0)) for b in range(2)]
    assert np.array_equal(interp_lopp_sp(t), interp_lopp_sp(parts[0]) @ interp_lopp_sp(parts[1]))


@pytest.mark.parametrize("d", [2, 3])
def test_mode_block_swap(d):
    for a, b, c in itertools.product(range(3), repeat=3):
        if a + b + c > 3:
            continue
        u = interp_lopp_gray(mode_block_swap(d, a, b, c), d, a + b + c)
        assert np.array_equal(u, np.kron(np.eye(d**a), block_swap_matrix(d, b, c)))
    assert np.allclose(interp_lopp_gray(mode_block_swap(2, 0, 1, 1), 2, 2), swap_matrix(2))
