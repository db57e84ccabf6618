import math
import random

import numpy as np
import pytest

from qudit_lopp.errors import ArityMismatch, IndexOutOfRange, MissingAngle
from qudit_lopp.ir import (
    EMPTY,
    SWAP,
    WIRE,
    Ctrl,
    GlobalPhase,
    Hadamard,
    Par,
    Seq,
    block_swap_term,
    derived_gate,
    expand_box,
    id_circuit,
    iterated_control,
    recompute_arity,
    validate,
)
from qudit_lopp.sampling import random_circuit
from qudit_lopp.semantics import block_swap_matrix, hadamard_matrix, interp_qudit


def test_validate_examples():
    assert validate(Ctrl(1, Hadamard(0)), 3) == 2
    with pytest.raises(ArityMismatch) as e:
        validate(Seq(WIRE, SWAP), 3)
    assert e.value.path == "seq.right"
    with pytest.raises(IndexOutOfRange):
        validate(Hadamard(2), 3)
    with pytest.raises(IndexOutOfRange):
        validate(Ctrl(3, WIRE), 3)


def test_validate_nested_path():
    bad = Par(WIRE, Ctrl(0, Seq(WIRE, SWAP)))
    with pytest.raises(ArityMismatch) as e:
        validate(bad, 2)
    assert e.value.path == "par.bottom.ctrl.body.seq.right"


def test_leaf_arities():
    assert [t.arity for t in (EMPTY, WIRE, SWAP, Hadamard(0), GlobalPhase(1.0))] == [0, 1, 2, 1, 0]
    assert Par(SWAP, WIRE).arity == 3
    assert Ctrl(0, SWAP).arity == 3


def test_structural_equality_and_hash():
    a = Seq(Hadamard(0), Ctrl(1, GlobalPhase(0.5)))
    b = Seq(Hadamard(0), Ctrl(1, GlobalPhase(0.5)))
    assert a == b and hash(a) == hash(b)
    assert a != Seq(Hadamard(0), Ctrl(1, GlobalPhase(0.25)))


def test_arity_recomputable_on_random_terms():
    rng = random.Random(7)
    for _ in range(200):
        t = random_circuit(rng, 3, rng.randint(0, 3), 8)
        assert recompute_arity(t) == t.arity


def test_block_swap_examples():
    assert block_swap_term(0, 5) == id_circuit(5)
    assert block_swap_term(1, 1) == SWAP
    assert block_swap_term(2, 1) == Seq(Par(SWAP, WIRE), Par(WIRE, SWAP))


@pytest.mark.parametrize("d", [2, 3])
def test_block_swap_semantics(d):
    for m in range(5):
        for n in range(5 - m):
            u = interp_qudit(block_swap_term(m, n), d)
            assert np.allclose(u, block_swap_matrix(d, m, n))


def test_iterated_control():
    f = Hadamard(0)
    assert iterated_control([], f) == f
    assert iterated_control([2, 0], f) == Ctrl(2, Ctrl(0, f))
    t = iterated_control([1], GlobalPhase(0.3))
    assert t == Ctrl(1, GlobalPhase(0.3)) and t.arity == 1
    assert iterated_control([1, 2, 0], f) == iterated_control([1], iterated_control([2, 0], f))
    with pytest.raises(IndexOutOfRange):
        iterated_control([3], f, d=3)


def test_id_circuit_shape():
    assert id_circuit(0) == EMPTY
    assert id_circuit(1) == WIRE
    assert id_circuit(3) == Par(Par(WIRE, WIRE), WIRE)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_x_gate_is_transposition(d):
    for i in range(d):
        for j in range(d):
            u = interp_qudit(derived_gate("X", d, i, j), d)
            p = np.eye(d)
            p[[i, j]] = p[[j, i]]
            assert np.allclose(u, p)
    assert derived_gate("X", d, 1, 1) == WIRE


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_h_gate_two_level(d):
    s = 1 / math.sqrt(2)
    for i in range(d):
        for j in range(d):
            if i == j:
                assert derived_gate("H", d, i, j) == WIRE
                continue
            u = interp_qudit(derived_gate("H", d, i, j), d)
            want = np.eye(d, dtype=complex)
            want[i, i], want[i, j], want[j, i], want[j, j] = s, s, s, -s
            assert np.allclose(u, want)


def test_rx_gate_block():
    t = 0.37
    u = interp_qudit(derived_gate("Rx", 2, 0, 1, t), 2)
    want = np.array([[math.cos(t), 1j * math.sin(t)], [1j * math.sin(t), math.cos(t)]])
    assert np.allclose(u, want)
    with pytest.raises(MissingAngle):
        derived_gate("Rx", 2, 0, 1)
    with pytest.raises(IndexOutOfRange):
        derived_gate("X", 3, 0, 3)


def test_hadamard_adjacent_is_generator():
    assert derived_gate("H", 4, 2, 3) == Hadamard(2)
    assert np.allclose(interp_qudit(Hadamard(2), 4), hadamard_matrix(4, 2))


def test_expand_box():
    body = lambda k: Ctrl(k, GlobalPhase(math.pi))  # noqa: E731
    box = expand_box(body, 3)
    # increasing k: ctrl_0 acts first
    assert box == Seq(body(2), Seq(body(1), body(0)))
    assert np.allclose(interp_qudit(box, 3), -np.eye(3))
    assert expand_box(lambda k: Hadamard(0), 3, lambda k: False) == WIRE
    two = expand_box(body, 3, lambda k: k != 0)
    assert np.allclose(np.diag(interp_qudit(two, 3)), [1, -1, -1])
    with pytest.raises(ArityMismatch):
        expand_box(lambda k: WIRE if k == 0 else SWAP, 2)


def test_expand_box_order():
    # non-commuting factors reveal the order: X_{01} then H_0 is not H_0 then X_{01}
    d = 3
    body = lambda k: [derived_gate("X", d, 0, 1), Hadamard(0)][k]  # noqa: E731
    box = expand_box(body, d, lambda k: k < 2)
    want = interp_qudit(Hadamard(0), d) @ interp_qudit(derived_gate("X", d, 0, 1), d)
    assert np.allclose(interp_qudit(box, d), want)
