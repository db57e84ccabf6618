import cmath
import math
import random

import numpy as np
import pytest

from qudit_lopp.errors import DimensionCap, DimMismatch, IndexOutOfRange, ModeCountNotPower
from qudit_lopp.ir import SWAP, WIRE, Ctrl, GlobalPhase, Hadamard, Par, Seq, id_circuit
from qudit_lopp.lopp import BeamSplitter, Phase
from qudit_lopp.sampling import random_circuit
from qudit_lopp.semantics import (
    controlled_extension,
    dump_matrix,
    expi,
    interp_lopp_gray,
    interp_lopp_sp,
    interp_qudit,
    is_unitary,
    load_matrix,
    residual,
    support_indices,
    swap_matrix,
    unitary_equal,
)


def test_generator_clauses():
    assert interp_qudit(GlobalPhase(0.0), 3)[0, 0] == 1
    h = interp_qudit(Hadamard(1), 3)
    s = 1 / math.sqrt(2)
    assert np.allclose(h[:, 0], [1, 0, 0])
    assert np.allclose(h[:, 1], [0, s, s])
    assert np.allclose(interp_qudit(SWAP, 3), swap_matrix(3))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cz_exact(d):
    u = interp_qudit(Ctrl(0, Ctrl(0, GlobalPhase(math.pi))), d)
    want = np.eye(d * d, dtype=complex)
    want[0, 0] = -1
    assert np.array_equal(u, want)
    assert support_indices(u) == {0}


def test_expi_exact_quarters():
    assert expi(math.pi) == -1
    assert expi(math.pi / 2) == 1j
    assert expi(-math.pi / 2) == -1j
    assert expi(2 * math.pi) == 1
    assert abs(expi(0.3) - cmath.exp(0.3j)) < 1e-15


def test_controlled_extension():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    cnot = controlled_extension(1, x, 2)
    assert np.array_equal(cnot, np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]))
    assert np.array_equal(controlled_extension(2, np.eye(3), 3), np.eye(9))
    with pytest.raises(IndexOutOfRange):
        controlled_extension(3, np.eye(3), 3)


@pytest.mark.parametrize("d", [2, 3])
def test_functoriality(d):
    rng = random.Random(d)
    for _ in range(30):
        n = rng.randint(1, 2)
        f, g = random_circuit(rng, d, n, 3), random_circuit(rng, d, n, 3)
        assert np.allclose(interp_qudit(Seq(f, g), d), interp_qudit(f, d) @ interp_qudit(g, d))
        assert np.allclose(interp_qudit(Par(f, g), d), np.kron(interp_qudit(f, d), interp_qudit(g, d)))
        assert is_unitary(interp_qudit(f, d))


def test_dimension_cap():
    with pytest.raises(DimensionCap):
        interp_qudit(id_circuit(7), 3)
    assert interp_qudit(id_circuit(7), 3, cap=3**7).shape == (3**7, 3**7)


def test_lopp_sp_examples():
    s = 1 / math.sqrt(2)
    assert np.allclose(interp_lopp_sp(BeamSplitter(math.pi / 4)), [[s, 1j * s], [1j * s, s]])
    a, b = 0.3, -1.2
    assert np.allclose(interp_lopp_sp(Par(Phase(a), Phase(b))), np.diag([cmath.exp(1j * a), cmath.exp(1j * b)]))
    assert interp_lopp_sp(Phase(2 * math.pi))[0, 0] == 1
    assert np.array_equal(interp_lopp_sp(SWAP), [[0, 1], [1, 0]])


def test_lopp_seq_order():
    # Seq(f, g): g first
    f, g = BeamSplitter(0.4), Par(Phase(0.9), WIRE)
    assert np.allclose(interp_lopp_sp(Seq(f, g)), interp_lopp_sp(f) @ interp_lopp_sp(g))


def test_lopp_gray_examples():
    assert np.allclose(interp_lopp_gray(id_circuit(9), 3, 2), np.eye(9))
    bs = Par(BeamSplitter(0.7), WIRE)
    assert np.allclose(interp_lopp_gray(bs, 3, 1), interp_lopp_sp(bs))
    t = 0.8
    c = Par(id_circuit(3), Phase(t))  # mode 3 carries Gray word 10
    u = interp_lopp_gray(c, 2, 2)
    assert abs(u[2, 2] - cmath.exp(1j * t)) < 1e-15
    assert support_indices(u) == {2}
    with pytest.raises(ModeCountNotPower):
        interp_lopp_gray(id_circuit(5), 2)


def test_unitary_equal():
    u = interp_qudit(Hadamard(0), 3)
    assert unitary_equal(u, u) == (True, 0.0)
    ok, r = unitary_equal(u, cmath.exp(1j * math.pi / 7) * u)
    assert not ok and r > 0.1
    r1 = residual(u, u + 1e-6)
    r2 = residual(u, u + 1e-3)
    assert r1 < r2
    with pytest.raises(DimMismatch):
        residual(u, np.eye(2))


def test_support():
    assert support_indices(np.eye(4)) == set()


def test_dump_roundtrip():
    u = interp_qudit(Ctrl(1, Hadamard(0)), 2)
    text = dump_matrix(u)
    assert text.startswith("dim 4\n")
    assert np.array_equal(load_matrix(text), u)
    body = "\n".join(text.splitlines()[1:])
    assert np.array_equal(load_matrix(body), u)
