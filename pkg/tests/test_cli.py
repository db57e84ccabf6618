import io
import subprocess
import sys

import numpy as np
import pytest

from qudit_lopp.cli import main
from qudit_lopp.semantics import interp_qudit, load_matrix
from qudit_lopp.textfmt import parse


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def circ(tmp_path):
    def write(text, name="c.qc"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_eval(circ):
    code, out, _ = run("eval", "-d", "3", circ("(ctrl 0 (ctrl 0 (ph pi)))"))
    assert code == 0
    u = load_matrix(out)
    assert u[0, 0] == -1 and np.array_equal(u[1:, 1:], np.eye(8))


def test_eval_cap(circ):
    code, _, err = run("eval", "-d", "3", "--cap", "8", circ("(id 2)"))
    assert code == 3 and "error" in err


def test_roundtrip_hadamard(circ):
    code, out, _ = run("roundtrip", "-d", "2", circ("(H 0)"))
    assert code == 0 and out.endswith("PASS\n")


def test_encode_decode(circ, tmp_path):
    code, out, _ = run("encode", "-d", "2", "-a", "1", circ("(ctrl 1 (H 0))"))
    assert code == 0
    lopp = tmp_path / "e.lopp"
    lopp.write_text(out)
    code, out, _ = run("decode", "-d", "2", "-n", "3", str(lopp))
    assert code == 0
    want = np.kron(np.eye(2), interp_qudit(parse("(ctrl 1 (H 0))"), 2))
    assert np.allclose(interp_qudit(parse(out), 2), want)


def test_equiv(circ):
    a = circ("(seq (H 0) (H 0))", "a.qc")
    b = circ("wire", "b.qc")
    c = circ("(H 0)", "c.qc")
    assert run("equiv", "-d", "3", a, a)[0] == 0
    assert run("equiv", "-d", "3", a, b)[0] == 0
    assert run("equiv", "-d", "3", a, c)[0] == 1
    assert run("equiv", "-d", "3", a, circ("swap", "s.qc"))[0] == 1


def test_normalize(circ):
    code, out, _ = run("normalize", "-d", "3", "--check", circ("(ctrl 1 (par (H 0) (H 1)))"))
    assert code == 0
    assert "layer_form=yes" in out


def test_axioms_lopp():
    code, out, _ = run("axioms", "-d", "3", "--theory", "lopp")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert all(line.endswith(" PASS") and "instances=200" in line for line in lines)


def test_axioms_deterministic():
    a = run("axioms", "-d", "2", "--theory", "qc", "--samples", "3", "--seed", "4")
    b = run("axioms", "-d", "2", "--theory", "qc", "--samples", "3", "--seed", "4")
    assert a == b and a[0] == 0
    assert "HHd d=2 instances=0 max_residual=nan SKIP" in a[1]


def test_synth1q(tmp_path):
    m = tmp_path / "m.txt"
    s = 2 ** -0.5
    m.write_text(f"dim 2\n{s} 0\n{s} 0\n{s} 0\n{-s} 0\n")
    code, out, _ = run("synth1q", "-d", "3", "-r", "1", "--matrix", str(m))
    assert code == 0
    assert np.allclose(interp_qudit(parse(out), 3), interp_qudit(parse("(H 1)"), 3))


@pytest.mark.parametrize("argv", [
    ("frobnicate",),
    ("eval",),
    ("eval", "-d", "1", "x"),
    ("axioms", "-d", "3", "--theory", "zx"),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_parse_and_validation_errors(circ):
    code, _, err = run("eval", "-d", "3", circ("(seq wire swap)"))
    assert code == 2 and "seq.right" in err
    code, _, err = run("eval", "-d", "3", circ("(H 0"))
    assert code == 2 and "1:1" in err
    assert run("eval", "-d", "3", "/nonexistent/file.qc")[0] == 2


def test_module_entry(circ):
    p = subprocess.run(
        [sys.executable, "-m", "qudit_lopp", "equiv", "-d", "2", circ("(H 0)"), circ("(H 0)", "d.qc")],
        capture_output=True, text=True,
    )
    assert p.returncode == 0 and p.stdout.startswith("equal")
