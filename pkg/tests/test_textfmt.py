import math
import random
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qudit_lopp.errors import ArityMismatch, CircuitSyntaxError
from qudit_lopp.ir import SWAP, WIRE, Ctrl, GlobalPhase, Hadamard, Par, id_circuit, validate
from qudit_lopp.lopp import BeamSplitter, Phase, validate_lopp
from qudit_lopp.sampling import random_circuit, random_lopp
from qudit_lopp.semantics import interp_qudit
from qudit_lopp.textfmt import looks_like_lopp, parse, parse_angle, to_text
from qudit_lopp.transpile import DecodingContext, EncodingContext, decode, encode

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"


def test_parse_examples():
    assert parse("(ctrl 1 (H 0))") == Ctrl(1, Hadamard(0))
    assert parse("(ph pi/2)") == GlobalPhase(1.5707963267948966)
    with pytest.raises(ArityMismatch) as e:
        validate(parse("(seq wire swap)"), 2)
    assert e.value.path == "seq.right"


@pytest.mark.parametrize("text,value", [
    ("pi", math.pi), ("-pi/4", -math.pi / 4), ("3pi/2", 3 * math.pi / 2),
    ("3*pi/2", 3 * math.pi / 2), ("0.25", 0.25), ("-1e-3", -1e-3),
])
def test_angles(text, value):
    assert parse_angle(text) == value


@pytest.mark.parametrize("text", ["pie", "1/2", "nan", "inf", "--1"])
def test_bad_angles(text):
    with pytest.raises(ValueError):
        parse_angle(text)


@pytest.mark.parametrize("text,pos", [
    ("(H 0", "1:1"),
    ("(seq wire)", "1:1"),
    ("wire)", "1:5"),
    ("(foo 1)", "1:2"),
    ("(par wire\n  (ph x))", "2:7"),
    ("wire wire", "1:6"),
])
def test_syntax_errors_have_positions(text, pos):
    with pytest.raises(CircuitSyntaxError) as e:
        parse(text)
    assert str(e.value).startswith(pos), str(e.value)


def test_comments_and_id():
    t = parse("; header\n(par (id 2) ; two wires\n wire)")
    assert t == Par(id_circuit(2), WIRE)
    assert to_text(id_circuit(3)) == "(id 3)"


def test_lopp_grammar():
    t = parse("(par (bs 0.5) (ps -pi))", "lopp")
    assert t == Par(BeamSplitter(0.5), Phase(-math.pi))
    assert looks_like_lopp("(bs 1)") and not looks_like_lopp("(H 0)")
    with pytest.raises(CircuitSyntaxError):
        parse("(H 0)", "lopp")


def test_print_parse_roundtrip_random():
    rng = random.Random(11)
    for _ in range(100):
        t = random_circuit(rng, 3, rng.randint(0, 3), 6)
        text = to_text(t)
        assert parse(text) == t
        assert to_text(parse(text)) == text
    for _ in range(50):
        t = random_lopp(rng, rng.randint(1, 5), 4)
        assert parse(to_text(t), "lopp") == t


def test_deep_terms_do_not_recurse():
    deep = "(seq " * 3000 + "wire" + " wire)" * 3000
    t = parse(deep)
    assert t.arity == 1
    assert parse(to_text(t)) == t


def test_swap_atom():
    assert parse("swap") == SWAP


@pytest.mark.parametrize("path", sorted(EXAMPLES.glob("*.qc")), ids=lambda p: p.name)
def test_docs_examples(path):
    text = path.read_text()
    t = parse(text)
    validate(t, 3)
    assert parse(to_text(t)) == t
    n = t.arity
    dec = decode(DecodingContext(3, n), encode(EncodingContext(3), t))
    assert np.allclose(interp_qudit(dec, 3, check=False), interp_qudit(t, 3), atol=1e-9)


@pytest.mark.parametrize("path", sorted(EXAMPLES.glob("*.lopp")), ids=lambda p: p.name)
def test_docs_lopp_examples(path):
    t = parse(path.read_text(), "lopp")
    validate_lopp(t)
    assert parse(to_text(t), "lopp") == t


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_angle_print_roundtrip(x):
    t = GlobalPhase(x)
    assert parse(to_text(t)) == t
