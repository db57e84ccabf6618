"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage / parse / validation error,
3 dimension cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np

from . import axioms, normalize, semantics, textfmt, transpile
from .errors import CircuitSyntaxError, DimensionCap, QuditError
from .ir import validate
from .lopp import validate_lopp

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
THEORIES = ("qc", "qc-derived", "lopp")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 already; keep the message format
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dim(s: str) -> int:
    d = int(s)
    if d < 2:
        raise argparse.ArgumentTypeError("dimension must be >= 2")
    return d


def _nonneg(s: str) -> int:
    n = int(s)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qudit-lopp", description="Qudit circuits, their axioms and the Gray-code optical encoding.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name: str, help: str, lopp_flag: bool = False) -> argparse.ArgumentParser:
        c = sub.add_parser(name, help=help)
        c.add_argument("-d", type=_dim, required=True, help="qudit dimension")
        if lopp_flag:
            c.add_argument("--lopp", action="store_true", help="read linear-optical circuits")
        return c

    c = cmd("eval", "print the unitary of a circuit", lopp_flag=True)
    c.add_argument("file")
    c.add_argument("--cap", type=int, default=semantics.DEFAULT_CAP, help="maximum matrix dimension")

    c = cmd("encode", "encode a qudit circuit as a linear-optical circuit")
    c.add_argument("-a", type=_nonneg, default=0, help="context qudits above")
    c.add_argument("-b", type=_nonneg, default=0, help="context qudits below")
    c.add_argument("file")

    c = cmd("decode", "decode a linear-optical circuit into a qudit circuit")
    c.add_argument("-n", type=_nonneg, required=True, help="number of qudits")
    c.add_argument("-t", type=_nonneg, default=0, help="global mode offset")
    c.add_argument("file")

    c = cmd("roundtrip", "check decode(encode(C)) = id_a ⊗ C ⊗ id_b semantically")
    c.add_argument("-a", type=_nonneg, default=0)
    c.add_argument("-b", type=_nonneg, default=0)
    c.add_argument("--tol", type=float, default=semantics.DEFAULT_TOL)
    c.add_argument("file")

    c = cmd("normalize", "separate a circuit into controlled layers")
    c.add_argument("--tol", type=float, default=semantics.DEFAULT_TOL)
    c.add_argument("--check", action="store_true", help="also verify semantics and layer form")
    c.add_argument("file")

    c = cmd("axioms", "run the axiom soundness harness")
    c.add_argument("--theory", choices=THEORIES + ("all",), default="all")
    c.add_argument("--samples", type=_nonneg, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=semantics.DEFAULT_TOL)

    c = cmd("equiv", "decide equality of two circuits by their unitaries", lopp_flag=True)
    c.add_argument("file1")
    c.add_argument("file2")
    c.add_argument("--tol", type=float, default=semantics.DEFAULT_TOL)

    c = cmd("synth1q", "synthesise a 2x2 unitary on levels (r, r+1)")
    c.add_argument("-r", type=_nonneg, required=True)
    c.add_argument("--matrix", required=True, help="2x2 matrix in the dump format")
    c.add_argument("--tol", type=float, default=semantics.DEFAULT_TOL)
    return p


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()


def _load(path: str, d: int, lopp: bool = False):
    text = _read(path)
    if lopp:
        t = textfmt.parse(text, "lopp")
        validate_lopp(t)
    else:
        t = textfmt.parse(text, "qudit")
        validate(t, d)
    return t


def _unitary(t, d: int, lopp: bool, cap: int = semantics.DEFAULT_CAP) -> np.ndarray:
    if lopp:
        return semantics.interp_lopp_sp(t, cap=cap)
    return semantics.interp_qudit(t, d, cap=cap)


def _run(args: argparse.Namespace, out: TextIO) -> int:
    d = args.d
    if args.command == "eval":
        t = _load(args.file, d, args.lopp)
        out.write(semantics.dump_matrix(_unitary(t, d, args.lopp, args.cap)))
        return EXIT_OK

    if args.command == "encode":
        c = _load(args.file, d)
        out.write(textfmt.to_text(transpile.encode(transpile.EncodingContext(d, args.a, args.b), c)) + "\n")
        return EXIT_OK

    if args.command == "decode":
        circ = _load(args.file, d, lopp=True)
        out.write(textfmt.to_text(transpile.decode(transpile.DecodingContext(d, args.n, args.t), circ)) + "\n")
        return EXIT_OK

    if args.command == "roundtrip":
        c = _load(args.file, d)
        n = c.arity
        enc = transpile.encode(transpile.EncodingContext(d, args.a, args.b), c)
        dec = transpile.decode(transpile.DecodingContext(d, args.a + n + args.b), enc)
        want = np.kron(np.kron(np.eye(d**args.a), semantics.interp_qudit(c, d)), np.eye(d**args.b))
        ok, r = semantics.unitary_equal(semantics.interp_qudit(dec, d, check=False), want, args.tol)
        out.write(f"roundtrip d={d} a={args.a} b={args.b} residual={r:.3e} {'PASS' if ok else 'FAIL'}\n")
        return EXIT_OK if ok else EXIT_FAIL

    if args.command == "normalize":
        c = _load(args.file, d)
        s = normalize.separate(c, d)
        out.write(textfmt.to_text(s) + "\n")
        if args.check:
            form = normalize.is_layer_form(s)
            ok, r = semantics.unitary_equal(semantics.interp_qudit(s, d), semantics.interp_qudit(c, d), args.tol)
            layers = len(form.layers) if form else 0
            out.write(f"layers={layers} layer_form={'yes' if form else 'no'} residual={r:.3e}\n")
            return EXIT_OK if ok and form else EXIT_FAIL
        return EXIT_OK

    if args.command == "axioms":
        theories = THEORIES if args.theory == "all" else (args.theory,)
        failed = False
        for th in theories:
            for rep in axioms.run_harness(th, d, args.samples, args.seed, args.tol):
                out.write(rep.line() + "\n")
                failed |= rep.status == "FAIL"
        return EXIT_FAIL if failed else EXIT_OK

    if args.command == "equiv":
        a = _load(args.file1, d, args.lopp)
        b = _load(args.file2, d, args.lopp)
        if a.arity != b.arity:
            out.write(f"different arities {a.arity} and {b.arity}\n")
            return EXIT_FAIL
        ok, r = semantics.unitary_equal(_unitary(a, d, args.lopp), _unitary(b, d, args.lopp), args.tol)
        out.write(f"{'equal' if ok else 'different'} residual={r:.3e}\n")
        return EXIT_OK if ok else EXIT_FAIL

    if args.command == "synth1q":
        u2 = semantics.load_matrix(_read(args.matrix))
        if u2.shape != (2, 2):
            raise QuditError(f"expected a 2x2 matrix, got {u2.shape[0]}x{u2.shape[1]}")
        c = axioms.synth_two_level(u2, d, args.r)
        want = np.eye(d, dtype=complex)
        want[args.r:args.r + 2, args.r:args.r + 2] = u2
        ok, r = semantics.unitary_equal(semantics.interp_qudit(c, d), want, max(args.tol, 1e-8))
        out.write(textfmt.to_text(c) + "\n")
        return EXIT_OK if ok else EXIT_FAIL

    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if sys.getrecursionlimit() < 20000:
        sys.setrecursionlimit(20000)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _run(args, out)
    except DimensionCap as e:
        err.write(f"error: {e}\n")
        return EXIT_CAP
    except CircuitSyntaxError as e:
        err.write(f"syntax error: {e}\n")
        return EXIT_USAGE
    except (QuditError, OSError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
