"""Command-line interface: ``secantbetti <subcommand> ...``.

Exit status: 0 success, 1 a theorem-backed prediction failed, 2 bad usage
or malformed input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import io
from .betti import Inconclusive, betti_table
from .determinantal import (HypothesisError, cycle_certificate, en_table, hankel_matrix,
                            minor_ideal, rnc_ideal)
from .field import Field
from .fixtures import FixtureError, genus2_fixture
from .groebner import DEFAULT_DEGREE_CAP, GroebnerTruncation, buchberger
from .hilbert import HilbertData
from .linalg import MatrixTooLarge
from .polyring import LEX, GREVLEX, ParseError, PolynomialRing
from .predictions import CurveParams, verify_all
from .secant import SecantSpec, secant_ideal

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _emit(text: str, args) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _field(args, default: int = 32003) -> Field:
    return Field(default if args.field is None else args.field)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_ideal(args):
    text = _read_text(args.input)
    try:
        ideal = io.parse_ideal(text)
    except ParseError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    if args.field is not None:
        try:
            ideal = io.change_field(ideal, Field(args.field))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return ideal


# ------------------------------------------------------------ subcommands


def cmd_ideal_gen(args) -> int:
    F = _field(args)
    if args.kind == "rnc":
        ideal = rnc_ideal(_need(args, "d"), F)
        note = f"rational normal curve of degree {args.d}"
    elif args.kind == "hankel":
        d = _need(args, "d")
        rows = args.rows or 3
        size = args.size or rows
        A = hankel_matrix(d, rows, PolynomialRing.standard(d + 1, F))
        ideal = minor_ideal(A, size)
        note = f"{size}x{size} minors of the {rows}-row Hankel matrix, d={d}"
    else:
        if F.is_rational:
            raise UsageError("genus2 fixture needs a prime field")
        ideal = genus2_fixture(F.p, args.seed)
        note = f"genus-2 degree-9 curve in P^7, seed {args.seed}"
    _emit(io.format_ideal(ideal, note), args)
    return EXIT_OK


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required")
    return v


def cmd_fixture(args) -> int:
    if args.p is not None:
        args.field = args.p
    F = _field(args)
    if F.is_rational:
        raise UsageError("genus2 fixture needs a prime field")
    ideal = genus2_fixture(F.p, args.seed)
    _emit(io.format_ideal(ideal, f"genus-2 degree-9 curve in P^7, seed {args.seed}"), args)
    return EXIT_OK


def cmd_gb(args) -> int:
    ideal = _load_ideal(args)
    order = LEX if args.order == "lex" else GREVLEX
    G = buchberger(ideal, order=order, degree_cap=args.max_deg)
    if args.format == "json":
        from .polyring import format_polynomial

        _emit(_dump_json({"order": args.order, "size": len(G),
                          "elements": [format_polynomial(g) for g in G]}), args)
    else:
        _emit(io.format_ideal(G, f"reduced Groebner basis, {args.order}"), args)
    return EXIT_OK


def cmd_secant(args) -> int:
    ideal = _load_ideal(args)
    spec = SecantSpec(ideal, k=args.k, m_max=args.user_max_deg or args.k + 3)
    res = secant_ideal(spec, certify=args.certify, seed=args.seed)
    text = io.format_ideal(res.ideal, f"secant ideal k={args.k} through degree {spec.m_max}")
    if args.certify:
        cert = dict(res.certificate)
        cert["pieces"] = {str(m): v for m, v in res.pieces.items()}
        cert["new_generators"] = {str(m): v for m, v in res.new_generators.items()}
        if args.out:
            Path(args.out).write_text(text)
        sys.stdout.write(_dump_json(cert) + "\n")
        return EXIT_OK if cert.get("matches") is not False else EXIT_MISMATCH
    _emit(text, args)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    ideal = _load_ideal(args)
    G = buchberger(ideal, degree_cap=args.max_deg)
    hd = HilbertData.from_groebner(G)
    upto = args.upto
    data = {
        "numerator": hd.numerator,
        "dim": hd.dim,
        "degree": hd.degree,
        "values": {str(m): hd.value(m) for m in range(upto + 1)},
        "polynomial_values": {str(m): hd.polynomial(m) for m in range(upto + 1)},
        "alpha": [str(a) for a in hd.alpha],
        "stabilization": hd.stabilization,
    }
    sec = hd.section_invariants()
    if sec:
        data["D"], data["G"] = sec
    if args.format == "json":
        _emit(_dump_json(data), args)
        return EXIT_OK
    lines = [f"dimension: {hd.dim} (projective {hd.dim - 1})", f"degree: {hd.degree}",
             "numerator: " + " ".join(str(c) for c in hd.numerator),
             "alpha: " + " ".join(data["alpha"]),
             f"stabilization: {hd.stabilization}"]
    if sec:
        lines.append(f"D: {sec[0]}  G: {sec[1]}")
    lines.append("m    HF    HP")
    for m in range(upto + 1):
        lines.append(f"{m:<4} {hd.value(m):<5} {hd.polynomial(m)}")
    _emit("\n".join(lines), args)
    return EXIT_OK


def cmd_betti(args) -> int:
    ideal = _load_ideal(args)
    G = buchberger(ideal, degree_cap=args.max_deg)
    t = betti_table(G, max_i=args.max_i, max_row=args.max_row, method=args.method,
                    seed=args.seed, degree_cap=args.max_deg)
    if args.format == "json":
        _emit(json.dumps(t.to_json(), sort_keys=True), args)
    else:
        _emit(t.format_text(), args)
    return EXIT_OK


def cmd_cycle(args) -> int:
    text = _read_text(args.matrix)
    try:
        A = io.parse_matrix(text)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    try:
        cert = cycle_certificate(A, args.k, degree_cap=args.max_deg)
    except HypothesisError as exc:
        raise UsageError(str(exc)) from None
    _emit(_dump_json(cert), args)
    return EXIT_OK if cert["certified"] else EXIT_MISMATCH


def cmd_en(args) -> int:
    a, b = sorted((args.rows, args.cols))
    table = en_table(a, b)
    if args.format == "json":
        _emit(json.dumps({"entries": [[i, j, v] for (i, j), v in sorted(table.items())]}), args)
        return EXIT_OK
    from .betti import BettiTable

    _emit(BettiTable(table, b, b - a + 1, a - 1, complete=True).format_text(), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    c = CurveParams(g=args.g, d=args.d, n=args.n, k=args.k)
    h = None
    if args.table:
        try:
            t = io.read_betti_json(args.table, nvars=c.n + 1)
        except OSError as exc:
            raise UsageError(f"cannot read {args.table}: {exc.strerror}") from None
        except (ParseError, KeyError, ValueError) as exc:
            raise UsageError(f"{args.table}: {exc}") from None
    else:
        ideal = _load_ideal(args)
        if ideal.ring.nvars != c.n + 1:
            raise UsageError(f"ideal has {ideal.ring.nvars} variables, expected n+1 = {c.n + 1}")
        if args.sigma:
            GS = buchberger(ideal, degree_cap=args.max_deg)
        else:
            spec = SecantSpec(ideal, k=c.k, m_max=args.max_deg_secant or c.k + 3)
            GS = secant_ideal(spec, certify=True, betti=False, seed=args.seed).groebner
        h = HilbertData.from_groebner(GS)
        t = betti_table(GS, max_row=args.max_row, seed=args.seed, degree_cap=args.max_deg)
    rep = verify_all(c, t, h)
    if args.format == "json":
        _emit(_dump_json(rep.to_json()), args)
    else:
        _emit(rep.format_text(), args)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=None, metavar="P",
                        help="coefficient field: a prime p, or 0 for the rationals (default 32003)")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")
    common.add_argument("--max-deg", "--maxdeg", dest="max_deg", type=int, default=None)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="secantbetti",
                                     description="Secant varieties of curves: ideals, Betti tables, predictions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", help="construct ideals")
    isub = p.add_subparsers(dest="action", required=True)
    g = isub.add_parser("gen", parents=[common], help="generate a standard ideal")
    g.add_argument("kind", choices=("rnc", "hankel", "genus2"))
    g.add_argument("--d", type=int)
    g.add_argument("--rows", type=int)
    g.add_argument("--size", type=int, help="minor size (default: number of rows)")
    g.set_defaults(func=cmd_ideal_gen)

    p = sub.add_parser("fixture", parents=[common], help="build a curve fixture")
    p.add_argument("kind", choices=("genus2",))
    p.add_argument("--p", type=int, default=None, help="prime (same as --field)")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    p.add_argument("--in", dest="input", default="-")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("secant", parents=[common], help="secant ideal by graded pieces")
    p.add_argument("--in", dest="input", default="-")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--certify", action="store_true", help="print the JSON certificate")
    p.set_defaults(func=cmd_secant)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function and polynomial")
    p.add_argument("--in", dest="input", default="-")
    p.add_argument("--upto", type=int, default=6)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("betti", parents=[common], help="graded Betti table")
    p.add_argument("--in", dest="input", default="-")
    p.add_argument("--max-row", type=int, default=None)
    p.add_argument("--max-i", type=int, default=None)
    p.add_argument("--method", choices=("auto", "direct"), default="auto")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("cycle", parents=[common], help="Koszul cycle certificate for a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_cycle)

    p = sub.add_parser("en", parents=[common], help="Eagon-Northcott Betti table")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.set_defaults(func=cmd_en)

    p = sub.add_parser("verify", parents=[common], help="check closed-form predictions")
    p.add_argument("--in", dest="input", default="-", help="curve ideal (or secant ideal with --sigma)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="ambient dimension (default d - g)")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--sigma", action="store_true", help="input is already the secant ideal")
    p.add_argument("--table", default=None, help="Betti table as JSON instead of an ideal")
    p.add_argument("--max-row", type=int, default=None)
    p.add_argument("--secant-deg", dest="max_deg_secant", type=int, default=None,
                   help="truncation degree for the secant computation")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(getattr(args, "verbose", 0), 2),
                        format="%(name)s: %(message)s", stream=sys.stderr)
    args.user_max_deg = args.max_deg
    if args.max_deg is None:
        args.max_deg = DEFAULT_DEGREE_CAP
    try:
        if args.field is not None:
            Field(args.field)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroebnerTruncation, MatrixTooLarge) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
