"""Command line front end: ``python -m cartankit SUBCOMMAND ...``.

Exit status is 0 on success, 1 when the mathematics says no (singular
matrix, failed check, verification mismatch) and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from contextlib import redirect_stderr, redirect_stdout

from . import analysis, catalog
from .cartan import CartanSpec, infer_parities, normalize, odd_reflect, parse_parities, reflect
from .field import FieldMismatch, ScalarParseError, field_from_spec
from .matrix import (DecomposableInput, Matrix, NotSymmetrizable, SingularMatrix, content_split,
                     determinant, inverse)
from .serial import (FamilyParameterError, UnsupportedFamilyForClosedForm, closed_inverse,
                     family_matrix, parse_family)


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# input

def _field(args):
    if args.funcfield:
        return field_from_spec(args.base_char or 0, args.funcfield)
    if args.char is not None:
        return field_from_spec(args.char)
    return field_from_spec(0)


def _split_rows(text):
    text = text.strip()
    if ";" in text or "\n" not in text and "," in text:
        rows = [r for r in text.replace("\n", ";").split(";") if r.strip()]
        return [[x.strip() for x in r.split(",")] for r in rows]
    return [line.replace(",", " ").split() for line in text.splitlines() if line.strip()]


def _read_spec(args, stdin) -> CartanSpec:
    sources = [x for x in (args.matrix, args.name, args.inline) if x is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --matrix FILE, --name LABEL or an inline matrix")
    if args.name is not None:
        try:
            entry = catalog.find_entry(args.name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return entry.spec
    if args.matrix is not None:
        if args.matrix == "-":
            text = stdin.read()
        else:
            with open(args.matrix, encoding="utf-8") as fh:
                text = fh.read()
    else:
        text = args.inline
    F = _field(args)
    m = _parse_matrix_text(text, F)
    if args.parities:
        par = parse_parities(args.parities)
    else:
        try:
            par = infer_parities(m)
        except ValueError as exc:
            if args.command in NEEDS_PARITIES:
                raise UsageError(f"{exc}; pass --parities") from None
            par = (0,) * m.n
    return CartanSpec(m, par)


def _parse_matrix_text(text, F) -> Matrix:
    """Rows of entries; a leading "scale: s" line multiplies the matrix and
    "det:" lines are ignored, so ``invert`` output can be read back."""
    scale = None
    body = []
    for line in text.strip().splitlines():
        key, _, rest = line.partition(":")
        if rest and key.strip() == "scale":
            scale = F.parse(rest.strip())
        elif rest and key.strip() == "det":
            continue
        else:
            body.append(line)
    m = Matrix.parse(_split_rows("\n".join(body)), F)
    return m if scale is None else m.scale(scale)


# ---------------------------------------------------------------------------
# output

def _matrix_lines(M: Matrix, factor=True):
    out = []
    if factor:
        scale, M = content_split(M)
        if scale != 1:
            out.append(f"scale: {M.field.render(scale)}")
    out.extend(" ".join(r) for r in M.to_strings())
    return out


def _parity_line(spec):
    return "parities: " + ",".join("o" if p else "e" for p in spec.parities)


# ---------------------------------------------------------------------------
# subcommands

def cmd_invert(args, spec, out):
    inv = inverse(spec.matrix)
    out.extend(_matrix_lines(inv, not args.no_scale))
    out.append(f"det: {spec.field.render(determinant(spec.matrix))}")


def cmd_det(args, spec, out):
    out.append(spec.field.render(determinant(spec.matrix)))


def cmd_reflect(args, spec, out):
    k = args.root - 1
    new, factors = (reflect if args.even else odd_reflect)(spec, k)
    if not args.raw:
        new, _ = normalize(new)
    out.append(_parity_line(new))
    out.extend(_matrix_lines(new.matrix, factor=False))
    if args.inverse:
        inv = inverse(new.matrix)
        out.append("inverse:")
        out.extend(_matrix_lines(inv))


def cmd_enumerate(args, spec, out):
    subs = analysis.osp42_parameter_orbit(spec.field) if args.osp42_orbit else ()
    cls = analysis.enumerate_class(spec, limit=args.limit, substitutions=subs)
    out.append(f"members: {len(cls)}")
    for i, m in enumerate(cls.members, 1):
        out.append("")
        out.append(f"{i}) {_parity_line(m)}  det: {m.field.render(cls.determinants[i - 1])}")
        out.extend(_matrix_lines(m.matrix, factor=False))


def cmd_verify(args, out):
    paths = args.catalog or ([] if args.exceptions else list(catalog.FILES))
    entries = []
    for p in paths:
        entries.extend(catalog.load_file(p, strict=False))
    if args.exceptions:
        entries.extend(catalog.load_exceptions())
    report = catalog.verify_all(entries, catalog.load_exceptions())
    out.extend(report.lines() if args.verbose else
               [str(s) for s in report.unexplained] + [report.summary()])
    if not report.passed:
        raise MathFailure(f"{len(report.unexplained)} entries failed verification")


def cmd_serial(args, out):
    try:
        fam = parse_family(args.family)
    except (FamilyParameterError, ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    spec = family_matrix(fam)
    out.append(f"family: {fam}")
    out.append(_parity_line(spec))
    out.extend(_matrix_lines(spec.matrix, factor=False))
    inv = closed_inverse(fam)
    out.append("inverse:")
    out.extend(_matrix_lines(inv))
    if args.check:
        same = inv == inverse(spec.matrix)
        out.append(f"elimination agrees: {'yes' if same else 'no'}")
        if not same:
            raise MathFailure("closed form differs from elimination")


def cmd_check_lt(args, spec, out):
    C = spec.matrix
    if args.adjacency:
        adj = Matrix.parse(_split_rows(args.adjacency), C.field)
    else:
        adj = Matrix([[1 if i != j and C[i, j] else 0 for j in range(C.n)] for i in range(C.n)],
                     C.field)
    res = analysis.lt_condition_check(C, adj)
    if not res:
        out.append("conditions: fail")
        out.extend(f"  {v}" for v in res.violations)
        raise MathFailure("conditions a)-d) fail")
    out.append("conditions: ok")
    ok, pos = analysis.lusztig_tits_verify(C, adj)
    out.append("inverse entrywise positive: " + ("yes" if ok else f"no at {pos}"))
    if not ok:
        raise MathFailure("inverse not positive")


def cmd_check_hyperbolic(args, spec, out):
    ok, cert = analysis.hyperbolic_check(spec)
    out.append(f"hyperbolic: {'yes' if ok else 'no'}")
    out.extend(str(cert).splitlines())
    if not ok:
        raise MathFailure("not hyperbolic")


def cmd_classify(args, spec, out):
    c = analysis.zhang_classify(inverse(spec.matrix))
    out.append(f"all_nonpositive: {c.all_nonpositive}")
    out.append(f"all_negative: {c.all_negative}")
    out.append(f"zeros_diagonal_only: {c.zeros_diagonal_only}")
    if c.positive_positions:
        out.append("positive at: " + " ".join(f"({i + 1},{j + 1})" for i, j in c.positive_positions))
    if c.zero_positions:
        out.append("zero at: " + " ".join(f"({i + 1},{j + 1})" for i, j in c.zero_positions))


NEEDS_PARITIES = ("reflect", "enumerate", "check-hyperbolic")

MATRIX_COMMANDS = {
    "invert": cmd_invert, "det": cmd_det, "reflect": cmd_reflect, "enumerate": cmd_enumerate,
    "check-lt": cmd_check_lt, "check-hyperbolic": cmd_check_hyperbolic, "classify": cmd_classify,
}


def _add_input(p):
    p.add_argument("inline", nargs="?", help='matrix as "2,-1;-1,0"')
    p.add_argument("--matrix", metavar="FILE", help="matrix file, one row per line ('-' for stdin)")
    p.add_argument("--name", metavar="LABEL", help="catalog entry label")
    p.add_argument("--parities", help="e.g. e,o,o (default: from the diagonal)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--char", type=int, metavar="P", help="work over F_p")
    g.add_argument("--rational", action="store_true", help="work over Q (default)")
    g.add_argument("--funcfield", metavar="VAR", help="work over K(VAR)")
    p.add_argument("--base-char", type=int, metavar="P", help="characteristic of K for --funcfield")


def build_parser():
    ap = argparse.ArgumentParser(prog="cartankit", description="Exact Cartan matrix computations.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("invert", help="inverse and determinant")
    _add_input(p)
    p.add_argument("--no-scale", action="store_true", help="do not factor out a scale")
    _add_input(sub.add_parser("det", help="determinant"))
    p = sub.add_parser("reflect", help="reflect in a simple root")
    _add_input(p)
    p.add_argument("--root", type=int, required=True, help="1-based index")
    p.add_argument("--even", action="store_true", help="allow an even root with zero diagonal")
    p.add_argument("--raw", action="store_true", help="do not normalize the result")
    p.add_argument("--inverse", action="store_true", help="also print the inverse")
    p = sub.add_parser("enumerate", help="all matrices reachable by reflections")
    _add_input(p)
    p.add_argument("--limit", type=int, default=512)
    p.add_argument("--osp42-orbit", action="store_true",
                   help="identify parameter values related by the osp(4|2) symmetry")
    p = sub.add_parser("verify", help="re-verify catalog files")
    p.add_argument("--catalog", action="append", metavar="FILE")
    p.add_argument("--exceptions", action="store_true", help="also verify the corrected records")
    p.add_argument("-v", "--verbose", action="store_true", help="one line per entry")
    p = sub.add_parser("serial", help="serial family matrix and closed-form inverse")
    p.add_argument("family", help='e.g. "B1_0n:n=3", "Sl_m0n:m=1,n=2", "Tn:4"')
    p.add_argument("--check", action="store_true", help="compare with elimination")
    p = sub.add_parser("check-lt", help="sign conditions and positivity of the inverse")
    _add_input(p)
    p.add_argument("--adjacency", help="tree adjacency (default: support of the matrix)")
    _add_input(sub.add_parser("check-hyperbolic", help="hyperbolicity of a Lie algebra matrix"))
    _add_input(sub.add_parser("classify", help="signs of the inverse"))
    return ap


def run(argv, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    ap = build_parser()
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = []
    code = 0
    try:
        if args.command in MATRIX_COMMANDS:
            spec = _read_spec(args, stdin)
            MATRIX_COMMANDS[args.command](args, spec, out)
        elif args.command == "verify":
            cmd_verify(args, out)
        else:
            cmd_serial(args, out)
    except (MathFailure, SingularMatrix, NotSymmetrizable, analysis.LimitExceeded) as exc:
        code = 1
        print(f"error: {exc}", file=stderr)
    except (UsageError, ScalarParseError, FieldMismatch, DecomposableInput, OSError, ValueError,
            IndexError, KeyError, TypeError, catalog.SchemaError,
            UnsupportedFamilyForClosedForm) as exc:
        code = 2
        print(f"error: {exc}", file=stderr)
    if out:
        stdout.write("\n".join(out) + "\n")
    return code


def main():
    sys.exit(run(sys.argv[1:]))
