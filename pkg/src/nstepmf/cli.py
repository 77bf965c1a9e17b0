"""Command-line front end.

Exit status: 0 when the computation completed (and any verification passed),
1 on mathematical failure, 2 on usage or parse errors.  Every command writes
one canonical JSON document to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import document as doc
from .census import CensusBudgetError, hom_table
from .linalg import DegreeGuardError, FieldSpec, max_degree
from .linalg.field import degree_guard
from .mf import MatrixFactorization, MFMorphism, Potential, cone, shift, twist, verify_mf
from .oracle import oracle_stable_hom_dim
from .rootstack import check_four_term, cone_splitting_check, ext_table, ext1_by_resolution, skyscraper
from .stable import factors_through_projinj, is_stably_zero, stable_hom_dim

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("message", "mathematical failure"))
        self.report = report


def _field_arg(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_doc(path: str, args) -> doc.Document:
    try:
        if path == "-":
            d = doc.parse(sys.stdin.read())
        else:
            d = doc.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if args.field is not None and args.field != d.field:
        raise UsageError(f"{path}: document field {d.field} differs from --field {args.field}")
    return d


def _factorization(path, args) -> tuple[MatrixFactorization, doc.Document]:
    d = _read_doc(path, args)
    if d.kind != "factorization":
        raise UsageError(f"{path}: expected a factorization document, got {d.kind}")
    _require_valid(d.payload, path)
    return d.payload, d


def _morphism(path, args) -> tuple[MFMorphism, doc.Document]:
    d = _read_doc(path, args)
    if d.kind != "morphism":
        raise UsageError(f"{path}: expected a morphism document, got {d.kind}")
    f = d.payload
    _require_valid(f.source, f"{path} (source)")
    _require_valid(f.target, f"{path} (target)")
    bad = f.first_noncommuting()
    if bad is not None:
        raise MathFailure({"command": "check", "ok": False, "message": f"{path}: morphism fails to commute at slot {bad}",
                           "failing_slot": bad})
    return f, d


def _require_valid(M, where):
    rep = verify_mf(M)
    if not rep.ok:
        raise MathFailure({"command": "check", **rep.to_dict(), "message": f"{where}: {rep.message}"})


def _report(data: dict, field: FieldSpec, variable: str = "x") -> doc.Document:
    return doc.Document(field, "report", data, variable)


# --- subcommands ------------------------------------------------------------

def cmd_verify(args):
    d = _read_doc(args.input, args)
    if d.kind == "factorization":
        rep = verify_mf(d.payload)
        data = {"command": "verify", "kind": d.kind, **rep.to_dict()}
        ok = rep.ok
    elif d.kind == "morphism":
        f = d.payload
        src, tgt = verify_mf(f.source), verify_mf(f.target)
        bad = f.first_noncommuting()
        ok = src.ok and tgt.ok and bad is None
        data = {"command": "verify", "kind": d.kind, "ok": ok, "source": src.to_dict(), "target": tgt.to_dict(),
                "failing_slot": bad}
    elif d.kind == "graded-module":
        A = d.payload
        ok = A.is_nilpotent()
        data = {"command": "verify", "kind": d.kind, "ok": ok, "nilpotent": ok}
    else:
        raise UsageError("verify needs a factorization, morphism or graded-module document")
    return _report(data, d.field, d.variable), (EXIT_OK if ok else EXIT_MATH)


def cmd_twist(args):
    M, d = _factorization(args.input, args)
    return doc.Document(d.field, "factorization", twist(M, args.power), d.variable), EXIT_OK


def cmd_shift(args):
    M, d = _factorization(args.input, args)
    return doc.Document(d.field, "factorization", shift(M), d.variable), EXIT_OK


def cmd_cone(args):
    f, d = _morphism(args.input, args)
    return doc.Document(d.field, "factorization", cone(f).cone, d.variable), EXIT_OK


def _pair(args):
    M, d = _factorization(args.source, args)
    if args.target is None:
        return M, M, d
    N, _ = _factorization(args.target, args)
    if M.potential != N.potential:
        raise UsageError("source and target have different potentials")
    return M, N, d


def cmd_shom(args):
    M, N, d = _pair(args)
    rep = stable_hom_dim(M, N, with_witnesses=args.witnesses, source_name=args.source,
                         target_name=args.target or args.source)
    data = {"command": "shom", **rep.to_dict()}
    if args.witnesses:
        data["witnesses"] = [doc.encode_morphism(w) for w in rep.witnesses]
    return _report(data, d.field, d.variable), EXIT_OK


def cmd_oracle_shom(args):
    M, N, d = _pair(args)
    res = oracle_stable_hom_dim(M, N)
    data = {"command": "oracle-shom", "source": args.source, "target": args.target or args.source, **res.to_dict()}
    return _report(data, d.field, d.variable), EXIT_OK


def cmd_stablyzero(args):
    d = _read_doc(args.input, args)
    if d.kind == "factorization":
        _require_valid(d.payload, args.input)
        data = {"command": "stablyzero", "kind": d.kind, "stably_zero": is_stably_zero(d.payload)}
    elif d.kind == "morphism":
        f, _ = _morphism(args.input, args)
        g = factors_through_projinj(f)
        data = {"command": "stablyzero", "kind": d.kind, "stably_zero": g is not None}
        if g is not None:
            data["witness"] = doc.encode_morphism(g)
    else:
        raise UsageError("stablyzero needs a factorization or morphism document")
    return _report(data, d.field, d.variable), EXIT_OK


def cmd_census(args):
    F = args.field or FieldSpec.rationals()
    try:
        rep = hom_table(args.n, args.k, F, budget=args.budget)
    except CensusBudgetError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = {"command": "census", **rep.to_dict(), "text_table": rep.text_table()}
    code = EXIT_OK if rep.stably_zero_agrees else EXIT_MATH
    return _report(data, F), code


def cmd_rootstack(args):
    F = args.field or FieldSpec.rationals()
    n = args.n
    if n < 2:
        raise UsageError("--n must be at least 2")
    four = check_four_term(n, F)
    split = cone_splitting_check(n, F)
    table = ext_table(n, F)
    oracle = [[ext1_by_resolution(n, a, skyscraper(n, b, F)) for b in range(n)] for a in range(n)]
    ok = four.ok and split.ok and table == oracle
    data = {"command": "rootstack-check", "n": n, "ok": ok, "four_term": four.to_dict(),
            "cone_splitting": split.to_dict(), "ext1_table": table, "ext1_resolution_table": oracle}
    return _report(data, F, "u"), (EXIT_OK if ok else EXIT_MATH)


def cmd_random(args):
    from .generators import random_factorization
    F = args.field or FieldSpec.rationals()
    if args.n < 2 or args.k < 1:
        raise UsageError("need --n >= 2 and --k >= 1")
    rng = random.Random(args.seed)
    M = random_factorization(rng, Potential.monomial(F, args.k, args.n), max_rank=args.rank)
    return doc.Document(F, "factorization", M), EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=None, help="Q, F101, F_101 or Fp:101")
    common.add_argument("--max-degree", type=int, default=None, help="polynomial degree guard")
    common.add_argument("--out", default=None, help="write the output document here instead of stdout")

    p = argparse.ArgumentParser(prog="nstepmf", description="n-step matrix factorizations over k[x]")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("verify", parents=[common], help="check the cyclic composites")
    s.add_argument("input")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("twist", parents=[common], help="rotate the slots")
    s.add_argument("input")
    s.add_argument("--power", type=int, default=1)
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("shift", parents=[common], help="suspension in the stable category")
    s.add_argument("input")
    s.set_defaults(func=cmd_shift)

    s = sub.add_parser("cone", parents=[common], help="mapping cone of a morphism")
    s.add_argument("input")
    s.set_defaults(func=cmd_cone)

    for name, func, helptext in (("shom", cmd_shom, "stable Hom dimension via Smith forms"),
                                 ("oracle-shom", cmd_oracle_shom, "stable Hom dimension by brute force")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("source")
        s.add_argument("target", nargs="?")
        if name == "shom":
            s.add_argument("--witnesses", action="store_true", help="include representatives of a k-basis")
        s.set_defaults(func=func)

    s = sub.add_parser("stablyzero", parents=[common], help="does an object or morphism vanish stably")
    s.add_argument("input")
    s.set_defaults(func=cmd_stablyzero)

    s = sub.add_parser("census", parents=[common], help="monomial rank-one objects of W = x^k")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget", type=int, default=200)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("rootstack-check", parents=[common], help="model root stack computations")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_rootstack)

    s = sub.add_parser("random", parents=[common], help="random factorization of x^k")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rank", type=int, default=3)
    s.set_defaults(func=cmd_random)
    return p


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    limit = args.max_degree if args.max_degree is not None else max_degree()
    try:
        with degree_guard(limit):
            result, code = args.func(args)
    except (UsageError, doc.DocumentError) as exc:
        print(f"nstepmf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathFailure as exc:
        _emit(doc.dumps(doc.to_json(_report(exc.report, args.field or FieldSpec.rationals()))), args.out)
        print(f"nstepmf: {exc}", file=sys.stderr)
        return EXIT_MATH
    except DegreeGuardError as exc:
        print(f"nstepmf: {exc}", file=sys.stderr)
        return EXIT_MATH
    _emit(doc.serialize(result), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
