"""Command line interface. Exit codes: 0 all checks pass, 1 a check failed, 2 bad input."""

from __future__ import annotations

import argparse
import sys
from collections import OrderedDict

from . import serialize as io
from .catalog import run_table
from .double import build_phantom, check_quasi_sk, check_sk_matrix, compatibility_report, verify_K_iso
from .errors import (
    DerivationsDoNotCommute,
    FormatError,
    JacobiFailed,
    MissingComplement,
    NotADerivation,
    NotCommutativeAssociative,
)
from .ksymplectic import verify_kparakahler, verify_ksymplectic
from .lie import AxiomReport, check_antisymmetry, check_jacobi
from .linalg import DimensionError
from .lowdim import classify
from .lsa import check_klsa, check_kxklsa, gelfand

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit_reports(reports: "OrderedDict[str, AxiomReport]", as_json: bool, extra: dict = None) -> int:
    passed = all(r.passed for r in reports.values())
    if as_json:
        payload = {"passed": passed, "reports": {k: r.to_json() for k, r in reports.items()}}
        if extra:
            payload.update(extra)
        print(io.dumps(payload))
    else:
        for name, r in reports.items():
            print(f"{name}: {r.summary()}")
        print("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify_lie(args) -> int:
    b = io.product_from_json(io.load(args.file))
    return _emit_reports(OrderedDict(antisymmetry=check_antisymmetry(b), jacobi=check_jacobi(b)), args.json)


def cmd_verify_ks(args) -> int:
    d = io.ksymplectic_from_json(io.load(args.file))
    return _emit_reports(OrderedDict(ksymplectic=verify_ksymplectic(d)), args.json)


def cmd_verify_kpk(args) -> int:
    d = io.ksymplectic_from_json(io.load(args.file))
    try:
        rep = verify_kparakahler(d)
    except MissingComplement as exc:
        raise InputError(f"k-para-Kähler check needs a complement p: {exc}") from exc
    return _emit_reports(OrderedDict(kparakahler=rep), args.json)


def cmd_verify_klsa(args) -> int:
    return _emit_reports(OrderedDict(klsa=check_klsa(io.klsa_from_json(io.load(args.file)))), args.json)


def cmd_verify_kxk(args) -> int:
    return _emit_reports(OrderedDict(kxklsa=check_kxklsa(io.kxklsa_from_json(io.load(args.kxk_file)))), args.json)


def cmd_phantom(args) -> int:
    B = io.kxklsa_from_json(io.load(args.kxk))
    A = io.klsa_from_json(io.load(args.klsa))
    comp = compatibility_report(B, A)
    ph = build_phantom(B, A)
    doc = io.ksymplectic_to_json(ph.as_ksymplectic())
    reports = OrderedDict(
        klsa=comp.klsa, kxklsa=comp.kxklsa, cocycles=comp.cocycles, **{"phantom-jacobi": comp.phantom_jacobi}
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(doc) + "\n")
        return _emit_reports(reports, args.json)
    if args.json:
        return _emit_reports(reports, True, {"phantom": doc})
    print(io.dumps(doc))
    return _emit_reports(reports, False)


def cmd_verify_sk(args) -> int:
    A = io.klsa_from_json(io.load(args.klsa))
    r = io.rmatrix_from_json(io.load(args.r))
    if A.n != r.n or A.k != r.k:
        raise InputError("KLSA and r live on different spaces")
    reports = OrderedDict()
    if args.quasi or args.quasi_weak:
        reports["quasi-sk"] = check_quasi_sk(A, r, weak=args.quasi_weak)
        if reports["quasi-sk"].passed and not args.quasi_weak:
            reports["K-isomorphism"] = verify_K_iso(A, r)
    else:
        reports["sk-matrix"] = check_sk_matrix(A, r)
    return _emit_reports(reports, args.json)


def cmd_gelfand(args) -> int:
    alg, D1, D2 = io.gelfand_from_json(io.load(args.file))
    try:
        A = gelfand(alg, D1, D2)
    except (NotADerivation, DerivationsDoNotCommute, NotCommutativeAssociative) as exc:
        if args.json:
            print(io.dumps({"passed": False, "error": str(exc)}))
        else:
            print(f"FAIL: {exc}")
        return EXIT_FAIL
    rep = check_klsa(A)
    if args.json:
        return _emit_reports(OrderedDict(klsa=rep), True, {"klsa": io.klsa_to_json(A)})
    print(io.dumps(io.klsa_to_json(A)))
    return _emit_reports(OrderedDict(klsa=rep), False)


def cmd_lowdim(args) -> int:
    s = io.lowdim_from_json(io.load(args.file))
    try:
        res = classify(s)
    except JacobiFailed as exc:
        if args.json:
            print(io.dumps({"passed": False, "jacobi": exc.report.to_json()}))
        else:
            print(f"FAIL: {exc}")
        return EXIT_FAIL
    ok = res.verified.passed
    if args.json:
        print(io.dumps(dict(res.to_json(), passed=ok)))
    else:
        params = ", ".join(f"{k}={io.q_to_json(v)}" for k, v in res.params.items())
        print(f"case: {res.case_tag}" + (f" ({params})" if params else ""))
        if res.permutation:
            print("f relabelled as " + ", ".join(f"f{i + 1}" for i in res.permutation))
        print("witness columns (model basis in f_1..f_k, e coordinates):")
        for row in res.witness:
            print("  " + " ".join(io.q_to_json(x).rjust(6) for x in row))
        for note in res.notes:
            print("note: " + note)
        print(f"witness check: {res.verified.summary()}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.table not in (1, 2, 3):
        raise InputError("--table must be 1, 2 or 3")
    if args.samples < 1:
        raise InputError("--samples must be positive")
    runs = run_table(args.table, args.samples, args.seed)
    ok = all(r.passed for r in runs)
    if args.json:
        print(io.dumps([r.to_json() for r in runs]))
        return EXIT_OK if ok else EXIT_FAIL
    by_entry = OrderedDict()
    for r in runs:
        by_entry.setdefault(r.entry, []).append(r)
    width = max(len(name) for name in by_entry)
    for name, rs in by_entry.items():
        bad = [r for r in rs if not r.passed]
        status = "PASS" if not bad else "FAIL"
        line = f"{name.ljust(width)}  {status}  {len(rs) - len(bad)}/{len(rs)}"
        if bad:
            first = bad[0]
            params = ", ".join(f"{k}={io.q_to_json(v)}" for k, v in first.assignment.items())
            line += f"  [{params}] {first.first_failure()}"
        print(line)
        for r in bad:
            if r.discrepancy:
                for d in r.discrepancy["differences"]:
                    print(f"    TABLE-DISCREPANCY [{d['pair'][0]},{d['pair'][1]}]: tabulated {d['tabulated']}; oracle {d['oracle']}")
                break
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kparakahler", description="Exact checks for k-symplectic and k-para-Kähler Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func)
        return p

    add("verify-lie", cmd_verify_lie, "antisymmetry and Jacobi of a bracket").add_argument("file")
    add("verify-ks", cmd_verify_ks, "k-symplectic axioms").add_argument("file")
    add("verify-kpk", cmd_verify_kpk, "k-para-Kähler axioms").add_argument("file")
    add("verify-klsa", cmd_verify_klsa, "k-left-symmetric axioms").add_argument("file")
    add("verify-kxk", cmd_verify_kxk, "(k×k)-left-symmetric axioms").add_argument("kxk_file", metavar="file")
    p = add("phantom", cmd_phantom, "build the double and check compatibility")
    p.add_argument("--kxk", required=True)
    p.add_argument("--klsa", required=True)
    p.add_argument("-o", "--output")
    p = add("verify-sk", cmd_verify_sk, "S_k-matrix or quasi-S_k-matrix conditions")
    p.add_argument("--klsa", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--quasi", action="store_true", help="strong quasi-S_k reading, plus the K isomorphism")
    p.add_argument("--quasi-weak", action="store_true", help="weak quasi-S_k reading with the L(a) condition")
    add("gelfand", cmd_gelfand, "2-left-symmetric structure from two commuting derivations").add_argument("file")
    add("lowdim-classify", cmd_lowdim, "classify a (k+1)-dimensional k-symplectic algebra").add_argument("file")
    p = add("catalog", cmd_catalog, "sampled verification of a table")
    p.add_argument("--table", type=int, required=True)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (FormatError, InputError, DimensionError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
