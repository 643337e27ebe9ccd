"""Command-line front end: basis expansion, structure-constant tables, verification.

Machine output is JSON (--json) or CSV (--csv); the default is a small aligned
table for reading.  Exit status: 0 on success, 1 on failed verification, 2 on
argument or parse errors.  The env var HOPF_SCF_MAX_GROUP overrides the group
enumeration bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import nsym, qsym, verify
from .compositions import Composition, SubsetLabel

QSYM_BASES = qsym.BASES
NSYM_BASES = nsym.BASES


class CliError(ValueError):
    """User input that cannot be parsed; exits with status 2."""


def parse_composition(text: str) -> Composition:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise CliError(f"composition literal must look like (1,3,2), got {text!r}")
    body = text[1:-1].strip().rstrip(",")
    if not body:
        return Composition()
    try:
        return Composition(int(p) for p in body.split(","))
    except ValueError as exc:
        raise CliError(f"bad composition literal {text!r}: {exc}") from exc


def parse_subset(text: str) -> frozenset[int]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise CliError(f"subset literal must look like {{1,4}}, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return frozenset()
    try:
        return frozenset(int(p) for p in body.split(","))
    except ValueError as exc:
        raise CliError(f"bad subset literal {text!r}: {exc}") from exc


def parse_elem(text: str):
    basis, sep, comp_text = text.partition(":")
    if not sep:
        raise CliError(f"element must look like BASIS:(parts), got {text!r}")
    basis = basis.strip()
    comp = parse_composition(comp_text)
    if basis in NSYM_BASES:
        return "nsym", basis, comp
    if basis in QSYM_BASES:
        return "qsym", basis, comp
    raise CliError(
        f"unknown basis {basis!r}; QSym: {', '.join(QSYM_BASES)}; "
        f"NSym: {', '.join(NSYM_BASES)}"
    )


def _format_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def cmd_expand(args) -> int:
    algebra, basis, comp = parse_elem(args.elem)
    target = args.to.strip()
    if algebra == "nsym":
        if target not in NSYM_BASES:
            raise CliError(f"cannot expand an NSym element in basis {target!r}")
        if basis == "Pi" or target == "Pi":
            raise CliError("Pi is a QSym basis")
        elem = nsym.convert(nsym.NSymElem.basis_elem(basis, comp), target)
        payload = elem.to_json_dict()
    else:
        nu = args.nu
        if (basis == "Pi" or target == "Pi") and nu is None:
            raise CliError("the Pi basis needs --nu")
        source = qsym.QSymElem.basis_elem(basis, comp, nu=nu if basis == "Pi" else None)
        elem = qsym.convert(source, target, nu=nu if target == "Pi" else None)
        payload = elem.to_json_dict()
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        rows = [[repr(Composition(t["comp"])), t["coeff"]] for t in payload["terms"]]
        title = f"{args.elem} expanded in {target}"
        if payload.get("nu") is not None:
            title += f" (nu={payload['nu']})"
        print(title)
        print(_format_table(["label", "coefficient"], rows))
    return 0


def cmd_structconst(args) -> int:
    k = args.k
    K = parse_subset(args.K)
    if not K <= set(range(1, k)):
        raise CliError(f"K={sorted(K)} is not a subset of [{k - 1}]")
    rows = []
    for m in range(k + 1):
        if args.filter_m is not None and m != args.filter_m:
            continue
        n = k - m
        for imask in range(1 << max(m - 1, 0)):
            I = SubsetLabel(m, imask)
            for jmask in range(1 << max(n - 1, 0)):
                J = SubsetLabel(n, jmask)
                coeff = nsym.structure_constant(k, K, m, I.members, J.members)
                if coeff.is_zero():
                    continue
                rows.append(
                    [
                        str(k),
                        "{" + ",".join(map(str, sorted(K))) + "}",
                        str(m),
                        "{" + ",".join(map(str, I.members)) + "}",
                        "{" + ",".join(map(str, J.members)) + "}",
                        str(coeff),
                    ]
                )
    header = ["k", "K", "m", "I", "J", "polynomial"]
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(_format_table(header, rows))
    return 0


def cmd_verify(args) -> int:
    name = args.suite
    if name not in verify.SUITES:
        raise CliError(f"unknown suite {name!r}; choose from {', '.join(verify.SUITES)}")
    nus = None
    if args.nu:
        try:
            nus = [int(x) for x in args.nu.split(",")]
        except ValueError as exc:
            raise CliError(f"--nu must be a comma-separated integer list: {exc}") from exc
    report = verify.run_suite(name, max_degree=args.max_degree, nus=nus)
    summary = {
        "suite": name,
        "checks": len(report.checks),
        "passed": report.passed,
        "failures": [
            {"check": check, "detail": detail} for check, detail in report.failures()
        ],
    }
    if not args.json:
        for check, ok, detail in report.checks:
            line = f"{'PASS' if ok else 'FAIL'} {check}"
            if not ok and detail:
                line += f": {detail}"
            print(line)
    print(json.dumps(summary, sort_keys=True))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfscf",
        description="Exact QSym/NSym computations over the q,t fraction field.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a basis element in another basis")
    p.add_argument("--elem", required=True, help="element literal, e.g. B:(1,2)")
    p.add_argument("--to", required=True, help="target basis tag")
    p.add_argument("--nu", type=int, help="parameter for the Pi basis")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("structconst", help="table of coproduct structure constants")
    p.add_argument("--k", type=int, required=True, help="total degree")
    p.add_argument("--K", required=True, help="subset literal, e.g. {1,2}")
    p.add_argument("--filter-m", type=int, dest="filter_m", help="only rows with this m")
    p.add_argument("--csv", action="store_true", help="CSV output")
    p.set_defaults(func=cmd_structconst)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, help=f"one of: {', '.join(verify.SUITES)}")
    p.add_argument("--max-degree", type=int, dest="max_degree", help="degree bound override")
    p.add_argument("--nu", help="comma-separated list of nu values")
    p.add_argument("--json", action="store_true", help="summary only")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
