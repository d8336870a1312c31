"""
Command line driver: HH tables for an algebra file, the verification
suites and the Beilinson comparison, with deterministic JSON/CSV/text reports.

Exit codes: 0 when every assertion passed, 1 when some failed, 2 for usage
or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .algebra import AlgebraError, algebra_from_json, beilinson_pair, center
from .exactlin import QQ, field_from_descriptor
from .hochschild import FULL, REDUCED, hh_dims, hh_space
from .homalg import tilting_check_beilinson
from .suites import SUITES, RunConfig, run_suite, sign_constants

REPORT_VERSION = 1
FAULTS = ("bracket-sign",)


class UsageError(Exception):
    pass


def parse_field(text):
    """``Q`` or ``Fp:<p>``."""
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise UsageError(f"bad prime in field {text!r}") from None
        try:
            return field_from_descriptor({"Fp": p})
        except ValueError as e:
            raise UsageError(str(e)) from None
    raise UsageError(f"unknown field {text!r}; use Q or Fp:<p>")


def _add_common(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--field", default=d(None), help="Q or Fp:<p> (default: Q, or the field in the input file)")
    parser.add_argument("--weight", type=int, default=d(None), help="bar truncation weight L")
    parser.add_argument("--format", choices=("json", "csv", "text"), default=d("json"))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--out", default=d(None), help="write the report here instead of stdout")
    parser.add_argument("--inject-fault", choices=FAULTS, default=d(None), help=argparse.SUPPRESS)


def build_parser():
    parser = argparse.ArgumentParser(prog="hochlie", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hh", help="Hochschild cohomology table of an algebra file")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--mode", choices=(FULL, REDUCED), default=FULL)
    _add_common(p, suppress=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--tuples", type=int, default=50)
    _add_common(p, suppress=True)

    p = sub.add_parser("beilinson", help="HH of the Beilinson pair and the tilting check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--tilting", action="store_true")
    _add_common(p, suppress=True)
    return parser


# -- commands -----------------------------------------------------------------------

def _record(check, case, ok, witness=None, **extra):
    rec = {"check": check, "case": case, "pass": bool(ok), "witness": None if ok else witness}
    rec.update(extra)
    return rec


def cmd_hh(args, field):
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{args.file}: JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{args.file}: expected a JSON object")
    try:
        A = algebra_from_json(data, field)
    except (AlgebraError, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{args.file}: invalid algebra: {e}") from None
    if args.mode == REDUCED and not A.has_vertices:
        raise UsageError("reduced mode needs a quiver input")
    F = A.field
    dims = hh_dims(A, args.max_degree, args.mode)
    results = []
    for i, d in enumerate(dims):
        reps = [c.to_json() for c in hh_space(A, i, args.mode).representatives] if d else []
        results.append({"check": "hh", "case": f"HH{i}", "pass": True, "witness": None,
                        "degree": i, "dim": d, "representatives": reps})
    zdim = center(A).dim
    results.append(_record("center", "HH0", dims[0] == zdim, f"dim HH0 {dims[0]} != dim Z(A) {zdim}",
                           dim=zdim))
    config = {"file": args.file, "field": F.descriptor(), "max_degree": args.max_degree, "mode": args.mode}
    return "hh", config, results


def cmd_verify(args, field):
    cfg = RunConfig(field=field or QQ, max_degree=args.max_degree, weight=args.weight,
                    seed=args.seed, tuples=args.tuples, inject_fault=args.inject_fault)
    if cfg.weight is not None and cfg.weight < cfg.max_degree + 2:
        raise UsageError(f"--weight must be at least max degree + 2 = {cfg.max_degree + 2}")
    names = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        results.extend(run_suite(name, cfg))
    config = dict(cfg.echo(), suite=args.suite)
    return "verify", config, results


def cmd_beilinson(args, field):
    n = args.n
    if not 0 <= n <= 3:
        raise UsageError("--n must lie in 0..3")
    F = field or QQ
    A, B = beilinson_pair(n, F)
    da = hh_dims(A, args.max_degree, REDUCED)
    db = hh_dims(B, args.max_degree, REDUCED)
    results = [_record("hh_equal", f"HH{i}", x == y, {"A": x, "B": y}, degree=i, dim_A=x, dim_B=y)
               for i, (x, y) in enumerate(zip(da, db))]
    if args.tilting:
        rep = tilting_check_beilinson(n, F)
        for i, v in sorted(rep["hom"].items()):
            ok = v == 0 if i != 0 else v == rep["dim_B"]
            results.append(_record("tilting", f"i={i:+d}", ok, {"i": i, "dim": v}, i=i, dim=v))
    config = {"n": n, "field": F.descriptor(), "max_degree": args.max_degree, "tilting": args.tilting}
    return "beilinson", config, results


COMMANDS = {"hh": cmd_hh, "verify": cmd_verify, "beilinson": cmd_beilinson}


# -- reports ---------------------------------------------------------------------

def make_report(command, config, results):
    failed = sum(1 for r in results if not r["pass"])
    return {
        "report_version": REPORT_VERSION,
        "tool_version": __version__,
        "command": command,
        "config": config,
        "sign_constants": sign_constants(),
        "results": results,
        "summary": {"total": len(results), "passed": len(results) - failed, "failed": failed},
    }


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = report["results"]
    if fmt == "csv":
        keys = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                        for k, v in r.items()})
        return buf.getvalue()
    lines = [f"{report['command']} (hochlie {report['tool_version']})"]
    lines.append("config: " + ", ".join(f"{k}={v}" for k, v in sorted(report["config"].items())))
    lines.append("signs: " + ", ".join(f"{k}={v}" for k, v in sorted(report["sign_constants"].items())))
    for r in rows:
        parts = ["PASS" if r["pass"] else "FAIL"]
        parts += [str(r[k]) for k in ("suite", "algebra") if k in r]
        parts += [r["check"], r["case"]]
        if "dim" in r:
            parts.append(f"dim={r['dim']}")
        elif "dim_A" in r:
            parts.append(f"A={r['dim_A']} B={r['dim_B']}")
        if not r["pass"]:
            parts.append(f" witness: {json.dumps(r['witness'], sort_keys=True)}")
        lines.append(" ".join(parts))
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} passed, {s['failed']} failed")
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        field = parse_field(args.field) if args.field else None
        command, config, results = COMMANDS[args.command](args, field)
    except UsageError as e:
        print(f"hochlie: error: {e}", file=sys.stderr)
        return 2
    report = make_report(command, config, results)
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if report["summary"]["failed"] else 0


if __name__ == "__main__":
    sys.exit(main())
