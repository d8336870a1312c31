"""End-to-end acceptance checks, one per criterion.

Each check prints a single ``PASS``/``FAIL`` line with its timing and budget.
Run standalone with ``python3 tests/test_acceptance.py`` or through pytest.
"""
import json
import os
import subprocess
import sys
import time

import pytest

from hochlie.algebra import beilinson_pair, dual_numbers, kronecker_quiver, path_algebra
from hochlie.hochschild import FULL, REDUCED, hh_dims
from hochlie.homalg import tilting_check_beilinson
from hochlie.defpic import BRACKET_SIGN, ROUTE_SIGN
from hochlie.suites import RunConfig, run_suite, suite_stasheff

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = json.load(open(os.path.join(HERE, "fixtures", "hh_oracle.json")))


def _fails(recs, checks=None):
    return [r for r in recs if not r["pass"] and (checks is None or r["check"] in checks)]


def _count(recs, checks):
    return sum(1 for r in recs if r["check"] in checks)


def c1_gerstenhaber():
    recs = run_suite("gerstenhaber", RunConfig())
    bad = _fails(recs)
    algs = sorted({r["algebra"] for r in recs})
    return not bad, (f"{len(recs)} identity checks on {', '.join(algs)}, {len(bad)} failed "
                     "(Leibniz for -d in the right-operator sign form)"), 60


def c2_hh_tables():
    got = {
        "dual_numbers": hh_dims(dual_numbers(), 2),
        "kronecker": hh_dims(path_algebra(kronecker_quiver()), 2),
    }
    want = {k: FIXTURES[k]["hh"][:3] for k in got}
    ok = got == want and want == {"dual_numbers": [2, 1, 1], "kronecker": [1, 3, 0]}
    return ok, f"computed {got}, oracle {want}", None


def c3_stasheff():
    recs = suite_stasheff(RunConfig(weight=6))
    checks = {"transport", "composition", "coassociativity", "bar_differential_square"}
    bad = _fails(recs, checks)
    return not bad, f"L=6, {_count(recs, checks)} checks, {len(bad)} failed", None


def c4_bar_resolution():
    recs = run_suite("barres", RunConfig(weight=4))
    bad = _fails(recs)
    h = {r["algebra"]: r["homology"] for r in recs if r["check"] == "H0_is_A"}
    return not bad, f"L=4, homology dims {h}, {len(bad)} failed", 30


def c5_deformation_roundtrip():
    recs = run_suite("defo", RunConfig())
    bad = _fails(recs)
    return not bad, f"{len(recs)} checks (roundtrip, coboundary shift, isomorphisms), {len(bad)} failed", None


def c6_bracket():
    recs = run_suite("bracket", RunConfig(weight=6))
    bad = _fails(recs)
    signs = sorted({r["sign"] for r in recs})
    return (not bad and signs == [BRACKET_SIGN]), (
        f"L=6, {len(recs)} class pairs, measured signs {signs}, "
        f"fixed bracket sign {BRACKET_SIGN:+d}, route sign {ROUTE_SIGN:+d}, {len(bad)} failed"), 300


def c7_derived_shadow():
    A2, B2 = beilinson_pair(2)
    da, db = hh_dims(A2, 4, REDUCED), hh_dims(B2, 4, REDUCED)
    A1, B1 = beilinson_pair(1)
    full_red = all(hh_dims(X, 4, FULL) == hh_dims(X, 4, REDUCED) for X in (A1, B1))
    tilt = tilting_check_beilinson(2)
    nonzero = {i: v for i, v in tilt["hom"].items() if i != 0 and v}
    ok = da == db and full_red and tilt["ok"] and tilt["end_dim"] == 12 and not nonzero
    return ok, (f"HH(A)={da} HH(B)={db}, full=reduced at n=1: {full_red}, "
                f"dim End(T)={tilt['end_dim']}, nonzero shifts {nonzero}"), 120


def c8_commutator():
    recs = suite_stasheff(RunConfig(weight=6))
    bad = _fails(recs, {"commutator"})
    return not bad, f"{_count(recs, {'commutator'})} random coderivation pairs, {len(bad)} failed", None


def c9_determinism(tmp="/tmp"):
    outs = []
    for k in range(2):
        path = os.path.join(tmp, f"hochlie_accept_{os.getpid()}_{k}.json")
        cmd = [sys.executable, "-m", "hochlie", "verify", "--suite", "all", "--seed", "0", "--out", path]
        code = subprocess.run(cmd, capture_output=True).returncode
        with open(path, "rb") as fh:
            outs.append((code, fh.read()))
        os.remove(path)
    same = outs[0][1] == outs[1][1]
    return same and outs[0][0] == 0, f"verify --suite all twice: exit {outs[0][0]}, byte-identical {same}", None


CRITERIA = [
    (1, "gerstenhaber suite", c1_gerstenhaber),
    (2, "HH tables vs rank oracle", c2_hh_tables),
    (3, "Stasheff transport", c3_stasheff),
    (4, "bar resolution", c4_bar_resolution),
    (5, "deformation roundtrip", c5_deformation_roundtrip),
    (6, "commutator route vs opposite bracket", c6_bracket),
    (7, "Beilinson HH and tilting", c7_derived_shadow),
    (8, "coalgebra commutator identity", c8_commutator),
    (9, "verify determinism", c9_determinism),
]


def evaluate(fn):
    t0 = time.perf_counter()
    ok, detail, budget = fn()
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        ok = False
        detail += "; over budget"
    limit = f" (limit {budget}s)" if budget else ""
    return ok, f"{dt:.1f}s{limit}: {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, line = evaluate(fn)
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {num} {title}: {line}")
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        ok, line = evaluate(fn)
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {num} {title}: {line}", flush=True)
    sys.exit(1 if failed else 0)
