"""The ten acceptance criteria, one check each.

Run with pytest (a summary block lists PASS/FAIL per criterion) or directly:
``python3 tests/test_acceptance.py``.
"""
import os
import subprocess
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from conftest import ACCEPTANCE_LINES, engine_for, tables_for  # noqa: E402
from tha_forge import focal, rootsys, superlocal, tha  # noqa: E402

EXPECTED = {("A", r): list(range(1, r + 1)) for r in range(1, 9)}
EXPECTED.update({("B", r): [1] for r in range(2, 9)})
EXPECTED.update({("C", r): [r] for r in range(2, 9)})
EXPECTED.update({("D", r): [1, r - 1, r] for r in range(4, 9)})
EXPECTED.update({("E", 6): [1, 6], ("E", 7): [7], ("E", 8): [], ("F", 4): [], ("G", 2): []})


def criterion_1():
    t0 = time.perf_counter()
    got = {tr: rootsys.pseudo_minuscule_nodes(rootsys.build_cartan(*tr)) for tr in EXPECTED}
    dt = time.perf_counter() - t0
    wrong = [tr for tr in EXPECTED if got[tr] != EXPECTED[tr]]
    return not wrong and dt < 1.0, f"{len(EXPECTED)} types, mismatches {wrong}, {dt:.2f}s"


def criterion_2():
    n = 0
    bad = []
    for (t, r), nodes in EXPECTED.items():
        c = rootsys.build_cartan(t, r)
        for k in nodes:
            lab = [int(i == k - 1) for i in range(r)]
            w = rootsys.make_weight(c, lab, "auto")
            ext = rootsys.build_B(c, w)
            rep = rootsys.check_L_identities(ext, rootsys.weight_form(c, w.kappa), w)
            n += 1
            if not rep["holds"]:
                bad.append((t, r, k))
    return not bad, f"{n} cases, failures {bad}"


def criterion_3():
    cases = [("E", 6, (1, 0, 0, 0, 0, 0), 27), ("E", 7, (0,) * 6 + (1,), 56)]
    cases += [("B", r, (1,) + (0,) * (r - 1), 2 * r + 1) for r in range(2, 9)]
    cases += [("A", r, (1,) + (0,) * (r - 1), r + 1) for r in range(1, 9)]
    bad = []
    for t, r, lab, want in cases:
        c = rootsys.build_cartan(t, r)
        w = rootsys.make_weight(c, lab, "auto")
        got = superlocal.build_local_part(c, w, rootsys.build_B(c, w)).n1
        if got != want:
            bad.append((t, r, got, want))
    return not bad, f"{len(cases)} cases, mismatches {bad}"


def criterion_4():
    parts = []
    ok = True
    for case in (("A", 1, (1,)), ("A", 2, (1, 0))):
        t0 = time.perf_counter()
        rep = focal.check_focal(engine_for(*case), cutoff=3, samples=1000, seed=0)
        dt = time.perf_counter() - t0
        exhaustive = sum(r["exhaustive"] for r in rep["identities"])
        ok &= rep["passed"] and len(rep["identities"]) == 13 and dt < 60
        parts.append(f"{case[0]}{case[1]}: {exhaustive}+1000 triples, "
                     f"{rep['violations']} violations, {dt:.1f}s")
    return ok, "; ".join(parts)


def criterion_5():
    parts = []
    ok = True
    for case in (("A", 1, (1,)), ("A", 2, (1, 0))):
        eng = engine_for(*case)
        lie = focal.check_local_lie(eng, cutoff=3, samples=1000, seed=0)
        com = focal.check_commutator(eng)
        ok &= lie["passed"] and len(lie["identities"]) == 8 and com["passed"]
        parts.append(f"{case[0]}{case[1]}: lie {lie['violations']}, commutator {com['violations']}")
    return ok, "; ".join(parts)


def criterion_6():
    zero = [superlocal.prop41_scan(tables_for(*c))["all_zero"]
            for c in (("A", 2, (1, 0)), ("D", 4, (1, 0, 0, 0)), ("A", 3, (0, 1, 0)))]
    witness = superlocal.prop41_scan(tables_for("A", 1, (2,)))
    ok = all(zero) and not witness["all_zero"]
    w = witness["nonzero"][0] if witness["nonzero"] else {}
    shown = {k: str(v) for k, v in w.get("value", {}).items()}
    return ok, f"all-zero {zero}; A1 2L1 witness {w.get('element')} factor {w.get('factor')} -> {shown}"


def criterion_7():
    passes = []
    for case in (("A", 1, (1,)), ("A", 2, (1, 0)), ("A", 3, (1, 0, 0))):
        eng = engine_for(*case)
        passes.append(tha.lemma42_check(eng.t, eng)["passed"])
    eng = engine_for("A", 1, (1,), (1, 2, 1))
    fails = not tha.lemma42_check(eng.t, eng)["passed"]
    return all(passes) and fails, f"holds {passes}; b=2,c=1 fails: {fails}"


def criterion_8():
    parts = []
    ok = True
    for case in (("A", 2, (1, 0)), ("A", 3, (1, 0, 0))):
        eng = engine_for(*case)
        t0 = time.perf_counter()
        rep = tha.thm43_check(eng.t, eng, cutoff=4)
        dt = time.perf_counter() - t0
        fails = sum(g["fails"] for g in rep["groups"].values())
        ok &= rep["passed"] and dt < 300
        parts.append(f"{case[0]}{case[1]}: {len(rep['relations'])} relations, {fails} fail, "
                     f"ideal dims {rep['ideal']['dims']}, {dt:.1f}s")
    return ok, "; ".join(parts)


def criterion_9():
    rep = focal.check_pbw(engine_for("A", 2, (1, 0)), max_degree=4)
    return rep["passed"], f"{rep['checked']} triples, {rep['violations']} violations"


RUNS = [
    ["check", "focal", "--type", "A", "--rank", "1", "--lambda", "1", "--samples", "200",
     "--seed", "12345"],
    ["check", "lie", "--type", "A", "--rank", "2", "--lambda", "1,0", "--cutoff", "2",
     "--samples", "100", "--seed", "99"],
    ["check", "thm43", "--type", "A", "--rank", "2", "--lambda", "1,0", "--cutoff", "3"],
    ["emit", "tables", "--type", "D", "--rank", "4", "--lambda", "1,0,0,0"],
]


def criterion_10():
    same = []
    for argv in RUNS:
        outs = []
        for hashseed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            proc = subprocess.run([sys.executable, "-m", "tha_forge.cli"] + argv, env=env,
                                  capture_output=True)
            outs.append(proc.stdout)
        same.append(outs[0] == outs[1] and bool(outs[0]))
    return all(same), f"{len(RUNS)} commands, identical across processes: {same}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    _record(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        _record(i, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
