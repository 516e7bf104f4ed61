"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""

import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from higherss import verify as V
from higherss.oracle import random_complex

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
COMPLEXES = 100
_capsys = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capsys
    _capsys = capsys
    yield


def report(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {name}" + (f": {detail}" if detail else "")
    with _capsys.disabled():
        print("\n" + line)
    assert ok, line


def failures(reports):
    return [r.line() for r in reports if not r.passed]


def test_1_word_lemmas():
    t0 = time.perf_counter()
    reps = V.word_lemma_suite(2, 7) + V.word_lemma_suite(3, 5)
    dt = time.perf_counter() - t0
    bad = failures(reps)
    report("1 word-calculus lemmas", not bad and dt < 60, f"{len(reps)} checks, {len(bad)} failed, {dt:.1f}s (limit 60s)")


def test_2_worked_values():
    bad = failures(V.worked_values_suite())
    report("2 worked values", not bad, "; ".join(bad[:2]) or "plan_word (3,5), Fibonacci k<=10, n=3 final word")


def _complexes():
    for s in range(COMPLEXES):
        p = (2, 5)[s % 2]
        yield s, p, random_complex(s, 2, ((0, 0), (3, 3)), 2, p)


def test_3_page_theorem():
    t0 = time.perf_counter()
    bad, checks = [], 0
    for s, p, c in _complexes():
        res = V.theorem_checks(c)
        checks += sum(res["counts"].values())
        bad += [(s, part, f[:1]) for part, f in res["fails"].items() if f]
    dt = time.perf_counter() - t0
    report(
        "3 page theorem (a)-(e)",
        not bad and dt < 600,
        f"{COMPLEXES} complexes, {checks} checks, {len(bad)} failed {bad[:2]}, {dt:.0f}s (limit 600s)",
    )


def test_4_classical():
    bad = []
    for s in range(50):
        p = (2, 5)[s % 2]
        c = random_complex(1000 + s, 1, ((0,), (6,)), 2, p)
        bad += failures(V.classical_suite(c, f"seed={1000 + s} p={p}"))
    report("4 n=1 classical equivalence", not bad, f"50 complexes, {len(bad)} failed")


def test_5_dual_algorithms():
    bad, total = [], 0
    for s, p, c in _complexes():
        rng = np.random.default_rng(s)
        bad += failures(V.dual_algorithm_suite(c, rng, 5, f"seed={s}"))
        total += 5
    report("5 dual S-term algorithms", not bad and total >= 500, f"{total} quads, {len(bad)} failing complexes")


def test_6_short_exact_sequence():
    bad, total = [], 0
    for s, p, c in _complexes():
        rng = np.random.default_rng(10_000 + s)
        bad += failures(V.ses_suite(c, rng, 2, f"seed={s}"))
        total += 2
    report("6 short exact sequence", not bad and total >= 200, f"{total} chains, {len(bad)} failing complexes")


def test_7_planner():
    t0 = time.perf_counter()
    bad = failures(V.planner_suite(20))
    dt = time.perf_counter() - t0
    report("7 planner round trip", not bad and dt < 5, f"{len(bad)} failed, {dt:.2f}s (limit 5s)")


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "higherss.cli", *args], capture_output=True, check=False).stdout


def test_8_cli_determinism():
    cases = []
    for f in sorted(SAMPLES.glob("*.json")):
        n = 1 if f.name == "line.json" else 2
        pos = ",".join(["0"] * n)
        word = "1^e" if n == 1 else "121^e2^e"
        cases += [("page", "--input", str(f), "--word", "", "--position", pos),
                  ("page", "--input", str(f), "--word", word, "--position", pos)]
    cases += [("plan", "--normal", "3,5", "--j1", "1"), ("plan", "--normal", "8,13", "--j1", "2", "--k", "2")]
    cases += [("draw-b", "--word", "12121^e"), ("draw-b", "--word", "1231", "--n", "3", "--format", "svg")]
    diff = [c for c in cases if not _cli(*c) or _cli(*c) != _cli(*c)]
    report("8 CLI determinism", not diff, f"{len(cases)} invocations, {len(diff)} differ or empty")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
