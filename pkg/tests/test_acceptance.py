"""Acceptance gate: every criterion, one pass/fail line each.

Runs ``monoglue verify all`` twice in fresh interpreters (different hash
seeds); criteria 1-10 are read from the first report, criterion 11 compares
the two byte for byte. Also runnable directly: ``python tests/test_acceptance.py``.
"""

import json
import os
import subprocess
import sys
import time

import pytest

BUDGET = 60.0

# criterion -> (title, extra check on the suite report)
CRITERIA = {
    "1": ("spectrum basics", lambda r: r["details"]["primes_A2"] == 4 and len(r["details"]["groups"]) >= 4),
    "2": ("structure sheaf sections and stalks", lambda r: r["checked"] > 0),
    "3": ("localizations preserve standard limits", lambda r: all(row[4] == 0 for row in r["details"]["diagrams"])),
    "4": ("local epis surjective on units", lambda r: r["checked"] > 0),
    "5": ("local flat epis are isomorphisms", lambda r: r["checked"] > 0),
    "6": ("three open-immersion routes agree", lambda r: r["checked"] >= 20),
    "7": ("nonunit families do not cover", lambda r: r["checked"] > 0),
    "8": ("scheme points equal descent data", lambda r: len(r["details"]["cells"]) == 25),
    "9": ("G-points of the projective line", lambda r: r["details"] == {"g_points": 2, "hom_schemes": 2}),
    "10": ("base change to rings", lambda r: r["checked"] > 0),
}


def _verify(seed: str):
    env = dict(os.environ, PYTHONHASHSEED=seed)
    env.pop("MONOGLUE_DEGREE_BOUND", None)
    proc = subprocess.run(
        [sys.executable, "-m", "monoglue.cli", "verify", "all"],
        capture_output=True,
        env=env,
        timeout=BUDGET,
    )
    return proc.returncode, proc.stdout


@pytest.fixture(scope="module")
def runs():
    t0 = time.perf_counter()
    first = _verify("1")
    second = _verify("2")
    return first, second, time.perf_counter() - t0


def _line(key, ok, title, note=""):
    return f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {title}{'  (' + note + ')' if note else ''}"


def _evaluate(runs):
    (code1, out1), (code2, out2), elapsed = runs
    report = json.loads(out1)
    suites = {r["suite"]: r for r in report["result"]}
    lines, verdicts = [], {}
    for key, (title, extra) in CRITERIA.items():
        r = suites[key]
        ok = r["passed"] and extra(r)
        verdicts[key] = ok
        lines.append(_line(key, ok, title, "; ".join(r["failures"][:3])))
    ok11 = code1 == 0 and code2 == 0 and out1 == out2 and elapsed < BUDGET
    verdicts["11"] = ok11
    lines.append(_line("11", ok11, "verify all exits 0 with byte-identical JSON", f"{elapsed:.1f}s for both runs"))
    return verdicts, lines


@pytest.fixture(scope="module")
def evaluated(runs):
    return _evaluate(runs)


@pytest.mark.parametrize("key", list(CRITERIA) + ["11"])
def test_criterion(evaluated, key, capsys):
    verdicts, lines = evaluated
    with capsys.disabled():
        print("\n" + lines[list(verdicts).index(key)])
    assert verdicts[key]


if __name__ == "__main__":
    t0 = time.perf_counter()
    r = (_verify("1"), _verify("2"), 0.0)
    r = (r[0], r[1], time.perf_counter() - t0)
    verdicts, lines = _evaluate(r)
    print("\n".join(lines))
    sys.exit(0 if all(verdicts.values()) else 1)
