"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line, with the tolerances pinned in the assertions.

Statistical checks run the same code paths as the CLI `check` command;
the determinism criterion shells out to the CLI and compares bytes.
"""

import json
import math
import random
import subprocess
import sys
import time

import pytest

from cycform.checks import (
    check_algebra,
    check_lemma33,
    check_mixed,
    check_theorem34,
    check_weights,
)
from cycform.weights.angles import cocycle_defect
from cycform.weights.cache import WeightCache


def _report(name: str, passed: bool, detail: str, budget: float, elapsed: float):
    status = "PASS" if passed else "FAIL"
    print(f"[{status}] {name}: {detail} ({elapsed:.1f}s, budget {budget:.0f}s)")
    assert passed, f"{name}: {detail}"
    assert elapsed < budget, f"{name} exceeded its runtime budget"


def test_criterion_1_exact_algebra_suite():
    """b^2, B^2, bB+Bb, dH^2, both graded Jacobis, Leibniz rules, d^2,
    the Cartan module law, the shift-sum form of B, and B-compatibility of
    the action: 200 exact random trials each, zero tolerance."""
    t0 = time.monotonic()
    algebra = check_algebra(dim_max=3, trials=200, seed=7)
    mixed = check_mixed(dim_max=3, trials=200, seed=11)
    elapsed = time.monotonic() - t0
    bad = [c.name for r in (algebra, mixed) for c in r.checks if not c.passed]
    _report(
        "criterion 1: exact algebra suite",
        not bad,
        f"{len(algebra.checks) + len(mixed.checks)} identities x 200 trials"
        + (f"; failing: {bad}" if bad else ""),
        budget=60.0,
        elapsed=elapsed,
    )


def test_criterion_2_angle_cocycle():
    """Additivity of the central angle, mod 1, to 1e-10 at 1e4 triples."""
    t0 = time.monotonic()
    rng = random.Random(2)
    worst = 0.0
    for _ in range(10_000):
        pts = []
        while len(pts) < 3:
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if 1e-6 < abs(z) < 0.999:
                pts.append(z)
        worst = max(worst, cocycle_defect(*pts))
    elapsed = time.monotonic() - t0
    _report(
        "criterion 2: angle cocycle identity",
        worst < 1e-10,
        f"max defect {worst:.2e}",
        budget=1.0,
        elapsed=elapsed,
    )


def test_criterion_3_weight_oracle(tmp_path):
    """Pure-central weights m=1,2,3 at 1e6 samples vs 1/(m!)^2, within
    4 sigma and 5e-3 absolute."""
    t0 = time.monotonic()
    report = check_weights(samples=1_000_000, seed=42, trials=100,
                           cache=WeightCache(tmp_path / "w.txt"), jobs=2)
    closed = [c for c in report.checks if c.name.startswith("weights: closed form")]
    elapsed = time.monotonic() - t0
    ok = all(c.passed for c in closed) and len(closed) == 3
    _report(
        "criterion 3: pure-central weight oracle",
        ok,
        "; ".join(c.detail for c in closed),
        budget=120.0,
        elapsed=elapsed,
    )


def test_criterion_4_slice_invariance(tmp_path):
    """Five graphs with n <= 1, m <= 3: base-slice and shifted-slice
    estimates agree within 4 sigma."""
    t0 = time.monotonic()
    report = check_weights(samples=1_000_000, seed=42, trials=100,
                           cache=WeightCache(tmp_path / "w.txt"), jobs=2)
    slices = [c for c in report.checks if "slice invariance" in c.name]
    elapsed = time.monotonic() - t0
    ok = all(c.passed for c in slices) and len(slices) == 5
    _report(
        "criterion 4: slice invariance",
        ok,
        f"{len(slices)} graphs",
        budget=300.0,
        elapsed=elapsed,
    )


def test_criterion_5_lemma_weight_identity(tmp_path):
    """The cyclic-shift weight sum equals the averaged deleted-edge sum on
    the stabilized graph, within 4 sigma, shared cache."""
    t0 = time.monotonic()
    report = check_lemma33(samples=1_000_000, seed=42,
                           cache=WeightCache(tmp_path / "w.txt"), jobs=2)
    elapsed = time.monotonic() - t0
    ok = report.passed and len(report.checks) == 3
    _report(
        "criterion 5: stabilization weight identity",
        ok,
        "; ".join(c.detail for c in report.checks),
        budget=600.0,
        elapsed=elapsed,
    )


def test_criterion_6_flagship_exact_tier():
    """Derivative side = B side = deleted-edge expression, exactly, with
    closed-form weights (chains up to four slots, dimension up to 3)."""
    t0 = time.monotonic()
    report = check_theorem34(tiers=("exact",))
    elapsed = time.monotonic() - t0
    ok = report.passed and len(report.checks) == 6
    _report(
        "criterion 6: flagship identity, exact tier",
        ok,
        f"{len(report.checks)} battery cases exact",
        budget=60.0,
        elapsed=elapsed,
    )


def test_criterion_7_flagship_numeric_tier(tmp_path):
    """One aerial vertex, chains up to two slots, dimension 2: the three
    routes pairwise within combined 4 sigma at 2e6 samples per weight."""
    t0 = time.monotonic()
    report = check_theorem34(tiers=("numeric",),
                             cache=WeightCache(tmp_path / "w.txt"), jobs=2)
    elapsed = time.monotonic() - t0
    ok = report.passed and len(report.checks) == 12
    worst = max(
        (float(c.detail.split("sigma-ratio ")[1]) for c in report.checks), default=0.0
    )
    _report(
        "criterion 7: flagship identity, numeric tier",
        ok,
        f"{len(report.checks)} pairwise checks, worst sigma-ratio {worst:.2f}",
        budget=900.0,
        elapsed=elapsed,
    )


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "algebra", "--trials", "40", "--seed", "7", "--json"],
        ["check", "mixed", "--trials", "30", "--seed", "11", "--json"],
        ["check", "weights", "--samples", "100000", "--seed", "42", "--json"],
        ["check", "lemma33", "--samples", "100000", "--seed", "42", "--json"],
        ["check", "theorem34", "--samples", "100000", "--json"],
    ],
    ids=["algebra", "mixed", "weights", "lemma33", "theorem34"],
)
def test_criterion_8_determinism(argv):
    """Reruns with one seed are byte-identical, including under parallel
    block evaluation."""
    t0 = time.monotonic()

    def run(jobs):
        out = subprocess.run(
            [sys.executable, "-m", "cycform.cli", *argv, "--jobs", str(jobs)],
            capture_output=True, text=True, timeout=600,
        )
        return out.stdout, out.returncode

    first, rc1 = run(1)
    second, rc2 = run(1)
    parallel, rc3 = run(2)
    elapsed = time.monotonic() - t0
    ok = first == second == parallel and rc1 == rc2 == rc3 == 0
    payload = json.loads(first)
    _report(
        f"criterion 8: determinism [{argv[1]}]",
        ok and payload["passed"],
        f"3 runs byte-identical ({len(first)} bytes)",
        budget=600.0,
        elapsed=elapsed,
    )
