"""Acceptance suite: each criterion runs at its stated scale and tolerance.

The full reproduction report is built once per session and shared by the
per-criterion tests; the determinism test rebuilds it from scratch and
demands byte-identical JSON.
"""

import json
import time

import pytest

from voronoi_game.verify import ALL_CHECKS, DEFAULT_SEED, run_all


@pytest.fixture(scope="session")
def acceptance():
    timings: dict[str, float] = {}
    checks = []
    for name, fn in ALL_CHECKS:
        start = time.perf_counter()
        result = fn(DEFAULT_SEED)
        timings[name] = time.perf_counter() - start
        checks.append(result.to_json())
    report = {
        "seed": DEFAULT_SEED,
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
    return report, timings


def _criterion(acceptance, name):
    report, timings = acceptance
    check = next(c for c in report["checks"] if c["name"] == name)
    status = "PASS" if check["passed"] else "FAIL"
    print(f"[{status}] {name} ({timings[name]:.1f}s)")
    for row in check["rows"]:
        mark = "ok" if row["passed"] else "BAD"
        print(f"   {mark} {row['metric']}: expected {row['expected']}, got {row['got']}")
    return check, timings[name]


def test_winner_table(acceptance):
    check, elapsed = _criterion(acceptance, "winner-table")
    assert check["passed"]
    assert elapsed < 1.0


def test_formula_geometry_equivalence(acceptance):
    check, elapsed = _criterion(acceptance, "formula-geometry-equivalence")
    assert check["passed"]
    assert elapsed < 120.0


def test_two_site_best_response_constant(acceptance):
    check, _ = _criterion(acceptance, "two-site-best-response")
    assert check["passed"]


def test_four_site_constants(acceptance):
    check, _ = _criterion(acceptance, "four-site-constants")
    assert check["passed"]


def test_fourstones_bound(acceptance):
    check, _ = _criterion(acceptance, "fourstones-bound")
    assert check["passed"]


def test_winning_interval(acceptance):
    check, _ = _criterion(acceptance, "winning-interval")
    assert check["passed"]


def test_axis_degeneracy(acceptance):
    check, _ = _criterion(acceptance, "axis-degeneracy")
    assert check["passed"]


def test_non_grid_punishment(acceptance):
    check, elapsed = _criterion(acceptance, "non-grid-punishment")
    assert check["passed"]
    assert elapsed < 60.0


def test_best_response_determinism(acceptance):
    check, _ = _criterion(acceptance, "best-response-determinism")
    assert check["passed"]


def test_full_report_byte_identical(acceptance):
    report, _ = acceptance
    fresh = run_all(seed=DEFAULT_SEED)
    assert json.dumps(fresh, sort_keys=True) == json.dumps(report, sort_keys=True)
    print("[PASS] verify-paper report is byte-identical across runs")
