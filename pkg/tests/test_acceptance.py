"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""

import csv
import io
import itertools
import time

import pytest

from equipart import f2poly
from equipart.charclass import Tautological, Trivial
from equipart.cli import run
from equipart.criteria import certify_orthogonal, certify_unconstrained, iota1_via_inverse
from equipart.ideals import member_triangular, orthogonal_generators_symmetric, orthogonal_system, verify_fi_identity
from equipart.invariants import (
    dickson2_power_closed_form,
    dickson_top,
    iota2_binomial,
    iota_bundles,
    iota_numeric,
    omega_cell,
    partition_plan,
    plan_iota,
)
from equipart.verify import PUBLISHED_OMEGA, numbers_checks, run_checks, select

COLUMNS = range(3, 11)


@pytest.mark.xfail(
    strict=True,
    reason=(
        "five published cells exceed the exact values "
        "(omega_2(7), omega_2(8), omega_3(8), omega_3(10), omega_4(8)); the exact values agree "
        "with rewriting, linear algebra over the fbar generators, and an independent Groebner basis"
    ),
)
def test_criterion_01_omega_table(criterion):
    start = time.perf_counter()
    out, err = io.StringIO(), io.StringIO()
    code = run(["table", "omega", "--k", "2,3,4", "--n", "3..10", "--format", "csv"], out, err)
    rows = list(csv.reader(io.StringIO(out.getvalue())))
    got = {int(r[0]): tuple(int(v) for v in r[1:]) for r in rows[1:]}
    mismatches = [
        f"omega_{k}({n})={g} vs {w}"
        for k in PUBLISHED_OMEGA
        for n, g, w in zip(COLUMNS, got[k], PUBLISHED_OMEGA[k])
        if g != w
    ]
    elapsed = time.perf_counter() - start
    ok = code == 0 and not mismatches and elapsed < 60
    detail = "24 cells match" if ok else f"{len(mismatches)} of 24 cells differ: " + ", ".join(mismatches)
    criterion(1, ok, f"{detail} ({elapsed:.2f}s)")
    assert ok


def test_criterion_02_iota_one_law(criterion):
    bad = [m for m in range(1, 65) if iota_numeric([m]) != m - 1]
    bad += [f"trivial({n})" for n in range(1, 13) if iota_bundles([Trivial(n)]) != n - 1]
    criterion(2, not bad, f"iota_1(m)=m-1 for m<=64, trivial(n) for n<=12; violations {bad}")
    assert not bad


def test_criterion_03_doubling_bounds_equality(criterion):
    bad = []
    for k in range(1, 5):
        for m in range(1, 7):
            bounds = [2**i * m + 1 for i in range(k)]
            if iota_numeric(bounds) != m:
                bad.append(bounds)
    criterion(3, not bad, f"iota(m+1, 2m+1, ..., 2^(k-1)m+1) = m for k<=4, m<=6; violations {bad}")
    assert not bad


def test_criterion_04_two_variable_binomial_rule(criterion):
    bad = []
    for m1, m2 in itertools.product(range(1, 13), repeat=2):
        best = max([m for m in range(m1 + m2) if iota2_binomial(m, m1, m2)], default=0)
        if iota_numeric([m1, m2]) != best:
            bad.append((m1, m2))
    for m in range(11):
        if f2poly.power(dickson_top(2), m) != dickson2_power_closed_form(m):
            bad.append(f"e_2^{m}")
    criterion(4, not bad, f"144 bound pairs and 11 closed-form powers; violations {bad}")
    assert not bad


def test_criterion_05_numeric_propositions(criterion):
    results = numbers_checks()
    vacuous = [name for name, (hits, _) in results.items() if hits == 0]
    violations = {name: bad for name, (_, bad) in results.items() if bad}
    ok = not vacuous and not violations
    counts = ", ".join(f"{name}:{hits}" for name, (hits, _) in results.items())
    criterion(5, ok, f"instances checked {counts}; vacuous {vacuous}; violations {violations}")
    assert ok


def test_criterion_06_orthogonal_ideals_coincide(criterion):
    bad = []
    cells = 0
    for n in range(1, 9):
        for k in range(1, min(n, 4) + 1):
            cells += 1
            system = orthogonal_system(n, k)
            if not all(member_triangular(g, system) for g in orthogonal_generators_symmetric(n, k)):
                bad.append(f"fbar reduction n={n} k={k}")
            if not verify_fi_identity(n, k):
                bad.append(f"identity n={n} k={k}")
    criterion(6, not bad, f"{cells} (n,k) pairs with n<=8, k<=4; violations {bad}")
    assert not bad


def test_criterion_07_tautological_iota_one(criterion):
    bad = []
    for d in range(1, 7):
        for ell in range(1, d + 1):
            e = Tautological(ell, d)
            if not iota1_via_inverse(e) == iota_bundles([e]) == d - 1:
                bad.append((ell, d))
    criterion(7, not bad, f"both routes give d-1 for 1<=l<=d<=6; violations {bad}")
    assert not bad


def test_criterion_08_grassmann_matches_numeric(criterion):
    start = time.perf_counter()
    bad = []
    cases = 0
    for d in range(1, 6):
        for ell in range(1, d + 1):
            for k in range(1, min(ell, 2) + 1):
                cases += 1
                if iota_bundles([Tautological(ell, d)] * k) != iota_numeric([d] * k):
                    bad.append((ell, d, k))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 180
    criterion(8, ok, f"{cases} cases with d<=5; violations {bad} ({elapsed:.2f}s)")
    assert ok


def test_criterion_09_flag_nonvanishing(criterion):
    results = run_checks(select("flag"))
    bad = {name: v for name, v in results if v}
    criterion(9, not bad, f"checks {[name for name, _ in results]}; failures {bad}")
    assert not bad


def test_criterion_10_omega_lower_bound_and_extra_line(criterion):
    bad = []
    for k in PUBLISHED_OMEGA:
        for n in COLUMNS:
            if omega_cell(k, n) < iota_numeric([n + 1] * k) - 1:
                bad.append(f"omega_{k}({n})")
    implications = 0
    for n in range(1, 9):
        for k in range(1, min(n, 3) + 1):
            for j in range(1, 6):
                if certify_unconstrained(Trivial(n + 1), j + 1, k).certified:
                    implications += 1
                    if not certify_orthogonal(Trivial(n), j, k).certified:
                        bad.append(f"n={n} k={k} j={j}")
    ok = not bad and implications > 0
    criterion(10, ok, f"24 table cells and {implications} extra-line implications; violations {bad}")
    assert ok


def test_criterion_11_planner(criterion):
    bad = []
    plans = 0
    for n in (2, 3):
        for j in range(1, 7):
            steps = partition_plan(n, j, 10**6).steps
            for k in range(1, 4):
                plan = partition_plan(n, j, steps[k].cumulative_degree - 1)
                plans += 1
                if plan.k != k or plan_iota(plan) < j or not plan.budget_bound_holds:
                    bad.append((n, j, k))
    criterion(11, not bad, f"{plans} plans for n in (2,3), j<=6, k<=3; violations {bad}")
    assert not bad
