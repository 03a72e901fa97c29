"""Property suites that re-derive the library's invariants and the published numbers.

Each check returns a list of failure descriptions; an empty list means it passed.
Checks use a fixed seed so that every run inspects the same instances.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable

from . import f2poly
from .charclass import Hopf, Inverse, Sum, Tautological, Trivial, sw_class
from .coeffring import flag_algebra, flag_monomial_nonzero, grassmann_class
from .criteria import (
    certify_orthogonal,
    certify_unconstrained,
    dual_class_monomial,
    dual_class_product,
    fairy_bread_check,
    flag_product_checks,
    iota1_via_inverse,
)
from .f2poly import F2Poly
from .ideals import (
    CoeffPoly,
    MonomialIdeal,
    monomial_system,
    orthogonal_generators_symmetric,
    orthogonal_system,
    verify_fi_identity,
)
from .invariants import (
    dickson2_power_closed_form,
    dickson_quotient,
    dickson_top,
    iota2_binomial,
    iota_bundles,
    iota_numeric,
    omega_cell,
    partition_plan,
)

# Published omega_k(n) values for n = 3..10.
PUBLISHED_OMEGA = {
    2: (0, 1, 2, 2, 3, 4, 4, 5),
    3: (0, 0, 0, 1, 1, 2, 2, 3),
    4: (0, 0, 0, 0, 0, 1, 1, 1),
}
OMEGA_COLUMNS = tuple(range(3, 11))

SEED = 20240611


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    run: Callable[[], list[str]]


REGISTRY: list[Check] = []


def check(suite: str):
    def register(fn):
        REGISTRY.append(Check(fn.__name__, suite, fn))
        return fn

    return register


def suites() -> list[str]:
    return sorted({c.suite for c in REGISTRY})


def select(suite: str) -> list[Check]:
    if suite == "all":
        return list(REGISTRY)
    chosen = [c for c in REGISTRY if c.suite == suite]
    if not chosen:
        raise KeyError(suite)
    return chosen


def random_poly(rng: random.Random, nvars: int, max_terms: int, max_degree: int) -> F2Poly:
    terms = set()
    for _ in range(rng.randint(0, max_terms)):
        budget = rng.randint(0, max_degree)
        exps = [0] * nvars
        for _ in range(budget):
            exps[rng.randrange(nvars)] += 1
        terms ^= {f2poly.pack(exps)}
    return F2Poly(nvars, frozenset(terms))


def complete_in(a: int, variables, nvars: int) -> F2Poly:
    return f2poly.complete_homogeneous(a, nvars, variables)


# -- polynomial arithmetic ---------------------------------------------------

@check("props")
def ring_axioms() -> list[str]:
    rng = random.Random(SEED)
    bad = []
    for trial in range(60):
        k = rng.randint(1, 4)
        p, q, r = (random_poly(rng, k, 5, 4) for _ in range(3))
        if (p * q) * r != p * (q * r):
            bad.append(f"associativity #{trial}: {p}, {q}, {r}")
        if p * q != q * p:
            bad.append(f"commutativity #{trial}: {p}, {q}")
        if (p + q) * r != p * r + q * r:
            bad.append(f"distributivity #{trial}: {p}, {q}, {r}")
        if p + p:
            bad.append(f"p + p != 0 #{trial}: {p}")
    return bad


@check("props")
def frobenius_squares() -> list[str]:
    rng = random.Random(SEED + 1)
    bad = []
    for trial in range(40):
        p = random_poly(rng, rng.randint(1, 3), 6, 4)
        sq = f2poly.power(p, 2)
        if sq.terms != frozenset(m << 1 for m in p.terms):
            bad.append(f"p^2 is not the Frobenius image #{trial}: {p}")
        if sq * sq != f2poly.power(p, 4):
            bad.append(f"p^2 * p^2 != p^4 #{trial}: {p}")
    return bad


@check("props")
def binary_power_matches_naive() -> list[str]:
    rng = random.Random(SEED + 2)
    bad = []
    for trial in range(30):
        p = random_poly(rng, rng.randint(1, 3), 6, 3)
        acc = F2Poly.one(p.nvars)
        for j in range(9):
            if f2poly.power(p, j) != acc:
                bad.append(f"power({p}, {j})")
            acc = acc * p
    return bad


@check("props")
def complete_homogeneous_recursions() -> list[str]:
    """X_a[b+1] = X_a[b] + x_{b+1} X_{a+1}[b+1] and its iterated form, with X_a[b] = h_{n-a+1}(x_1..x_b)."""
    bad = []
    for n in range(1, 7):
        nv = 5

        def X(a, b):
            return complete_in(n - a + 1, range(b), nv)

        for b in range(1, 5):
            for a in range(1, n + 2):
                x = F2Poly.var(b, nv)
                if X(a, b + 1) != X(a, b) + x * X(a + 1, b + 1):
                    bad.append(f"single step n={n} a={a} b={b}")
        for c in range(1, 5):
            for ell in range(0, 5 - c):
                for s in range(0, n + 2 - c):
                    rhs = F2Poly.zero(nv)
                    for b in range(c, c + ell + 1):
                        rhs = rhs + complete_in(b - c, range(b - 1, c + ell), nv) * X(b + s, b)
                    if X(c + s, c + ell) != rhs:
                        bad.append(f"iterated n={n} c={c} l={ell} s={s}")
    return bad


# -- ideals ---------------------------------------------------------------

@check("props")
def reduce_is_projection() -> list[str]:
    rng = random.Random(SEED + 3)
    bad = []
    systems = [orthogonal_system(n, k) for n in (3, 5, 6) for k in (1, 2, 3) if k <= n]
    alg = flag_algebra(3)
    w = alg.block_classes([0, 1])
    systems.append(orthogonal_system(2, 2, w, alg))
    for idx, system in enumerate(systems):
        k = system.nvars
        for g in system.generators:
            if system.reduce(g):
                bad.append(f"generator does not reduce to zero in system {idx}")
        for trial in range(8):
            p = CoeffPoly.from_f2poly(random_poly(rng, k, 5, 7), system.algebra)
            q = CoeffPoly.from_f2poly(random_poly(rng, k, 5, 7), system.algebra)
            rp, rq = system.reduce(p), system.reduce(q)
            if system.reduce(rp) != rp:
                bad.append(f"not idempotent, system {idx} #{trial}")
            if system.reduce(p + q) != rp + rq:
                bad.append(f"not additive, system {idx} #{trial}")
            if any(not system.is_staircase(m) for m in rp.terms):
                bad.append(f"non-staircase output, system {idx} #{trial}")
            hom = f2poly.complete_homogeneous(rng.randint(0, 9), k)
            if not system.reduce(CoeffPoly.from_f2poly(hom, system.algebra)).is_homogeneous():
                bad.append(f"homogeneity lost, system {idx} #{trial}")
    return bad


@check("props")
def triangular_agrees_with_monomial() -> list[str]:
    rng = random.Random(SEED + 4)
    bad = []
    for trial in range(200):
        k = rng.randint(1, 3)
        bounds = [rng.randint(1, 5) for _ in range(k)]
        p = random_poly(rng, k, 4, 10)
        if monomial_system(bounds).member(p) != MonomialIdeal(bounds).member(p):
            bad.append(f"{p} against {bounds}")
    return bad


@check("props")
def orthogonal_ideals_coincide() -> list[str]:
    bad = []
    for n in range(1, 9):
        for k in range(1, min(n, 4) + 1):
            system = orthogonal_system(n, k)
            for i, g in enumerate(orthogonal_generators_symmetric(n, k), start=1):
                if system.reduce(g):
                    bad.append(f"fbar_{i} not in (f) for n={n}, k={k}")
            if not verify_fi_identity(n, k):
                bad.append(f"fbar/f identity fails for n={n}, k={k}")
    return bad


# -- coefficient algebras and classes --------------------------------------

@check("props")
def flag_algebra_structure() -> list[str]:
    bad = []
    for d in range(1, 7):
        alg = flag_algebra(d)
        if alg.rank != math.factorial(d):
            bad.append(f"rank of flag algebra {d} is {alg.rank}")
        for r in range(1, d + 1):
            if alg.from_poly(f2poly.elementary_symmetric(r, d)):
                bad.append(f"sigma_{r} survives in flag algebra {d}")
        top = [i for i, deg in enumerate(alg.degrees) if deg == alg.top_degree]
        if len(top) != 1 or alg.labels[top[0]] != f2poly.format_monomial(f2poly.pack(range(d - 1, -1, -1)), d, "t"):
            bad.append(f"top class of flag algebra {d}: {[alg.labels[i] for i in top]}")
    return bad


@check("props")
def gambelli_nonvanishing() -> list[str]:
    bad = []
    for d in range(2, 7):
        for ell in range(1, d):
            c = sw_class(Inverse(Tautological(ell, d)))
            if not (c.algebra.element(c[d - ell]) ** ell):
                bad.append(f"w_(d-l)(-E)^l vanishes for l={ell}, d={d}")
            if c.algebra.element(c[d - ell]) != grassmann_class(d, ell, "complement", d - ell):
                bad.append(f"inverse class differs from the complement class for l={ell}, d={d}")
    return bad


def _random_bundle(rng: random.Random, base_kind: int, depth: int):
    d = 4
    leaves = [Trivial(rng.randint(0, 2))]
    if base_kind == 0:
        leaves += [Hopf(d)]
    else:
        leaves += [Tautological(2, d)]
    if depth == 0 or rng.random() < 0.4:
        return rng.choice(leaves)
    if rng.random() < 0.6:
        return Sum(_random_bundle(rng, base_kind, depth - 1), _random_bundle(rng, base_kind, depth - 1))
    return Inverse(_random_bundle(rng, base_kind, depth - 1))


@check("props")
def whitney_and_inverse() -> list[str]:
    rng = random.Random(SEED + 5)
    bad = []
    for trial in range(40):
        kind = rng.randint(0, 1)
        a, b = _random_bundle(rng, kind, 3), _random_bundle(rng, kind, 3)
        base = Hopf(4).base if kind == 0 else Tautological(2, 4).base
        if sw_class(Sum(a, b), base) != sw_class(a, base) * sw_class(b, base):
            bad.append(f"Whitney product fails for {a}, {b}")
        if not sw_class(Sum(a, Inverse(a)), base).is_one():
            bad.append(f"w(E + (-E)) != 1 for {a}")
    return bad


# -- invariants -----------------------------------------------------------

@check("props")
def dickson_recursion() -> list[str]:
    bad = []
    for k in range(2, 5):
        xk = F2Poly.var(k - 1, k)
        lower = dickson_top(k - 1).substitute([F2Poly.var(i, k) for i in range(k - 1)])
        if dickson_top(k) != lower * xk * dickson_quotient(k):
            bad.append(f"e_{k} != e_{k - 1} x_{k} D(x_{k})")
    return bad


@check("props")
def iota_monotone() -> list[str]:
    bad = []
    for m1, m2 in itertools.product(range(1, 11), repeat=2):
        v = iota_numeric([m1, m2])
        if m1 < 10 and iota_numeric([m1 + 1, m2]) < v:
            bad.append(f"iota_2 decreases in m1 at ({m1},{m2})")
        if m2 < 10 and iota_numeric([m1, m2 + 1]) < v:
            bad.append(f"iota_2 decreases in m2 at ({m1},{m2})")
    return bad


@check("props")
def iota_doubling() -> list[str]:
    bad = []
    for k in range(1, 4):
        for ms in itertools.product(range(1, 7), repeat=k):
            v = iota_numeric(ms)
            if iota_numeric([2 * m for m in ms]) < 2 * v:
                bad.append(f"iota({[2 * m for m in ms]}) < 2 iota({list(ms)})")
    return bad


@check("props")
def binomial_criterion() -> list[str]:
    bad = []
    for m1, m2 in itertools.product(range(1, 13), repeat=2):
        best = max(m for m in range(0, m1 + m2) if m == 0 or iota2_binomial(m, m1, m2))
        if iota_numeric([m1, m2]) != best:
            bad.append(f"iota_2({m1},{m2}) = {iota_numeric([m1, m2])}, criterion gives {best}")
    for m in range(11):
        if f2poly.power(dickson_top(2), m) != dickson2_power_closed_form(m):
            bad.append(f"e_2^{m} closed form")
    return bad


def prefix_grid(k: int) -> list[tuple[int, ...]]:
    """Bounds tried for the first k-1 entries in the implication checks."""
    limit = {1: 20, 2: 12, 3: 9}[k - 1] if k > 1 else 0
    return list(itertools.product(range(1, limit + 1), repeat=k - 1))


def numbers_checks() -> dict[str, tuple[int, list[str]]]:
    """Each entry: (number of instances where the hypothesis held, violations)."""
    out: dict[str, tuple[int, list[str]]] = {}

    def record(name, hits, bad):
        out[name] = (hits, bad)

    hits, bad = 0, []
    for k in range(2, 5):
        for pre in prefix_grid(k):
            a = iota_numeric(pre)
            for m in range(1, min(a, 6) + 1):
                mk = 2 ** (k - 1) * m + 1
                if mk > 20:
                    continue
                for extra in (0, 1):
                    hits += 1
                    if iota_numeric(pre + (mk + extra,)) < m:
                        bad.append(f"{pre + (mk + extra,)} m={m}")
    record("append_scaled_bound", hits, bad)

    hits, bad = 0, []
    for k in range(1, 5):
        for m in range(1, 7):
            mins = [2 ** (i - 1) * m + 1 for i in range(1, k + 1)]
            for extra in itertools.product((0, 1, 2), repeat=k):
                hits += 1
                ms = [a + b for a, b in zip(mins, extra)]
                if iota_numeric(ms) < m:
                    bad.append(f"{ms} m={m}")
    record("doubling_bounds_lower", hits, bad)

    hits, bad = 0, []
    for k in range(1, 5):
        for m in range(1, 7):
            ms = [2 ** i * m + 1 for i in range(k)]
            hits += 1
            if iota_numeric(ms) != m:
                bad.append(f"iota({ms}) = {iota_numeric(ms)} != {m}")
    record("doubling_bounds_exact", hits, bad)

    hits, bad = 0, []
    grids = {2: range(1, 21), 3: range(1, 13), 4: range(1, 8)}
    for k in range(2, 5):
        for ms in itertools.product(grids[k], repeat=k):
            total = None
            for r in range(1, k):
                left, right = iota_numeric(ms[: k - r]), iota_numeric(ms[k - r:])
                for m in range(1, 7):
                    if left >= m and right >= 2 ** (k - r) * m:
                        hits += 1
                        total = iota_numeric(ms) if total is None else total
                        if total < m:
                            bad.append(f"{ms} r={r} m={m}")
    record("split_and_join", hits, bad)

    hits, bad = 0, []
    for k in range(2, 5):
        for pre in prefix_grid(k):
            a = iota_numeric(pre)
            for m in range(1, min(a // 2, 6) + 1):
                for extra in (0, 1):
                    hits += 1
                    if iota_numeric(pre + (m + 1 + extra,)) < m:
                        bad.append(f"{pre + (m + 1 + extra,)} m={m}")
    record("append_m_plus_one", hits, bad)

    hits, bad = 0, []
    for t in range(0, 4):
        for r in range(1, 2**t + 1):
            hits += 1
            ms = (2**t + 2 * r, 2 ** (t + 1) + r)
            if iota_numeric(ms) < 2**t + r - 1:
                bad.append(f"t={t} r={r}: iota{ms} = {iota_numeric(ms)}")
    record("two_bounds_power_of_two", hits, bad)

    for item, need in (("append_power_of_two_short", lambda t, r: 2**t + 2 * r), ("append_power_of_two_long", lambda t, r: 2 ** (t + 1) + r)):
        hits, bad = 0, []
        for k in range(2, 5):
            for pre in prefix_grid(k):
                a = iota_numeric(pre)
                for t in range(0, 4):
                    for r in range(0, 2**t):
                        mk = 2 ** (t + k - 1) + r + 1
                        if a < need(t, r) or mk > 20:
                            continue
                        hits += 1
                        if iota_numeric(pre + (mk,)) < 2**t + r:
                            bad.append(f"{pre + (mk,)} t={t} r={r}")
        record(item, hits, bad)

    hits, bad = 0, []
    for k in range(1, 5):
        for t in range(0, 4):
            for r in range(0, 2**t):
                low = 2 ** (t + k - 1) + r + 1
                if low > 20:
                    continue
                for extra in itertools.product((0, 1), repeat=k):
                    hits += 1
                    ms = [low + e for e in extra]
                    if iota_numeric(ms) < 2**t + r:
                        bad.append(f"{ms} t={t} r={r}")
    record("uniform_power_of_two", hits, bad)

    hits, bad = 0, []
    for k in range(1, 4):
        for ms in itertools.product(range(1, 7), repeat=k):
            hits += 1
            if iota_numeric([2 * m for m in ms]) < 2 * iota_numeric(ms):
                bad.append(f"{list(ms)}")
    record("frobenius_doubling", hits, bad)
    return out


@check("props")
def numeric_propositions() -> list[str]:
    bad = []
    for name, (hits, violations) in numbers_checks().items():
        if hits == 0:
            bad.append(f"{name}: hypothesis never held on the grid")
        bad.extend(f"{name}: {v}" for v in violations)
    return bad


@check("props")
def bundle_iota_matches_numeric() -> list[str]:
    bad = []
    for d in range(1, 6):
        for ell in range(1, d + 1):
            for k in range(1, min(ell, 2) + 1):
                got = iota_bundles([Tautological(ell, d)] * k)
                want = iota_numeric([d] * k)
                if got != want:
                    bad.append(f"taut({ell},{d}) x{k}: {got} != {want}")
    for n in range(1, 13):
        if iota_bundles([Trivial(n)]) != n - 1:
            bad.append(f"trivial({n})")
    return bad


@check("props")
def inverse_formula_for_iota1() -> list[str]:
    bad = []
    exprs = [Tautological(ell, d) for d in range(1, 7) for ell in range(1, d + 1)]
    exprs += [Sum(Hopf(d - ell + 1), Trivial(ell - 1)) for d in range(2, 7) for ell in range(2, d + 1)]
    exprs += [Sum(Tautological(2, 4), Trivial(1)), Sum(Tautological(1, 3), Tautological(1, 3))]
    for e in exprs:
        if iota1_via_inverse(e) != iota_bundles([e]):
            bad.append(f"{e}: {iota1_via_inverse(e)} != {iota_bundles([e])}")
    return bad


@check("props")
def orthogonal_from_unconstrained() -> list[str]:
    bad = []
    for n in range(1, 9):
        for k in range(1, min(n, 3) + 1):
            for j in range(1, 8):
                if certify_unconstrained(Trivial(n + 1), j + 1, k).certified and not certify_orthogonal(Trivial(n), j, k).certified:
                    bad.append(f"n={n} k={k} j={j}")
    return bad


@check("props")
def planner_blocks() -> list[str]:
    bad = []
    for n in (2, 3):
        for j in range(1, 7):
            for k in range(1, 4):
                first = partition_plan(n, j, 10**6)
                degree = first.steps[k - 1].cumulative_degree
                plan = partition_plan(n, j, degree)
                if plan.k != k:
                    bad.append(f"n={n} j={j}: degree {degree} selects k={plan.k}")
                if iota_numeric(plan.blocks) < j:
                    bad.append(f"n={n} j={j} k={k}: iota{plan.blocks} < {j}")
                if not plan.budget_bound_holds:
                    bad.append(f"n={n} j={j} k={k}: budget bound fails")
    return bad


# -- the published table ------------------------------------------------------

@check("table")
def omega_table_matches_publication() -> list[str]:
    bad = []
    for k, row in PUBLISHED_OMEGA.items():
        for n, want in zip(OMEGA_COLUMNS, row):
            got = omega_cell(k, n)
            if got != want:
                bad.append(f"omega_{k}({n}) = {got}, published {want}")
    return bad


@check("table")
def omega_dominates_shifted_iota() -> list[str]:
    bad = []
    for k in PUBLISHED_OMEGA:
        for n in OMEGA_COLUMNS:
            if k <= n and omega_cell(k, n) < iota_numeric([n + 1] * k) - 1:
                bad.append(f"omega_{k}({n}) < iota_{k}({n + 1},...) - 1")
    return bad


# -- flag nonvanishing --------------------------------------------------------

@check("flag")
def staircase_monomial_permutations() -> list[str]:
    bad = []
    for d in range(1, 6):
        top = list(range(d - 1, -1, -1))
        if not flag_monomial_nonzero(d, top):
            bad.append(f"staircase monomial vanishes for d={d}")
        for exps in itertools.product(*(range(d - i) for i in range(d))):
            v = flag_monomial_nonzero(d, exps)
            for perm in set(itertools.permutations(exps)):
                if flag_monomial_nonzero(d, perm) != v:
                    bad.append(f"d={d}: {exps} vs {perm}")
    return bad


@check("flag")
def fairy_bread_all_permutations() -> list[str]:
    bad = []
    for d in range(1, 6):
        for k in range(1, d + 1):
            for perm in itertools.permutations(range(k, d + 1)):
                if not fairy_bread_check(d, k, perm):
                    bad.append(f"d={d} k={k} perm={perm}")
    return bad


@check("flag")
def flag_products_nonzero() -> list[str]:
    bad = []
    for d in range(2, 6):
        for size in range(1, d):
            for dims in itertools.combinations(range(1, d), size):
                res = flag_product_checks(d, dims)
                if not res.all():
                    bad.append(f"d={d} dims={dims}: {res}")
                if dual_class_product(d, dims) != flag_algebra(d).monomial(dual_class_monomial(d, dims)):
                    bad.append(f"d={d} dims={dims}: class product differs from its monomial image")
    return bad


def run_checks(checks: list[Check], threads: int = 1) -> list[tuple[str, list[str]]]:
    """Run checks, possibly concurrently; results come back in registry order."""
    import contextvars
    from concurrent.futures import ThreadPoolExecutor

    if threads <= 1:
        return [(c.name, c.run()) for c in checks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(contextvars.copy_context().run, c.run) for c in checks]
        return [(c.name, f.result()) for c, f in zip(checks, futures)]
