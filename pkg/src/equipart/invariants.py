"""Dickson classes and the non-membership invariants iota_k and omega_k."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from . import f2poly
from .charclass import POINT_BASE, Base, BundleExpr, as_expr, sw_class
from .coeffring import CoefficientAlgebra
from .errors import InputError, ResourceLimitError
from .f2poly import F2Poly
from .ideals import CoeffPoly, MonomialIdeal, TriangularSystem, orthogonal_system, projective_system

MAX_DICKSON_RANK = 6


def linearized_span_products(k: int) -> list[list[F2Poly]]:
    """Coefficients of L_j(X) = prod_{v in span(x_1..x_j)} (X + v) for j = 0..k.

    L_j is additive in X, so L_j(X) = sum_i c[j][i] X^(2^i) and
    L_{j+1}(X) = L_j(X)^2 + L_j(x_{j+1}) L_j(X).
    """
    coefs = [[F2Poly.one(k)]]
    for j in range(k):
        c = coefs[-1]
        y = F2Poly.var(j, k)
        value = _evaluate_linearized(c, y)
        nxt = [value * c[0]]
        for i in range(1, len(c)):
            nxt.append(c[i - 1].frobenius() + value * c[i])
        nxt.append(c[-1].frobenius())
        coefs.append(nxt)
    return coefs


def _evaluate_linearized(coefs: Sequence[F2Poly], y: F2Poly) -> F2Poly:
    out = F2Poly.zero(y.nvars)
    power = y
    for c in coefs:
        out = out + c * power
        power = power.frobenius()
    return out


def _check_rank(k: int) -> None:
    if not 1 <= k <= MAX_DICKSON_RANK:
        raise InputError(f"Dickson class needs 1 <= k <= {MAX_DICKSON_RANK}, got {k}")


@functools.lru_cache(maxsize=None)
def dickson_top(k: int) -> F2Poly:
    """Product of the 2^k - 1 nonzero linear forms in x_1..x_k.

    Grouped by the last variable a form involves: e_k = prod_j L_{j-1}(x_j).
    """
    _check_rank(k)
    coefs = linearized_span_products(k)
    out = F2Poly.one(k)
    for j in range(k):
        out = out * _evaluate_linearized(coefs[j], F2Poly.var(j, k))
    return out


def dickson_quotient(k: int) -> F2Poly:
    """D(x_k) with e_k = e_{k-1} * x_k * D(x_k), as a polynomial in x_1..x_k (k >= 2)."""
    _check_rank(k)
    if k < 2:
        raise InputError("the Dickson quotient needs k >= 2")
    c = linearized_span_products(k)[k - 1]
    y = f2poly.variable(k - 1)
    terms: set[int] = set()
    for i, ci in enumerate(c):
        shift = ((1 << i) - 1) * y
        terms ^= {m + shift for m in ci.terms}
    return F2Poly(k, frozenset(terms))


# -- iota over integers ---------------------------------------------------

def _check_bounds(bounds: Sequence[int]) -> tuple[int, ...]:
    bounds = tuple(int(m) for m in bounds)
    if not bounds:
        raise InputError("iota needs at least one bound")
    if any(m < 1 for m in bounds):
        raise InputError(f"bounds must be positive, got {list(bounds)}")
    _check_rank(len(bounds))
    return bounds


def iota_scan(bounds: Sequence[int]) -> list[bool]:
    """flags[j] says whether e_k^j escapes the monomial ideal, for every j up to the degree cap."""
    bounds = _check_bounds(bounds)
    return list(_iota_scan(bounds))


@functools.lru_cache(maxsize=4096)
def _iota_scan(bounds: tuple[int, ...]) -> tuple[bool, ...]:
    k = len(bounds)
    ideal = MonomialIdeal(bounds)
    e = ideal.truncate(dickson_top(k))
    cap = sum(m - 1 for m in bounds) // ((1 << k) - 1)
    flags = [True]
    current = F2Poly.one(k)
    for _ in range(cap):
        # Truncation is a ring map to the quotient, so truncating each partial product is exact.
        current = ideal.multiply_mod(current, e)
        flags.append(bool(current))
    return tuple(flags)


def iota_numeric(bounds: Sequence[int]) -> int:
    """Largest j with e_k^j outside (x_1^m_1, ..., x_k^m_k)."""
    flags = iota_scan(bounds)
    return max(j for j, f in enumerate(flags) if f)


def iota2_binomial(m: int, m1: int, m2: int) -> bool:
    """Is there i in [max(0, 2m-m2+1), min(m, m1-m-1)] with C(m, i) odd?"""
    if m < 0 or m1 < 1 or m2 < 1:
        raise InputError("need m >= 0 and positive bounds")
    lo, hi = max(0, 2 * m - m2 + 1), min(m, m1 - m - 1)
    return any(i & m == i for i in range(lo, hi + 1))


def dickson2_power_closed_form(m: int) -> F2Poly:
    """sum over odd C(m,i) of x1^(m+i) x2^(2m-i)."""
    return F2Poly.from_exponents(2, [(m + i, 2 * m - i) for i in range(m + 1) if i & m == i])


# -- iota and omega modulo triangular systems -----------------------------

def nonvanishing_powers(system: TriangularSystem, k: int, cap: int) -> list[bool]:
    """flags[j] = (normal form of e_k^j is nonzero) for j = 0..cap."""
    e = system.reduce(CoeffPoly.from_f2poly(dickson_top(k), system.algebra))
    current = system.reduce(CoeffPoly.from_f2poly(F2Poly.one(k), system.algebra))
    flags = [bool(current)]
    for _ in range(cap):
        if not current:
            flags.append(False)
            continue
        current = system.reduce(current * e)
        flags.append(bool(current))
    return flags


def last_nonvanishing(flags: Sequence[bool]) -> int:
    for j in range(len(flags) - 1, -1, -1):
        if flags[j]:
            return j
    return -1


def common_base(bundles: Sequence[BundleExpr]) -> Base:
    bases = {b.base for b in bundles if b.base is not None}
    if len(bases) > 1:
        raise InputError("bundles must live over a common base: " + ", ".join(sorted(map(str, bases))))
    return bases.pop() if bases else POINT_BASE


@dataclass(frozen=True)
class BundleSystem:
    base: Base
    algebra: CoefficientAlgebra
    dims: tuple[int, ...]
    system: TriangularSystem

    @property
    def degree_cap(self) -> int:
        """Top degree of the quotient: base dimension plus the fibre dimensions."""
        return self.base.manifold_dim + sum(n - 1 for n in self.dims)


def bundle_classes(e: BundleExpr, base: Base) -> list[int]:
    """(w_0, ..., w_n) of a genuine rank-n bundle; rejects virtual or non-positive expressions."""
    n = e.dim
    if n < 1:
        raise InputError(f"bundle {e} must be positive-dimensional, has dimension {n}")
    c = sw_class(e, base)
    if any(c[i] for i in range(n + 1, len(c))):
        raise InputError(f"{e} has Stiefel-Whitney classes above its dimension {n}")
    return [c[i] for i in range(n + 1)]


def projective_bundle_system(bundles: Sequence[BundleExpr | str]) -> BundleSystem:
    exprs = [as_expr(b) for b in bundles]
    if not exprs:
        raise InputError("need at least one bundle")
    base = common_base(exprs)
    alg = base.algebra()
    classes = [bundle_classes(e, base) for e in exprs]
    return BundleSystem(base, alg, tuple(e.dim for e in exprs), projective_system(classes, alg))


def iota_bundles_scan(bundles: Sequence[BundleExpr | str]) -> list[bool]:
    bs = projective_bundle_system(bundles)
    k = len(bs.dims)
    _check_rank(k)
    return nonvanishing_powers(bs.system, k, bs.degree_cap // ((1 << k) - 1))


def iota_bundles(bundles: Sequence[BundleExpr | str]) -> int:
    """Largest j with e_k(B)^j outside the ideal of the projective bundles P(E(1))..P(E(k))."""
    return last_nonvanishing(iota_bundles_scan(bundles))


def orthogonal_bundle_system(e: BundleExpr | str, k: int) -> BundleSystem:
    e = as_expr(e)
    base = e.resolved_base()
    w = bundle_classes(e, base)
    n = len(w) - 1
    alg = base.algebra()
    system = orthogonal_system(n, k, w, alg)
    return BundleSystem(base, alg, tuple(n - i for i in range(k)), system)


def omega_bundle_scan(e: BundleExpr | str, k: int) -> list[bool]:
    _check_rank(k)
    bs = orthogonal_bundle_system(e, k)
    # Staircase exponents for f_i go up to n - i, so the quotient tops out at base dim + sum(n - i).
    return nonvanishing_powers(bs.system, k, bs.degree_cap // ((1 << k) - 1))


@functools.lru_cache(maxsize=1024)
def omega(k: int, n: int) -> int:
    """Largest j with e_k^j outside the ideal generated by f_1..f_k of a trivial rank-n bundle."""
    if not 1 <= k <= n:
        raise InputError(f"omega needs 1 <= k <= n, got k={k}, n={n}")
    _check_rank(k)
    system = orthogonal_system(n, k)
    cap = sum(n - i for i in range(1, k + 1)) // ((1 << k) - 1)
    return last_nonvanishing(nonvanishing_powers(system, k, cap))


def omega_cell(k: int, n: int) -> int:
    """omega_k(n) for tables; k > n gives 0, since then f_{n+1} = 1 and no power escapes."""
    if k < 1 or n < 1:
        raise InputError(f"need positive k and n, got k={k}, n={n}")
    return 0 if k > n else omega(k, n)


# -- degree planning --------------------------------------------------------

HEADROOM = 1e-9


@dataclass(frozen=True)
class PlanStep:
    index: int
    r: int
    degree: int
    block: int
    cumulative_degree: int


@dataclass(frozen=True)
class PartitionPlan:
    n: int
    j: int
    degree: int
    steps: tuple[PlanStep, ...]
    k: int
    budget: int
    constant_prime: float
    constant: float

    @property
    def blocks(self) -> tuple[int, ...]:
        return tuple(s.block for s in self.steps[: self.k])

    @property
    def budget_bound_holds(self) -> bool:
        """d_k^(n-1) < C'_n 2^k j, with a relative margin beyond floating-point noise."""
        lhs = self.budget ** (self.n - 1)
        return lhs * (1 + HEADROOM) < self.constant_prime * 2**self.k * self.j

    @property
    def guaranteed_fraction(self) -> float:
        return 1 / 2**self.k

    @property
    def fraction_bound(self) -> float:
        return self.constant * self.j / self.degree ** (self.n - 1)

    @property
    def fraction_bound_holds(self) -> bool:
        return self.guaranteed_fraction * (1 + HEADROOM) < self.fraction_bound


def plan_constants(n: int) -> tuple[float, float]:
    cp = (2 * (n - 1) / (2 ** (1 / (n - 1)) - 1)) ** (n - 1)
    return cp, 2 * cp


def least_radius(n: int, i: int, j: int) -> int:
    """Least r >= 1 with r^(n-1) > 2^(i-1) j."""
    target = 2 ** (i - 1) * j
    r = max(1, int(target ** (1 / (n - 1))))
    while r > 1 and (r - 1) ** (n - 1) > target:
        r -= 1
    while r ** (n - 1) <= target:
        r += 1
    return r


def partition_plan(n: int, j: int, degree: int) -> PartitionPlan:
    if n < 2 or j < 1:
        raise InputError(f"planning needs n >= 2 and j >= 1, got n={n}, j={j}")
    steps: list[PlanStep] = []
    total = 0
    i = 0
    while True:
        i += 1
        r = least_radius(n, i, j)
        total += (n - 1) * r
        steps.append(PlanStep(i, r, (n - 1) * r, r ** (n - 1), total))
        if i == 1 and degree < total:
            raise InputError(f"degree {degree} is below the minimal admissible degree {total}")
        if total > degree:
            break
        if i > 4096:
            raise ResourceLimitError("planner did not terminate")
    cp, c = plan_constants(n)
    k = len(steps) - 1
    return PartitionPlan(n, j, degree, tuple(steps), k, steps[k - 1].cumulative_degree, cp, c)


def plan_iota(plan: PartitionPlan) -> int:
    """iota_k over the planned block sizes n_1..n_k."""
    return iota_numeric(plan.blocks)
