"""Certification predicates: do the algebraic hypotheses of the partition theorems hold?

A negative answer only means the criterion is silent; it never asserts that
a partition fails to exist.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .charclass import BundleExpr, FlagCanonical, Inverse, as_expr, direct_sum, sw_class, top_nonzero_degree
from .coeffring import flag_algebra, flag_monomial_nonzero
from .errors import InputError
from .invariants import last_nonvanishing, iota_bundles, omega_bundle_scan


class Verdict(enum.Enum):
    CERTIFIED = "Certified"
    NOT_CERTIFIED = "NotCertifiedByCriterion"


@dataclass(frozen=True)
class Certification:
    verdict: Verdict
    witness: str
    theorem: str

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def __str__(self) -> str:
        return f"{self.verdict.value} (Theorem: {self.theorem}; {self.witness})"


def _verdict(ok: bool) -> Verdict:
    return Verdict.CERTIFIED if ok else Verdict.NOT_CERTIFIED


def _check_jk(j: int, k: int | None = None) -> None:
    if j < 1 or (k is not None and k < 1):
        raise InputError("j and k must be positive")


def certify_unconstrained(e: BundleExpr | str, j: int, k: int) -> Certification:
    """Certified iff j <= iota_k(E, ..., E)."""
    _check_jk(j, k)
    e = as_expr(e)
    iota = iota_bundles([e] * k)
    return Certification(_verdict(j <= iota), f"iota={iota}", "unconstrained")


def certify_constrained(bundles: Sequence[BundleExpr | str], j: int) -> Certification:
    """Certified iff j <= iota_k(E(1), ..., E(k))."""
    _check_jk(j)
    iota = iota_bundles(bundles)
    return Certification(_verdict(j <= iota), f"iota={iota}", "constrained")


def certify_orthogonal(e: BundleExpr | str, j: int, k: int) -> Certification:
    """Certified iff e_k(B)^j has a nonzero normal form modulo f_1..f_k of E."""
    _check_jk(j, k)
    e = as_expr(e)
    if e.dim < k:
        raise InputError(f"orthogonal arrangements of {k} hyperplanes need dim(E) >= {k}, got {e.dim}")
    flags = omega_bundle_scan(e, k)
    omega = last_nonvanishing(flags)
    ok = j < len(flags) and flags[j]
    return Certification(_verdict(ok), f"omega={omega}", "orthogonal")


def iota1_via_inverse(e: BundleExpr | str) -> int:
    """n - 1 plus the top degree in which w(-E) survives."""
    e = as_expr(e)
    if e.dim < 1:
        raise InputError(f"bundle {e} must be positive-dimensional")
    base = e.resolved_base()
    return e.dim - 1 + top_nonzero_degree(sw_class(Inverse(e), base))


def fairy_bread_check(d: int, k: int, perm: Sequence[int]) -> bool:
    """Is t_{k+1}^{j_k} ... t_{d+1}^{j_d} nonzero in the flag algebra of R^{d+1}?"""
    if not 1 <= k <= d:
        raise InputError(f"need 1 <= k <= d, got k={k}, d={d}")
    perm = [int(a) for a in perm]
    if sorted(perm) != list(range(k, d + 1)):
        raise InputError(f"{perm} is not a permutation of {k}..{d}")
    return flag_monomial_nonzero(d + 1, [0] * k + perm)


@dataclass(frozen=True)
class FlagProducts:
    dual_classes: bool
    quotient_euler: bool
    successive_euler: bool

    def all(self) -> bool:
        return self.dual_classes and self.quotient_euler and self.successive_euler


def _check_dims(d: int, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(n) for n in dims)
    if not dims or dims[0] < 1 or dims[-1] >= d or any(a >= b for a, b in zip(dims, dims[1:])):
        raise InputError(f"need 0 < n_1 < ... < n_k < d, got {list(dims)} with d={d}")
    return dims


def _block_exponents(d: int, cuts: Sequence[int], power_of_block) -> list[int]:
    exps = [0] * d
    for r in range(len(cuts) - 1):
        for a in range(cuts[r], cuts[r + 1]):
            exps[a] += power_of_block(r)
    return exps


def dual_class_monomial(d: int, dims: Sequence[int]) -> list[int]:
    """Exponents of the monomial image of prod_i w_{d-n_i}(-E(i)): block r+1 raised to r."""
    cuts = (0,) + _check_dims(d, dims) + (d,)
    return _block_exponents(d, cuts, lambda r: r)


def dual_class_product(d: int, dims: Sequence[int]) -> int:
    """prod_i w_{d-n_i}(-(E_1 + ... + E_i)) evaluated through characteristic classes, as a mask."""
    dims = _check_dims(d, dims)
    alg = flag_algebra(d)
    out = alg.unit
    for i in range(1, len(dims) + 1):
        partial = direct_sum(*(FlagCanonical(r, dims, d) for r in range(1, i + 1)))
        out = alg.mul(out, sw_class(Inverse(partial))[d - dims[i - 1]])
    return out


def flag_product_checks(d: int, dims: Sequence[int]) -> FlagProducts:
    dims = _check_dims(d, dims)
    cuts = (0,) + dims + (d,)
    k = len(dims)
    dual = dual_class_monomial(d, dims)
    # e(E/E(i)) is the product of every t_a past n_i.
    quotient = [0] * d
    for i in range(1, k + 1):
        for a in range(cuts[i], d):
            quotient[a] += cuts[i] - cuts[i - 1]
    # e(E(i+1)/E(i)) is the product over block i+1, raised to n_i.
    successive = _block_exponents(d, cuts, lambda r: cuts[r] if r >= 1 else 0)
    return FlagProducts(
        flag_monomial_nonzero(d, dual),
        flag_monomial_nonzero(d, quotient),
        flag_monomial_nonzero(d, successive),
    )

