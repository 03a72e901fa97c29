"""Ideal membership: monomial ideals over F2 and monic triangular systems.

A triangular system has one generator g_r per variable, monic in x_r of
degree d_r, whose other terms have x_r-degree < d_r and mention only
x_1..x_r.  Rewriting x_r^{d_r} by the tail of g_r always lowers the tuple
(a_k, ..., a_1) lexicographically, i.e. lowers the packed monomial as an
integer, so reduction terminates; the staircase monomials times the
coefficient basis are a free basis of the quotient, so the result is the
unique normal form.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Mapping, Sequence

from . import f2poly
from .coeffring import POINT, CoefficientAlgebra
from .errors import InputError, ResourceLimitError, current_limits
from .f2poly import FIELD, MASK, F2Poly, monomial_degree


class MonomialIdeal:
    """(x1^m1, ..., xk^mk) in F2[x1..xk]."""

    def __init__(self, bounds: Sequence[int]):
        bounds = tuple(int(m) for m in bounds)
        if not bounds:
            raise InputError("need at least one bound")
        if any(m < 1 for m in bounds):
            raise InputError(f"bounds must be positive, got {bounds}")
        if any(m > MASK // 2 for m in bounds):
            raise ResourceLimitError("bound exceeds the exponent range")
        self.bounds = bounds
        # m is outside the ideal iff no field of m + offset reaches the guard bit.
        half = 1 << (FIELD - 1)
        self._offset = sum((half - b) << (FIELD * i) for i, b in enumerate(bounds))
        self._guard = sum(half << (FIELD * i) for i in range(len(bounds)))

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.bounds})"

    @property
    def nvars(self) -> int:
        return len(self.bounds)

    def contains_monomial(self, m: int) -> bool:
        return bool((m + self._offset) & self._guard)

    def member(self, p: F2Poly) -> bool:
        if p.nvars != self.nvars:
            raise InputError(f"arity mismatch: polynomial has {p.nvars} variables, ideal {self.nvars}")
        off, guard = self._offset, self._guard
        return all((m + off) & guard for m in p.terms)

    def truncate(self, p: F2Poly) -> F2Poly:
        """The image of p in the quotient: drop monomials lying in the ideal."""
        off, guard = self._offset, self._guard
        return F2Poly(p.nvars, frozenset(m for m in p.terms if not (m + off) & guard))

    def multiply_mod(self, p: F2Poly, q: F2Poly) -> F2Poly:
        """p*q modulo the ideal, never materialising monomials inside it."""
        off, guard = self._offset, self._guard
        acc: set[int] = set()
        limit = current_limits().max_terms
        for a in p.terms:
            acc ^= {a + b for b in q.terms if not (a + b + off) & guard}
            if len(acc) > limit:
                raise ResourceLimitError(f"term count exceeds cap {limit}")
        return F2Poly(p.nvars, frozenset(acc))


def monomial_ideal_member(p: F2Poly, ideal: MonomialIdeal | Sequence[int]) -> bool:
    if not isinstance(ideal, MonomialIdeal):
        ideal = MonomialIdeal(ideal)
    return ideal.member(p)


class CoeffPoly:
    """A polynomial in x1..xk with coefficients in a CoefficientAlgebra.

    ``terms`` maps packed monomials to nonzero coefficient masks.
    """

    __slots__ = ("algebra", "nvars", "terms")

    def __init__(self, algebra: CoefficientAlgebra, nvars: int, terms: Mapping[int, int] | None = None):
        self.algebra = algebra
        self.nvars = nvars
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def from_f2poly(cls, p: F2Poly, algebra: CoefficientAlgebra = POINT, coefficient: int | None = None) -> "CoeffPoly":
        c = algebra.unit if coefficient is None else coefficient
        return cls(algebra, p.nvars, {m: c for m in p.terms})

    @classmethod
    def zero(cls, algebra: CoefficientAlgebra, nvars: int) -> "CoeffPoly":
        return cls(algebra, nvars)

    def _check(self, other: "CoeffPoly") -> None:
        if not isinstance(other, CoeffPoly):
            raise InputError(f"expected CoeffPoly, got {type(other).__name__}")
        if other.algebra is not self.algebra or other.nvars != self.nvars:
            raise InputError("coefficient algebra or arity mismatch")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.algebra is other.algebra and self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) ^ c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return CoeffPoly(self.algebra, self.nvars, out)

    def __mul__(self, other) -> "CoeffPoly":
        if isinstance(other, F2Poly):
            other = CoeffPoly.from_f2poly(other, self.algebra)
        self._check(other)
        mul, unit = self.algebra.mul, self.algebra.unit
        out: dict[int, int] = {}
        limit = current_limits().max_terms
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                c = ca if cb == unit else cb if ca == unit else mul(ca, cb)
                if c:
                    m = a + b
                    v = out.get(m, 0) ^ c
                    if v:
                        out[m] = v
                    else:
                        del out[m]
            if len(out) > limit:
                raise ResourceLimitError(f"term count exceeds cap {limit}")
        return CoeffPoly(self.algebra, self.nvars, out)

    def scale(self, c: int) -> "CoeffPoly":
        mul = self.algebra.mul
        return CoeffPoly(self.algebra, self.nvars, {m: mul(c, v) for m, v in self.terms.items()})

    def is_homogeneous(self) -> bool:
        degs = set()
        for m, c in self.terms.items():
            md = monomial_degree(m)
            degs.update(md + d for d in self.algebra.degree_of(c))
        return len(degs) <= 1

    def to_f2poly(self) -> F2Poly:
        """Only for coefficients in degree 0 (the point algebra)."""
        if any(c != self.algebra.unit for c in self.terms.values()):
            raise InputError("coefficients are not scalars")
        return F2Poly(self.nvars, frozenset(self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda m: f2poly.grlex_key(m, self.nvars), reverse=True)
        parts = []
        for m in order:
            c = self.terms[m]
            mono = f2poly.format_monomial(m, self.nvars)
            if c == self.algebra.unit:
                parts.append(mono)
            else:
                coef = self.algebra.format(c)
                coef = f"({coef})" if "+" in coef else coef
                parts.append(coef if mono == "1" else f"{coef}*{mono}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"CoeffPoly({self.algebra!r}, {self.nvars}, {str(self)!r})"


class TriangularSystem:
    """Generators g_1..g_k, g_r monic in x_r; see the module docstring."""

    def __init__(self, generators: Sequence[CoeffPoly]):
        if not generators:
            raise InputError("empty triangular system")
        algebra = generators[0].algebra
        nvars = generators[0].nvars
        if len(generators) != nvars:
            raise InputError(f"need one generator per variable: {len(generators)} for arity {nvars}")
        self.algebra = algebra
        self.nvars = nvars
        self.generators = tuple(generators)
        degrees, tails = [], []
        for r, g in enumerate(generators):
            if g.algebra is not algebra or g.nvars != nvars:
                raise InputError("generators must share coefficient algebra and arity")
            top = max((f2poly.exponent(m, r) for m in g.terms), default=0)
            lead = top << (FIELD * r)
            if top < 1 or g.terms.get(lead) != algebra.unit:
                raise InputError(f"generator {r + 1} is not monic in x{r + 1} of positive degree")
            for m in g.terms:
                if m >> (FIELD * (r + 1)):
                    raise InputError(f"generator {r + 1} involves a variable beyond x{r + 1}")
            if not g.is_homogeneous():
                raise InputError(f"generator {r + 1} is not homogeneous")
            degrees.append(top)
            tails.append(tuple(sorted((m, c) for m, c in g.terms.items() if m != lead)))
        self.leading_degrees = tuple(degrees)
        self._lead = tuple(d << (FIELD * r) for r, d in enumerate(degrees))
        self._tails = tuple(tails)

    def __repr__(self) -> str:
        return f"TriangularSystem(degrees={self.leading_degrees}, algebra={self.algebra!r})"

    def staircase_size(self) -> int:
        out = 1
        for d in self.leading_degrees:
            out *= d
        return out

    def is_staircase(self, m: int) -> bool:
        return all(f2poly.exponent(m, r) < d for r, d in enumerate(self.leading_degrees))

    def _rewrite_index(self, m: int) -> int:
        for r in range(self.nvars - 1, -1, -1):
            if ((m >> (FIELD * r)) & MASK) >= self.leading_degrees[r]:
                return r
        return -1

    def lift(self, p) -> CoeffPoly:
        if isinstance(p, F2Poly):
            p = CoeffPoly.from_f2poly(p, self.algebra)
        if not isinstance(p, CoeffPoly):
            raise InputError(f"cannot reduce a {type(p).__name__}")
        if p.algebra is not self.algebra or p.nvars != self.nvars:
            raise InputError("polynomial and system differ in coefficient algebra or arity")
        return p

    def reduce(self, p, trace: list[str] | None = None) -> CoeffPoly:
        """Normal form of p: always rewrite the largest monomial in the termination order."""
        p = self.lift(p)
        alg = self.algebra
        mul, unit = alg.mul, alg.unit
        limit = current_limits().max_terms
        work = dict(p.terms)
        heap = [-m for m in work]
        heapq.heapify(heap)
        out: dict[int, int] = {}
        last = None
        while heap:
            m = -heapq.heappop(heap)
            if m == last:
                continue
            last = m
            c = work.pop(m, 0)
            if not c:
                continue
            r = self._rewrite_index(m)
            if r < 0:
                out[m] = c
                continue
            shift = m - self._lead[r]
            if trace is not None:
                trace.append(self._trace_line(m, c, r))
            for b, tc in self._tails[r]:
                nc = c if tc == unit else mul(c, tc)
                if not nc:
                    continue
                nm = shift + b
                old = work.get(nm)
                if old is None:
                    work[nm] = nc
                    heapq.heappush(heap, -nm)
                elif old == nc:
                    del work[nm]
                else:
                    work[nm] = old ^ nc
            if len(work) > limit:
                raise ResourceLimitError(f"term count exceeds cap {limit}")
        return CoeffPoly(alg, self.nvars, out)

    def _trace_line(self, m: int, c: int, r: int) -> str:
        coef = "" if c == self.algebra.unit else f"({self.algebra.format(c)})*"
        return f"{coef}{f2poly.format_monomial(m, self.nvars)} : x{r + 1}^{self.leading_degrees[r]} -> tail of g{r + 1}"

    def member(self, p) -> bool:
        return not self.reduce(p)


def reduce(p, system: TriangularSystem, trace: list[str] | None = None) -> CoeffPoly:
    return system.reduce(p, trace)


def member_triangular(p, system: TriangularSystem) -> bool:
    return system.member(p)


# ---------------------------------------------------------------------------
# Generators used throughout: projective-bundle systems and the orthogonal ones.

def projective_system(classes: Sequence[Sequence[int]], algebra: CoefficientAlgebra = POINT) -> TriangularSystem:
    """g_r = sum_s w_{n_r - s}(E(r)) x_r^s, with classes[r] = (w_0, ..., w_{n_r}) as masks."""
    k = len(classes)
    gens = []
    for r, w in enumerate(classes):
        n = len(w) - 1
        if n < 1:
            raise InputError("bundles must be positive-dimensional")
        terms = {s << (FIELD * r): w[n - s] for s in range(n + 1)}
        gens.append(CoeffPoly(algebra, k, terms))
    return TriangularSystem(gens)


def _padded(w: Sequence[int] | None, n: int, algebra: CoefficientAlgebra) -> list[int]:
    w = [algebra.unit] if w is None else list(w)
    return (w + [0] * (n + 1))[: n + 1]


def orthogonal_generators(n: int, k: int, w: Sequence[int] | None = None,
                          algebra: CoefficientAlgebra = POINT) -> list[CoeffPoly]:
    """f_i = sum_s w_s(E) h_{n-i+1-s}(x_1..x_i) for i = 1..k (triangular)."""
    _check_orthogonal(n, k)
    w = _padded(w, n, algebra)
    out = []
    for i in range(1, k + 1):
        acc = CoeffPoly.zero(algebra, k)
        for s in range(n - i + 2):
            if w[s]:
                h = f2poly.complete_homogeneous(n - i + 1 - s, k, range(i))
                acc = acc + CoeffPoly.from_f2poly(h, algebra, w[s])
        out.append(acc)
    return out


def orthogonal_generators_symmetric(n: int, k: int, w: Sequence[int] | None = None,
                                    algebra: CoefficientAlgebra = POINT) -> list[CoeffPoly]:
    """fbar_i = sum_s w_s(E) h_{n-i+1-s}(x_1..x_k) for i = 1..k (not triangular)."""
    _check_orthogonal(n, k)
    w = _padded(w, n, algebra)
    out = []
    for i in range(1, k + 1):
        acc = CoeffPoly.zero(algebra, k)
        for s in range(n - i + 2):
            if w[s]:
                h = f2poly.complete_homogeneous(n - i + 1 - s, k)
                acc = acc + CoeffPoly.from_f2poly(h, algebra, w[s])
        out.append(acc)
    return out


def orthogonal_system(n: int, k: int, w: Sequence[int] | None = None,
                      algebra: CoefficientAlgebra = POINT) -> TriangularSystem:
    return TriangularSystem(orthogonal_generators(n, k, w, algebra))


def _check_orthogonal(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise InputError(f"orthogonal systems need 1 <= k <= n, got k={k}, n={n}")


def verify_fi_identity(n: int, k: int) -> bool:
    """Check fbar_r = sum_{r<=b<=k} h_{b-r}(x_b..x_k) * f_b for every r, over the point."""
    f = [g.to_f2poly() for g in orthogonal_generators(n, k)]
    fbar = [g.to_f2poly() for g in orthogonal_generators_symmetric(n, k)]
    for r in range(1, k + 1):
        rhs = F2Poly.zero(k)
        for b in range(r, k + 1):
            rhs = rhs + f2poly.complete_homogeneous(b - r, k, range(b - 1, k)) * f[b - 1]
        if rhs != fbar[r - 1]:
            return False
    return True


def coinvariant_system(d: int) -> TriangularSystem:
    """The point-coefficient system h_{d-i+1}(x_1..x_i), i = 1..d."""
    if d < 1:
        raise InputError("need d >= 1")
    gens = [CoeffPoly.from_f2poly(f2poly.complete_homogeneous(d - i, d, range(i + 1))) for i in range(d)]
    return TriangularSystem(gens)


def monomial_system(bounds: Iterable[int]) -> TriangularSystem:
    """(x1^m1, ..., xk^mk) presented as a triangular system over the point."""
    bounds = list(bounds)
    k = len(bounds)
    return TriangularSystem([CoeffPoly(POINT, k, {m << (FIELD * r): 1}) for r, m in enumerate(bounds)])
