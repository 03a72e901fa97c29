"""Finite graded coefficient algebras: the point ring and complete-flag coinvariants.

Elements are stored as Python ints used as bitmasks over the algebra's fixed
basis, so addition is XOR.  Grassmannian and partial-flag classes never get
their own basis: they are represented by their (injective) images in the
complete flag algebra, with the canonical bundle E_i of Flag_{n1..nk}(R^d)
sent to the variable block t_{n_{i-1}+1} .. t_{n_i}.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

from . import f2poly
from .errors import InputError, ResourceLimitError, current_limits
from .f2poly import F2Poly


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CoefficientAlgebra:
    """A finite-dimensional graded commutative F2-algebra with a fixed basis.

    Subclasses provide ``labels``, ``degrees``, ``top_degree`` and
    ``_product(i, j) -> mask``.  Basis index 0 is the unit.
    """

    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    top_degree: int
    unit = 1

    @property
    def rank(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        out = 0
        bits_b = list(iter_bits(b))
        degs, top = self.degrees, self.top_degree
        for i in iter_bits(a):
            di = degs[i]
            for j in bits_b:
                if di + degs[j] <= top:
                    out ^= self._product(i, j)
        return out

    def _product(self, i: int, j: int) -> int:
        raise NotImplementedError

    def power(self, a: int, n: int) -> int:
        out = self.unit
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def degree_of(self, mask: int) -> set[int]:
        return {self.degrees[i] for i in iter_bits(mask)}

    def format(self, mask: int) -> str:
        if not mask:
            return "0"
        idx = sorted(iter_bits(mask), key=lambda i: (-self.degrees[i], i))
        return "+".join(self.labels[i] for i in idx)

    def element(self, mask: int) -> "AlgebraElement":
        return AlgebraElement(self, mask)


class PointAlgebra(CoefficientAlgebra):
    """H*(pt; F2) = F2."""

    labels = ("1",)
    degrees = (0,)
    top_degree = 0

    def mul(self, a: int, b: int) -> int:
        return a & b

    def _product(self, i: int, j: int) -> int:
        return 1

    def __repr__(self) -> str:
        return "PointAlgebra()"


POINT = PointAlgebra()


class FlagAlgebra(CoefficientAlgebra):
    """F2[t1..td]/(sigma_1..sigma_d), the mod-2 cohomology of the complete flag manifold.

    The ideal is triangularised by g_i = h_{d-i+1}(t1..ti); the staircase
    monomials t^a with a_i <= d - i form the basis (d! of them).
    """

    def __init__(self, d: int):
        from .ideals import CoeffPoly, TriangularSystem

        if d < 1:
            raise InputError("flag algebra needs d >= 1")
        self.d = d
        gens = [CoeffPoly.from_f2poly(f2poly.complete_homogeneous(d - i, d, range(i + 1)), POINT) for i in range(d)]
        self.system = TriangularSystem(gens)
        stairs = []

        def walk(i, acc):
            if i == d:
                stairs.append(tuple(acc))
                return
            for a in range(d - i):
                walk(i + 1, acc + [a])

        walk(0, [])
        stairs.sort(key=lambda e: (sum(e), tuple(-a for a in e)))
        self.basis = tuple(f2poly.pack(e) for e in stairs)
        self.index = {m: n for n, m in enumerate(self.basis)}
        self.labels = tuple(f2poly.format_monomial(m, d, "t") for m in self.basis)
        self.degrees = tuple(sum(e) for e in stairs)
        self.top_degree = d * (d - 1) // 2
        # Filled lazily; concurrent writers store identical values.
        self._table: dict[int, int] = {}

    def __repr__(self) -> str:
        return f"FlagAlgebra({self.d})"

    def _product(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = i * len(self.basis) + j
        got = self._table.get(key)
        if got is None:
            got = self._monomial_mask(self.basis[i] + self.basis[j])
            self._table[key] = got
        return got

    def _monomial_mask(self, m: int) -> int:
        from .ideals import CoeffPoly

        nf = self.system.reduce(CoeffPoly(POINT, self.d, {m: 1}))
        out = 0
        for mono in nf.terms:
            out |= 1 << self.index[mono]
        return out

    def from_poly(self, p: F2Poly) -> int:
        """Normal form of a polynomial in t1..td, as a basis mask."""
        from .ideals import CoeffPoly

        if p.nvars != self.d:
            raise InputError(f"expected a polynomial in {self.d} variables")
        nf = self.system.reduce(CoeffPoly.from_f2poly(p, POINT))
        out = 0
        for mono in nf.terms:
            out |= 1 << self.index[mono]
        return out

    def monomial(self, exponents: Sequence[int]) -> int:
        e = list(exponents) + [0] * (self.d - len(exponents))
        if len(e) != self.d:
            raise InputError(f"at most {self.d} exponents")
        if sum(e) > self.top_degree:
            return 0
        return self._monomial_mask(f2poly.pack(e))

    def block_classes(self, variables: Iterable[int]) -> list[int]:
        """Masks of sigma_0..sigma_r on a block of (0-based) variables: w of a sum of line bundles."""
        vs = list(variables)
        return [self.from_poly(f2poly.elementary_symmetric(r, self.d, vs)) for r in range(len(vs) + 1)]


@functools.lru_cache(maxsize=None)
def _flag_algebra(d: int) -> FlagAlgebra:
    return FlagAlgebra(d)


def flag_algebra(d: int) -> FlagAlgebra:
    """Shared, immutable FlagAlgebra(d)."""
    if d < 1:
        raise InputError("flag algebra needs d >= 1")
    rank = 1
    for i in range(2, d + 1):
        rank *= i
    if rank > current_limits().max_flag_rank:
        raise ResourceLimitError(f"flag algebra of R^{d} has rank {rank} > cap {current_limits().max_flag_rank}")
    return _flag_algebra(d)


class AlgebraElement:
    """An F2-combination of basis labels of a coefficient algebra."""

    __slots__ = ("algebra", "mask")

    def __init__(self, algebra: CoefficientAlgebra, mask: int):
        self.algebra = algebra
        self.mask = mask

    def _same(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise InputError("elements live in different algebras")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, self.mask ^ other.mask)

    def __mul__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, self.algebra.mul(self.mask, other.mask))

    def __pow__(self, n: int):
        return AlgebraElement(self.algebra, self.algebra.power(self.mask, n))

    def __bool__(self) -> bool:
        return bool(self.mask)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.algebra is other.algebra and self.mask == other.mask
        if other == 0:
            return self.mask == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.mask))

    def __str__(self) -> str:
        return self.algebra.format(self.mask)

    def __repr__(self) -> str:
        return f"AlgebraElement({self.algebra!r}, {str(self)!r})"


def flag_monomial_nonzero(d: int, exponents: Sequence[int]) -> bool:
    """Is t1^a1 ... td^ad nonzero in the complete flag algebra of R^d?"""
    if len(exponents) > d:
        raise InputError(f"at most {d} exponents for the flag algebra of R^{d}")
    if any(a < 0 for a in exponents):
        raise InputError("negative exponent")
    if sum(exponents) > d * (d - 1) // 2:
        return False
    return bool(flag_algebra(d).monomial(exponents))


def grassmann_class(d: int, ell: int, which: str, j: int) -> AlgebraElement:
    """Image of w_j(E_ell^d) ('taut') or w_j of its orthogonal complement ('complement').

    Classes above the rank of the bundle are zero; negative j is rejected.
    """
    if not 1 <= ell <= d:
        raise InputError(f"need 1 <= ell <= d, got ell={ell}, d={d}")
    if j < 0:
        raise InputError("negative class index")
    alg = flag_algebra(d)
    if which == "taut":
        block = range(ell)
    elif which == "complement":
        block = range(ell, d)
    else:
        raise InputError(f"unknown class family {which!r}")
    if j > len(block):
        return AlgebraElement(alg, 0)
    return AlgebraElement(alg, alg.from_poly(f2poly.elementary_symmetric(j, d, block)))
