"""Symbolic vector bundles over flag-type bases and their Stiefel-Whitney classes.

Every base (point, projective space, Grassmannian, partial flag manifold) is
described by an ambient dimension and a strictly increasing dimension
sequence; classes are computed in the complete flag algebra of that ambient
space, where a canonical bundle becomes a block of the variables t_i and its
total class is the product of (1 + t_i) over the block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .coeffring import FlagAlgebra, flag_algebra
from .errors import InputError


@dataclass(frozen=True)
class Base:
    """Flag_{dims}(R^ambient); the point is Base(0, ())."""

    ambient: int
    dims: tuple[int, ...]

    @property
    def is_point(self) -> bool:
        return self.ambient == 0

    def blocks(self) -> list[tuple[int, int]]:
        """Half-open variable ranges [n_{i-1}, n_i) for the canonical bundles E_1..E_{k+1}."""
        cuts = (0,) + self.dims + (self.ambient,)
        return [(cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1)]

    @property
    def manifold_dim(self) -> int:
        sizes = [b - a for a, b in self.blocks()]
        total = sum(sizes)
        return (total * total - sum(s * s for s in sizes)) // 2

    def algebra(self) -> FlagAlgebra:
        return flag_algebra(max(self.ambient, 1))

    def __str__(self) -> str:
        if self.is_point:
            return "point"
        if self.dims == (1,):
            return f"P(R^{self.ambient})"
        if len(self.dims) == 1:
            return f"Gr_{self.dims[0]}(R^{self.ambient})"
        return f"Flag_{{{','.join(map(str, self.dims))}}}(R^{self.ambient})"


POINT_BASE = Base(0, ())


# -- expression tree ------------------------------------------------------

class BundleExpr:
    """Base class; ``base`` is None only for trivial bundles not yet placed anywhere."""

    base: Optional[Base]
    dim: int

    def resolved_base(self) -> Base:
        return self.base if self.base is not None else POINT_BASE


@dataclass(frozen=True)
class Trivial(BundleExpr):
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise InputError("trivial bundle rank must be non-negative")

    base = None

    @property
    def dim(self) -> int:
        return self.rank

    def __str__(self) -> str:
        return f"trivial({self.rank})"


@dataclass(frozen=True)
class Tautological(BundleExpr):
    ell: int
    d: int

    def __post_init__(self):
        if not 1 <= self.ell <= self.d:
            raise InputError(f"taut needs 1 <= l <= d, got ({self.ell},{self.d})")

    @property
    def base(self) -> Base:
        return Base(self.d, (self.ell,))

    @property
    def dim(self) -> int:
        return self.ell

    def block(self) -> range:
        return range(self.ell)

    def __str__(self) -> str:
        return f"taut({self.ell},{self.d})"


@dataclass(frozen=True)
class Hopf(BundleExpr):
    """The Hopf line bundle over P(R^m); the same bundle as taut(1,m)."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InputError("hopf needs m >= 1")

    @property
    def base(self) -> Base:
        return Base(self.m, (1,))

    dim = 1

    def block(self) -> range:
        return range(1)

    def __str__(self) -> str:
        return f"hopf({self.m})"


@dataclass(frozen=True)
class FlagCanonical(BundleExpr):
    """E_i over Flag_{n_1..n_k}(R^d), 1 <= i <= k+1."""

    index: int
    dims: tuple[int, ...]
    d: int

    def __post_init__(self):
        dims = self.dims
        if not dims:
            raise InputError("flagE needs at least one dimension")
        if dims[0] < 1 or dims[-1] >= self.d or any(a >= b for a, b in zip(dims, dims[1:])):
            raise InputError(f"flagE needs 0 < n_1 < ... < n_k < d, got {list(dims)} with d={self.d}")
        if not 1 <= self.index <= len(dims) + 1:
            raise InputError(f"flagE index must lie in 1..{len(dims) + 1}, got {self.index}")

    @property
    def base(self) -> Base:
        return Base(self.d, self.dims)

    def block(self) -> range:
        lo, hi = self.base.blocks()[self.index - 1]
        return range(lo, hi)

    @property
    def dim(self) -> int:
        return len(self.block())

    def __str__(self) -> str:
        return f"flagE({self.index};{','.join(map(str, self.dims))};{self.d})"


@dataclass(frozen=True)
class Sum(BundleExpr):
    left: BundleExpr
    right: BundleExpr

    def __post_init__(self):
        a, b = self.left.base, self.right.base
        if a is not None and b is not None and a != b:
            raise InputError(f"sum of bundles over different bases: {a} and {b}")

    @property
    def base(self) -> Optional[Base]:
        return self.left.base if self.left.base is not None else self.right.base

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    def __str__(self) -> str:
        return f"sum({self.left},{self.right})"


@dataclass(frozen=True)
class Inverse(BundleExpr):
    inner: BundleExpr

    @property
    def base(self) -> Optional[Base]:
        return self.inner.base

    @property
    def dim(self) -> int:
        return -self.inner.dim

    def __str__(self) -> str:
        return f"inverse({self.inner})"


def direct_sum(*parts: BundleExpr) -> BundleExpr:
    if not parts:
        raise InputError("empty direct sum")
    out = parts[0]
    for p in parts[1:]:
        out = Sum(out, p)
    return out


# -- parser ---------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z]+)|(\S)")


def parse(text: str) -> BundleExpr:
    """Parse the bundle grammar; errors carry the byte offset of the offending token."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("sym", m.group(3), m.start(3)))
    end = len(text.encode())
    pos = 0

    def offset(i):
        return len(text[: tokens[i][2]].encode()) if i < len(tokens) else end

    def fail(msg, i=None):
        raise InputError(f"{msg} at byte {offset(pos if i is None else i)}")

    def take_sym(ch):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][:2] != ("sym", ch):
            fail(f"expected '{ch}'")
        pos += 1

    def take_int():
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0] != "int":
            fail("expected an integer")
        pos += 1
        return int(tokens[pos - 1][1])

    def int_list(stop):
        out = [take_int()]
        while pos < len(tokens) and tokens[pos][:2] == ("sym", ","):
            take_sym(",")
            out.append(take_int())
        take_sym(stop)
        return out

    def expr():
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0] != "name":
            fail("expected a bundle constructor")
        start = pos
        name = tokens[pos][1]
        pos += 1
        take_sym("(")
        try:
            if name == "trivial":
                node = Trivial(take_int())
            elif name == "hopf":
                node = Hopf(take_int())
            elif name == "taut":
                ell = take_int()
                take_sym(",")
                node = Tautological(ell, take_int())
            elif name == "flagE":
                i = take_int()
                take_sym(";")
                dims = int_list(";")
                node = FlagCanonical(i, tuple(dims), take_int())
            elif name == "sum":
                a = expr()
                take_sym(",")
                node = Sum(a, expr())
            elif name == "inverse":
                node = Inverse(expr())
            else:
                fail(f"unknown constructor {name!r}", start)
        except InputError as exc:
            if " at byte " in str(exc):
                raise
            fail(str(exc), start)
        take_sym(")")
        return node

    result = expr()
    if pos != len(tokens):
        fail("trailing input")
    return result


def as_expr(e: BundleExpr | str) -> BundleExpr:
    return parse(e) if isinstance(e, str) else e


# -- Stiefel-Whitney classes ---------------------------------------------

@dataclass(frozen=True)
class CharClass:
    """Total class (w_0..w_D) as masks in the base's flag model, D the base dimension."""

    base: Base
    algebra: FlagAlgebra
    classes: tuple[int, ...]
    dim: int

    def __getitem__(self, i: int) -> int:
        return self.classes[i] if 0 <= i < len(self.classes) else 0

    def __len__(self) -> int:
        return len(self.classes)

    def __mul__(self, other: "CharClass") -> "CharClass":
        if other.base != self.base:
            raise InputError("classes over different bases")
        return CharClass(self.base, self.algebra, _series_product(self.algebra, self.classes, other.classes),
                         self.dim + other.dim)

    def is_one(self) -> bool:
        return self.classes[0] == self.algebra.unit and not any(self.classes[1:])

    def format_lines(self) -> list[str]:
        return [f"w{i} = {self.algebra.format(c)}" for i, c in enumerate(self.classes) if c]

    def __str__(self) -> str:
        return " + ".join(f"({self.algebra.format(c)})" if "+" in self.algebra.format(c) else self.algebra.format(c)
                          for c in self.classes if c) or "0"


def _series_product(alg, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    n = len(a)
    out = [0] * n
    for i in range(n):
        if not a[i]:
            continue
        for j in range(n - i):
            if b[j]:
                out[i + j] ^= alg.mul(a[i], b[j])
    return tuple(out)


def _series_inverse(alg, w: Sequence[int]) -> tuple[int, ...]:
    v = [alg.unit]
    for i in range(1, len(w)):
        acc = 0
        for a in range(1, i + 1):
            if w[a] and v[i - a]:
                acc ^= alg.mul(w[a], v[i - a])
        v.append(acc)
    return tuple(v)


def sw_class(e: BundleExpr | str, base: Base | None = None) -> CharClass:
    """Total Stiefel-Whitney class; inverses are truncated at the base dimension."""
    e = as_expr(e)
    if base is None:
        base = e.resolved_base()
    elif e.base is not None and e.base != base:
        raise InputError(f"bundle lives over {e.base}, not {base}")
    alg = base.algebra()
    top = base.manifold_dim
    return CharClass(base, alg, _evaluate(e, alg, top), e.dim)


def _evaluate(e: BundleExpr, alg: FlagAlgebra, top: int) -> tuple[int, ...]:
    unit_series = (alg.unit,) + (0,) * top
    if isinstance(e, Trivial):
        return unit_series
    if isinstance(e, (Tautological, Hopf, FlagCanonical)):
        block = list(e.block())
        w = alg.block_classes(block)[: top + 1]
        return tuple(w) + (0,) * (top + 1 - len(w))
    if isinstance(e, Sum):
        return _series_product(alg, _evaluate(e.left, alg, top), _evaluate(e.right, alg, top))
    if isinstance(e, Inverse):
        return _series_inverse(alg, _evaluate(e.inner, alg, top))
    raise InputError(f"not a bundle expression: {e!r}")


def top_nonzero_degree(c: CharClass) -> int:
    for i in range(len(c.classes) - 1, -1, -1):
        if c.classes[i]:
            return i
    return 0
