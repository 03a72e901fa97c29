"""Multivariate polynomials over the two-element field.

A monomial x1^a1 * ... * xk^ak is packed into one integer with ``FIELD``
bits per exponent and x1 in the lowest field.  Packing makes monomial
multiplication integer addition and squaring a left shift, and it makes the
integer order coincide with the lexicographic order on (ak, ..., a1), which
is the termination order used by the triangular reduction in ``ideals``.

A polynomial is a frozenset of packed monomials (coefficient 1 when present).
"""

from __future__ import annotations

import re
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ResourceLimitError, current_limits

FIELD = 21
MASK = (1 << FIELD) - 1


def pack(exponents: Sequence[int]) -> int:
    m = 0
    for i, a in enumerate(exponents):
        if a < 0:
            raise InputError(f"negative exponent {a}")
        if a > MASK:
            raise ResourceLimitError(f"exponent {a} exceeds the representable range")
        m |= a << (FIELD * i)
    return m


def unpack(m: int, nvars: int) -> tuple[int, ...]:
    return tuple((m >> (FIELD * i)) & MASK for i in range(nvars))


def exponent(m: int, i: int) -> int:
    return (m >> (FIELD * i)) & MASK


def monomial_degree(m: int) -> int:
    d = 0
    while m:
        d += m & MASK
        m >>= FIELD
    return d


def variable(i: int) -> int:
    """Packed monomial x_{i+1} (0-based index)."""
    return 1 << (FIELD * i)


def grlex_key(m: int, nvars: int):
    """Sort key: descending gives graded lex with x1 > x2 > ..."""
    e = unpack(m, nvars)
    return (sum(e), e)


def format_monomial(m: int, nvars: int, name: str = "x") -> str:
    parts = []
    for i, a in enumerate(unpack(m, nvars)):
        if a == 1:
            parts.append(f"{name}{i + 1}")
        elif a > 1:
            parts.append(f"{name}{i + 1}^{a}")
    return "*".join(parts) if parts else "1"


class F2Poly:
    """An element of F2[x1..xk]; immutable and hashable."""

    __slots__ = ("nvars", "terms", "_degree", "_maxexp")

    def __init__(self, nvars: int, terms: Iterable[int] = ()):
        if nvars < 0:
            raise InputError("arity must be non-negative")
        self.nvars = nvars
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        self._degree = None
        self._maxexp = None

    # -- construction --------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "F2Poly":
        return cls(nvars, frozenset())

    @classmethod
    def one(cls, nvars: int) -> "F2Poly":
        return cls(nvars, frozenset((0,)))

    @classmethod
    def var(cls, i: int, nvars: int) -> "F2Poly":
        if not 0 <= i < nvars:
            raise InputError(f"variable index {i} out of range for arity {nvars}")
        return cls(nvars, frozenset((variable(i),)))

    @classmethod
    def from_exponents(cls, nvars: int, monomials: Iterable[Sequence[int]]) -> "F2Poly":
        """Build from exponent tuples; repeated tuples cancel in pairs."""
        acc: set[int] = set()
        for e in monomials:
            if len(e) != nvars:
                raise InputError(f"monomial {tuple(e)} does not have arity {nvars}")
            acc ^= {pack(e)}
        return cls(nvars, frozenset(acc))

    # -- inspection ----------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, F2Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int) and other in (0, 1):
            return self.terms == (frozenset((0,)) if other else frozenset())
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, self.terms))

    def __contains__(self, exponents: Sequence[int]) -> bool:
        return pack(exponents) in self.terms

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        if self._degree is None:
            self._degree = max((monomial_degree(m) for m in self.terms), default=-1)
        return self._degree

    def max_exponents(self) -> tuple[int, ...]:
        """Per-variable maximal exponent."""
        if self._maxexp is None:
            best = [0] * self.nvars
            for m in self.terms:
                for i in range(self.nvars):
                    a = (m >> (FIELD * i)) & MASK
                    if a > best[i]:
                        best[i] = a
            self._maxexp = tuple(best)
        return self._maxexp

    def max_exponent(self) -> int:
        return max(self.max_exponents(), default=0)

    def is_homogeneous(self) -> bool:
        return len({monomial_degree(m) for m in self.terms}) <= 1

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent tuples in canonical (graded lex, x1 > x2 > ...) descending order."""
        ordered = sorted(self.terms, key=lambda m: grlex_key(m, self.nvars), reverse=True)
        return [unpack(m, self.nvars) for m in ordered]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda m: grlex_key(m, self.nvars), reverse=True)
        return "+".join(format_monomial(m, self.nvars) for m in ordered)

    def __repr__(self) -> str:
        return f"F2Poly({self.nvars}, {str(self)!r})"

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "F2Poly") -> None:
        if not isinstance(other, F2Poly):
            raise InputError(f"expected F2Poly, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise InputError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "F2Poly") -> "F2Poly":
        self._check(other)
        return F2Poly(self.nvars, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "F2Poly") -> "F2Poly":
        return multiply(self, other)

    def __pow__(self, j: int) -> "F2Poly":
        return power(self, j)

    def frobenius(self) -> "F2Poly":
        """p -> p^2, which in characteristic 2 squares every monomial."""
        limits = current_limits()
        if 2 * self.degree() > limits.max_degree:
            raise ResourceLimitError(f"degree {2 * self.degree()} exceeds cap {limits.max_degree}")
        if 2 * self.max_exponent() > limits.max_exponent:
            raise ResourceLimitError(f"exponent {2 * self.max_exponent()} exceeds cap {limits.max_exponent}")
        return F2Poly(self.nvars, frozenset(m << 1 for m in self.terms))

    def substitute(self, images: Sequence["F2Poly"]) -> "F2Poly":
        """Ring homomorphism x_i -> images[i]."""
        if len(images) != self.nvars:
            raise InputError("need one image per variable")
        target = images[0].nvars if images else 0
        out = F2Poly.zero(target)
        for e in self.monomials():
            term = F2Poly.one(target)
            for img, a in zip(images, e):
                if a:
                    term = term * power(img, a)
            out = out + term
        return out


def multiply(p: F2Poly, q: F2Poly) -> F2Poly:
    p._check(q)
    if not p.terms or not q.terms:
        return F2Poly.zero(p.nvars)
    limits = current_limits()
    if p.degree() + q.degree() > limits.max_degree:
        raise ResourceLimitError(f"degree {p.degree() + q.degree()} exceeds cap {limits.max_degree}")
    if any(a + b > limits.max_exponent for a, b in zip(p.max_exponents(), q.max_exponents())):
        raise ResourceLimitError(f"exponent cap {limits.max_exponent} exceeded")
    small, big = (p.terms, q.terms) if len(p.terms) <= len(q.terms) else (q.terms, p.terms)
    acc: set[int] = set()
    for a in small:
        acc ^= {a + b for b in big}
        if len(acc) > limits.max_terms:
            raise ResourceLimitError(f"term count exceeds cap {limits.max_terms}")
    return F2Poly(p.nvars, frozenset(acc))


def power(p: F2Poly, j: int) -> F2Poly:
    """p^j by binary expansion: a Frobenius squaring per bit, one multiply per set bit."""
    if j < 0:
        raise InputError("exponent must be non-negative")
    result = F2Poly.one(p.nvars)
    base = p
    while j:
        if j & 1:
            result = multiply(result, base)
        j >>= 1
        if j:
            base = base.frobenius()
    return result


def _variables(nvars: int, variables: Iterable[int] | None) -> list[int]:
    vs = list(range(nvars)) if variables is None else list(variables)
    for v in vs:
        if not 0 <= v < nvars:
            raise InputError(f"variable index {v} out of range for arity {nvars}")
    if len(set(vs)) != len(vs):
        raise InputError("repeated variable in subset")
    return vs


def elementary_symmetric(r: int, nvars: int, variables: Iterable[int] | None = None) -> F2Poly:
    """sigma_r in the chosen (0-based) variables; sigma_0 = 1."""
    vs = _variables(nvars, variables)
    if not 0 <= r <= len(vs):
        raise InputError(f"sigma_{r} undefined on {len(vs)} variables")
    return F2Poly(nvars, frozenset(sum(variable(v) for v in c) for c in combinations(vs, r)))


def complete_homogeneous(a: int, nvars: int, variables: Iterable[int] | None = None) -> F2Poly:
    """h_a: the sum of all monomials of total degree a in the chosen variables."""
    vs = _variables(nvars, variables)
    if a < 0:
        return F2Poly.zero(nvars)
    if not vs:
        return F2Poly.one(nvars) if a == 0 else F2Poly.zero(nvars)
    return F2Poly(nvars, frozenset(sum(variable(v) for v in c) for c in combinations_with_replacement(vs, a)))


_TOKEN = re.compile(r"(\d+)|([A-Za-z]\w*)|(\S)")


def parse(text: str, nvars: int | None = None, symbols: Mapping[str, F2Poly] | None = None) -> F2Poly:
    """Parse '+', '*', '^', parentheses, variables x1.., constants 0/1 and named symbols.

    The canonical output of ``str`` round-trips.  When ``nvars`` is omitted it is
    the largest variable index mentioned (or the arity of any symbol used).
    """
    symbols = dict(symbols or {})
    tokens: list[tuple[str, str, int]] = []
    for mt in _TOKEN.finditer(text):
        num, name, op = mt.groups()
        kind = "num" if num else "name" if name else "op"
        tokens.append((kind, mt.group(0), mt.start()))
    arity = nvars
    if arity is None:
        arity = 0
        for kind, val, _ in tokens:
            if kind == "name" and re.fullmatch(r"x\d+", val):
                arity = max(arity, int(val[1:]))
            elif kind == "name" and val in symbols:
                arity = max(arity, symbols[val].nvars)
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else ("end", "", len(text))

    def take(expected=None):
        nonlocal idx
        tok = peek()
        if expected is not None and tok[1] != expected:
            raise InputError(f"expected {expected!r} at offset {tok[2]}")
        idx += 1
        return tok

    def lift(p: F2Poly) -> F2Poly:
        if p.nvars == arity:
            return p
        if p.nvars > arity:
            raise InputError(f"symbol of arity {p.nvars} exceeds arity {arity}")
        return F2Poly(arity, p.terms)

    def atom() -> F2Poly:
        kind, val, at = take()
        if kind == "num":
            if val not in ("0", "1"):
                raise InputError(f"coefficient {val} is not in F2 at offset {at}")
            return F2Poly.one(arity) if val == "1" else F2Poly.zero(arity)
        if kind == "name":
            if val in symbols:
                return lift(symbols[val])
            if re.fullmatch(r"x\d+", val) and int(val[1:]) >= 1:
                return F2Poly.var(int(val[1:]) - 1, arity)
            raise InputError(f"unknown symbol {val!r} at offset {at}")
        if val == "(":
            p = expr()
            take(")")
            return p
        raise InputError(f"unexpected {val!r} at offset {at}")

    def factor() -> F2Poly:
        p = atom()
        while peek()[1] == "^":
            take()
            kind, val, at = take()
            if kind != "num":
                raise InputError(f"expected exponent at offset {at}")
            p = power(p, int(val))
        return p

    def term() -> F2Poly:
        p = factor()
        while peek()[1] == "*":
            take()
            p = p * factor()
        return p

    def expr() -> F2Poly:
        p = term()
        while peek()[1] in ("+", "-"):
            take()
            p = p + term()
        return p

    if not tokens:
        raise InputError("empty polynomial")
    result = expr()
    if idx != len(tokens):
        raise InputError(f"unexpected {tokens[idx][1]!r} at offset {tokens[idx][2]}")
    return result
