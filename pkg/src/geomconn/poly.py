"""Weighted-graded polynomial rings over finite fields.

A polynomial is a dict mapping exponent tuples to nonzero coefficient
encodings. :class:`Polynomial` wraps that dict with its ring; the Groebner
and resolution code works on the raw dicts for speed.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .field import FieldElement, FiniteField

Exps = tuple[int, ...]
Terms = dict[Exps, int]

MAX_EXPONENT = 2**31 - 1

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ExponentOverflowError(OverflowError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``elim`` (block order eliminating the first ``block`` variables).

    Every order here is a degree-then-reverse-lexicographic order on each
    block, except ``lex``. Larger key means larger monomial.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a block of at least one variable")

    def key_function(self, weights: Sequence[int]) -> Callable[[Exps], tuple]:
        return _key_function(self, tuple(weights))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


@functools.lru_cache(maxsize=None)
def _key_function(order: MonomialOrder, weights: tuple[int, ...]):
    n = len(weights)
    standard = all(w == 1 for w in weights)

    if order.kind == "lex":
        return lambda m: m

    if order.kind == "grevlex":
        if standard:
            def key(m):
                return (sum(m),) + tuple(-e for e in reversed(m))
        else:
            def key(m):
                return (sum(w * e for w, e in zip(weights, m)),) + tuple(-e for e in reversed(m))
        return key

    k = order.block
    if k > n:
        raise ValueError("elimination block larger than the number of variables")
    w1, w2 = weights[:k], weights[k:]

    def key(m):
        a, b = m[:k], m[k:]
        return (
            (sum(w * e for w, e in zip(w1, a)),)
            + tuple(-e for e in reversed(a))
            + (sum(w * e for w, e in zip(w2, b)),)
            + tuple(-e for e in reversed(b))
        )

    return key


# -- monomial helpers -----------------------------------------------------------

def mono_mul(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_degree(m: Exps, weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, m))


@functools.lru_cache(maxsize=None)
def monomials_of_degree(weights: tuple[int, ...], degree: int) -> tuple[Exps, ...]:
    """All exponent vectors of the given weighted degree, descending in grevlex."""
    n = len(weights)
    if degree < 0:
        return ()
    out: list[Exps] = []

    def rec(i: int, remaining: int, prefix: list[int]):
        if i == n - 1:
            if remaining % weights[i] == 0:
                out.append(tuple(prefix + [remaining // weights[i]]))
            return
        for e in range(remaining // weights[i] + 1):
            rec(i + 1, remaining - e * weights[i], prefix + [e])

    if n == 0:
        return ((),) if degree == 0 else ()
    rec(0, degree, [])
    key = _key_function(GREVLEX, weights)
    out.sort(key=key, reverse=True)
    return tuple(out)


# -- raw term-dict arithmetic -----------------------------------------------------

def terms_add(field: FiniteField, f: Terms, g: Terms, c: int = 1, shift: Exps | None = None) -> Terms:
    """f + c * x^shift * g as a new dict."""
    out = dict(f)
    terms_iadd(field, out, g, c, shift)
    return out


def terms_iadd(field: FiniteField, f: Terms, g: Terms, c: int = 1, shift: Exps | None = None) -> None:
    """In place: f += c * x^shift * g."""
    if not c:
        return
    if field.e == 1:
        p = field.p
        for m, a in g.items():
            if shift is not None:
                m = tuple(x + y for x, y in zip(m, shift))
            v = (f.get(m, 0) + c * a) % p
            if v:
                f[m] = v
            else:
                f.pop(m, None)
    else:
        add, mul = field.add, field.mul
        for m, a in g.items():
            if shift is not None:
                m = tuple(x + y for x, y in zip(m, shift))
            v = add(f.get(m, 0), mul(c, a))
            if v:
                f[m] = v
            else:
                f.pop(m, None)


def terms_mul(field: FiniteField, f: Terms, g: Terms) -> Terms:
    if len(f) > len(g):
        f, g = g, f
    out: Terms = {}
    for m, a in f.items():
        terms_iadd(field, out, g, a, m)
    return out


def terms_scale(field: FiniteField, f: Terms, c: int, shift: Exps | None = None) -> Terms:
    if not c:
        return {}
    mul = field.mul
    if shift is None:
        return {m: mul(c, a) for m, a in f.items()}
    return {tuple(x + y for x, y in zip(m, shift)): mul(c, a) for m, a in f.items()}


def terms_pth_power(field: FiniteField, f: Terms) -> Terms:
    """Termwise p-th power; valid in characteristic p."""
    p = field.p
    frob = field.frobenius
    return {tuple(p * e for e in m): frob(c) for m, c in f.items()}


def terms_pow(field: FiniteField, f: Terms, k: int, nvars: int) -> Terms:
    result: Terms = {(0,) * nvars: 1}
    base = f
    while k:
        if k & 1:
            result = terms_mul(field, result, base)
        k >>= 1
        if k:
            base = terms_mul(field, base, base)
    return result


# -- rings and polynomials --------------------------------------------------------

class PolynomialRing:
    """F_q[x_1..x_n] with positive integer weights (default all 1)."""

    def __init__(self, field: FiniteField, variables: Sequence[str], weights: Sequence[int] | None = None):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        for v in variables:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
            if field.e > 1 and v == "t":
                raise ValueError("'t' is reserved for the field generator when ext > 1")
        weights = tuple(int(w) for w in (weights if weights is not None else [1] * len(variables)))
        if len(weights) != len(variables) or any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers, one per variable")
        self.field = field
        self.variables = variables
        self.weights = weights
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    def _key(self):
        return (self.field, self.variables, self.weights)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolynomialRing) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        w = "" if all(x == 1 for x in self.weights) else f", weights={list(self.weights)}"
        return f"PolynomialRing({self.field!r}, {list(self.variables)}{w})"

    @property
    def standard_weights(self) -> bool:
        return all(w == 1 for w in self.weights)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def key_function(self, order: MonomialOrder = GREVLEX):
        return order.key_function(self.weights)

    def degree_of(self, m: Exps) -> int:
        return mono_degree(m, self.weights)

    def zero_exps(self) -> Exps:
        return (0,) * self.nvars

    # constructors
    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ValueError("polynomial from a different ring")
            return value
        if isinstance(value, str):
            from .parser import parse_polynomial
            return parse_polynomial(value, self)
        return self.constant(value)

    def constant(self, c: int | FieldElement) -> Polynomial:
        code = self.field(c).value
        return Polynomial(self, {self.zero_exps(): code} if code else {})

    def monomial(self, exps: Sequence[int], c: int | FieldElement = 1) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        code = self.field(c).value
        return Polynomial(self, {exps: code} if code else {})

    def gen(self, i: int | str) -> Polynomial:
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    @property
    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(1)

    def monomials_of_degree(self, degree: int) -> tuple[Exps, ...]:
        return monomials_of_degree(self.weights, degree)

    def with_field(self, field: FiniteField) -> PolynomialRing:
        return PolynomialRing(field, self.variables, self.weights)

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None, front: bool = True) -> PolynomialRing:
        """Ring with extra variables, placed first by default (used for elimination)."""
        weights = list(weights) if weights is not None else [1] * len(names)
        if front:
            return PolynomialRing(self.field, tuple(names) + self.variables, weights + list(self.weights))
        return PolynomialRing(self.field, self.variables + tuple(names), list(self.weights) + weights)


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero codes."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: Terms):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def field(self) -> FiniteField:
        return self.ring.field

    def _other(self, other) -> Terms:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other.terms
        if isinstance(other, (int, FieldElement)):
            return self.ring.constant(other).terms
        return NotImplemented

    def __add__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return g
        return Polynomial(self.ring, terms_add(self.field, self.terms, g))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return g
        return Polynomial(self.ring, terms_add(self.field, self.terms, g, self.field.neg(1)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        g = self._other(other)
        if g is NotImplemented:
            return g
        if self.terms and g:
            bound = max(max(m) for m in self.terms) + max(max(m) for m in g)
            if bound > MAX_EXPONENT:
                raise ExponentOverflowError("exponent exceeds the supported range")
        return Polynomial(self.ring, terms_mul(self.field, self.terms, g))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if self.terms and max(max(m) for m in self.terms) * k > MAX_EXPONENT:
            raise ExponentOverflowError("exponent exceeds the supported range")
        return Polynomial(self.ring, terms_pow(self.field, self.terms, k, self.ring.nvars))

    def pth_power(self) -> Polynomial:
        """f^p computed termwise (Frobenius on coefficients, exponents times p)."""
        if self.terms and max(max(m) for m in self.terms) * self.field.p > MAX_EXPONENT:
            raise ExponentOverflowError("exponent exceeds the supported range")
        return Polynomial(self.ring, terms_pth_power(self.field, self.terms))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Exps, int]]:
        key = self.ring.key_function(order)
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Exps:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key_function(order))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> FieldElement:
        return self.field.element(self.terms[self.leading_monomial(order)])

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return self.field.element(self.terms.get(tuple(exps), 0))

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.terms:
            return self
        inv = self.field.inv(self.terms[self.leading_monomial(order)])
        return Polynomial(self.ring, terms_scale(self.field, self.terms, inv))

    def degrees(self) -> set[int]:
        return {self.ring.degree_of(m) for m in self.terms}

    def degree(self) -> int:
        """Largest weighted degree of a term."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.degrees())

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree_and_homogeneity(self) -> tuple[int | None, bool]:
        """(weighted degree, True) for homogeneous f, (None, False) otherwise."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        degs = self.degrees()
        if len(degs) == 1:
            return degs.pop(), True
        return None, False

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> Iterator[Exps]:
        return iter(self.terms)

    def map_field(self, ring: PolynomialRing) -> Polynomial:
        """Image under a prime-subfield-preserving inclusion of coefficient fields."""
        if ring.field.p != self.field.p or any(c >= self.field.p for c in self.terms.values()):
            raise ValueError("only prime-field coefficients can be moved between fields")
        return Polynomial(ring, {m: ring.field.from_int(c) for m, c in self.terms.items()})

    def __str__(self) -> str:
        from .parser import format_polynomial
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def degree_and_homogeneity(f: Polynomial) -> tuple[int | None, bool]:
    return f.degree_and_homogeneity()


def pth_power(f: Polynomial) -> Polynomial:
    return f.pth_power()


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.ring != g.ring:
        raise ValueError("polynomials live in different rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def from_terms(ring: PolynomialRing, items: Iterable[tuple[Exps, int]]) -> Polynomial:
    out: Terms = {}
    F = ring.field
    for m, c in items:
        terms_iadd(F, out, {m: c})
    return Polynomial(ring, out)
