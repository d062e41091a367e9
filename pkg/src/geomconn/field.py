"""Finite fields F_q, q = p^e.

Elements are encoded as plain ints in ``range(q)``: for e = 1 the residue
itself, for e > 1 the integer whose base-p digits are the coefficients
c_0 + c_1 t + ... + c_{e-1} t^{e-1} of the element in F_p[t]/(modulus).
Algorithms work on these ints through the owning :class:`FiniteField`;
:class:`FieldElement` is the operator-overloading wrapper for callers.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Iterator, Sequence

# Extension fields keep a full q*q addition table up to this order.
_ADD_TABLE_LIMIT = 1024
_MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by monic b over F_p (coefficient lists, low degree first)."""
    r = list(a)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return _trim([x % p for x in r[:db]])


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= e/2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p != 1:
        return False
    if e == 1:
        return True
    for k in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _polymod(modulus, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree e.

    Candidates x^e + c_{e-1}x^{e-1} + ... + c_0 are enumerated in increasing
    order of the integer sum(c_i p^i); the first irreducible one wins, which
    gives x^2 + 1 over F_3 and x^2 + x + 1 over F_2.
    """
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        if is_irreducible(low + [1], p):
            return tuple(low + [1])
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


class FiniteField:
    """The field F_q with q = p^e, arithmetic on int encodings.

    Two fields compare equal when (p, e, modulus) agree; use :func:`GF` to get
    the cached instance.
    """

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if p**e > _MAX_ORDER:
            raise ValueError(f"field order {p}^{e} is too large")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            self.modulus: tuple[int, ...] | None = None
        else:
            modulus = tuple(int(c) % p for c in (modulus or default_modulus(p, e)))
            if len(modulus) != e + 1 or not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is not monic irreducible of degree {e}")
            self.modulus = modulus
            self._build_tables()

    # -- construction of extension tables -------------------------------------

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _encode(self, digits: Sequence[int]) -> int:
        return sum((d % self.p) * self.p**i for i, d in enumerate(digits))

    def _polymul_mod(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._encode(_polymod(prod, self.modulus, self.p))

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        if q <= _ADD_TABLE_LIMIT:
            digits = [self._digits(a) for a in range(q)]
            self._add_table = [
                [self._encode([x + y for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                for a in range(q)
            ]
        else:
            self._add_table = None
        self._neg = [self._encode([-d for d in self._digits(a)]) for a in range(q)]
        # discrete log tables from a primitive element
        order = q - 1
        prime_factors = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        for g in range(2, q):
            powers = [1]
            for _ in range(order - 1):
                powers.append(self._polymul_mod(powers[-1], g))
            if len(set(powers)) == order and all(
                powers[order // r] != 1 for r in prime_factors
            ):
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise RuntimeError("primitive element not found")
        self._exp = powers + powers
        self._log = [0] * q
        for k, v in enumerate(powers):
            self._log[v] = k
        self._frob = [self._pow_slow(a, p) for a in range(q)]
        self._root = [0] * q
        for a in range(q):
            self._root[self._frob[a]] = a

    def _pow_slow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    # -- arithmetic on encodings ----------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._encode([x + y for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in finite field")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if self.e == 1:
            return pow(a, k, self.p)
        return self._pow_slow(a, k)

    def frobenius(self, a: int) -> int:
        """a -> a^p, the identity on the prime field."""
        if self.e == 1:
            return a
        return self._frob[a]

    def pth_root(self, a: int) -> int:
        """The unique b with b^p = a."""
        if self.e == 1:
            return a
        return self._root[a]

    def from_int(self, n: int) -> int:
        return n % self.p

    @property
    def generator(self) -> int:
        """Encoding of the class of t in F_p[t]/(modulus) (p itself when e > 1)."""
        if self.e == 1:
            raise ValueError("a prime field has no extension generator")
        return self.p

    def digits(self, a: int) -> list[int]:
        """Coefficients of ``a`` as a polynomial in the extension generator."""
        return [a] if self.e == 1 else self._digits(a)

    def from_digits(self, digits: Sequence[int]) -> int:
        if self.e == 1:
            return digits[0] % self.p if digits else 0
        if len(digits) > self.e:
            raise ValueError("too many digits")
        return self._encode(digits)

    # -- vector helpers used by the elimination routines -----------------------

    def axpy(self, c: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """y + c*x, entrywise."""
        if self.e == 1:
            p = self.p
            return [(b + c * a) % p for a, b in zip(x, y)]
        add, mul = self.add, self.mul
        return [add(b, mul(c, a)) for a, b in zip(x, y)]

    def scale(self, c: int, x: Sequence[int]) -> list[int]:
        if self.e == 1:
            p = self.p
            return [c * a % p for a in x]
        mul = self.mul
        return [mul(c, a) for a in x]

    # -- wrappers --------------------------------------------------------------

    def __call__(self, value: int | FieldElement) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        return FieldElement(self, self.from_int(value))

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise ValueError(f"encoding {code} out of range for F_{self.q}")
        return FieldElement(self, code)

    def elements(self) -> Iterator[FieldElement]:
        return (FieldElement(self, a) for a in range(self.q))

    @property
    def t(self) -> FieldElement:
        return FieldElement(self, self.generator)

    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    def format(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        parts = []
        for i, d in enumerate(self._digits(a)):
            if d:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if not mono:
                    parts.append(str(d))
                else:
                    parts.append(mono if d == 1 else f"{d}*{mono}")
        return " + ".join(reversed(parts)) if parts else "0"


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, e: int, modulus: tuple[int, ...] | None) -> FiniteField:
    return FiniteField(p, e, modulus)


def GF(p: int, e: int = 1, modulus: Iterable[int] | None = None) -> FiniteField:
    """Cached field constructor; ``modulus`` lists coefficients low degree first."""
    return _cached_field(p, e, tuple(modulus) if modulus is not None else None)


class FieldElement:
    """Immutable element of a :class:`FiniteField`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(self.field, v)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def frobenius(self) -> FieldElement:
        return self._wrap(self.field.frobenius(self.value))

    def pth_root(self) -> FieldElement:
        return self._wrap(self.field.pth_root(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return f"{self.field.format(self.value)} in {self.field!r}"

    def __str__(self) -> str:
        return self.field.format(self.value)


def frobenius_scalar(c: FieldElement) -> FieldElement:
    return c.frobenius()


def pth_root_scalar(c: FieldElement) -> FieldElement:
    return c.pth_root()
