"""Text form of polynomials.

Grammar (whitespace insignificant, ``#`` starts a comment)::

    poly   := sign? term (('+'|'-') term)*
    term   := coeff? ('*'? factor)*
    factor := var ('^' uint)?
    coeff  := uint

Integer literals are reduced mod p. Over an extension field the name ``t``
is the field generator and may appear as a factor of any term.
"""

from __future__ import annotations

import re

from .poly import MAX_EXPONENT, ExponentOverflowError, GREVLEX, Polynomial, PolynomialRing, Terms, terms_iadd


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class UnknownVariableError(PolynomialSyntaxError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    if "#" in text:
        text = text[: text.index("#")]
    tokens = _tokenize(text)
    F = ring.field
    use_t = F.e > 1
    pos = 0
    total: Terms = {}

    def peek():
        return tokens[pos]

    def expect_uint(what: str) -> int:
        nonlocal pos
        kind, val, at = tokens[pos]
        if kind != "int":
            raise PolynomialSyntaxError(f"expected {what}", text, at)
        pos += 1
        return int(val)

    def parse_term(sign: int) -> None:
        nonlocal pos
        kind, val, at = peek()
        coeff = 1
        exps = [0] * ring.nvars
        seen = False
        if kind == "int":
            coeff = F.from_int(int(val))
            pos += 1
            seen = True
        while True:
            kind, val, at = peek()
            star = False
            if kind == "op" and val == "*":
                star = True
                pos += 1
                kind, val, at = peek()
            if kind != "name":
                if star:
                    raise PolynomialSyntaxError("expected a variable after '*'", text, at)
                break
            pos += 1
            power = 1
            if peek()[0] == "op" and peek()[1] == "^":
                pos += 1
                power = expect_uint("an exponent")
                if power > MAX_EXPONENT:
                    raise ExponentOverflowError(f"exponent {power} exceeds {MAX_EXPONENT} at position {at}")
            if use_t and val == "t":
                coeff = F.mul(coeff, F.pow(F.generator, power))
            elif val in ring._index:
                i = ring._index[val]
                exps[i] += power
                if exps[i] > MAX_EXPONENT:
                    raise ExponentOverflowError(f"exponent of {val} exceeds {MAX_EXPONENT}")
            else:
                raise UnknownVariableError(f"unknown variable {val!r}", text, at)
            seen = True
        if not seen:
            kind, val, at = peek()
            raise PolynomialSyntaxError(
                "expected a term" if kind != "end" else "unexpected end of input", text, at
            )
        c = coeff if sign > 0 else F.neg(coeff)
        terms_iadd(F, total, {tuple(exps): c})

    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if peek()[1] == "-" else 1
        pos += 1
    parse_term(sign)
    while True:
        kind, val, at = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            pos += 1
            parse_term(-1 if val == "-" else 1)
            continue
        raise PolynomialSyntaxError(f"unexpected token {val!r}", text, at)
    return Polynomial(ring, total)


def _format_monomial(ring: PolynomialRing, m) -> list[str]:
    out = []
    for name, e in zip(ring.variables, m):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: terms in descending grevlex order, coefficients as residues."""
    if not f.terms:
        return "0"
    ring, F = f.ring, f.field
    parts = []
    for m, c in f.sorted_terms(GREVLEX):
        mono = _format_monomial(ring, m)
        if F.e == 1:
            pieces = [(c, [])]
        else:
            digits = F.digits(c)
            pieces = [
                (d, [] if i == 0 else ["t" if i == 1 else f"t^{i}"])
                for i, d in reversed(list(enumerate(digits)))
                if d
            ]
        for d, tpart in pieces:
            factors = tpart + mono
            if not factors:
                parts.append(str(d))
            elif d == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(d)] + factors))
    return " + ".join(parts)
