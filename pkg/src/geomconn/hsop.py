"""Homogeneous systems of parameters made of nonzerodivisors.

Candidates are drawn from :class:`random.Random` (Mersenne Twister, seeded
with the user's integer seed), so a given seed reproduces the same forms on
every platform. Every accepted form carries a certificate: the quotient
(I : f) equals I, and adding the form drops the Krull dimension by one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .groebner import (
    GroebnerBasis,
    Ideal,
    hilbert_numerator,
    ideal_quotient,
    krull_dimension,
    strand_basis,
)
from .poly import Polynomial, terms_pow

DEFAULT_MAX_DEGREE = 4
DEFAULT_TRIALS = 200


class HsopSearchError(RuntimeError):
    """No certified system of parameters within the search budget."""


@dataclass(frozen=True)
class ParameterSystem:
    forms: tuple[Polynomial, ...]
    degrees: tuple[int, ...]
    nonzerodivisor: tuple[bool, ...]
    # dim A/(I + f_1..f_k) for k = 0..d
    dimensions: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.forms)

    def powered(self, N: int) -> ParameterSystem:
        """The system of N-th powers (still nonzerodivisors, same radical)."""
        if N == 1:
            return self
        forms = tuple(Polynomial(f.ring, terms_pow(f.field, f.terms, N, f.ring.nvars)) for f in self.forms)
        return ParameterSystem(forms, tuple(N * g for g in self.degrees), self.nonzerodivisor, self.dimensions)


def certify_nonzerodivisor(Gsat: GroebnerBasis, f: Polynomial) -> bool:
    """True iff (I : f) = I, compared as reduced Groebner bases."""
    return ideal_quotient(Gsat.ideal, f).groebner() == Gsat


def _series_times(num: dict[int, int], deg: int) -> dict[int, int]:
    out = dict(num)
    for k, v in num.items():
        out[k + deg] = out.get(k + deg, 0) - v
    return {k: v for k, v in out.items() if v}


def _hilbert_filter(Gsat: GroebnerBasis, base_num, f: Polynomial, deg: int) -> bool:
    """Necessary and sufficient: HS(A/(I+f)) = (1 - t^deg) HS(A/I)."""
    w = Gsat.ring.weights
    gb = Ideal(Gsat.ring, Gsat.elements + (f,)).groebner()
    return hilbert_numerator(gb.leading_monomials, w) == _series_times(base_num, deg)


def _candidates(Gsat: GroebnerBasis, degree: int, rng: random.Random, trials: int):
    ring = Gsat.ring
    F = ring.field
    if degree == min(ring.weights):
        for i, w in enumerate(ring.weights):
            if w == degree:
                yield ring.gen(i)
    basis = strand_basis(Gsat, degree).monomials
    if not basis:
        return
    for _ in range(trials):
        terms = {}
        for m in basis:
            c = rng.randrange(F.q)
            if c:
                terms[m] = c
        if terms:
            yield Polynomial(ring, terms)


def find_hsop(
    Gsat: GroebnerBasis,
    seed: int = 0,
    max_degree: int = DEFAULT_MAX_DEGREE,
    trials: int = DEFAULT_TRIALS,
) -> ParameterSystem:
    """Search for d = dim A/I forms, each a nonzerodivisor on A/I, cutting the dimension to 0.

    ``Gsat`` must be the basis of a saturated ideal other than (1).
    """
    if Gsat.is_unit():
        raise ValueError("the unit ideal has no system of parameters")
    ring = Gsat.ring
    d = krull_dimension(Gsat)
    rng = random.Random(seed)
    base_num = hilbert_numerator(Gsat.leading_monomials, ring.weights)
    forms: list[Polynomial] = []
    dims = [d]
    current = Gsat
    for k in range(d):
        target = d - k - 1
        accepted = None
        for degree in range(1, max_degree + 1):
            for f in _candidates(Gsat, degree, rng, trials):
                if Gsat.normal_form(f).is_zero():
                    continue
                nxt = Ideal(ring, current.elements + (f,)).groebner()
                if krull_dimension(nxt) != target:
                    continue
                if not _hilbert_filter(Gsat, base_num, f, degree):
                    continue
                if not certify_nonzerodivisor(Gsat, f):
                    continue
                accepted = (f, degree, nxt)
                break
            if accepted:
                break
        if accepted is None:
            raise HsopSearchError(
                f"no nonzerodivisor parameter of degree <= {max_degree} found for position {k + 1} "
                f"after {trials} trials per degree over F_{ring.field.q}; "
                f"retry over an extension field F_{{{ring.field.p}^e}}"
            )
        f, degree, current = accepted
        forms.append(f)
        dims.append(target)
    P = ParameterSystem(tuple(forms), tuple(f.degree() for f in forms), (True,) * d, tuple(dims))
    if not verify_parameter_system(Gsat, P):  # pragma: no cover - search path already certified
        raise ArithmeticError("parameter system failed re-verification")
    return P


def verify_parameter_system(Gsat: GroebnerBasis, P: ParameterSystem) -> bool:
    """Recheck every certificate from scratch."""
    ring = Gsat.ring
    d = krull_dimension(Gsat)
    if P.d != d or P.dimensions[0] != d:
        return False
    for k in range(1, d + 1):
        gb = Ideal(ring, Gsat.elements + P.forms[:k]).groebner()
        if krull_dimension(gb) != d - k or P.dimensions[k] != d - k:
            return False
    for f, deg in zip(P.forms, P.degrees):
        if f.degree_and_homogeneity() != (deg, True):
            return False
        if not certify_nonzerodivisor(Gsat, f):
            return False
    return True
