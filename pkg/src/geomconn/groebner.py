"""Groebner bases of (weighted) homogeneous ideals and what is built on them.

Buchberger's algorithm with the Gebauer-Moeller pair criteria and sugar
selection, normal forms, ideal quotients and intersections through one
auxiliary variable, saturation by the irrelevant ideal, Krull dimension from
the leading ideal, and monomial bases of graded pieces of A/I.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .field import FiniteField
from .poly import (
    GREVLEX,
    Exps,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    Terms,
    elimination_order,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
    terms_iadd,
    terms_scale,
)


class NotHomogeneousError(ValueError):
    pass


# -- raw Buchberger -----------------------------------------------------------------

def _lead(f: Terms, key) -> Exps:
    return max(f, key=key)


def _find_divisor(m: Exps, lms: Sequence[Exps], active: Sequence[int]) -> int:
    for i in active:
        if all(a <= b for a, b in zip(lms[i], m)):
            return i
    return -1


def reduce_terms(
    field: FiniteField,
    f: Terms,
    basis: Sequence[Terms],
    lms: Sequence[Exps],
    key: Callable,
    full: bool = True,
    active: Sequence[int] | None = None,
) -> Terms:
    """Remainder of f on division by monic ``basis`` (top-reduction only if not ``full``)."""
    if active is None:
        active = range(len(basis))
    f = dict(f)
    rem: Terms = {}
    neg = field.neg
    while f:
        m = max(f, key=key)
        i = _find_divisor(m, lms, active)
        if i < 0:
            if not full:
                rem.update(f)
                return rem
            rem[m] = f.pop(m)
            continue
        c = f[m]
        terms_iadd(field, f, basis[i], neg(c), mono_div(m, lms[i]))
    return rem


def _monic(field: FiniteField, f: Terms, key) -> Terms:
    lm = _lead(f, key)
    c = f[lm]
    return f if c == 1 else terms_scale(field, f, field.inv(c))


def buchberger_terms(field: FiniteField, polys: Sequence[Terms], weights: Sequence[int], order: MonomialOrder) -> list[Terms]:
    """Reduced Groebner basis of the raw polynomials, sorted by descending leading monomial."""
    key = order.key_function(weights)
    basis: list[Terms] = []
    lms: list[Exps] = []
    sugar: list[int] = []

    def deg(m):
        return mono_degree(m, weights)

    G: list[int] = []
    B: list[tuple[int, int]] = []

    def update(h: int):
        nonlocal G, B
        lm_h = lms[h]
        C = list(G)
        D: list[int] = []
        lcm_h = {g: mono_lcm(lms[g], lm_h) for g in C}

        def coprime(g):
            return all(a == 0 or b == 0 for a, b in zip(lms[g], lm_h))

        while C:
            g1 = C.pop(0)
            if coprime(g1):
                D.append(g1)
                continue
            l1 = lcm_h[g1]
            if not any(mono_divides(lcm_h[g2], l1) for g2 in C + D):
                D.append(g1)
        E = [(g, h) for g in D if not coprime(g)]
        newB = []
        for (g1, g2) in B:
            l12 = mono_lcm(lms[g1], lms[g2])
            if (
                mono_divides(lm_h, l12)
                and mono_lcm(lms[g1], lm_h) != l12
                and mono_lcm(lms[g2], lm_h) != l12
            ):
                continue
            newB.append((g1, g2))
        B = newB + E
        G = [g for g in G if not mono_divides(lm_h, lms[g])] + [h]

    def add(f: Terms, s: int):
        f = _monic(field, f, key)
        basis.append(f)
        lms.append(_lead(f, key))
        sugar.append(s)
        update(len(basis) - 1)

    inputs = []
    for f in polys:
        if f:
            inputs.append((max(deg(m) for m in f), f))
    inputs.sort(key=lambda sf: (sf[0], key(_lead(sf[1], key))))
    for s, f in inputs:
        r = reduce_terms(field, f, basis, lms, key, full=False, active=G)
        if r:
            if all(v == 0 for v in _lead(r, key)):
                return [{tuple(0 for _ in weights): 1}]
            add(r, s)

    while B:
        best = None
        best_k = None
        for idx, (i, j) in enumerate(B):
            L = mono_lcm(lms[i], lms[j])
            s = max(sugar[i] + deg(mono_div(L, lms[i])), sugar[j] + deg(mono_div(L, lms[j])))
            k = (s, key(L), i, j)
            if best_k is None or k < best_k:
                best_k, best = k, idx
        i, j = B.pop(best)
        s = best_k[0]
        L = mono_lcm(lms[i], lms[j])
        spoly: Terms = {}
        terms_iadd(field, spoly, basis[i], 1, mono_div(L, lms[i]))
        terms_iadd(field, spoly, basis[j], field.neg(1), mono_div(L, lms[j]))
        r = reduce_terms(field, spoly, basis, lms, key, full=False, active=G)
        if r:
            if all(v == 0 for v in _lead(r, key)):
                return [{tuple(0 for _ in weights): 1}]
            add(r, s)

    # minimal then reduced
    final = [g for g in G if not any(h != g and mono_divides(lms[h], lms[g]) for h in G)]
    final.sort(key=lambda g: key(lms[g]), reverse=True)
    elems = [basis[g] for g in final]
    elms = [lms[g] for g in final]
    out = []
    for idx, g in enumerate(elems):
        others = [h for h in range(len(elems)) if h != idx]
        lm = elms[idx]
        tail = dict(g)
        c = tail.pop(lm)
        red = reduce_terms(field, tail, elems, elms, key, full=True, active=others)
        red[lm] = c
        out.append(red)
    return out


# -- public objects ---------------------------------------------------------------

class Ideal:
    """Ideal of a polynomial ring given by generators (zero generators are dropped)."""

    def __init__(self, ring: PolynomialRing, generators: Sequence[Polynomial | str] = (), require_homogeneous: bool = True):
        gens = []
        for g in generators:
            g = ring(g)
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.terms:
                if require_homogeneous and not g.is_homogeneous():
                    raise NotHomogeneousError(f"generator {g} is not homogeneous")
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        if order not in self._gb:
            self._gb[order] = buchberger(self, order)
        return self._gb[order]

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash(self.groebner())

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().normal_form(f).is_zero()

    def __add__(self, other: Ideal) -> Ideal:
        return Ideal(self.ring, self.generators + other.generators)

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.generators)})"


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic elements, sorted by descending leading monomial."""

    ring: PolynomialRing
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    leading_monomials: tuple[Exps, ...] = dc_field(compare=False)

    @property
    def ideal(self) -> Ideal:
        I = Ideal(self.ring, self.elements, require_homogeneous=False)
        I._gb[self.order] = self
        return I

    @functools.cached_property
    def _key(self):
        return self.order.key_function(self.ring.weights)

    def is_unit(self) -> bool:
        return any(all(e == 0 for e in m) for m in self.leading_monomials)

    def is_zero(self) -> bool:
        return not self.elements

    def normal_form_terms(self, f: Terms) -> Terms:
        return reduce_terms(self.ring.field, f, [g.terms for g in self.elements], self.leading_monomials, self._key)

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        return Polynomial(self.ring, self.normal_form_terms(f.terms))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def is_standard(self, m: Exps) -> bool:
        return not any(mono_divides(l, m) for l in self.leading_monomials)

    def __hash__(self):
        return hash((self.ring, self.order, self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}])"


def _make_gb(ring: PolynomialRing, order: MonomialOrder, elems: Sequence[Terms]) -> GroebnerBasis:
    key = order.key_function(ring.weights)
    polys = tuple(Polynomial(ring, e) for e in elems)
    return GroebnerBasis(ring, order, polys, tuple(_lead(e, key) for e in elems))


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """The unique reduced Groebner basis of ``I`` for ``order``."""
    ring = I.ring
    elems = buchberger_terms(ring.field, [g.terms for g in I.generators], ring.weights, order)
    return _make_gb(ring, order, elems)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


# -- elimination-based ideal operations ------------------------------------------------

def _eliminate_aux(ring: PolynomialRing, gens: Sequence[Terms]) -> list[Terms]:
    """Reduced GB of (ideal in A[s], s first) intersected with A, with s dropped."""
    weights = (1,) + ring.weights
    elems = buchberger_terms(ring.field, gens, weights, elimination_order(1))
    kept = [{m[1:]: c for m, c in g.items()} for g in elems if all(m[0] == 0 for m in g)]
    return buchberger_terms(ring.field, kept, ring.weights, GREVLEX)


def _with_aux(f: Terms, s_power: int) -> Terms:
    return {(s_power,) + m: c for m, c in f.items()}


def intersect_ideals(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J as the elimination of s from s*I + (1-s)*J."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    ring = I.ring
    F = ring.field
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    gens = [_with_aux(g.terms, 1) for g in I.groebner().elements]
    for h in J.groebner().elements:
        t = _with_aux(h.terms, 0)
        terms_iadd(F, t, _with_aux(h.terms, 1), F.neg(1))
        gens.append(t)
    elems = _eliminate_aux(ring, gens)
    out = Ideal(ring, [Polynomial(ring, e) for e in elems])
    out._gb[GREVLEX] = _make_gb(ring, GREVLEX, elems)
    return out


def exact_division(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ValueError when g does not divide f."""
    ring, F = f.ring, f.field
    key = ring.key_function(GREVLEX)
    lg = _lead(g.terms, key)
    inv = F.inv(g.terms[lg])
    rest = dict(f.terms)
    q: Terms = {}
    while rest:
        m = _lead(rest, key)
        if not mono_divides(lg, m):
            raise ValueError(f"{g} does not divide {f}")
        shift = mono_div(m, lg)
        c = F.mul(rest[m], inv)
        q[shift] = c
        terms_iadd(F, rest, g.terms, F.neg(c), shift)
    return Polynomial(ring, q)


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f), from generators of I ∩ (f) divided by f."""
    ring = I.ring
    if f.ring != ring:
        raise ValueError("polynomial from a different ring")
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    if not f.is_homogeneous():
        raise NotHomogeneousError("quotient by a non-homogeneous polynomial")
    if all(all(e == 0 for e in m) for m in f.terms):
        return Ideal(ring, I.groebner().elements)
    inter = intersect_ideals(I, Ideal(ring, [f]))
    quots = [exact_division(h, f) for h in inter.groebner().elements]
    return Ideal(ring, quots)


def quotient_by_variable(I: Ideal, i: int) -> Ideal:
    """(I : x_i) by the reverse-lexicographic trick.

    With x_i as the last variable of a (weighted) grevlex order, a homogeneous
    polynomial is divisible by x_i exactly when its leading monomial is; so
    dividing out one factor x_i from such basis elements yields a basis of the
    quotient.
    """
    ring = I.ring
    n = ring.nvars
    perm = [j for j in range(n) if j != i] + [i]
    weights = tuple(ring.weights[j] for j in perm)

    def fwd(m):
        return tuple(m[j] for j in perm)

    inv_perm = [0] * n
    for pos, j in enumerate(perm):
        inv_perm[j] = pos

    def back(m):
        return tuple(m[inv_perm[j]] for j in range(n))

    gens = [{fwd(m): c for m, c in g.terms.items()} for g in I.groebner().elements]
    elems = buchberger_terms(ring.field, gens, weights, GREVLEX)
    out = []
    for g in elems:
        if all(m[-1] >= 1 for m in g):
            g = {m[:-1] + (m[-1] - 1,): c for m, c in g.items()}
        out.append(Polynomial(ring, {back(m): c for m, c in g.items()}))
    return Ideal(ring, out)


def saturate_irrelevant(I: Ideal) -> Ideal:
    """(I : M^inf) for the irrelevant ideal M = (x_1..x_n).

    Iterates J <- ∩_i (J : x_i) until the reduced basis stops changing.
    """
    ring = I.ring
    J = Ideal(ring, I.groebner().elements)
    if J.is_zero() or J.is_unit():
        return J
    while True:
        gb = J.groebner()
        parts = [quotient_by_variable(J, i) for i in range(ring.nvars)]
        if all(P.groebner() == gb for P in parts):
            return J
        inter = parts[0]
        for P in parts[1:]:
            inter = intersect_ideals(inter, P)
        J = Ideal(ring, inter.groebner().elements)
        if J.groebner() == gb:
            return J


def colon_irrelevant(I: Ideal) -> Ideal:
    """(I : M) = ∩_i (I : x_i)."""
    parts = [quotient_by_variable(I, i) for i in range(I.ring.nvars)]
    inter = parts[0]
    for P in parts[1:]:
        inter = intersect_ideals(inter, P)
    return inter


def is_saturated(I: Ideal) -> bool:
    """(I : M) = I."""
    return colon_irrelevant(I).groebner() == I.groebner()


# -- dimension, strands, Hilbert series ------------------------------------------------

def krull_dimension(G: GroebnerBasis) -> int:
    """Largest set of variables supporting no leading monomial; -1 for the unit ideal."""
    n = G.ring.nvars
    if G.is_unit():
        return -1
    supports = [sum(1 << i for i, e in enumerate(m) if e) for m in G.leading_monomials]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            mask = sum(1 << i for i in subset)
            if not any(s & ~mask == 0 for s in supports):
                return size
    return 0


@dataclass(frozen=True)
class StrandBasis:
    """Standard monomials of one weighted degree: a basis of [A/I]_degree."""

    degree: int
    monomials: tuple[Exps, ...]

    @functools.cached_property
    def index(self) -> dict[Exps, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)


def strand_basis(G: GroebnerBasis, m: int) -> StrandBasis:
    mons = monomials_of_degree(G.ring.weights, m)
    lms = G.leading_monomials
    return StrandBasis(m, tuple(x for x in mons if not any(mono_divides(l, x) for l in lms)))


def coords_in_strand(f: Polynomial | Terms, B: StrandBasis, G: GroebnerBasis) -> list[int]:
    terms = f.terms if isinstance(f, Polynomial) else f
    nf = G.normal_form_terms(terms)
    v = [0] * len(B)
    idx = B.index
    for m, c in nf.items():
        i = idx.get(m)
        if i is None:
            raise ValueError(f"degree mismatch: monomial {m} is not in the degree-{B.degree} strand")
        v[i] = c
    return v


def hilbert_numerator(lms: Sequence[Exps], weights: Sequence[int]) -> dict[int, int]:
    """Numerator K(t) of the Hilbert series K(t) / prod(1 - t^w_i) of A/(lms)."""
    gens = _minimalize(lms)
    return _hn(tuple(sorted(gens)), tuple(weights))


def _minimalize(lms: Sequence[Exps]) -> list[Exps]:
    uniq = sorted(set(lms), key=sum)
    out: list[Exps] = []
    for m in uniq:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


@functools.lru_cache(maxsize=4096)
def _hn(gens: tuple[Exps, ...], weights: tuple[int, ...]) -> dict[int, int]:
    if not gens:
        return {0: 1}
    *rest, last = gens
    # HN(I + (m)) = HN(I) - t^deg(m) HN(I : m)
    a = _hn(tuple(rest), weights)
    colon = _minimalize([tuple(max(x - y, 0) for x, y in zip(g, last)) for g in rest])
    b = _hn(tuple(sorted(colon)), weights)
    d = mono_degree(last, weights)
    out = dict(a)
    for k, v in b.items():
        out[k + d] = out.get(k + d, 0) - v
    return {k: v for k, v in out.items() if v}


def hilbert_function_from_numerator(num: dict[int, int], weights: Sequence[int], m: int) -> int:
    """Coefficient of t^m in num(t) / prod(1 - t^w)."""
    series = [0] * (m + 1)
    for k, v in num.items():
        if k <= m:
            series[k] += v
    for w in weights:
        for k in range(w, m + 1):
            series[k] += series[k - w]
    return series[m]
