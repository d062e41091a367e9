"""Graded free resolutions via Schreyer's algorithm, and one Ext strand.

Module elements are dicts ``{(position, exponents): coefficient}``. A level
of a resolution is a Groebner basis of the previous syzygy module; Schreyer's
theorem makes the S-pair syzygies of that basis a Groebner basis of the next
syzygy module for the induced order, so no module Buchberger runs are needed
inside :func:`free_resolution`. Unit entries are then cancelled pairwise.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Sequence

from .field import FiniteField
from .groebner import Ideal, hilbert_function_from_numerator
from .linalg import rank as matrix_rank
from .poly import (
    GREVLEX,
    Exps,
    Polynomial,
    PolynomialRing,
    Terms,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
    terms_iadd,
    terms_mul,
    terms_scale,
)

ModTerm = tuple[int, Exps]
Vec = dict[ModTerm, int]


class ResolutionTooShortError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    """⊕ A(-twist): the i-th basis vector has degree ``twists[i]``."""

    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)


@dataclass(frozen=True)
class GradedMap:
    """A homogeneous map source -> target; ``matrix[i][j]`` maps basis j to row i."""

    ring: PolynomialRing
    source: GradedFreeModule
    target: GradedFreeModule
    matrix: tuple[tuple[Polynomial, ...], ...]

    @classmethod
    def from_columns(cls, ring, source_twists, target_twists, columns: Sequence[Sequence[Polynomial | str]]):
        cols = [[ring(x) for x in col] for col in columns]
        rows = tuple(
            tuple(cols[j][i] for j in range(len(cols))) for i in range(len(target_twists))
        )
        return cls(ring, GradedFreeModule(tuple(source_twists)), GradedFreeModule(tuple(target_twists)), rows)

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.matrix]

    def column_vec(self, j: int) -> Vec:
        out: Vec = {}
        for i, row in enumerate(self.matrix):
            for m, c in row[j].terms.items():
                out[(i, m)] = c
        return out

    def is_homogeneous(self) -> bool:
        ring = self.ring
        for i, row in enumerate(self.matrix):
            for j, f in enumerate(row):
                want = self.source.twists[j] - self.target.twists[i]
                if any(ring.degree_of(m) != want for m in f.terms):
                    return False
        return True

    def compose(self, other: GradedMap) -> list[list[Polynomial]]:
        """Matrix of self ∘ other."""
        ring = self.ring
        out = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = ring.zero
                for k in range(self.source.rank):
                    acc = acc + self.matrix[i][k] * other.matrix[k][j]
                row.append(acc)
            out.append(row)
        return out


# -- module arithmetic -------------------------------------------------------------------

def vec_iadd(field: FiniteField, f: Vec, g: Vec, c: int, shift: Exps | None = None) -> None:
    if not c:
        return
    add, mul = field.add, field.mul
    for (pos, m), a in g.items():
        if shift is not None:
            m = tuple(x + y for x, y in zip(m, shift))
        k = (pos, m)
        v = add(f.get(k, 0), mul(c, a))
        if v:
            f[k] = v
        else:
            f.pop(k, None)


def _pot_key(weights) -> Callable[[ModTerm], tuple]:
    base = GREVLEX.key_function(weights)
    return lambda t: (-t[0], base(t[1]))


class _SchreyerKey:
    """Induced order on the free module over a monic Groebner basis."""

    def __init__(self, parent: Callable[[ModTerm], tuple], leads: Sequence[ModTerm]):
        self.parent = parent
        self.leads = list(leads)
        self._cache: dict[ModTerm, tuple] = {}

    def __call__(self, t: ModTerm):
        k = self._cache.get(t)
        if k is None:
            pos, m = t
            lp, lm = self.leads[pos]
            k = (self.parent((lp, tuple(x + y for x, y in zip(m, lm)))), -pos)
            self._cache[t] = k
        return k


def _top_reduce_with_quotients(field, f: Vec, basis: Sequence[Vec], leads: Sequence[ModTerm], key, by_pos) -> tuple[Vec, Vec]:
    """Top-reduce f fully; returns (remainder, quotient vector in basis coordinates)."""
    f = dict(f)
    quot: Vec = {}
    rem: Vec = {}
    neg = field.neg
    while f:
        t = max(f, key=key)
        pos, m = t
        hit = -1
        for i in by_pos.get(pos, ()):
            if mono_divides(leads[i][1], m):
                hit = i
                break
        if hit < 0:
            rem[t] = f.pop(t)
            continue
        c = f[t]
        shift = mono_div(m, leads[hit][1])
        vec_iadd(field, f, basis[hit], neg(c), shift)
        k = (hit, shift)
        v = field.add(quot.get(k, 0), c)
        if v:
            quot[k] = v
        else:
            quot.pop(k, None)
    return rem, quot


def schreyer_syzygies(field: FiniteField, basis: Sequence[Vec], key) -> tuple[list[Vec], list[ModTerm]]:
    """Syzygies of a monic Groebner basis, as a Groebner basis for the Schreyer order.

    Only pairs whose multiplier m_ij = lcm / lead_i is a minimal generator of
    the colon ideal at position i are kept; the lead terms m_ij e_i still
    generate the lead module.
    """
    leads = [max(g, key=key) for g in basis]
    by_pos: dict[int, list[int]] = {}
    for i, (pos, _) in enumerate(leads):
        by_pos.setdefault(pos, []).append(i)
    syz: list[Vec] = []
    syz_leads: list[ModTerm] = []
    for i in range(len(basis)):
        pos_i, lm_i = leads[i]
        cands: list[tuple[Exps, int]] = []
        for j in by_pos[pos_i]:
            if j <= i:
                continue
            L = mono_lcm(lm_i, leads[j][1])
            cands.append((mono_div(L, lm_i), j))
        kept: list[tuple[Exps, int]] = []
        for mij, j in cands:
            dominated = any(
                (mono_divides(m2, mij) and m2 != mij) or (m2 == mij and j2 < j) for m2, j2 in cands
            )
            if not dominated:
                kept.append((mij, j))
        for mij, j in kept:
            lm_j = leads[j][1]
            mji = mono_div(mono_lcm(lm_i, lm_j), lm_j)
            s: Vec = {}
            vec_iadd(field, s, basis[i], 1, mij)
            vec_iadd(field, s, basis[j], field.neg(1), mji)
            rem, quot = _top_reduce_with_quotients(field, s, basis, leads, key, by_pos)
            if rem:
                raise ArithmeticError("input to schreyer_syzygies is not a Groebner basis")
            vec: Vec = {(i, mij): 1}
            vec[(j, mji)] = field.add(vec.get((j, mji), 0), field.neg(1))
            for k, c in quot.items():
                v = field.sub(vec.get(k, 0), c)
                if v:
                    vec[k] = v
                else:
                    vec.pop(k, None)
            syz.append(vec)
            syz_leads.append((i, mij))
    return syz, syz_leads


def _sort_for_length(elements: list[Vec], leads: list[ModTerm]) -> list[int]:
    """Order so that, per position, leading exponents decrease lexicographically."""
    return sorted(range(len(elements)), key=lambda i: (leads[i][0], tuple(-e for e in leads[i][1])))


# -- free resolutions ---------------------------------------------------------------------

@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... <- F_L; ``maps[k-1]`` is d_k : F_k -> F_{k-1}.

    ``maps`` hold dense matrices of term dicts (rows index F_{k-1}). ``complete``
    is False when the computation was truncated before the syzygies ran out.
    """

    ring: PolynomialRing
    modules: list[GradedFreeModule]
    maps: list[list[list[Terms]]]
    complete: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def betti(self) -> list[int]:
        return [M.rank for M in self.modules]

    def differential(self, k: int) -> GradedMap:
        ring = self.ring
        rows = tuple(tuple(Polynomial(ring, e) for e in row) for row in self.maps[k - 1])
        return GradedMap(ring, self.modules[k], self.modules[k - 1], rows)

    def compose_is_zero(self) -> bool:
        F = self.ring.field
        for k in range(1, self.length):
            a, b = self.maps[k - 1], self.maps[k]
            for i in range(len(a)):
                for j in range(self.modules[k + 1].rank):
                    acc: Terms = {}
                    for m in range(self.modules[k].rank):
                        if a[i][m] and b[m][j]:
                            terms_iadd(F, acc, terms_mul(F, a[i][m], b[m][j]))
                    if acc:
                        return False
        return True

    def strand_euler_characteristic(self, degree: int) -> int:
        """sum_k (-1)^k dim [F_k]_degree."""
        w = self.ring.weights
        total = 0
        for k, M in enumerate(self.modules):
            for tw in M.twists:
                total += (-1) ** k * len(monomials_of_degree(w, degree - tw))
        return total


def free_resolution(I: Ideal, length: int | None = None) -> FreeResolution:
    """Graded free resolution of A/I with unit entries cancelled.

    ``length`` truncates after F_length (one extra level is computed so the
    cancellation in d_length sees its successor).
    """
    ring = I.ring
    F = ring.field
    w = ring.weights
    gb = I.groebner()
    if gb.is_unit():
        return FreeResolution(ring, [GradedFreeModule(())], [], True)
    key0 = _pot_key(w)
    elements: list[Vec] = [{(0, m): c for m, c in g.terms.items()} for g in gb.elements]
    leads = [max(v, key=key0) for v in elements]
    key = key0
    twists: list[list[int]] = [[0]]
    level_elems: list[list[Vec]] = []
    limit = None if length is None else length + 1
    complete = True
    while elements:
        if limit is not None and len(level_elems) == limit:
            complete = False
            break
        order = _sort_for_length(elements, leads)
        elements = [elements[i] for i in order]
        leads = [leads[i] for i in order]
        prev_tw = twists[-1]
        twists.append(
            [prev_tw[leads[i][0]] + mono_degree(leads[i][1], w) for i in range(len(elements))]
        )
        level_elems.append(elements)
        # S-pairs reduce in the ambient module; the syzygies live in the next one
        syz, syz_leads = schreyer_syzygies(F, elements, key)
        key = _SchreyerKey(key, leads)
        elements, leads = syz, syz_leads

    # dense matrices
    maps: list[list[list[Terms]]] = []
    for k, elems in enumerate(level_elems, start=1):
        nrows = len(twists[k - 1])
        mat = [[{} for _ in elems] for _ in range(nrows)]
        for j, v in enumerate(elems):
            for (pos, m), c in v.items():
                mat[pos][j][m] = c
        maps.append(mat)
    maps, twists = _cancel_units(F, maps, twists, ring.nvars)
    if length is not None and len(maps) > length:
        maps = maps[:length]
        twists = twists[: length + 1]
    modules = [GradedFreeModule(tuple(t)) for t in twists]
    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()
        maps.pop()
    return FreeResolution(ring, modules, maps, complete)


def _cancel_units(field: FiniteField, maps, twists, nvars):
    """Remove pairs of basis vectors joined by a constant entry.

    For a unit u at (r, c) of d_k: column c of d_k and row r vanish, the other
    columns b become col_b - (d[r][b]/u) col_c, row c of d_{k+1} and column r
    of d_{k-1} are dropped.
    """
    zero = (0,) * nvars
    maps = [[list(row) for row in mat] for mat in maps]
    twists = [list(t) for t in twists]
    changed = True
    while changed:
        changed = False
        for k in range(len(maps)):
            mat = maps[k]
            found = True
            while found:
                found = False
                for r, row in enumerate(mat):
                    for c, entry in enumerate(row):
                        if len(entry) == 1 and zero in entry:
                            found = changed = True
                            break
                    if found:
                        break
                if not found:
                    break
                u = mat[r][c][zero]
                uinv = field.inv(u)
                colc = [mat[a][c] for a in range(len(mat))]
                for b in range(len(mat[r])):
                    if b == c or not mat[r][b]:
                        continue
                    factor = terms_scale(field, mat[r][b], field.neg(uinv))
                    for a in range(len(mat)):
                        if colc[a]:
                            newv = dict(mat[a][b])
                            terms_iadd(field, newv, terms_mul(field, factor, colc[a]))
                            mat[a][b] = newv
                # drop row r and column c of d_k
                del mat[r]
                for row in mat:
                    del row[c]
                del twists[k][r]
                del twists[k + 1][c]
                if k + 1 < len(maps):
                    del maps[k + 1][c]
                if k > 0:
                    for row in maps[k - 1]:
                        del row[r]
    return maps, twists


# -- syzygies of an arbitrary homogeneous map -------------------------------------------------

def _module_groebner(field, gens: list[Vec], key, nvars: int) -> tuple[list[Vec], list[Vec]]:
    """Monic module Groebner basis with representations in terms of ``gens``."""
    basis: list[Vec] = []
    reps: list[Vec] = []
    leads: list[ModTerm] = []
    by_pos: dict[int, list[int]] = {}

    def reduce(f: Vec, rep: Vec):
        f, rep = dict(f), dict(rep)
        while f:
            t = max(f, key=key)
            hit = next((i for i in by_pos.get(t[0], ()) if mono_divides(leads[i][1], t[1])), -1)
            if hit < 0:
                return f, rep
            c = f[t]
            shift = mono_div(t[1], leads[hit][1])
            vec_iadd(field, f, basis[hit], field.neg(c), shift)
            vec_iadd(field, rep, reps[hit], field.neg(c), shift)
        return f, rep

    def add(f: Vec, rep: Vec):
        t = max(f, key=key)
        inv = field.inv(f[t])
        f = {k: field.mul(inv, v) for k, v in f.items()}
        rep = {k: field.mul(inv, v) for k, v in rep.items()}
        basis.append(f)
        reps.append(rep)
        leads.append(t)
        by_pos.setdefault(t[0], []).append(len(basis) - 1)
        return len(basis) - 1

    pairs: list[tuple[int, int]] = []
    for j, g in enumerate(gens):
        if not g:
            continue
        r, rep = reduce(g, {(j, (0,) * nvars): 1})
        if r:
            h = add(r, rep)
            pairs += [(i, h) for i in by_pos[leads[h][0]] if i != h]
    while pairs:
        pairs.sort(key=lambda ij: key((leads[ij[0]][0], mono_lcm(leads[ij[0]][1], leads[ij[1]][1]))))
        i, j = pairs.pop(0)
        L = mono_lcm(leads[i][1], leads[j][1])
        s: Vec = {}
        rep: Vec = {}
        vec_iadd(field, s, basis[i], 1, mono_div(L, leads[i][1]))
        vec_iadd(field, s, basis[j], field.neg(1), mono_div(L, leads[j][1]))
        vec_iadd(field, rep, reps[i], 1, mono_div(L, leads[i][1]))
        vec_iadd(field, rep, reps[j], field.neg(1), mono_div(L, leads[j][1]))
        r, rep = reduce(s, rep)
        if r:
            h = add(r, rep)
            pairs += [(k, h) for k in by_pos[leads[h][0]] if k != h]
    return basis, reps


def syzygy_basis(M: GradedMap) -> GradedMap:
    """Generators of ker(M) as the columns of a map into M's source."""
    ring = M.ring
    F = ring.field
    n = ring.nvars
    key = _pot_key(ring.weights)
    cols = [M.column_vec(j) for j in range(M.source.rank)]
    basis, reps = _module_groebner(F, cols, key, n)
    out: list[Vec] = []
    if basis:
        syz, _ = schreyer_syzygies(F, basis, key)
        for s in syz:
            v: Vec = {}
            for (l, m), c in s.items():
                vec_iadd(F, v, reps[l], c, m)
            if v:
                out.append(v)
    leads = [max(g, key=key) for g in basis]
    by_pos: dict[int, list[int]] = {}
    for i, t in enumerate(leads):
        by_pos.setdefault(t[0], []).append(i)
    for j, col in enumerate(cols):
        v: Vec = {(j, (0,) * n): 1}
        if col:
            rem, quot = _top_reduce_with_quotients(F, col, basis, leads, key, by_pos)
            if rem:
                raise ArithmeticError("column does not reduce to zero against its own basis")
            for (l, m), c in quot.items():
                vec_iadd(F, v, reps[l], F.neg(c), m)
        if v:
            out.append(v)
    uniq: list[Vec] = []
    for v in out:
        if v not in uniq:
            uniq.append(v)
    src_tw = M.source.twists
    twists = []
    for v in uniq:
        (pos, m) = next(iter(v))
        twists.append(src_tw[pos] + mono_degree(m, ring.weights))
    rows = tuple(
        tuple(Polynomial(ring, {m: c for (p, m), c in v.items() if p == i}) for v in uniq)
        for i in range(M.source.rank)
    )
    return GradedMap(ring, GradedFreeModule(tuple(twists)), M.source, rows)


# -- Ext strand -------------------------------------------------------------------------------

def _dual_strand_matrix(ring: PolynomialRing, res: FreeResolution, j: int, sigma: int, degree: int):
    """Matrix (as rows = target coords) of Hom(d_{j+1}, A(-sigma)) on the given strand.

    Source: Hom(F_j, A(-sigma))_degree = ⊕_b [A]_{tw_j(b) - sigma + degree}.
    Target: Hom(F_{j+1}, A(-sigma))_degree.
    Returns (rows, ncols).
    """
    w = ring.weights
    F = ring.field
    src_tw = res.modules[j].twists if j < len(res.modules) else ()
    tgt_tw = res.modules[j + 1].twists if j + 1 < len(res.modules) else ()
    src = [(b, mu) for b, tw in enumerate(src_tw) for mu in monomials_of_degree(w, tw - sigma + degree)]
    tgt_index: dict[tuple[int, Exps], int] = {}
    for c, tw in enumerate(tgt_tw):
        for mu in monomials_of_degree(w, tw - sigma + degree):
            tgt_index[(c, mu)] = len(tgt_index)
    rows = [[0] * len(src) for _ in range(len(tgt_index))]
    if tgt_index and src:
        mat = res.maps[j]
        for col, (b, mu) in enumerate(src):
            for c in range(len(tgt_tw)):
                entry = mat[b][c]
                for m, coef in entry.items():
                    r = tgt_index[(c, tuple(x + y for x, y in zip(mu, m)))]
                    rows[r][col] = F.add(rows[r][col], coef)
    return rows, len(src)


def ext_strand_length(res: FreeResolution, cohomological_index: int | None = None, twist: int | None = None, strand_degree: int = 0) -> int:
    """dim_K [Ext^j_A(A/I, A(-sigma))]_degree from the dualised resolution.

    Defaults: j = n - 1 and sigma = sum of the variable weights.
    """
    ring = res.ring
    j = ring.nvars - 1 if cohomological_index is None else cohomological_index
    sigma = sum(ring.weights) if twist is None else -twist if twist < 0 else twist
    if not res.complete and res.length < j + 1:
        raise ResolutionTooShortError(f"resolution of length {res.length} cannot give Ext^{j}")
    if j < 0:
        return 0
    F = ring.field
    w = ring.weights
    if j >= len(res.modules):
        return 0
    dim_cj = sum(len(monomials_of_degree(w, tw - sigma + strand_degree)) for tw in res.modules[j].twists)
    if dim_cj == 0:
        return 0
    out_rows, ncols = _dual_strand_matrix(ring, res, j, sigma, strand_degree)
    rk_out = matrix_rank(F, out_rows, ncols) if out_rows else 0
    rk_in = 0
    if j >= 1:
        in_rows, in_cols = _dual_strand_matrix(ring, res, j - 1, sigma, strand_degree)
        rk_in = matrix_rank(F, in_rows, in_cols) if in_rows and in_cols else 0
    return dim_cj - rk_out - rk_in
