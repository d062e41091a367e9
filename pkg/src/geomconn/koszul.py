"""Degree-zero strand of H^1(x_1^t..x_d^t; R) and its direct limit.

A degree-0 class is a tuple (a_1..a_d) with a_i in [R]_{t deg x_i} and
a_i x_j^t = a_j x_i^t in R. The only degree-0 coboundaries are the multiples
r (x_1^t..x_d^t) with r in [R]_0 = K, so the boundaries form one line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import GroebnerBasis, StrandBasis, coords_in_strand, strand_basis
from .hsop import ParameterSystem
from .linalg import nullspace, rref, solve, transpose
from .poly import Polynomial, Terms, terms_iadd, terms_mul, terms_pow


class StabilizationError(RuntimeError):
    def __init__(self, message: str, dims: list[int]):
        super().__init__(f"{message}; dimensions so far: {dims}")
        self.dims = dims


class LimitMapError(ArithmeticError):
    pass


@dataclass(frozen=True)
class KoszulClassBasis:
    """Basis of [H^1(x_1^t..x_d^t; R)]_0.

    ``vectors`` are the representatives in the concatenated coordinates of
    the strands [R]_{t deg x_i}; ``coboundary`` is (x_1^t..x_d^t) there.
    """

    t: int
    gb: GroebnerBasis
    hsop: ParameterSystem
    strands: tuple[StrandBasis, ...]
    vectors: tuple[tuple[int, ...], ...]
    coboundary: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for B in self.strands:
            out.append(acc)
            acc += len(B)
        return out

    def tuple_of(self, vector) -> tuple[Polynomial, ...]:
        ring = self.gb.ring
        out = []
        for off, B in zip(self.offsets, self.strands):
            terms = {m: vector[off + k] for k, m in enumerate(B.monomials) if vector[off + k]}
            out.append(Polynomial(ring, terms))
        return tuple(out)

    @property
    def classes(self) -> tuple[tuple[Polynomial, ...], ...]:
        return tuple(self.tuple_of(v) for v in self.vectors)

    def vector_of(self, tup) -> list[int]:
        v: list[int] = []
        for a, B in zip(tup, self.strands):
            v += coords_in_strand(a, B, self.gb)
        return v

    def class_coordinates(self, vector) -> list[int] | None:
        """Coordinates of the class of a cocycle vector, or None if it is not a cocycle here."""
        cols = list(self.vectors) + [self.coboundary]
        sol = solve(self.gb.ring.field, transpose(cols, len(self.coboundary)), list(vector), len(cols))
        return None if sol is None else sol[: self.dim]


def _power_terms(f: Polynomial, t: int) -> Terms:
    return terms_pow(f.field, f.terms, t, f.ring.nvars)


def h1_degree_zero(Gsat: GroebnerBasis, P: ParameterSystem, t: int) -> KoszulClassBasis:
    """Basis of the degree-0 part of H^1(x_1^t..x_d^t; A/I)."""
    if t < 1:
        raise ValueError("t must be at least 1")
    ring = Gsat.ring
    F = ring.field
    d = P.d
    powers = [Gsat.normal_form_terms(_power_terms(f, t)) for f in P.forms]
    strands = tuple(strand_basis(Gsat, t * g) for g in P.degrees)
    offsets, ncols = [], 0
    for B in strands:
        offsets.append(ncols)
        ncols += len(B)

    pair_strands = {}
    row_offsets = {}
    nrows = 0
    for i in range(d):
        for j in range(i + 1, d):
            S = strand_basis(Gsat, t * (P.degrees[i] + P.degrees[j]))
            pair_strands[(i, j)] = S
            row_offsets[(i, j)] = nrows
            nrows += len(S)

    cols: list[list[int]] = []
    minus_one = F.neg(1)
    for i in range(d):
        for mu in strands[i].monomials:
            col = [0] * nrows
            for j in range(d):
                if j == i:
                    continue
                pair = (i, j) if i < j else (j, i)
                sign = 1 if i < j else minus_one
                prod = {tuple(a + b for a, b in zip(mu, m)): c for m, c in powers[j].items()}
                coords = coords_in_strand(prod, pair_strands[pair], Gsat)
                off = row_offsets[pair]
                for k, c in enumerate(coords):
                    if c:
                        col[off + k] = F.add(col[off + k], F.mul(sign, c))
            cols.append(col)

    rows = transpose(cols, nrows) if cols else []
    if nrows:
        cocycles = nullspace(F, rows, ncols)
    else:
        cocycles = [[int(k == j) for k in range(ncols)] for j in range(ncols)]
    coboundary = []
    for pw, B in zip(powers, strands):
        coboundary += coords_in_strand(pw, B, Gsat)
    if not any(coboundary):
        raise ArithmeticError("coboundary vanishes: a parameter is zero modulo the ideal")

    echelon, pivots = rref(F, cocycles, ncols) if cocycles else ([], [])
    drop = next((r for r, pc in enumerate(pivots) if coboundary[pc]), None)
    if drop is None:
        raise ArithmeticError("coboundary is not a cocycle")
    reps = tuple(tuple(v) for r, v in enumerate(echelon) if r != drop)
    B = KoszulClassBasis(t, Gsat, P, strands, reps, tuple(coboundary))
    _check_cocycles(B, powers)
    return B


def _check_cocycles(B: KoszulClassBasis, powers: list[Terms]) -> None:
    F = B.gb.ring.field
    for tup in B.classes:
        for i in range(len(tup)):
            for j in range(i + 1, len(tup)):
                rel: Terms = {}
                terms_iadd(F, rel, terms_mul(F, tup[i].terms, powers[j]))
                terms_iadd(F, rel, terms_mul(F, tup[j].terms, powers[i]), F.neg(1))
                if B.gb.normal_form_terms(rel):
                    raise ArithmeticError("emitted class violates the cocycle relations")


def push_forward(src: KoszulClassBasis, dst: KoszulClassBasis, vector) -> list[int]:
    """Cocycle vector of (a_i x_i^(t'-t)) in dst's strands."""
    gap = dst.t - src.t
    if gap < 0 or src.hsop != dst.hsop or src.gb != dst.gb:
        raise ValueError("limit maps go from smaller to larger t over the same parameters")
    tup = src.tuple_of(vector)
    out = []
    for a, f, S in zip(tup, src.hsop.forms, dst.strands):
        prod = terms_mul(f.field, a.terms, _power_terms(f, gap)) if gap else a.terms
        out += coords_in_strand(prod, S, dst.gb)
    return out


def limit_map(src: KoszulClassBasis, dst: KoszulClassBasis) -> list[list[int]]:
    """Matrix (dst.dim x src.dim) of [(a_i)] -> [(a_i x_i^(t'-t))]."""
    columns = []
    for v in src.vectors:
        coords = dst.class_coordinates(push_forward(src, dst, v))
        if coords is None:
            raise LimitMapError("image is not a cocycle: a parameter is not a nonzerodivisor")
        columns.append(coords)
    return transpose(columns, dst.dim) if columns else [[] for _ in range(dst.dim)]


def stabilize(Gsat: GroebnerBasis, P: ParameterSystem, ell: int, t_max: int = 8):
    """Smallest N with dim [H^1(x^N; R)]_0 = ell; returns (N, basis, dims)."""
    dims: list[int] = []
    for t in range(1, t_max + 1):
        B = h1_degree_zero(Gsat, P, t)
        dims.append(B.dim)
        if B.dim > ell:
            raise StabilizationError(f"dimension {B.dim} at t={t} exceeds the Ext length {ell}", dims)
        if B.dim == ell:
            return t, B, dims
    raise StabilizationError(f"no stabilisation up to t_max={t_max}", dims)


def stabilize_heuristic(Gsat: GroebnerBasis, P: ParameterSystem, steps: int = 2, t_max: int = 8):
    """Stop once the dimension is unchanged for ``steps`` consecutive increments of t.

    Returns (N, basis at N, dims) where N is where the plateau starts.
    """
    dims: list[int] = []
    bases = []
    for t in range(1, t_max + 1):
        B = h1_degree_zero(Gsat, P, t)
        dims.append(B.dim)
        bases.append(B)
        if len(dims) > steps and len(set(dims[-steps - 1:])) == 1:
            N = t - steps
            return N, bases[N - 1], dims
    raise StabilizationError(f"no plateau of length {steps} up to t_max={t_max}", dims)
