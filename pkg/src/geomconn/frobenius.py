"""Frobenius on [H^1_m(R)]_0 as a p-semilinear map, and its stable part.

With N = 1 (parameters already replaced by their N-th powers), a class
[(a_i)] maps to [(a_i^p)] in H^1(x^p; R). The comparison map
(c_i) -> (c_i x_i^(p-1)) identifies the degree-0 strands at t = 1 and t = p,
so the coordinates of F(alpha) come from one small exact solve per basis
class: unknowns are the ell coefficients plus the coboundary multiple.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FiniteField
from .groebner import coords_in_strand, strand_basis
from .koszul import KoszulClassBasis, LimitMapError, h1_degree_zero, push_forward
from .linalg import matvec, nullspace, rank, solve, span_basis, transpose
from .poly import terms_mul, terms_pow


class FrobeniusError(ArithmeticError):
    """The pushed class is not in the image of the comparison map."""


def _frob_vec(field: FiniteField, v, times: int = 1):
    out = list(v)
    for _ in range(times):
        out = [field.frobenius(c) for c in out]
    return out


def _root_vec(field: FiniteField, v, times: int = 1):
    out = list(v)
    for _ in range(times):
        out = [field.pth_root(c) for c in out]
    return out


def _frob_mat(field: FiniteField, M):
    return [_frob_vec(field, row) for row in M]


@dataclass(frozen=True)
class SemilinearMap:
    """v -> M v^[p], with v^[p] the entrywise Frobenius."""

    field: FiniteField
    dim: int
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, field: FiniteField, rows) -> SemilinearMap:
        rows = tuple(tuple(r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("a semilinear endomorphism needs a square matrix")
        return cls(field, len(rows), rows)

    def __call__(self, v):
        if len(v) != self.dim:
            raise ValueError("vector length does not match the dimension")
        return matvec(self.field, self.matrix, _frob_vec(self.field, v))

    def power_matrix(self, e: int):
        """A_e with F^e(v) = A_e v^[p^e]; A_0 = I and A_(e+1) = M A_e^[p]."""
        F, n = self.field, self.dim
        A = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(e):
            Ap = _frob_mat(F, A)
            A = [matvec(F, transpose(Ap, n), row) for row in self.matrix] if n else []
        return A

    def power(self, e: int, v):
        return matvec(self.field, self.power_matrix(e), _frob_vec(self.field, v, e))


@dataclass(frozen=True)
class StableDecomposition:
    stable_dim: int
    stable_basis: tuple[tuple[int, ...], ...]
    nilpotency_index: int
    image_chain_dims: tuple[int, ...]
    # matrix of F on stable_basis: F(s_j) = sum_k R[k][j] s_k
    restricted_matrix: tuple[tuple[int, ...], ...]
    nil_basis: tuple[tuple[int, ...], ...]
    # rank of restricted_matrix equals stable_dim
    bijective_on_stable: bool


def stable_part(Fm: SemilinearMap) -> StableDecomposition:
    """Image chain V, F(V), F^2(V), ... down to the F-stable part.

    F(span S) = span F(S) because scalar Frobenius is onto F_q, so each step
    is one span computation. The chain lists each distinct dimension once.
    """
    K, n = Fm.field, Fm.dim
    current = [[int(i == j) for j in range(n)] for i in range(n)]
    chain = [n]
    while current:
        nxt = span_basis(K, [Fm(v) for v in current], n)
        if len(nxt) == len(current):
            current = nxt
            break
        current = nxt
        chain.append(len(current))
    stable = tuple(tuple(v) for v in current)
    e0 = len(chain) - 1

    restricted = []
    if stable:
        basis_cols = transpose(stable, n)
        for s in stable:
            c = solve(K, basis_cols, Fm(s), len(stable))
            if c is None:  # pragma: no cover - F(V_st) = V_st by construction
                raise FrobeniusError("stable part is not F-invariant")
            restricted.append(c)
        restricted = transpose(restricted, len(stable))
    r = rank(K, restricted, len(stable)) if stable else 0

    # F^n v = 0 iff v^[p^n] lies in ker A_n
    if n:
        ker = nullspace(K, Fm.power_matrix(n), n)
        nil = span_basis(K, [_root_vec(K, v, n) for v in ker], n)
    else:
        nil = []
    return StableDecomposition(
        stable_dim=len(stable),
        stable_basis=stable,
        nilpotency_index=e0,
        image_chain_dims=tuple(chain),
        restricted_matrix=tuple(tuple(row) for row in restricted),
        nil_basis=tuple(tuple(v) for v in nil),
        bijective_on_stable=r == len(stable),
    )


def is_f_torsion(Fm: SemilinearMap) -> bool:
    return stable_part(Fm).stable_dim == 0


def component_count(Fm: SemilinearMap) -> int:
    return 1 + stable_part(Fm).stable_dim


def _pth_power_vector(B: KoszulClassBasis, vector) -> list[int]:
    """Coordinates of (a_i^p) in the strands [R]_{p deg x_i}."""
    K = B.gb.ring.field
    out = []
    for a, g in zip(B.tuple_of(vector), B.hsop.degrees):
        S = strand_basis(B.gb, K.p * g)
        out += coords_in_strand(a.pth_power(), S, B.gb)
    return out


def build_frobenius(B: KoszulClassBasis, verify: bool = False) -> SemilinearMap:
    """Matrix of F on [H^1(x; R)]_0 in the basis B (which must sit at t = 1).

    Column j solves (a_i^p) = sum_k M_kj (b_ki x_i^(p-1)) + nu (x_i^p) exactly.
    ``verify`` also builds the full t = p strand and checks that the image of
    B is a basis there.
    """
    if B.t != 1:
        raise ValueError("build_frobenius expects the basis at t = 1; substitute powers of the parameters first")
    K = B.gb.ring.field
    ell = B.dim
    if ell == 0:
        return SemilinearMap(K, 0, ())
    Bp = _TargetStrands(B, K.p)
    cols = [push_forward(B, Bp, v) for v in B.vectors]
    cols.append(push_forward(B, Bp, B.coboundary))
    system = transpose(cols, len(cols[0]))
    M = []
    for v in B.vectors:
        rhs = _pth_power_vector(B, v)
        sol = solve(K, system, rhs, ell + 1)
        if sol is None:
            raise FrobeniusError(
                "F(alpha) is not in the image of the comparison map; the stabilisation index is wrong upstream"
            )
        M.append(sol[:ell])
    M = transpose(M, ell)
    if verify:
        full = h1_degree_zero(B.gb, B.hsop, K.p)
        if full.dim != ell:
            raise FrobeniusError(f"strand at t = p has dimension {full.dim}, expected {ell}")
        images = []
        for v in B.vectors:
            c = full.class_coordinates(push_forward(B, full, v))
            if c is None:
                raise LimitMapError("comparison map does not land in cocycles")
            images.append(c)
        if rank(K, images, ell) != ell:
            raise FrobeniusError("comparison map is not injective in degree 0")
    return SemilinearMap.from_rows(K, M)


class _TargetStrands:
    """Just enough of a KoszulClassBasis at t = p for :func:`push_forward`."""

    def __init__(self, B: KoszulClassBasis, t: int):
        self.t = t
        self.gb = B.gb
        self.hsop = B.hsop
        self.strands = tuple(strand_basis(B.gb, t * g) for g in B.hsop.degrees)


def frobenius_by_division(B: KoszulClassBasis) -> SemilinearMap:
    """Cross-check route: b_i = a_i^p / x_i^(p-1) in R, then express (b_i) in B.

    x_i^(p-1) is a nonzerodivisor on R, so each b_i is unique when it exists.
    """
    if B.t != 1:
        raise ValueError("division route expects the basis at t = 1")
    G = B.gb
    K = G.ring.field
    nvars = G.ring.nvars
    M = []
    for v in B.vectors:
        bvec: list[int] = []
        for a, f, S in zip(B.tuple_of(v), B.hsop.forms, B.strands):
            g = f.degree()
            target = strand_basis(G, K.p * g)
            xp = terms_pow(K, f.terms, K.p - 1, nvars)
            cols = [coords_in_strand(terms_mul(K, {m: 1}, xp), target, G) for m in S.monomials]
            rhs = coords_in_strand(a.pth_power(), target, G)
            if not cols:
                if any(rhs):
                    raise FrobeniusError("a_i^p is not divisible by x_i^(p-1) modulo the ideal")
                continue
            b = solve(K, transpose(cols, len(target)), rhs, len(cols))
            if b is None:
                raise FrobeniusError("a_i^p is not divisible by x_i^(p-1) modulo the ideal")
            bvec += b
        c = B.class_coordinates(bvec)
        if c is None:
            raise FrobeniusError("quotient tuple is not a cocycle")
        M.append(c)
    return SemilinearMap.from_rows(K, transpose(M, B.dim) if M else [])
