import itertools

import pytest
from hypothesis import given, strategies as st

from geomconn.field import GF, FiniteField, default_modulus, frobenius_scalar, is_irreducible, pth_root_scalar
from geomconn.linalg import ExactMatrix, matvec, nullspace, rank, rref, solve

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)]


def test_prime_field_examples():
    F = GF(3)
    assert F(2) * F(2) == F(1)
    assert F(2).inverse() == F(2)
    assert F(2) / F(2) == F(1)
    assert F(2) ** 5 == F(2)
    assert F(1) - F(2) == F(2)


def test_f9_i_squared():
    F = GF(3, 2)
    i = F.t
    assert F.modulus == (1, 0, 1)  # x^2 + 1
    assert i * i == F(2)


def test_division_by_zero():
    F = GF(5)
    with pytest.raises(ZeroDivisionError):
        F(3) / F(0)
    with pytest.raises(ZeroDivisionError):
        GF(2, 3).inv(0)


def test_frobenius_examples():
    assert frobenius_scalar(GF(3)(2)) == GF(3)(2)
    F9 = GF(3, 2)
    i = F9.t
    assert frobenius_scalar(i) == 2 * i
    assert frobenius_scalar(GF(5)(0)) == GF(5)(0)
    assert pth_root_scalar(GF(3)(2)) == GF(3)(2)
    assert pth_root_scalar(2 * i) == i
    for p, e in SMALL_FIELDS:
        one = GF(p, e)(1)
        assert pth_root_scalar(one) == one


def test_invalid_fields():
    with pytest.raises(ValueError):
        FiniteField(4)
    with pytest.raises(ValueError):
        FiniteField(3, 2, modulus=(2, 0, 1))  # x^2 + 2 = (x-1)(x+1)


def _is_domain(c, p):
    """Independent irreducibility test: F_p[x]/(c) has no zero divisors (exhaustive)."""
    e = len(c) - 1

    def mulmod(a, b):
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, e - 1, -1):
            f = prod[k]
            if f:
                for i in range(e + 1):
                    prod[k - e + i] = (prod[k - e + i] - f * c[i]) % p
        return prod[:e]

    elems = [list(t) for t in itertools.product(range(p), repeat=e) if any(t)]
    return all(any(mulmod(a, b)) for a in elems for b in elems)


@pytest.mark.parametrize("p,e", [(p, e) for p, e in SMALL_FIELDS if e > 1 and p**e <= 32])
def test_default_modulus_is_least_irreducible(p, e):
    mod = default_modulus(p, e)
    assert is_irreducible(mod, p) and _is_domain(mod, p)
    code = sum(c * p**i for i, c in enumerate(mod[:-1]))
    for smaller in range(code):
        low = [(smaller // p**i) % p for i in range(e)]
        assert not _is_domain(low + [1], p)


@pytest.mark.parametrize("p,e", [(p, e) for p, e in SMALL_FIELDS if p**e <= 81])
def test_frobenius_bijective_exhaustive(p, e):
    F = GF(p, e)
    images = [F.frobenius(a) for a in range(F.q)]
    assert sorted(images) == list(range(F.q))
    for a in range(F.q):
        assert F.pth_root(F.frobenius(a)) == a
        assert F.frobenius(a) == F.pow(a, p)
        for b in range(F.q):
            assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
            assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))


field_st = st.sampled_from(SMALL_FIELDS).map(lambda pe: GF(*pe))


@given(data=st.data(), F=field_st)
def test_scalar_frobenius_properties(data, F):
    a = data.draw(st.integers(0, F.q - 1))
    b = data.draw(st.integers(0, F.q - 1))
    x, y = F.element(a), F.element(b)
    assert frobenius_scalar(x + y) == frobenius_scalar(x) + frobenius_scalar(y)
    assert frobenius_scalar(x * y) == frobenius_scalar(x) * frobenius_scalar(y)
    assert pth_root_scalar(frobenius_scalar(x)) == x
    assert frobenius_scalar(pth_root_scalar(x)) == x
    if b:
        assert (x / y) * y == x


@given(data=st.data(), F=field_st)
def test_field_axioms(data, F):
    a, b, c = (F.element(data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a - a == F(0)
    if a:
        assert a * a.inverse() == F(1)


def test_rref_examples():
    F = GF(3)
    I2 = ExactMatrix.identity(F, 2)
    M, piv, r = I2.rref()
    assert M == I2 and piv == [0, 1] and r == 2
    Z = ExactMatrix.zero(F, 3, 3)
    M, piv, r = Z.rref()
    assert M == Z and r == 0
    assert ExactMatrix.from_rows(F, [[1, 2], [2, 1]]).rank() == 1


def test_nullspace_examples():
    F3, F2 = GF(3), GF(2)
    assert ExactMatrix.identity(F3, 3).nullspace() == []
    assert len(ExactMatrix.zero(F3, 2, 2).nullspace()) == 2
    assert ExactMatrix.from_rows(F2, [[1, 1]]).nullspace() == [[1, 1]]


def test_solve_conventions():
    F = GF(5)
    # x + y = 3 ; free variable y set to 0
    assert solve(F, [[1, 1]], [3]) == [3, 0]
    assert solve(F, [[1, 1], [2, 2]], [1, 3]) is None
    assert solve(F, [], [], 2) == [0, 0]


def _matrices(draw, F):
    rows = draw(st.integers(0, 5))
    cols = draw(st.integers(1, 5))
    entries = st.integers(0, F.q - 1)
    # bias toward rank deficiency: sometimes repeat rows
    M = [draw(st.lists(entries, min_size=cols, max_size=cols)) for _ in range(rows)]
    if rows >= 2 and draw(st.booleans()):
        c = draw(entries)
        M[-1] = F.axpy(c, M[0], [0] * cols)
    return M, cols


@given(data=st.data(), F=field_st)
def test_linear_algebra_invariants(data, F):
    M, cols = _matrices(data.draw, F)
    red, piv = rref(F, M, cols)
    assert rref(F, red, cols) == (red, piv)
    r = len(piv)
    kernel = nullspace(F, M, cols)
    assert r + len(kernel) == cols
    for v in kernel:
        assert not any(matvec(F, M, v))
    assert rank(F, kernel, cols) == len(kernel)
    x = data.draw(st.lists(st.integers(0, F.q - 1), min_size=cols, max_size=cols))
    b = matvec(F, M, x)
    sol = solve(F, M, b, cols)
    assert sol is not None and matvec(F, M, sol) == b
    for j in range(cols):
        if j not in piv:
            assert sol[j] == 0


def test_exact_matrix_product_and_apply():
    F = GF(7)
    A = ExactMatrix.from_rows(F, [[1, 2], [3, 4]])
    B = ExactMatrix.from_rows(F, [[0, 1], [1, 0]])
    assert (A @ B).tolist() == [[2, 1], [4, 3]]
    assert A.apply([1, 1]) == [3, 0]
    assert A.solve([3, 0]) == [1, 1]
