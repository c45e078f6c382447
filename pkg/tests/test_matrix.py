from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qracah.fields import QQ, PrimeField
from qracah.matrix import (
    Matrix,
    ShapeClass,
    SingularMatrixError,
    classify_shape,
    commutator,
    eval_tau_polynomial,
    krylov_matrix,
    linear_combination,
    mat_inverse,
    mat_rank,
    pair_products,
    rank_of_rows,
    solve_in_span,
)

F7 = PrimeField(7)
FP = PrimeField(1000003)
BIG = PrimeField(2**61 - 1)  # forces the object-dtype path


def naive_mul(x, y):
    n = len(x)
    return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def as_fractions(m: Matrix):
    return [[e.to_fraction() for e in row] for row in m.rows()]


def test_hand_product():
    x = Matrix.from_rows(QQ, [[1, Fraction(1, 2)], [0, 3]])
    y = Matrix.from_rows(QQ, [[2, 0], [Fraction(-1, 3), 1]])
    # [[1*2 + 1/2*(-1/3), 1/2], [-1, 3]]
    assert x @ y == Matrix.from_rows(QQ, [[Fraction(11, 6), Fraction(1, 2)], [-1, 3]])


rational_entry = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))


def rational_matrix(n):
    return st.lists(st.lists(rational_entry, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(rational_matrix(n), rational_matrix(n), rational_matrix(n))))
def test_rational_matmul_against_naive(mats):
    x, y, z = mats
    X, Y, Z = (Matrix.from_rows(QQ, m) for m in mats)
    assert as_fractions(X @ Y) == naive_mul(x, y)
    assert (X @ Y) @ Z == X @ (Y @ Z)
    assert (X @ Y).trace() == (Y @ X).trace()
    assert X @ Matrix.identity(QQ, len(x)) == X


@pytest.mark.parametrize("field", [F7, FP, BIG])
@given(data=st.data())
def test_prime_matmul_against_naive(field, data):
    n = data.draw(st.integers(1, 5))
    ent = st.integers(0, field.p - 1)
    x = data.draw(st.lists(st.lists(ent, min_size=n, max_size=n), min_size=n, max_size=n))
    y = data.draw(st.lists(st.lists(ent, min_size=n, max_size=n), min_size=n, max_size=n))
    prod = Matrix.from_rows(field, x) @ Matrix.from_rows(field, y)
    expected = [[v % field.p for v in row] for row in naive_mul(x, y)]
    assert [[e.raw for e in row] for row in prod.rows()] == expected


def test_int64_path_chosen_only_when_safe():
    assert Matrix.identity(FP, 11).arr.dtype == np.int64
    assert Matrix.identity(BIG, 3).arr.dtype == object


@pytest.mark.parametrize("field", [QQ, F7, FP])
def test_inverse_roundtrip(field):
    x = Matrix.from_rows(field, [[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    xi = mat_inverse(x)
    assert x @ xi == Matrix.identity(field, 3)
    assert xi @ x == Matrix.identity(field, 3)
    assert mat_inverse(Matrix.identity(field, 3)) == Matrix.identity(field, 3)


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        mat_inverse(Matrix.from_rows(QQ, [[1, 2], [0, 0]]))
    with pytest.raises(SingularMatrixError):
        mat_inverse(Matrix.from_rows(F7, [[1, 2], [3, 6]]))


def test_negative_power_uses_inverse():
    x = Matrix.from_rows(QQ, [[1, 1], [0, 2]])
    assert x**-2 @ x**2 == Matrix.identity(QQ, 2)
    assert x**0 == Matrix.identity(QQ, 2)


def test_rank():
    assert mat_rank(Matrix.identity(QQ, 4)) == 4
    assert mat_rank(Matrix.from_rows(QQ, [[1, 2], [2, 4]])) == 1
    assert mat_rank(Matrix.zeros(F7, 3)) == 0
    assert rank_of_rows(F7, [[1, 2, 3], [2, 4, 6], [0, 0, 1]]) == 2


def test_commutator_basics():
    x = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    assert commutator(x, x).is_zero()
    assert commutator(x, Matrix.identity(QQ, 2)).is_zero()
    y = Matrix.from_rows(QQ, [[0, 1], [0, 0]])
    # [x, y] = xy - yx computed by hand
    assert commutator(x, y) == Matrix.from_rows(QQ, [[-3, -3], [0, 3]])


def test_tau_polynomial():
    x = Matrix.from_rows(QQ, [[1, 0], [1, 2]])
    one = QQ(1)
    assert eval_tau_polynomial(x, [one], [one]) == Matrix.identity(QQ, 2)
    # 3 + 2 (x - 1)
    assert eval_tau_polynomial(x, [one], [QQ(3), QQ(2)]) == x * 2 + Matrix.identity(QQ, 2)
    with pytest.raises(ValueError):
        eval_tau_polynomial(x, [one], [one, one, one])


@pytest.mark.parametrize(
    "rows,shape",
    [
        ([[1, 0], [0, 2]], ShapeClass.DIAGONAL),
        ([[1, 0], [5, 2]], ShapeClass.LOWER_BIDIAGONAL),
        ([[1, 5], [0, 2]], ShapeClass.UPPER_BIDIAGONAL),
        ([[1, 5, 0], [1, 2, 1], [0, 1, 3]], ShapeClass.IRREDUCIBLE_TRIDIAGONAL),
        ([[1, 5, 0], [1, 2, 0], [0, 1, 3]], ShapeClass.TRIDIAGONAL),
        ([[1, 0, 1], [0, 2, 0], [0, 0, 3]], ShapeClass.GENERAL),
    ],
)
def test_classify_shape(rows, shape):
    assert classify_shape(Matrix.from_rows(QQ, rows)) is shape


def test_krylov_and_span():
    x = Matrix.from_rows(QQ, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert krylov_matrix(x, 0) == Matrix.identity(QQ, 3)
    powers = [Matrix.identity(QQ, 3), x, x @ x]
    target = powers[0] * 2 - powers[2] * Fraction(1, 3)
    assert solve_in_span(powers, target) == [QQ(2), QQ(0), QQ(Fraction(-1, 3))]
    assert solve_in_span(powers, x.with_entry(0, 2, 1)) is None


def test_pair_products_and_linear_combination():
    e = [Matrix.from_rows(F7, [[1, 0], [0, 0]]), Matrix.from_rows(F7, [[0, 0], [0, 1]])]
    m = Matrix.from_rows(F7, [[2, 3], [4, 5]])
    prods = pair_products(e, m, e)
    for i in range(2):
        for j in range(2):
            assert prods[i][j] == e[i] @ m @ e[j]
    assert linear_combination([3, 4], e) == Matrix.from_rows(F7, [[3, 0], [0, 4]])


def test_first_difference_and_with_entry():
    x = Matrix.identity(QQ, 3)
    y = x.with_entry(1, 2, Fraction(1, 2))
    i, j, left, right = x.first_difference(y)
    assert (i, j, str(left), str(right)) == (1, 2, "0", "1/2")
    assert x.first_difference(x) is None
    with pytest.raises(ValueError):
        x.arr[0, 0] = 5


def test_field_and_order_mismatch():
    with pytest.raises(ValueError):
        Matrix.identity(QQ, 2) + Matrix.identity(F7, 2)
    with pytest.raises(ValueError):
        Matrix.identity(QQ, 2) @ Matrix.identity(QQ, 3)
    with pytest.raises(ValueError):
        Matrix(QQ, np.empty((2, 3), dtype=object))
