from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgdd.algebra import IntMatrix, Surd, kron, square_free_decomposition
from sgdd.errors import ParameterError

small_int = st.integers(min_value=-9, max_value=9)


def square(n):
    return st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n).map(IntMatrix)


def test_all_ones_product():
    j2 = IntMatrix.ones(2)
    assert j2 @ j2 == j2.scalar_mul(2)


def test_group_indicator_square():
    k22 = IntMatrix.group_blocks(2, 2)
    assert k22 @ k22 == k22.scalar_mul(2)


def test_kron_definition():
    assert kron(IntMatrix.identity(2), IntMatrix.ones(3)) == IntMatrix.group_blocks(2, 3)
    anti = IntMatrix.ones(2) - IntMatrix.identity(2)
    out = kron(anti, IntMatrix.identity(2))
    assert out == IntMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    rows = kron(IntMatrix.identity(3), anti)
    assert all(sum(rows.row(i)) == 1 for i in range(6))


def test_dimension_mismatch():
    with pytest.raises(ParameterError):
        IntMatrix.ones(2) @ IntMatrix.ones(3)
    with pytest.raises(ParameterError):
        IntMatrix.ones(2) + IntMatrix.ones(3)


@given(square(3), square(3), square(3))
@settings(max_examples=60)
def test_matmul_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@given(square(2), square(2), square(2), square(2))
@settings(max_examples=60)
def test_kron_mixed_product(a, b, c, d):
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


def test_huge_entries_stay_exact():
    big = 10**30
    m = IntMatrix([[big, 1], [0, big]])
    out = m @ m
    assert out[0, 0] == big * big
    assert out[0, 1] == 2 * big


def test_surd_conjugate_product():
    x = Surd.of(1, 1, 2) * Surd.of(1, -1, 2)
    assert x == Surd.of(-1)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(rationals, rationals)
@settings(max_examples=80)
def test_surd_norm_identity(a, b):
    x = Surd.of(a, b, 5) * Surd.of(a, -b, 5)
    assert x == Surd.of(a * a - b * b * 5)


def test_surd_normalization():
    assert Surd.of(0, 1, 4) == Surd.of(2)          # sqrt(4) folds
    assert Surd.of(0, 1, 12) == Surd.of(0, 2, 3)   # square part extracted
    assert Surd.sqrt(Fraction(36, 9)) == Surd.of(2)
    assert Surd.sqrt(125) == Surd.of(0, 5, 5)


def test_surd_sign_and_order():
    assert Surd.of(1, -1, 2).sign() == -1          # 1 - sqrt(2) < 0
    assert Surd.of(3, -2, 2).sign() == 1           # 3 - 2 sqrt(2) > 0
    assert Surd.of(0, 1, 2) > Surd.of(1)
    assert (Surd.of(2, -1, 4)).sign() == 0         # 2 - sqrt(4)


def test_surd_division():
    x = Surd.of(0, 1, 5) / Surd.of(0, 1, 5)
    assert x == Surd.of(1)
    y = Surd.of(1, 1, 5) / Surd.of(2)
    assert y == Surd.of(Fraction(1, 2), Fraction(1, 2), 5)


def test_surd_incompatible_radicands():
    with pytest.raises(ParameterError):
        Surd.of(0, 1, 2) + Surd.of(0, 1, 3)


@given(st.integers(min_value=0, max_value=100000))
@settings(max_examples=80)
def test_square_free_decomposition(n):
    s, d = square_free_decomposition(n)
    assert s * s * d == n
    for f in range(2, 40):
        if f * f > d:
            break
        assert d % (f * f)


def test_float_entries_rejected():
    with pytest.raises((ParameterError, TypeError)):
        IntMatrix([[1.5, 0], [0, 1]])
    import numpy as np

    with pytest.raises(ParameterError):
        IntMatrix(np.array([[0.5]]))


def test_first_difference_is_row_major():
    a = IntMatrix([[1, 2], [3, 4]])
    b = IntMatrix([[1, 0], [0, 4]])
    assert a.first_difference(b) == (0, 1)
    assert a.first_difference(a) is None


@given(rationals, rationals, rationals, rationals)
@settings(max_examples=60)
def test_surd_division_inverts_multiplication(a, b, c, d):
    x = Surd.of(a, b, 7)
    y = Surd.of(c, d, 7)
    if y.sign() == 0:
        return
    assert (x * y) / y == x
