from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qracah.fields import (
    QQ,
    FieldElement,
    PrimeField,
    field_inv,
    field_pow,
    is_prime,
    make_prime_element,
    make_rational,
    parse_field,
)

F7 = PrimeField(7)
FP = PrimeField(1000003)


@pytest.mark.parametrize("num,den,expected", [(6, 4, Fraction(3, 2)), (0, 7, Fraction(0)), (-2, -4, Fraction(1, 2))])
def test_make_rational_canonical(num, den, expected):
    x = make_rational(num, den)
    assert x.to_fraction() == expected
    assert x == make_rational(expected.numerator, expected.denominator)


def test_make_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        make_rational(1, 0)


@pytest.mark.parametrize("residue,expected", [(10, 3), (-1, 6), (7, 0)])
def test_make_prime_element(residue, expected):
    assert make_prime_element(F7, residue).raw == expected


def test_make_prime_element_needs_prime_field():
    with pytest.raises(TypeError):
        make_prime_element(QQ, 3)


@pytest.mark.parametrize(
    "x,n,expected",
    [
        (QQ(2), -2, QQ(Fraction(1, 4))),
        (QQ(Fraction(-5, 3)), 0, QQ(1)),
        (F7(3), 4, F7(81)),
        (F7(3), -1, F7(5)),
    ],
)
def test_field_pow(x, n, expected):
    assert field_pow(x, n) == expected
    assert x**n == expected


@pytest.mark.parametrize("x,expected", [(QQ(Fraction(3, 2)), QQ(Fraction(2, 3))), (F7(3), F7(5)), (QQ(1), QQ(1))])
def test_field_inv(x, expected):
    assert field_inv(x) == expected


@pytest.mark.parametrize("x", [QQ(0), F7(0), F7(14)])
def test_inverse_of_zero(x):
    with pytest.raises(ZeroDivisionError):
        field_inv(x)
    with pytest.raises(ZeroDivisionError):
        x**-1


def test_field_mismatch():
    with pytest.raises(ValueError, match="field mismatch"):
        QQ(1) + F7(1)
    with pytest.raises(ValueError, match="field mismatch"):
        F7(1) * PrimeField(11)(1)


def test_prime_field_rejects_composites():
    for bad in (1, 2, 4, 9, 1000001):
        with pytest.raises(ValueError):
            PrimeField(bad)


@pytest.mark.parametrize("n", [3, 5, 7, 1000003, 2**61 - 1])
def test_is_prime_known_primes(n):
    assert is_prime(n)


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))

    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if slow(n)]


@pytest.mark.parametrize(
    "descriptor,text,expected",
    [
        ("rational", "3/2", "3/2"),
        ("rational", "-6/4", "-3/2"),
        ("rational", "5", "5"),
        ("rational", "4/-2", "-2"),
        ("fp:7", "10", "3"),
        ("fp:7", "-1", "6"),
    ],
)
def test_parse_and_format(descriptor, text, expected):
    f = parse_field(descriptor)
    assert str(f.parse(text)) == expected
    assert f.descriptor == descriptor


@pytest.mark.parametrize("descriptor", ["rationals", "fp:", "fp:8", "fp:x", ""])
def test_parse_field_rejects(descriptor):
    with pytest.raises(ValueError):
        parse_field(descriptor)


@pytest.mark.parametrize("descriptor,text", [("rational", "1.5"), ("rational", "a/b"), ("fp:7", "1/2"), ("fp:7", "")])
def test_parse_literal_rejects(descriptor, text):
    with pytest.raises(ValueError):
        parse_field(descriptor).parse(text)


def test_elements_are_immutable():
    x = QQ(3)
    with pytest.raises(AttributeError):
        x.raw = 4


def test_fraction_coercion_into_prime_field():
    assert F7(Fraction(1, 2)) == F7(4)


# -- field axioms against independent arithmetic ---------------------------------

small = st.integers(min_value=-10**6, max_value=10**6)
fractions = st.builds(Fraction, small, st.integers(min_value=1, max_value=10**6))
residues = st.integers(min_value=0, max_value=FP.p - 1)


@settings(max_examples=1000)
@given(fractions, fractions, fractions)
def test_rational_axioms(x, y, z):
    a, b, c = QQ(x), QQ(y), QQ(z)
    assert (a + b).to_fraction() == x + y
    assert (a * b).to_fraction() == x * y
    assert (a - b).to_fraction() == x - y
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if x:
        assert a * a.inverse() == 1
        assert (b / a).to_fraction() == y / x


@settings(max_examples=1000)
@given(residues, residues, residues)
def test_prime_axioms(x, y, z):
    p = FP.p
    a, b, c = FP(x), FP(y), FP(z)
    assert (a + b).raw == (x + y) % p
    assert (a * b).raw == (x * y) % p
    assert (a - b).raw == (x - y) % p
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if x:
        assert (a * a.inverse()).raw == 1
        assert (a ** (p - 1)).raw == 1


@given(st.integers(min_value=1, max_value=FP.p - 1), st.integers(min_value=-40, max_value=40))
def test_pow_agrees_with_python(x, n):
    assert field_pow(FP(x), n).raw == pow(x, n, FP.p)


@given(fractions)
def test_hash_consistent_with_eq(x):
    a = QQ(x)
    b = QQ(Fraction(x.numerator * 3, x.denominator * 3))
    assert a == b and hash(a) == hash(b)
    assert isinstance(a, FieldElement)
