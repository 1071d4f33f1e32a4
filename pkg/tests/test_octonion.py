import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from malcevap.algebra import (
    FANO_TRIPLES,
    ONE,
    Octonion,
    associator,
    left_multiplication_matrix,
    oct_conj,
    oct_inverse,
    oct_mul,
    oct_norm,
    right_multiplication_matrix,
)
from malcevap.errors import DimensionMismatch, ZeroDivisor

coefficients = arrays(np.float64, 8, elements=st.floats(-10, 10, allow_nan=False, allow_infinity=False))


def e(i: int) -> Octonion:
    return Octonion.basis(i)


def test_identity_and_units():
    a = Octonion(coefficients=np.arange(8.0))
    assert oct_mul(ONE, a) == a
    assert oct_mul(a, ONE) == a
    for i in range(1, 8):
        assert oct_mul(e(i), e(i)) == -ONE


@pytest.mark.parametrize("i, j, k", FANO_TRIPLES)
def test_fano_triples(i, j, k):
    assert oct_mul(e(i), e(j)) == e(k)
    assert oct_mul(e(j), e(k)) == e(i)
    assert oct_mul(e(k), e(i)) == e(j)
    assert oct_mul(e(j), e(i)) == -e(k)


def test_e1_e2_is_e4():
    assert oct_mul(e(1), e(2)) == e(4)
    assert e(1) * e(2) == e(4)


def test_conj_norm_inverse():
    assert oct_conj(e(3)) == -e(3)
    assert oct_norm(ONE + e(1)) == pytest.approx(np.sqrt(2), abs=1e-15)
    assert oct_inverse(e(2)) == -e(2)

    with pytest.raises(ZeroDivisor):
        oct_inverse(Octonion(coefficients=np.zeros(8)))


def test_invalid_coefficients():
    with pytest.raises(ValueError):
        Octonion(coefficients=np.zeros(7))
    with pytest.raises(ValueError):
        Octonion(coefficients=[np.nan] + [0.0] * 7)
    with pytest.raises(DimensionMismatch):
        Octonion.from_imaginary(np.zeros(8))


def test_octonions_are_immutable():
    a = e(1)
    with pytest.raises(ValueError):
        a.coefficients[0] = 1.0


@settings(max_examples=200, deadline=None)
@given(a=coefficients, b=coefficients)
def test_composition_law(a, b):
    a, b = Octonion(coefficients=a), Octonion(coefficients=b)
    na, nb = oct_norm(a), oct_norm(b)
    assert abs(oct_norm(oct_mul(a, b)) - na * nb) <= 1e-12 * max(1.0, na * nb)
    assert oct_conj(oct_mul(a, b)).allclose(oct_mul(oct_conj(b), oct_conj(a)), atol=1e-12 * max(1.0, na * nb))


def test_alternativity(rng):
    for a, b in rng.standard_normal((1000, 2, 8)):
        a, b = Octonion(coefficients=a), Octonion(coefficients=b)
        assert oct_mul(a, oct_mul(a, b)).allclose(oct_mul(oct_mul(a, a), b), atol=1e-12)
        assert oct_mul(oct_mul(b, a), a).allclose(oct_mul(b, oct_mul(a, a)), atol=1e-12)


def test_inverse(rng):
    for c in rng.standard_normal((100, 8)):
        a = Octonion(coefficients=c)
        assert oct_mul(a, oct_inverse(a)).allclose(ONE, atol=1e-14)


def test_not_associative():
    assoc = associator(e(1), e(2), e(3))
    assert assoc == -2 * e(6)
    # Quaternionic triples associate
    assert associator(e(1), e(2), e(4)) == Octonion(coefficients=np.zeros(8))


def test_multiplication_matrices(rng):
    a, b = (Octonion(coefficients=c) for c in rng.standard_normal((2, 8)))
    product = oct_mul(a, b).coefficients
    np.testing.assert_allclose(left_multiplication_matrix(a) @ b.coefficients, product, atol=1e-12)
    np.testing.assert_allclose(right_multiplication_matrix(b) @ a.coefficients, product, atol=1e-12)
