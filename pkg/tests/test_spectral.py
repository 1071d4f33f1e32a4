import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from malcevap.algebra import AlgebraSpec, ad_matrix, builtin
from malcevap.errors import NonConjugateSymmetricF, NonImaginarySpectrum, SpectrumHit, UnsupportedAlgebra, ZeroElement
from malcevap.spectral import (
    SpectrumReport,
    classify_almost_periodic,
    exp_ad,
    exponential_map,
    functional_calculus,
    grouped_spectrum,
    matrix_function,
    minimal_period,
    minpoly_residual,
    operator_period,
    orbit_stats,
    period_from_eigenvalues,
    resolvent,
    resolvent_laplace,
    spectral_projectors,
    spectrum_ad,
)


OCTONION = builtin("octonion")

generators = arrays(np.float64, 7, elements=st.floats(-3, 3, allow_nan=False, allow_infinity=False))


def e(i: int) -> np.ndarray:
    return np.eye(7)[i - 1]


def test_octonion_spectrum(octonion):
    report = spectrum_ad(octonion, e(1))
    assert report.purely_imaginary
    assert report.almost_periodic
    assert report.dim == 7
    assert report.multiplicity(0) == 1
    assert report.multiplicity(1j) == 3
    assert report.multiplicity(-1j) == 3


def test_octonion_spectrum_scales_with_norm(octonion, rng):
    for x in rng.standard_normal((100, 7)):
        report = spectrum_ad(octonion, x)
        norm = np.linalg.norm(x)
        assert report.generator_norm == pytest.approx(norm)
        assert report.multiplicity(1j * norm) == 3
        assert report.multiplicity(-1j * norm) == 3
        assert report.multiplicity(0) == 1


def test_spectrum_of_zero(octonion):
    report = spectrum_ad(octonion, np.zeros(7))
    assert report.purely_imaginary
    assert [(ev.value, ev.mult) for ev in report.eigenvalues] == [(0j, 7)]


def test_sl2_hyperbolic_spectrum(sl2):
    h = np.array([1.0, 0.0, 0.0])
    report = spectrum_ad(sl2, h)
    assert not report.purely_imaginary
    assert not report.almost_periodic
    assert max(abs(ev.re) for ev in report.eigenvalues) == pytest.approx(2.0)


def test_nilpotent_generator_is_not_almost_periodic(sl2):
    # ad(e) has spectrum {0} but is not diagonalizable
    report = spectrum_ad(sl2, np.array([0.0, 1.0, 0.0]))
    assert report.purely_imaginary
    assert not report.almost_periodic


def test_jordan_block_spectrum(sl2):
    # h + e - f is nilpotent and regular: ad is a single 3-fold Jordan block at 0
    x = np.array([1.0, 1.0, -1.0])
    report = spectrum_ad(sl2, x)
    assert report.purely_imaginary
    assert report.multiplicity(0) == 3
    assert len(report.eigenvalues) == 1
    assert not report.almost_periodic
    assert minimal_period(sl2, x) is None


def test_rotated_jordan_blocks_are_merged(rng):
    rotation = np.array([[0.0, -1.0], [1.0, 0.0]])
    block = np.block([[rotation, np.eye(2)], [np.zeros((2, 2)), rotation]])
    Q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    A = Q @ block @ Q.T

    grouped = grouped_spectrum(A, tol=1e-9)
    assert [mult for _, mult in grouped] == [2, 2]
    np.testing.assert_allclose([value for value, _ in grouped], [-1j, 1j], atol=1e-7)
    assert operator_period(A) is None

    # Distinct eigenvalues stay apart
    assert [mult for _, mult in grouped_spectrum(np.diag([1.0, 2.0, 3.0]), tol=1e-9)] == [1, 1, 1]


def test_spectrum_report_serialization(octonion):
    report = spectrum_ad(octonion, e(2))
    reloaded = SpectrumReport.model_validate_json(report.model_dump_json())
    assert reloaded == report

    with pytest.raises(ValueError):
        SpectrumReport(
            eigenvalues=[{"re": 0.0, "im": 1.0, "mult": 1}],
            purely_imaginary=True,
            almost_periodic=True,
            generator_norm=1.0,
            tol_used=1e-9,
        )


@pytest.mark.parametrize("name, expected", [("octonion", True), ("su2", True), ("im_quaternion", True), ("sl2", False), ("m3", False)])
def test_classify_almost_periodic(name, expected):
    assert classify_almost_periodic(builtin(name), sample_count=20) is expected


def test_octonion_spectra_are_imaginary(octonion, rng):
    for x in rng.standard_normal((500, 7)):
        assert spectrum_ad(octonion, x).purely_imaginary


def test_minpoly_residual(octonion, rng):
    x = rng.standard_normal(7)
    assert minpoly_residual(octonion, x / np.linalg.norm(x)) <= 1e-12
    assert minpoly_residual(octonion, np.zeros(7)) == 0.0
    assert minpoly_residual(octonion, 3 * e(5)) <= 1e-10

    with pytest.raises(UnsupportedAlgebra):
        minpoly_residual(builtin("su2"), np.ones(3))


def test_exp_ad(octonion, rng):
    x = rng.standard_normal(7)
    np.testing.assert_allclose(exp_ad(octonion, x, 0.0), np.eye(7), atol=1e-14)

    T = 2 * np.pi / np.linalg.norm(x)
    np.testing.assert_allclose(exp_ad(octonion, x, T), np.eye(7), atol=1e-9)

    s, t = 0.7, -1.3
    np.testing.assert_allclose(
        exp_ad(octonion, x, s + t), exp_ad(octonion, x, s) @ exp_ad(octonion, x, t), atol=1e-10
    )
    E = exp_ad(octonion, x, 2.5)
    np.testing.assert_allclose(E.T @ E, np.eye(7), atol=1e-10)
    assert np.linalg.det(E) == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(E, scipy.linalg.expm(2.5 * ad_matrix(octonion, x)), atol=1e-10)


def test_exp_ad_rotates_plane(octonion):
    # ad(e1) rotates e2 towards e4 with unit speed
    t = np.pi / 2
    np.testing.assert_allclose(exp_ad(octonion, e(1), t) @ e(2), e(4), atol=1e-12)
    t = 0.4
    np.testing.assert_allclose(exp_ad(octonion, e(1), t) @ e(2), np.cos(t) * e(2) + np.sin(t) * e(4), atol=1e-12)


def test_exp_ad_with_metric():
    su2 = builtin("su2")
    metric = np.diag([1.0, 2.0, 3.0])
    weighted = AlgebraSpec(name="weighted", dim=3, structure_constants=su2.structure_constants, metric=metric)
    x = np.array([0.3, -0.2, 0.5])
    E = exponential_map(weighted, x)(1.7)
    np.testing.assert_allclose(E, scipy.linalg.expm(1.7 * ad_matrix(weighted, x)), atol=1e-10)


def test_spectral_mapping(octonion, rng):
    x = rng.standard_normal(7)
    t = 0.9
    expected = np.array([np.exp(t * ev.value) for ev in spectrum_ad(octonion, x).eigenvalues for _ in range(ev.mult)])
    actual = np.linalg.eigvals(exp_ad(octonion, x, t))
    np.testing.assert_allclose(np.sort(actual.imag), np.sort(expected.imag), atol=1e-9)
    np.testing.assert_allclose(np.sort(actual.real), np.sort(expected.real), atol=1e-9)


def test_orbit_stats(octonion, rng, sl2):
    x, y = e(1), rng.standard_normal(7)
    # 2π is the 1000th grid point
    stats = orbit_stats(octonion, x, y, t_max=4 * np.pi, steps=2001)
    assert stats.sup_norm == pytest.approx(np.linalg.norm(y), abs=1e-10)
    assert stats.recurrence_time == pytest.approx(2 * np.pi)

    zero = orbit_stats(octonion, x, np.zeros(7), t_max=1.0, steps=11)
    assert zero.sup_norm == 0.0
    assert zero.recurrence_time == pytest.approx(0.1)

    growth = orbit_stats(sl2, np.array([1.0, 0.0, 0.0]), np.ones(3), t_max=20.0, steps=2001)
    assert growth.sup_norm > 100
    assert growth.recurrence_time is None

    with pytest.raises(ValueError):
        orbit_stats(octonion, x, y, t_max=1.0, steps=1)


@pytest.mark.parametrize("norm, period", [(1.0, 2 * np.pi), (2.0, np.pi)])
def test_minimal_period(octonion, norm, period):
    assert minimal_period(octonion, norm * e(3)) == pytest.approx(period, abs=1e-12)


def test_minimal_period_of_random_generators(octonion, rng):
    for x in rng.standard_normal((100, 7)):
        assert minimal_period(octonion, x) * np.linalg.norm(x) == pytest.approx(2 * np.pi, abs=1e-9)

    with pytest.raises(ZeroElement):
        minimal_period(octonion, np.zeros(7))


def test_minimal_period_of_split_generator(sl2):
    assert minimal_period(sl2, np.array([1.0, 0.0, 0.0])) is None


def test_quasi_periodic_frequencies():
    def rotation(omega):
        return np.array([[0.0, -omega], [omega, 0.0]])

    commensurate = scipy.linalg.block_diag(rotation(1.0), rotation(2.0))
    assert operator_period(commensurate) == pytest.approx(2 * np.pi)

    incommensurate = scipy.linalg.block_diag(rotation(1.0), rotation(np.sqrt(2)))
    assert operator_period(incommensurate) is None
    assert period_from_eigenvalues(np.array([0.0, 1j, -1j, 3j, -3j])) == pytest.approx(2 * np.pi)
    assert period_from_eigenvalues(np.zeros(3)) is None


def test_functional_calculus(octonion, rng):
    x = rng.standard_normal(7)
    A = ad_matrix(octonion, x)
    np.testing.assert_allclose(functional_calculus(octonion, x, lambda z: 1.0), np.eye(7), atol=1e-10)
    np.testing.assert_allclose(functional_calculus(octonion, x, lambda z: z), A, atol=1e-10)

    t = 1.1
    np.testing.assert_allclose(functional_calculus(octonion, x, lambda z: np.exp(t * z)), exp_ad(octonion, x, t), atol=1e-9)


def test_functional_calculus_composes(octonion, rng):
    x = rng.standard_normal(7)

    fA = functional_calculus(octonion, x, np.exp)
    np.testing.assert_allclose(fA @ fA + np.eye(7), functional_calculus(octonion, x, lambda z: np.exp(z) ** 2 + 1), atol=1e-9)

    A = ad_matrix(octonion, x)
    np.testing.assert_allclose(matrix_function(A, lambda z: z**3, alg=octonion), A @ A @ A, atol=1e-9)


def test_functional_calculus_errors(octonion, sl2, rng):
    with pytest.raises(NonImaginarySpectrum):
        functional_calculus(sl2, np.array([1.0, 0.0, 0.0]), lambda z: z)
    with pytest.raises(NonConjugateSymmetricF):
        functional_calculus(octonion, e(1), lambda z: 1j)


def test_spectral_projectors(octonion, rng):
    A = ad_matrix(octonion, rng.standard_normal(7))
    projectors = spectral_projectors(A, alg=octonion)
    assert len(projectors) == 3
    np.testing.assert_allclose(sum(P for _, P in projectors), np.eye(7), atol=1e-10)
    for value, P in projectors:
        np.testing.assert_allclose(P @ P, P, atol=1e-10)
        np.testing.assert_allclose(A @ P, value * P, atol=1e-10)


def test_resolvent(octonion, rng):
    x = rng.standard_normal(7)
    R = resolvent(octonion, x, 1.0)
    assert np.isrealobj(R)
    np.testing.assert_allclose((np.eye(7) - ad_matrix(octonion, x)) @ R, np.eye(7), atol=1e-10)

    Rc = resolvent(octonion, x, 0.5 + 2j)
    np.testing.assert_allclose(((0.5 + 2j) * np.eye(7) - ad_matrix(octonion, x)) @ Rc, np.eye(7), atol=1e-10)

    with pytest.raises(SpectrumHit):
        resolvent(octonion, x, 1j * np.linalg.norm(x))


def test_resolvent_laplace(octonion, rng):
    for x in rng.standard_normal((3, 7)):
        x = x / np.linalg.norm(x)
        np.testing.assert_allclose(resolvent_laplace(octonion, x, 2.0, t_max=40.0), resolvent(octonion, x, 2.0), atol=1e-6)

    with pytest.raises(ValueError):
        resolvent_laplace(octonion, e(1), -1.0)


@settings(max_examples=100, deadline=None)
@given(x=generators, t=st.floats(-5, 5, allow_nan=False))
def test_inner_automorphisms_are_orthogonal(x, t):
    Q = exp_ad(OCTONION, x, t)
    assert np.allclose(Q.T @ Q, np.eye(7), atol=1e-10)
    assert np.allclose(Q @ x, x, atol=1e-10 * (1 + np.linalg.norm(x)))
