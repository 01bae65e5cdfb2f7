import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vofl import benchmarks as bm
from vofl.errors import DomainError
from vofl.geometry import named_field
from vofl.kernels import RbfKernel, kernel_value
from vofl.oracle import highprec_pfq, pv_vo_laplacian_1d


def scalar_u(pair):
    return lambda y: float(pair.u(np.array([y]))[0])


def test_gaussian_family_reduces():
    # theta = 1/2 is appended as the last lower parameter: 1F1(1/2; 1/2; z) = e^z
    pair = bm.hypergeom_pair([0.5], [], d=1)
    x = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(pair.u(x), np.exp(-x * x), rtol=1e-14)
    np.testing.assert_allclose(pair.vo_lap(x, 2.0), (2 - 4 * x * x) * np.exp(-x * x),
                               rtol=1e-12, atol=1e-14)


def test_binomial_family_reduces():
    beta = 1.3
    pair = bm.hypergeom_pair([beta, 0.5], [], d=1)
    x = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(pair.u(x), (1 + x * x) ** -beta, rtol=1e-14)
    with pytest.raises(ValueError):
        bm.hypergeom_pair([1, 2, 3, 4], [], d=1)


def test_compact_values():
    pair = bm.compact_pair(1.0)
    assert pair.vo_lap(0.0, 1.0)[0] == pytest.approx(4 / math.pi, rel=1e-14)
    assert pair.u(np.array([1.0, 1.5]))[1] == 0.0
    with pytest.raises(DomainError):
        pair.vo_lap(np.array([1.0]), 1.0)
    with pytest.raises(ValueError):
        bm.compact_pair(-1.0)


def test_compact_against_singular_integral():
    pair = bm.compact_pair(1.0)
    ref = pv_vo_laplacian_1d(scalar_u(pair), 0.5, 1.5)
    assert pair.vo_lap(0.5, 1.5)[0] == pytest.approx(ref, rel=1e-6)


def test_example1_values():
    pair = bm.example1_pair()
    assert pair.u(0.0)[0] == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)
    assert pair.vo_lap(0.0, 1.0)[0] == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-14)


def test_example1_variable_exponent_against_singular_integral():
    pair = bm.example1_pair()
    x = 0.25
    alpha = float(named_field("alpha3")(x)[0])
    ref = pv_vo_laplacian_1d(scalar_u(pair), x, alpha, period=2 * math.pi)
    assert pair.vo_lap(x, alpha)[0] == pytest.approx(ref, rel=1e-6)


def test_example1_matches_bessel_kernel():
    x = np.linspace(-6, 6, 41)
    k = RbfKernel("bessel", 1.0, m=3)
    np.testing.assert_allclose(bm.example1_pair().u(x), kernel_value(k, x), rtol=1e-12, atol=1e-15)


def test_cos_identity():
    assert bm.cos_identity(1, 0.3, 0.0) == pytest.approx(1.0, rel=1e-15)
    assert bm.cos_identity(1, 0.7, 1.1) == pytest.approx(math.cos(1.1), rel=1e-13)
    x = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(bm.cos_identity(1, 1.4, x), np.cos(x), rtol=1e-12, atol=1e-14)
    ref = math.pi / 2 * float(highprec_pfq([1.5], [1.0, 1.0], -0.25 / 4))
    assert bm.cos_identity(2, 1.0, np.array([[0.5, 0.0]]))[0] == pytest.approx(ref, rel=1e-13)


def test_sinc_identity():
    assert bm.sinc_identity(1, 2.0, 0.0) == pytest.approx(math.pi ** 2 / 3, rel=1e-13)
    a = 0.9
    coef = (math.pi ** (a + 0.5) * math.gamma((1 + a) / 2)
            / (2 * math.gamma(0.5) * math.gamma((3 + a) / 2)))
    assert bm.sinc_identity(1, a, 0.0) == pytest.approx(coef, rel=1e-14)
    ref = pv_vo_laplacian_1d(lambda y: float(np.sinc(y)), 0.4, 1.0, period=2.0)
    assert bm.sinc_identity(1, 1.0, 0.4) == pytest.approx(ref, rel=1e-6)


PAIRS = {
    "gaussian": bm.gaussian_pair(),
    "imq": bm.imq_pair(1.0),
    "example1": bm.example1_pair(),
    "example2": bm.example2_pair(),
    "poisson": bm.poisson_pair(),
}


@pytest.mark.parametrize("name", list(PAIRS))
@settings(max_examples=40, deadline=None)
@given(x=st.floats(0.0, 0.95), alpha=st.floats(0.05, 2.0))
def test_even_symmetry(name, x, alpha):
    pair = PAIRS[name]
    a, b = pair.vo_lap(np.array([x, -x]), alpha)
    assert abs(a - b) <= 1e-12 * max(abs(a), 1.0)


def test_odd_symmetry_degree_one():
    pair = bm.hypergeom_pair([1.0], [], V=bm.HarmonicFactor(1), d=1)
    x = np.array([0.3, -0.3, 0.8, -0.8])
    v = pair.vo_lap(x, 1.3)
    assert abs(v[0] + v[1]) <= 1e-12 * abs(v[0])
    assert abs(v[2] + v[3]) <= 1e-12 * abs(v[2])


def test_degree_one_against_singular_integral():
    pair = bm.hypergeom_pair([1.5], [], V=bm.HarmonicFactor(1), d=1)
    ref = pv_vo_laplacian_1d(scalar_u(pair), 0.6, 0.9)
    assert pair.vo_lap(0.6, 0.9)[0] == pytest.approx(ref, rel=1e-6)


def test_translation():
    # the image of the shifted function is the shifted image
    pair = bm.gaussian_pair()
    y0 = 0.35
    for x in (-0.4, 0.1, 0.9):
        ref = pv_vo_laplacian_1d(lambda y: math.exp(-(y - y0) ** 2), x, 1.1)
        assert pair.vo_lap(x - y0, 1.1)[0] == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("name", list(PAIRS))
def test_alpha_two_matches_finite_differences(name):
    pair = PAIRS[name]
    x = np.array([-0.6, -0.2, 0.3, 0.7])
    exact = pair.vo_lap(x, 2.0)
    errs = []
    for h in (1e-2, 5e-3):
        if name == "example2":
            # quadratic inside the support: differences are exact up to rounding
            fd = -(pair.u(x + h) - 2 * pair.u(x) + pair.u(x - h)) / h ** 2
            np.testing.assert_allclose(fd, exact, rtol=1e-6)
            return
        fd = -(pair.u(x + h) - 2 * pair.u(x) + pair.u(x - h)) / h ** 2
        errs.append(np.max(np.abs(fd - exact)))
    assert np.max(np.abs(fd - exact)) < 1e-4 * np.max(np.abs(exact))
    assert math.log2(errs[0] / errs[1]) >= 1.9


def test_two_dimensional_pair_radial():
    pair = bm.compact_pair(3.0, d=2)
    pts = np.array([[0.3, 0.4], [0.5, 0.0], [0.0, -0.5]])
    v = pair.vo_lap(pts, 1.2)
    assert v[0] == pytest.approx(v[1], rel=1e-13)
    assert v[1] == pytest.approx(v[2], rel=1e-13)
