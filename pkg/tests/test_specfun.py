import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sc

import oracles
from bsderiv.errors import PoleInNormalization
from bsderiv.specfun import (
    EvalOptions,
    EvenKernel,
    Params,
    eval_f_aux,
    eval_H_deriv,
    eval_H_norm,
    eval_J_deriv,
    eval_J_norm,
    falling_factorial,
    raw_derivatives,
    rising_factorial,
    series_coefficients,
)


@pytest.mark.parametrize("a,n,want", [(5, 0, 1), (5, 3, 60), (-0.5, 2, 0.75), (3, 4, 0)])
def test_falling_factorial(a, n, want):
    assert falling_factorial(a, n) == pytest.approx(want)


def test_rising_factorial_matches_poch():
    for a in (0.3, 1.7, -2.5):
        for n in range(6):
            assert rising_factorial(a, n) == pytest.approx(sc.poch(a, n), rel=1e-14)


def test_params_validation():
    with pytest.raises(ValueError):
        Params.bessel(0.0, -1)
    with pytest.raises(ValueError):
        Params.bessel(0.0, 1.5)
    assert Params.bessel(1, 2).with_n(3).n == 3
    with pytest.raises(ValueError):
        EvalOptions(rel_tol=0)


def test_J_norm_is_one_at_origin():
    assert eval_J_norm(Params.bessel(0.7, 0), 0.0).value == 1.0
    for nu, n in [(2.5, 2), (4.0, 3), (0.2, 1)]:
        assert eval_J_norm(Params.bessel(nu, n), 0.0).value == pytest.approx(1.0, abs=1e-15)


def test_J_norm_vanishes_at_first_zero():
    x = oracles.bessel_zero(0, 0, 2, 3)
    assert abs(eval_J_norm(Params.bessel(0, 0), x).value) < 1e-12


def test_J_norm_pole():
    with pytest.raises(PoleInNormalization):
        eval_J_norm(Params.bessel(1.0, 2), 1.0)
    v = eval_J_norm(Params.bessel(1.0, 2), 1.0, EvalOptions(normalized=False)).value
    assert math.isfinite(v)


def test_J_norm_real_on_imaginary_axis():
    p = Params.bessel(3.0, 2)
    for y in (0.5, 2.0, 4.5):
        v = eval_J_norm(p, 1j * y).value
        assert abs(v.imag) <= 1e-14 * abs(v)


@pytest.mark.parametrize("nu,n,x", [(0.5, 0, math.pi), (1.0, 1, 1.84118378134066)])
def test_J_deriv_zeros(nu, n, x):
    assert abs(eval_J_deriv(Params.bessel(nu, n), x).value) < 1e-12


def test_J_deriv_at_origin():
    assert eval_J_deriv(Params.bessel(2.0, 0), 0.0).value == 0.0


@pytest.mark.parametrize("nu", [-2.5, -0.3, 0.0, 1.5, 4.0])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_J_deriv_matches_mpmath(nu, n):
    for x in (0.5, 2.0, 4.9, 7.5, 30.0):
        want = oracles.bessel_deriv(nu, n, x)
        got = eval_J_deriv(Params.bessel(nu, n), x).value
        assert got == pytest.approx(want, rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("nu", [-0.5, 0.0, 0.3, 0.5, 1.25])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_H_deriv_matches_mpmath(nu, n):
    for x in (0.5, 2.0, 6.0, 15.0):
        want = oracles.struve_deriv(nu, n, x)
        got = eval_H_deriv(Params.struve(nu, n), x).value
        assert got == pytest.approx(want, rel=1e-10, abs=1e-13)


def test_H_norm_constant_term():
    # limit of 2^(nu+1) x^(-nu-1) H_nu(x) at the origin is 1 / (Gamma(3/2) Gamma(nu+3/2))
    nu = 0.5
    c0 = eval_H_norm(Params.struve(nu, 0), 0.0).value
    assert c0 == pytest.approx(1 / (sc.gamma(1.5) * sc.gamma(nu + 1.5)), rel=1e-15)
    x = 1e-6
    limit = 2 ** (nu + 1) * x ** (-nu - 1) * oracles.struve_deriv(nu, 0, x)
    assert c0 == pytest.approx(limit, rel=1e-10)


def test_H_closed_forms():
    assert eval_H_deriv(Params.struve(-0.5, 0), 1.0).value == pytest.approx(math.sqrt(2 / math.pi) * math.sin(1), rel=1e-12)
    assert abs(eval_H_norm(Params.struve(-0.5, 0), math.pi).value) < 1e-13
    # double zero of H_{1/2} at 2 pi: value vanishes, sign does not change
    p = Params.struve(0.5, 0)
    assert abs(eval_H_deriv(p, 2 * math.pi).value) < 1e-13
    left, right = eval_H_deriv(p, 2 * math.pi - 1e-3).value, eval_H_deriv(p, 2 * math.pi + 1e-3).value
    assert left > 0 and right > 0
    assert left == pytest.approx(oracles.half_order_struve(2 * math.pi - 1e-3), rel=1e-8)


def test_H_deriv_finite_difference():
    h = 1e-4
    f = lambda t: eval_H_deriv(Params.struve(0.3, 0), t).value
    fd = (f(1 + h) - 2 * f(1) + f(1 - h)) / h**2
    assert eval_H_deriv(Params.struve(0.3, 2), 1.0).value == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize("family", ["besselj", "struveh"])
@pytest.mark.parametrize("nu,n", [(0.25, 0), (1.5, 1), (3.0, 2), (0.4, 3)])
def test_derivative_consistency(family, nu, n):
    ev = eval_J_deriv if family == "besselj" else eval_H_deriv
    h = 1e-5
    for x in (0.5, 1.0, 2.0, 5.0):
        f = lambda t: ev(Params(family, nu, n), t).value
        fd = (f(x + h) - f(x - h)) / (2 * h)
        got = ev(Params(family, nu, n + 1), x).value
        assert got == pytest.approx(fd, rel=1e-7, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(
    nu=st.floats(-3.7, 8.0),
    n=st.integers(0, 4),
    x=st.floats(0.01, 12.0),
    family=st.sampled_from(["besselj", "struveh"]),
)
def test_kernels_are_even(nu, n, x, family):
    p = Params(family, nu, n)
    k = EvenKernel(p)
    a, b = k(x), k(-x)
    assert a == b or abs(a - b) <= 1e-15 * max(abs(a), 1e-300)


def test_even_kernel_is_unit_at_origin():
    for p in (Params.bessel(2.0, 3), Params.bessel(1.0, 2), Params.struve(0.5, 2)):
        k = EvenKernel(p)
        assert k(0.0) == pytest.approx(1.0, abs=1e-15)
        assert k.coefficients(4)[0] == 1.0


def test_integer_corner_shift():
    # nu = n - 1: J_1'' has Gamma(0) in the normalization; the kernel drops it
    k = EvenKernel(Params.bessel(1.0, 2))
    assert not k.normalized
    c = series_coefficients(Params.bessel(1.0, 2), 6, normalized=False)
    assert np.all(np.isfinite(c))


def test_aux_identity():
    for nu, n in [(2.0, 1), (0.5, 0), (3.3, 2), (-0.4, 1)]:
        p = Params.bessel(nu, n)
        xs = np.linspace(0.2, 10, 50)
        lhs = 2.0**n * xs ** (n / 2) * eval_J_deriv(p, 2 * np.sqrt(xs)).value
        rhs = xs ** (nu / 2) * eval_f_aux(p, -xs).value
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-14)


def test_aux_examples():
    assert eval_f_aux(Params.bessel(1.2, 0), 0.0).value == pytest.approx(1 / sc.gamma(2.2), rel=1e-15)
    v = eval_f_aux(Params.bessel(2.0, 1), -1.0).value
    assert v == pytest.approx(2 * oracles.bessel_deriv(2, 1, 2.0), rel=1e-13)
    assert abs(eval_f_aux(Params.bessel(0.5, 0), -(math.pi / 2) ** 2).value) < 1e-14


@pytest.mark.parametrize("m", [0, 1, 2])
def test_bessel_struve_bridge(m):
    xs = np.linspace(0.05, 20, 80)
    h = eval_H_deriv(Params.struve(-m - 0.5, 0), xs).value
    j = eval_J_deriv(Params.bessel(m + 0.5, 0), xs).value
    np.testing.assert_allclose(h, (-1) ** m * j, rtol=1e-12, atol=1e-15)


def test_raw_derivatives_repairs_struve_nan():
    p = Params.struve(-0.5, 0)
    vals = raw_derivatives(p, np.array([math.pi, 2 * math.pi, 3 * math.pi]), 1)[0]
    assert np.all(np.isfinite(vals))
    np.testing.assert_allclose(vals, 0, atol=1e-14)
