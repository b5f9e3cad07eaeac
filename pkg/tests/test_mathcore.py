import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracroot.errors import DomainError, PoleError
from fracroot.mathcore import as_complex_vector, complex_elementary, cpow, gamma_real, norm2, sinpi

finite = dict(allow_nan=False, allow_infinity=False)


class TestGamma:
    def test_matches_math_gamma_on_grid(self):
        xs = np.concatenate([np.linspace(-29.95, -0.05, 600), np.linspace(0.01, 30, 600)])
        xs = xs[np.abs(xs - np.round(xs)) > 1e-3]
        ref = np.array([math.gamma(x) for x in xs])
        got = gamma_real(xs)
        assert np.max(np.abs(got / ref - 1)) < 1e-13

    def test_half(self):
        assert gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_integers_are_exact_factorials(self):
        for n in range(1, 24):
            assert gamma_real(float(n)) == math.factorial(n - 1)

    def test_recurrence(self, rng):
        x = rng.uniform(0.1, 20, 1000)
        assert np.max(np.abs(gamma_real(x + 1) / (x * gamma_real(x)) - 1)) <= 1e-10

    def test_reflection(self, rng):
        x = rng.uniform(-5, 5, 1000)
        x = x[np.abs(x - np.round(x)) > 1e-6]
        lhs = gamma_real(x) * gamma_real(1 - x)
        rhs = math.pi / np.sin(math.pi * x)
        assert np.max(np.abs(lhs / rhs - 1)) <= 1e-9

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0, -3.0 + 1e-13])
    def test_poles_raise(self, x):
        with pytest.raises(PoleError):
            gamma_real(x)

    def test_pole_error_is_value_error(self):
        with pytest.raises(ValueError):
            gamma_real(np.array([1.5, -4.0]))

    def test_near_pole_but_outside_tolerance(self):
        x = -2.0 + 1e-9
        assert gamma_real(x) == pytest.approx(math.gamma(x), rel=1e-6)

    def test_scalar_in_scalar_out(self):
        assert isinstance(gamma_real(2.5), float)
        assert gamma_real(np.array([2.5, 3.5])).shape == (2,)

    def test_nan_propagates(self):
        assert math.isnan(gamma_real(float("nan")))

    @given(st.floats(0.05, 25, **finite))
    def test_positive_arguments(self, x):
        assert gamma_real(x) == pytest.approx(math.gamma(x), rel=1e-13)


def test_sinpi_exact_zeros():
    assert np.all(sinpi(np.arange(-6.0, 7.0)) == 0)
    assert sinpi(0.5) == 1.0
    assert sinpi(-0.5) == -1.0
    assert sinpi(1.25) == pytest.approx(math.sin(1.25 * math.pi), abs=1e-15)


class TestCpow:
    def test_principal_branch_negative_real(self):
        z = cpow(-1.0, 0.5)
        assert z == pytest.approx(1j, abs=1e-15)

    def test_negative_real_with_negative_zero_imag_uses_pi(self):
        z = cpow(complex(-1.0, -0.0), 0.5)
        assert z.imag > 0

    def test_negative_power_of_minus_one_is_in_lower_half_plane(self):
        assert cpow(-1.0, -0.3).imag < 0

    def test_zero_base(self):
        assert cpow(0.0, 0.0) == 1
        assert cpow(0.0, 1.5) == 0
        with pytest.raises(DomainError):
            cpow(0.0, -0.5)

    def test_matches_cmath(self, rng):
        z = rng.normal(size=50) + 1j * rng.normal(size=50)
        w = rng.uniform(-2, 2, 50)
        ref = np.array([cmath.exp(wk * cmath.log(zk)) for zk, wk in zip(z, w)])
        assert np.allclose(cpow(z, w), ref, rtol=1e-13, atol=0)

    @given(
        st.floats(0.01, 100, **finite),
        st.floats(-1.5, 1.5, **finite),
        st.floats(-2, 2, **finite),
        st.floats(-2, 2, **finite),
    )
    def test_exponent_addition_right_half_plane(self, re, im, a, b):
        z = complex(re, im)
        lhs = cpow(z, a) * cpow(z, b)
        rhs = cpow(z, a + b)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))

    @given(st.floats(1e-3, 1e3, **finite), st.floats(-3, 3, **finite))
    def test_real_positive_base_gives_real(self, x, w):
        z = cpow(x, w)
        assert z.imag == 0
        assert z.real == pytest.approx(math.exp(w * math.log(x)), rel=1e-12)


class TestNorm2:
    def test_complex_modulus(self):
        assert norm2(np.array([3 + 4j, 0])) == pytest.approx(5.0)

    def test_axis(self):
        v = np.array([[3.0, 4.0], [6.0, 8.0]])
        assert np.allclose(norm2(v, axis=1), [5, 10])

    def test_overflow_is_quiet(self):
        with np.errstate(all="raise"):
            assert norm2(np.array([1e300, 1e300])) == math.inf

    @settings(max_examples=200)
    @given(
        st.lists(st.complex_numbers(max_magnitude=1e6, **finite), min_size=3, max_size=3),
        st.lists(st.complex_numbers(max_magnitude=1e6, **finite), min_size=3, max_size=3),
    )
    def test_triangle_inequality(self, u, v):
        u, v = np.array(u), np.array(v)
        assert norm2(u + v) <= norm2(u) + norm2(v) + 1e-9 * (norm2(u) + norm2(v))


def test_as_complex_vector():
    v = as_complex_vector([1, 2])
    assert v.dtype == np.complex128 and v.shape == (2,)
    assert as_complex_vector(3.0).shape == (1,)
    with pytest.raises(ValueError):
        as_complex_vector([[1, 2]])
    with pytest.raises(ValueError):
        as_complex_vector([])


@pytest.mark.parametrize("name", ["sin", "cos", "exp", "sinh", "cosh"])
def test_complex_elementary(name):
    z = 0.3 - 1.2j
    assert complex_elementary(name, z) == pytest.approx(getattr(cmath, name)(z), rel=1e-14)


def test_complex_elementary_unknown():
    with pytest.raises(ValueError):
        complex_elementary("tan", 1.0)
