import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracroot.errors import DomainError
from fracroot.fracderiv import (
    ALPHA_MARGIN,
    FracOrder,
    beta_switch,
    diag_entries,
    pseudo_jacobian_diag,
    rl_deriv_const,
    rl_deriv_monomial,
)


class TestFracOrder:
    @pytest.mark.parametrize("a", [0.5, 1.5, 0.0002, 1.9998, 0.99989])
    def test_valid(self, a):
        assert FracOrder(a).alpha == a

    @pytest.mark.parametrize("a", [0.0, 1.0, 2.0, 1.00005, -0.1, 2.1, float("nan")])
    def test_invalid(self, a):
        with pytest.raises(ValueError):
            FracOrder(a)

    def test_custom_margin(self):
        FracOrder(1.00005, margin=1e-5)
        with pytest.raises(ValueError):
            FracOrder(1.05, margin=0.1)

    def test_coerce_and_float(self):
        o = FracOrder(0.7)
        assert FracOrder.coerce(o) is o
        assert float(FracOrder.coerce(0.7)) == 0.7


class TestMonomial:
    def test_half_derivative_of_x(self):
        # d^{1/2} x = 2 sqrt(x / pi)
        x = 2.0
        assert rl_deriv_monomial(1, 0.5, x) == pytest.approx(2 * math.sqrt(x / math.pi), rel=1e-14)

    @pytest.mark.parametrize("mu", [1, 2, 3])
    @pytest.mark.parametrize("x", [0.5, 2.0])
    @pytest.mark.parametrize("n", [1, 2])
    def test_integer_limit(self, mu, x, n):
        classical = math.factorial(mu) / math.factorial(mu - n) * x ** (mu - n) if mu >= n else 0.0
        for sign in (+1, -1):
            got = rl_deriv_monomial(mu, n + sign * 1e-9, x)
            assert abs(got.imag) < 1e-12
            assert got.real == pytest.approx(classical, rel=1e-6, abs=1e-6)

    def test_negative_x_is_complex(self):
        val = rl_deriv_monomial(2, 0.5, -1.0)
        ref = math.gamma(3) / math.gamma(2.5) * complex(-1) ** 1.5
        assert val == pytest.approx(ref, rel=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            rl_deriv_monomial(-1.5, 0.5, 1.0)
        with pytest.raises(DomainError):
            rl_deriv_monomial(0.2, 0.5, 0.0)
        assert rl_deriv_monomial(2, 0.5, 0.0) == 0


class TestConst:
    def test_matches_monomial_with_mu_zero(self):
        assert rl_deriv_const(1.0, 0.3, 1.7) == pytest.approx(rl_deriv_monomial(0, 0.3, 1.7), rel=1e-14)

    def test_linear_in_c(self):
        assert rl_deriv_const(3.0, 0.4, 2.0) == pytest.approx(3 * rl_deriv_const(1.0, 0.4, 2.0))

    @pytest.mark.parametrize("alpha", [1 - 1e-6, 1 + 1e-6])
    def test_continuity_at_one(self, alpha):
        assert abs(rl_deriv_const(1.0, alpha, 1.0)) < 1e-5

    def test_approaches_zero(self):
        vals = [abs(rl_deriv_const(1.0, 1 - 10.0**-k, 1.0)) for k in range(1, 8)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_exact_one(self):
        assert rl_deriv_const(5.0, 1.0, 0.0) == 0

    def test_singular_at_zero(self):
        with pytest.raises(DomainError):
            rl_deriv_const(1.0, 0.5, 0.0)


class TestPseudoJacobian:
    def test_beta_switch(self):
        assert beta_switch(0.7, 0j) == 1.0
        assert beta_switch(0.7, 1e-300) == 0.7
        assert beta_switch(FracOrder(1.3), 2.0) == 1.3

    def test_zero_component_gives_epsilon_exactly(self):
        P = pseudo_jacobian_diag([0.0, 1.0, -0.0], 0.8, 1e-3)
        assert P.entries[0] == 1e-3
        assert P.entries[2] == 1e-3
        assert P.entries[1] != 1e-3

    def test_entries_formula(self):
        x = np.array([2.0, -1.5 + 0.5j])
        eps = 1e-3
        P = pseudo_jacobian_diag(x, 0.6, eps)
        ref = [rl_deriv_const(1.0, 0.6, xk) + eps for xk in x]
        assert np.allclose(P.entries, ref, rtol=1e-14)
        assert P.epsilon == eps and P.alpha.alpha == 0.6

    @given(
        st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=6),
        st.floats(0.01, 1.99).filter(lambda a: abs(a - 1) > ALPHA_MARGIN),
    )
    def test_real_positive_input_gives_real_entries(self, xs, alpha):
        P = pseudo_jacobian_diag(xs, alpha, 1e-3)
        assert np.all(P.entries.imag == 0)

    def test_epsilon_validation(self):
        for eps in (0.0, 1.0, -1e-3):
            with pytest.raises(ValueError):
                pseudo_jacobian_diag([1.0], 0.5, eps)

    def test_batched_orders(self):
        x = np.array([[1.0, 2.0], [3.0, 0.0]])
        alphas = np.array([[0.3], [1.4]])
        out = diag_entries(x, alphas, 1e-4)
        for i in range(2):
            assert np.array_equal(out[i], pseudo_jacobian_diag(x[i], alphas[i, 0], 1e-4).entries)
