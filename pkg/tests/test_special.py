import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from wrightdist.errors import DomainError, PoleInNumerator
from wrightdist.special import (
    SeriesPolicy,
    Wright4Args,
    f_wright,
    gamma_ratio_limit0,
    gamma_ratio_safe,
    m_wright,
    m_wright_asymptotic,
    m_wright_deriv,
    q_ratio,
    wright4,
    wright_moment,
    wright_series,
)

# frozen mpmath sine-series values (80 digits, 4000 terms)
M_WRIGHT_ORACLE = {
    (0.25, 0.7): 0.487011711735683866,
    (0.4, 2.0): 0.185582274510109151,
    (0.65, 1.3): 0.469763182955433263,
    (0.85, 0.9): 0.692861724580843623,
    (0.3, 6.0): 0.00178589192844477669,
}


class TestGammaRatio:
    def test_identity(self):
        assert gamma_ratio_safe(1.0, 1.0) == 1.0

    def test_product_recurrence_oracle(self):
        # Gamma(7.5)/Gamma(3.5) by climbing the recurrence
        expected = 6.5 * 5.5 * 4.5 * 3.5
        assert gamma_ratio_safe(7.5, 3.5) == pytest.approx(expected, rel=1e-9)

    def test_scaled_zero_limit(self):
        assert gamma_ratio_limit0(2.0, 3.0) == pytest.approx(1.5)

    def test_denominator_pole_is_zero(self):
        assert gamma_ratio_safe(2.5, -1.0) == 0.0

    def test_numerator_pole_raises(self):
        with pytest.raises(PoleInNumerator):
            gamma_ratio_safe(-2.0, 1.5)

    def test_negative_argument_sign(self):
        # Gamma(-0.5) = -2 sqrt(pi)
        assert gamma_ratio_safe(-0.5, 0.5) == pytest.approx(-2.0, rel=1e-12)


class TestMWright:
    def test_exponential_limit(self):
        assert m_wright(0.0, 1.0) == pytest.approx(math.exp(-1.0), abs=1e-15)

    def test_half_closed_form(self):
        assert m_wright(0.5, 1.0) == pytest.approx(math.exp(-0.25) / math.sqrt(math.pi),
                                                   rel=1e-14)

    def test_against_frozen_oracle(self):
        for (a, z), ref in M_WRIGHT_ORACLE.items():
            assert m_wright(a, z) == pytest.approx(ref, rel=2e-11), (a, z)

    def test_second_moment_half(self):
        # integral z^2 M_{1/2}(z) dz = Gamma(3)/Gamma(2) = 2
        val, _ = quad(lambda z: z * z * m_wright(0.5, z), 0, 30, limit=200)
        assert val == pytest.approx(2.0, rel=1e-9)

    @pytest.mark.parametrize("alpha", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_normalization(self, alpha):
        # upper limit from the stretched-exponential tail: B (alpha z)^p ~ 16
        p = 1.0 / (1.0 - alpha)
        b = (1.0 - alpha) / alpha
        zmax = (16.0 / b) ** (1.0 / p) / alpha
        zs = np.linspace(0, zmax, 4001)
        total = np.trapezoid(m_wright(alpha, zs), zs)
        assert total == pytest.approx(1.0, abs=1e-4)

    def test_rejects_bad_alpha(self):
        with pytest.raises(DomainError):
            m_wright(1.0, 1.0)
        with pytest.raises(DomainError):
            m_wright(0.5, -1.0)

    def test_asymptotic_exact_at_half(self):
        for z in (3.0, 6.0, 10.0):
            assert m_wright_asymptotic(0.5, z) == pytest.approx(m_wright(0.5, z), rel=1e-12)


class TestFWright:
    def test_half_closed_form(self):
        # F_{1/2}(2) = (1/2) * 2 * M_{1/2}(2) = e^{-1}/sqrt(pi)
        assert f_wright(0.5, 2.0) == pytest.approx(math.exp(-1.0) / math.sqrt(math.pi),
                                                   rel=1e-13)

    def test_zero(self):
        assert f_wright(0.7, 0.0) == 0.0

    def test_against_direct_series(self):
        # term-by-term W_{-0.7, 0}(-1) with 200 terms
        ref = wright_series(-0.7, 0.0, -1.0, SeriesPolicy(max_terms=200))
        assert f_wright(0.7, 1.0) == pytest.approx(ref, rel=1e-10)

    def test_fm_consistency(self):
        # float64 summation of the raw W series cancels badly at large z, so
        # the independent oracle runs in extended precision with the digit
        # count scaled to the largest term; combos whose term count explodes
        # (large alpha with large z) are outside any direct-series oracle
        mp = pytest.importorskip("mpmath")
        from scipy.special import gammaln as _lg

        def w_direct(alpha, z):
            ns = np.arange(1, 6001, dtype=float)
            log_t = ns * math.log(z) + _lg(alpha * ns) - _lg(ns + 1)
            n_need = int(np.argmax(log_t)) * 3 + 80
            if n_need > 6000:
                return None
            dps = int(60 + max(log_t.max(), 0.0) / math.log(10) * 1.1)
            with mp.workdps(dps):
                a_, z_ = mp.mpf(alpha), mp.mpf(z)
                total = mp.mpf(0)
                for n in range(n_need):
                    total += (-z_) ** n / mp.gamma(n + 1) * mp.rgamma(-a_ * n)
                return float(total)

        for alpha in (0.1, 0.3, 0.5, 0.7, 0.9):
            for z in (0.3, 1.0, 3.0, 10.0):
                direct = w_direct(alpha, z)
                if direct is None or abs(direct) < 1e-280:
                    continue
                assert f_wright(alpha, z) == pytest.approx(direct, rel=1e-9), (alpha, z)


class TestMWrightDeriv:
    def test_at_zero(self):
        # -Gamma(2a) sin(2a pi)/pi at a = 1/4 is -1/sqrt(pi)
        assert m_wright_deriv(0.25, 0.0) == pytest.approx(-1.0 / math.sqrt(math.pi),
                                                          rel=1e-13)

    def test_half_closed_form(self):
        ref = -math.exp(-0.25) / (2.0 * math.sqrt(math.pi))
        assert m_wright_deriv(0.5, 1.0) == pytest.approx(ref, rel=1e-13)

    def test_finite_difference(self):
        h = 1e-6
        fd = (m_wright(0.7, 0.5 + h) - m_wright(0.7, 0.5 - h)) / (2 * h)
        assert m_wright_deriv(0.7, 0.5) == pytest.approx(fd, rel=1e-6)


class TestQRatio:
    def test_half_alpha_polynomial(self):
        # plugging the alpha = 1/2 closed form into the ratio formula gives
        # 3/2 - z^2/4 (consistent with the square-root-process drifts)
        for z in np.linspace(0.0, 3.0, 13):
            assert q_ratio(0.5, z) == pytest.approx(1.5 - z * z / 4.0, abs=1e-9)

    def test_at_zero(self):
        assert q_ratio(0.5, 0.0) == pytest.approx(1.5)

    def test_series_oracle(self):
        # direct ratio of the two Wright series
        num = wright_series(-0.3, -1.0, -0.8)
        den = wright_series(-0.3, 0.0, -0.8)
        assert q_ratio(0.3, 0.8) == pytest.approx(-num / den, rel=1e-8)


class TestWright4:
    def test_at_zero(self):
        args = Wright4Args(a=0.8, b=1.7, lam=0.3, mu=0.9, z=0.0)
        assert wright4(args) == pytest.approx(gamma_ratio_safe(1.7, 0.9), rel=1e-14)

    def test_exponential_collapse(self):
        args = Wright4Args(a=0.37, b=0.91, lam=0.37, mu=0.91, z=1.3)
        assert wright4(args) == pytest.approx(math.exp(1.3), rel=1e-12)

    def test_tail_coefficient_reflection_oracle(self):
        # n = 1 coefficient of the 1/x tail series at alpha = 0.6, k = 1:
        # Gamma(0.3 + 0.5) / (Gamma(2) Gamma(-0.3)), via log-gamma reflection
        refl = math.pi / (math.sin(-0.3 * math.pi) * math.gamma(1.3))  # Gamma(-0.3)
        expected = math.gamma(0.8) / (math.gamma(2.0) * refl)
        got = gamma_ratio_safe(0.8, 2.0) * gamma_ratio_safe(1.0, -0.3)
        assert got == pytest.approx(expected, rel=1e-10)


class TestWrightMoment:
    def test_paper_value(self):
        # lambda = 1/2, delta = 0, d = 1: Gamma(1)/Gamma(1/2)
        assert wright_moment(0.5, 0.0, 1.0) == pytest.approx(1.0 / math.sqrt(math.pi),
                                                             rel=1e-14)

    def test_degenerate_delta(self):
        assert wright_moment(0.0, 1.0, 1.0) == pytest.approx(1.0)

    def test_loggamma_oracle(self):
        assert wright_moment(0.25, 0.75, 2.0) == pytest.approx(1.10326265132083723,
                                                               rel=1e-12)


class TestInvariants:
    # ranges where all three series members converge inside the term budget
    @given(lam=st.floats(-0.75, 0.9), mu=st.floats(0.3, 2.0), z=st.floats(-2.5, 2.5))
    @settings(max_examples=60, deadline=None)
    def test_recurrence(self, lam, mu, z):
        policy = SeriesPolicy(max_terms=2000)
        lhs = lam * z * wright_series(lam, lam + mu, z, policy)
        rhs = wright_series(lam, mu - 1.0, z, policy) \
            + (1.0 - mu) * wright_series(lam, mu, z, policy)
        assert abs(lhs - rhs) < 1e-9

    @given(lam=st.floats(-0.7, 0.8), mu=st.floats(0.3, 1.8), z=st.floats(-2.0, 2.0))
    @settings(max_examples=40, deadline=None)
    def test_derivative_identity(self, lam, mu, z):
        policy = SeriesPolicy(max_terms=2000)
        h = 1e-6
        fd = (wright_series(lam, mu, z + h, policy)
              - wright_series(lam, mu, z - h, policy)) / (2 * h)
        assert abs(fd - wright_series(lam, lam + mu, z, policy)) < 1e-7


def test_series_policy_validation():
    from wrightdist.errors import InvalidParams

    with pytest.raises(InvalidParams):
        SeriesPolicy(rel_tol=0.0)
    with pytest.raises(InvalidParams):
        SeriesPolicy(max_terms=5)
