import math

import numpy as np
import pytest
from scipy import special, stats
from scipy.integrate import quad

from wrightdist.errors import DomainError, KurtosisUndefined
from wrightdist.fcm import FcmShape, fcm_mean
from wrightdist.gsas import (
    frac_hypergeom,
    gsas_cdf,
    gsas_cf,
    gsas_kurtosis,
    gsas_moment,
    gsas_pdf,
    gsas_pdf_series_small_x,
    gsas_pdf_series_tail,
    gsas_peak,
    gsas_quantile,
    gsas_std_peak,
    gsas_summary,
)
from wrightdist.quadrature import QuadSpec, adaptive_quad, geometric_breaks

SPEC = QuadSpec(rel_tol=1e-10, abs_tol=1e-14)
TIGHT = QuadSpec(rel_tol=1e-10, abs_tol=1e-16)


def _half_mass_with_tail(shape, n):
    """integral_0^X x^n pdf dx plus the power-tail completion beyond X.

    The density decays like c x^-(alpha+|k|) (Pareto side), so the remainder
    is pdf(X) X^(n+1) / (alpha + |k| - n - 1) up to O(X^-alpha) corrections.
    """
    from wrightdist.gsas import gsas_pdf_grid

    tail_index = shape.alpha + abs(shape.k)
    big = 1e6 if tail_index <= n + 2.5 else 3e3

    def f(x):
        return np.asarray(x) ** n * gsas_pdf_grid(shape, np.asarray(x),
                                                  QuadSpec(rel_tol=1e-10, abs_tol=1e-14))

    val, _ = adaptive_quad(f, 0.0, big, QuadSpec(rel_tol=1e-9, abs_tol=1e-11),
                           breaks=geometric_breaks(0.0, big, 36, grade_from=0.02))
    tail = float(gsas_pdf_grid(shape, np.array([big]))[0]) * big ** (n + 1) \
        / (tail_index - n - 1.0)
    return val + tail


def sas_cosine_oracle(x, alpha):
    """Direct cosine transform of exp(-zeta^alpha), QUADPACK Fourier weights."""
    if x == 0:
        val, _ = quad(lambda z: np.exp(-z ** alpha), 0, np.inf, limit=400)
        return val / math.pi
    val, _ = quad(lambda z: np.exp(-z ** alpha), 0, np.inf,
                  weight="cos", wvar=abs(x), limit=400)
    return val / math.pi


class TestPdf:
    def test_cauchy(self):
        assert gsas_pdf(FcmShape(1, 1), 1.0, SPEC) == pytest.approx(1 / (2 * math.pi),
                                                                    rel=1e-12)

    def test_t3_peak(self):
        assert gsas_pdf(FcmShape(1, 3), 0.0, SPEC) == pytest.approx(stats.t(3).pdf(0),
                                                                    rel=1e-12)

    def test_exponential_power_member(self):
        a = 1.5
        ref = math.exp(-1.0) / (2 * math.gamma(1 / a + 1))
        assert gsas_pdf(FcmShape(a, -1), 1.0, SPEC) == pytest.approx(ref, abs=1e-9)

    @pytest.mark.parametrize("k", [1, 2, 4, 10])
    def test_student_equivalence(self, k):
        xs = np.arange(-8.0, 8.01, 0.25)
        got = gsas_pdf(FcmShape(1.0, float(k)), xs, SPEC)
        assert np.max(np.abs(got - stats.t(k).pdf(xs))) < 1e-7

    @pytest.mark.parametrize("alpha", [0.6, 1.3, 1.7])
    def test_sas_equivalence(self, alpha):
        sh = FcmShape(alpha, 1.0)
        for x in (0.0, 0.5, 1.0, 2.0, 5.0):
            assert gsas_pdf(sh, x, SPEC) == pytest.approx(
                sas_cosine_oracle(x, alpha), abs=1e-5), x

    def test_symmetry_exact(self):
        sh = FcmShape(1.3, 2.0)
        xs = np.array([0.4, 1.1, 2.7])
        assert np.array_equal(gsas_pdf(sh, xs, SPEC), gsas_pdf(sh, -xs, SPEC))

    @pytest.mark.parametrize("alpha", [0.6, 1.0, 1.5])
    @pytest.mark.parametrize("k", [-3.0, -1.0, 1.0, 3.0, 6.0])
    def test_normalization(self, alpha, k):
        sh = FcmShape(alpha, k)
        assert _half_mass_with_tail(sh, 0) == pytest.approx(0.5, abs=1e-6)


class TestPeak:
    def test_stable_peak(self):
        for a in (0.7, 1.0, 1.6):
            assert gsas_peak(FcmShape(a, 1)) == pytest.approx(
                math.gamma(1 + 1 / a) / math.pi, rel=1e-12)

    def test_exponential_power_peak(self):
        for a in (0.7, 1.0, 1.6):
            assert gsas_peak(FcmShape(a, -1)) == pytest.approx(
                1 / (2 * math.gamma(1 + 1 / a)), rel=1e-12)

    def test_alpha_two_peak(self):
        # the mixing law collapses to 1/sqrt(2); the density is normal with
        # variance 2, peak 1/(2 sqrt(pi))
        assert gsas_peak(FcmShape(2.0, 5)) == pytest.approx(1 / (2 * math.sqrt(math.pi)),
                                                            rel=1e-14)


class TestMoments:
    def test_student_variance(self):
        assert gsas_moment(FcmShape(1, 5), 2) == pytest.approx(5 / 3, rel=1e-12)

    def test_variance_limit(self):
        got = gsas_moment(FcmShape(1.5, 1e9), 2)
        assert got == pytest.approx(1.5 ** (4 / 3), rel=1e-6)

    def test_odd_zero(self):
        assert gsas_moment(FcmShape(1.2, 4), 3) == 0.0

    @pytest.mark.parametrize("shape", [FcmShape(1.0, 6.0), FcmShape(1.5, 4.0),
                                       FcmShape(0.8, -2.0)])
    def test_quadrature_consistency(self, shape):
        val = _half_mass_with_tail(shape, 2)
        assert 2 * val == pytest.approx(gsas_moment(shape, 2), rel=1e-4)


class TestKurtosis:
    def test_student_values(self):
        for k in range(6, 13):
            assert gsas_kurtosis(FcmShape(1.0, float(k))) == pytest.approx(
                6.0 / (k - 4.0), abs=1e-10)

    def test_normal_limit(self):
        for k in (5.0, 8.0, 20.0):
            assert gsas_kurtosis(FcmShape(2.0, k)) == 0.0

    @pytest.mark.parametrize("alpha", [0.8, 1.25])
    def test_large_k_linear_law(self, alpha):
        k = 51.0
        ek = gsas_kurtosis(FcmShape(alpha, k))
        lhs = (k - 3.0) / 4.0 * math.log(1.0 + ek / 3.0)
        assert lhs == pytest.approx(1.0 / alpha - 0.5, rel=0.02)

    def test_moment_route_agrees_with_exact_form(self):
        for a, k in ((0.9, 6.0), (1.3, 7.5)):
            sh = FcmShape(a, k)
            m2 = gsas_moment(sh, 2)
            m4 = gsas_moment(sh, 4)
            assert gsas_kurtosis(sh) == pytest.approx(m4 / m2 ** 2 - 3.0, rel=1e-10)


class TestCdf:
    def test_at_zero(self):
        assert gsas_cdf(FcmShape(1.3, 2.0), 0.0, SPEC) == 0.5

    def test_student_betainc(self):
        # regularized incomplete beta form of the t CDF
        for k in (2.0, 3.0, 5.0):
            for x in (0.5, 1.0, 2.0):
                p = k / (x * x + k)
                ref = 1.0 - 0.5 * special.betainc(k / 2.0, 0.5, p)
                assert gsas_cdf(FcmShape(1.0, k), x, SPEC) == pytest.approx(ref, abs=1e-9)

    def test_far_tail(self):
        assert gsas_cdf(FcmShape(1.5, 4.0), 50.0, SPEC) == pytest.approx(1.0, abs=1e-6)

    def test_reflection(self):
        sh = FcmShape(0.9, 3.0)
        for x in (0.3, 1.2):
            assert gsas_cdf(sh, -x, SPEC) == pytest.approx(1.0 - gsas_cdf(sh, x, SPEC),
                                                           abs=1e-12)

    def test_monotone_and_derivative(self):
        sh = FcmShape(1.2, 3.0)
        xs = np.linspace(-4, 4, 33)
        cdf = np.array([gsas_cdf(sh, float(x), SPEC) for x in xs])
        assert np.all(np.diff(cdf) > 0)
        h = 1e-4
        for x in (0.5, 1.5):
            fd = (gsas_cdf(sh, x + h, SPEC) - gsas_cdf(sh, x - h, SPEC)) / (2 * h)
            assert fd == pytest.approx(gsas_pdf(sh, x, SPEC), abs=1e-4)

    def test_negative_k_cdf(self):
        # Laplace member
        assert gsas_cdf(FcmShape(1.0, -1.0), 1.0, SPEC) == pytest.approx(
            1 - math.exp(-1) / 2, abs=1e-9)


class TestCf:
    def test_stable_piece(self):
        assert gsas_cf(FcmShape(1.3, 1.0), 1.0, SPEC) == pytest.approx(math.exp(-1),
                                                                       abs=1e-7)

    def test_origin(self):
        assert gsas_cf(FcmShape(0.9, 2.0), 0.0, SPEC) == 1.0

    def test_bessel_piece(self):
        # CF of Student's t via the modified Bessel function
        k, zeta = 3.0, 1.0
        t = zeta * math.sqrt(k)
        ref = t ** (k / 2) * special.kv(k / 2, t) / (2 ** (k / 2 - 1) * math.gamma(k / 2))
        assert gsas_cf(FcmShape(1.0, k), zeta, SPEC) == pytest.approx(ref, abs=1e-7)

    def test_alpha_two_gaussian(self):
        sh = FcmShape(2.0, 4.0)
        m2 = gsas_moment(sh, 2)
        for z in (0.3, 1.0, 2.0):
            assert gsas_cf(sh, z, SPEC) == pytest.approx(math.exp(-z * z * m2 / 2),
                                                         abs=1e-8)

    def test_requires_positive_k(self):
        with pytest.raises(DomainError):
            gsas_cf(FcmShape(1.0, -2.0), 1.0, SPEC)


class TestSeriesSmallX:
    def test_reproduces_peak(self):
        for a, k in ((1.0, 3.0), (1.4, 2.0), (0.8, 1.0)):
            sh = FcmShape(a, k)
            assert gsas_pdf_series_small_x(sh, 0.0) == pytest.approx(gsas_peak(sh),
                                                                     rel=1e-12)

    def test_matches_quadrature(self):
        sh = FcmShape(1.0, 3.0)
        got = gsas_pdf_series_small_x(sh, 0.5)
        assert got == pytest.approx(gsas_pdf(sh, 0.5, TIGHT), abs=1e-6)

    def test_alpha_two_collapses_to_normal(self):
        sh = FcmShape(2.0, 5.0)
        for x in (0.0, 0.7, 1.5):
            ref = (1 / math.sqrt(2)) * stats.norm.pdf(x / math.sqrt(2))
            assert gsas_pdf_series_small_x(sh, x) == pytest.approx(ref, rel=1e-10)


class TestSeriesTail:
    def test_k_one_nolan_coefficient(self):
        # leading coefficient alpha c_alpha with c_alpha = Gamma(a) sin(a pi/2)/pi;
        # the remainder of the tail series is O(x^-alpha)
        a = 0.7
        c = math.gamma(a) * math.sin(a * math.pi / 2) / math.pi
        x = 5e3
        got = gsas_pdf_series_tail(FcmShape(a, 1.0), x)
        assert got == pytest.approx(a * c * x ** (-1 - a), rel=1e-2)
        ratios = [gsas_pdf_series_tail(FcmShape(a, 1.0), xx) / (a * c * xx ** (-1 - a))
                  for xx in (50.0, 5e2, 5e3)]
        assert abs(ratios[0] - 1) > abs(ratios[1] - 1) > abs(ratios[2] - 1)
        assert a * c == pytest.approx(0.2577046512307784, rel=1e-12)

    def test_log_slope(self):
        a, k = 0.8, 3.0
        sh = FcmShape(a, k)
        p1 = gsas_pdf(sh, 50.0, TIGHT)
        p2 = gsas_pdf(sh, 100.0, TIGHT)
        slope = math.log(p2 / p1) / math.log(2.0)
        assert slope == pytest.approx(-(a + k), rel=0.02)

    def test_agreement_with_quadrature(self):
        sh = FcmShape(0.6, 2.0)
        got = gsas_pdf_series_tail(sh, 20.0)
        ref = gsas_pdf(sh, 20.0, TIGHT)
        assert got == pytest.approx(ref, rel=1e-4)


class TestFracHypergeom:
    def test_cdf_identity(self):
        a, k, x = 1.4, 3.0, 1.0
        sh = FcmShape(a, k)
        val = 0.5 + (x / math.sqrt(k)) * frac_hypergeom(sh, 0.5, 1.5, -x * x / k, SPEC)
        assert val == pytest.approx(gsas_cdf(sh, x, SPEC), abs=1e-7)

    def test_gauss_hypergeometric_reduction(self):
        k, b, c, x = 3.0, 0.5, 1.5, -0.25
        got = frac_hypergeom(FcmShape(1.0, k), b, c, x, SPEC) * special.beta(k / 2, 0.5)
        assert got == pytest.approx(special.hyp2f1(b, (k + 1) / 2, c, x), abs=1e-8)

    def test_at_zero(self):
        sh = FcmShape(1.2, 2.0)
        ref = math.sqrt(sh.k / (2 * math.pi)) * fcm_mean(sh)
        assert frac_hypergeom(sh, 0.5, 1.5, 0.0, SPEC) == pytest.approx(ref, rel=1e-9)


def test_std_peak_and_summary():
    sh = FcmShape(1.0, 7.0)
    s = gsas_summary(sh)
    assert s.std_peak == pytest.approx(gsas_peak(sh) * math.sqrt(7.0 / 5.0), rel=1e-10)
    assert s.exkurt == pytest.approx(2.0, abs=1e-12)
    assert gsas_std_peak(FcmShape(1.0, 2.5)) > 0


def test_quantile_bisection():
    sh = FcmShape(1.0, 5.0)
    for p in (0.25, 0.5, 0.9):
        q = gsas_quantile(sh, p, SPEC)
        assert q == pytest.approx(stats.t(5).ppf(p), abs=1e-6)
