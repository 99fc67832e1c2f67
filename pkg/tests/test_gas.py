import logging
import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import norm

from wrightdist.errors import InvalidParams, PositivityViolation
from wrightdist.fcm import FcmShape
from wrightdist.gas import OscQuadSpec, SkewShape, gas_pdf, gas_symmetry_check, skew_kernel
from wrightdist.gsas import gsas_pdf
from wrightdist.quadrature import QuadSpec

SPEC = QuadSpec(rel_tol=1e-9, abs_tol=1e-12)


def stable_pdf_by_cf_inversion(x, alpha, theta):
    """Independent oracle: Fourier inversion of the skew-stable CF with the
    trigonometric-angle skewness, via QUADPACK Fourier weights."""
    big_t = theta * math.pi / 2
    amp_c = lambda z: np.exp(-math.cos(big_t) * z ** alpha) * np.cos(math.sin(big_t) * z ** alpha)
    amp_s = lambda z: np.exp(-math.cos(big_t) * z ** alpha) * np.sin(math.sin(big_t) * z ** alpha)
    if x == 0:
        v, _ = quad(amp_c, 0, np.inf, limit=400)
        return v / math.pi
    ic, _ = quad(amp_c, 0, np.inf, weight="cos", wvar=abs(x), limit=400)
    isn, _ = quad(amp_s, 0, np.inf, weight="sin", wvar=abs(x), limit=400)
    return (ic - math.copysign(1.0, x) * isn) / math.pi


class TestShape:
    def test_derived_quantities(self):
        sh = SkewShape(1.2, 1.0, 0.3)
        assert sh.q == pytest.approx(math.cos(0.15 * math.pi) ** (1 / 1.2))
        assert sh.tau == pytest.approx(math.tan(0.15 * math.pi))

    def test_diamond_bound(self):
        with pytest.raises(InvalidParams):
            SkewShape(0.5, 1.0, 0.6)
        with pytest.raises(InvalidParams):
            SkewShape(1.7, 1.0, 0.4)

    def test_theta_one_excluded(self):
        with pytest.raises(InvalidParams):
            SkewShape(1.0, 1.0, 1.0)

    def test_skew_needs_positive_k(self):
        with pytest.raises(InvalidParams):
            SkewShape(1.2, -2.0, 0.1)
        SkewShape(1.2, -2.0, 0.0)  # symmetric negative k is fine


class TestKernel:
    def test_theta_zero_is_normal(self):
        sh = SkewShape(1.2, 1.0, 0.0)
        for x, s in ((1.0, 1.0), (0.3, 2.0)):
            assert skew_kernel(sh, x, s) == pytest.approx(norm.pdf(x * s), rel=1e-12)

    def test_s_zero_constant(self):
        sh = SkewShape(1.2, 1.0, 0.3)
        v = 1.0 / (sh.q * math.sqrt(2 * math.pi))
        for x in (-3.0, 0.0, 5.0):
            assert skew_kernel(sh, x, 0.0) == pytest.approx(v, rel=1e-14)

    def test_alpha_one_shifted_normal(self):
        sh = SkewShape(1.0, 1.0, 0.5)
        for x, s in ((1.0, 1.0), (-0.5, 2.0)):
            ref = norm.pdf((sh.tau + x / sh.q) * s) / sh.q
            assert skew_kernel(sh, x, s) == pytest.approx(ref, rel=1e-12)

    def test_brute_force_quadrature_oracle(self):
        sh = SkewShape(1.5, 1.0, 0.3)
        for x in (-1.0, 0.5, 2.0):
            for s in (0.3, 1.0, 2.5):
                def f(t):
                    return math.cos(sh.tau * (s * t) ** sh.alpha + x * s * t / sh.q) \
                        * math.exp(-t * t / 2)
                ref = sum(quad(f, lo, lo + 1, limit=400, epsabs=1e-15)[0]
                          for lo in range(0, 12)) / (sh.q * math.pi)
                assert skew_kernel(sh, x, s) == pytest.approx(ref, abs=2e-7), (x, s)

    def test_bound(self):
        sh = SkewShape(0.8, 1.0, 0.4)
        cap = 1.0 / (sh.q * math.sqrt(2 * math.pi))
        worst = max(abs(skew_kernel(sh, x, s))
                    for x in (-3.0, -1.0, 0.0, 1.0, 3.0) for s in (0.2, 1.0, 3.0))
        assert worst <= cap + 1e-12

    @pytest.mark.parametrize("alpha,theta", [(0.8, 0.4), (1.5, 0.3)])
    @pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
    def test_mass_is_one_over_s(self, alpha, theta, s):
        # integral over the real line; the kernel has power tails in x so the
        # window integral is extrapolated with its known x^-alpha remainder
        from wrightdist.quadrature import adaptive_quad

        sh = SkewShape(alpha, 1.0, theta)

        def f(xs):
            return np.array([skew_kernel(sh, float(x), s) for x in np.atleast_1d(xs)])

        def window_mass(big):
            spec = QuadSpec(rel_tol=1e-8, abs_tol=1e-8)
            left, _ = adaptive_quad(f, -big, 0.0, spec,
                                    breaks=np.linspace(-big, 0, 33))
            right, _ = adaptive_quad(f, 0.0, big, spec,
                                     breaks=np.linspace(0, big, 33))
            return left + right

        # the leading x^-(1+alpha) tails of the two sides cancel in the sum
        # (one is negative), so the window deficit decays like X^(-2 alpha)
        x1, x2 = 60.0 / s, 120.0 / s
        m1, m2 = window_mass(x1), window_mass(x2)
        w1, w2 = x1 ** (-2 * alpha), x2 ** (-2 * alpha)
        extrapolated = (m2 * w1 - m1 * w2) / (w1 - w2)
        assert extrapolated * s == pytest.approx(1.0, abs=1e-4)


class TestGasPdf:
    def test_theta_zero_reduces_exactly(self):
        sh = SkewShape(1.3, 2.0, 0.0)
        x = 0.7
        assert gas_pdf(sh, x, SPEC) == gsas_pdf(FcmShape(1.3, 2.0), x, SPEC)

    def test_stable_oracle_at_k_one(self):
        sh = SkewShape(1.5, 1.0, 0.3)
        for x in (-1.0, 0.0, 1.0):
            ref = stable_pdf_by_cf_inversion(x, 1.5, 0.3)
            assert gas_pdf(sh, x, SPEC) == pytest.approx(ref, abs=1e-4), x

    def test_alpha_one_location_shift(self):
        # theta turns into a pure shift by -sin(theta pi / 2)
        sh = SkewShape(1.0, 1.0, 0.5)
        x0 = -math.sin(0.25 * math.pi)
        for d in (0.3, 0.8):
            assert gas_pdf(sh, x0 + d, SPEC) == pytest.approx(gas_pdf(sh, x0 - d, SPEC),
                                                              abs=1e-10)

    @pytest.mark.parametrize("alpha,k,theta,x", [(1.4, 1.0, 0.2, 1.0),
                                                 (0.9, 2.0, 0.1, 0.5)])
    def test_symmetry_pair(self, alpha, k, theta, x):
        p_neg, p_mirror = gas_symmetry_check(SkewShape(alpha, k, theta), x, SPEC)
        assert abs(p_neg - p_mirror) <= 1e-6

    def test_positivity_monitor(self):
        # far outside the valid skewness range for this many degrees of freedom
        sh = SkewShape(1.5, 15.0, 0.45)
        with pytest.raises(PositivityViolation):
            for x in (-4.0, -2.5, -1.5, 2.0, 3.5):
                gas_pdf(sh, x, SPEC)

    def test_normalization(self):
        # k = 1 keeps the whole diamond positivity-valid (the true stable law);
        # alpha = 1.7 decays fast enough that one power-tail completion term
        # stays inside the 1e-4 budget.  Fixed Gauss panels: the integrand is
        # smooth and ~0.5 s per point, so adaptivity is the wrong trade.
        sh = SkewShape(1.7, 1.0, 0.25)
        loose = QuadSpec(rel_tol=1e-6, abs_tol=1e-8)
        big = 16.0
        gl_x, gl_w = np.polynomial.legendre.leggauss(8)
        edges = np.array([-big, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, big])
        mass = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
            for u, w in zip(gl_x, gl_w):
                mass += half * w * gas_pdf(sh, float(mid + half * u), loose)
        tail_index = sh.alpha + sh.k
        tail = (gas_pdf(sh, -big, loose) + gas_pdf(sh, big, loose)) * big / (tail_index - 1.0)
        assert mass + tail == pytest.approx(1.0, abs=1e-4)

    def test_moderate_k_has_narrow_theta_range(self):
        # even at k = 2 a theta well inside the diamond turns the far left
        # tail negative; the monitor must flag it
        sh = SkewShape(1.3, 2.0, 0.2)
        with pytest.raises(PositivityViolation):
            for x in (-30.0, -40.0):
                gas_pdf(sh, x, SPEC)

    def test_small_alpha_logs_extension(self, caplog):
        sh = SkewShape(0.3, 1.0, 0.15)
        with caplog.at_level(logging.INFO, logger="wrightdist.gas"):
            gas_pdf(sh, 0.5, QuadSpec(rel_tol=1e-6, abs_tol=1e-8))
        assert any("extending s-range" in rec.message for rec in caplog.records)
