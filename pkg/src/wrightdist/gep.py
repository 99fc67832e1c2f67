"""Generalized exponential power distribution.

The negative-k face of the symmetric family, re-exposed with its own positive
k convention: E_(alpha,k) = L_(alpha,-k).  The product (Gaussian-scale
mixture) form is evaluated independently of the ratio form and kept around
for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .errors import InvalidParams, MomentUndefined
from .fcm import FcmShape, fcm_mean, fcm_moment, fcm_pdf, fcm_small_x_exponent, fcm_tail_cut
from .gsas import gsas_cdf, gsas_pdf
from .quadrature import DEFAULT_QUAD, QuadSpec, adaptive_quad, geometric_breaks

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class GepShape:
    alpha: float
    k: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise InvalidParams(f"alpha must be in (0, 2], got {self.alpha}")
        if not (self.k > 0 and np.isfinite(self.k)):
            raise InvalidParams(f"k must be positive, got {self.k}")

    def mixing(self) -> FcmShape:
        return FcmShape(alpha=self.alpha, k=self.k)

    def gsas_shape(self) -> FcmShape:
        return FcmShape(alpha=self.alpha, k=-self.k)


def gep_pdf(shape: GepShape, x, spec: QuadSpec = DEFAULT_QUAD):
    """Density of E_(alpha,k): the ratio-form value L_(alpha,-k)(x)."""
    return gsas_pdf(shape.gsas_shape(), x, spec)


def gep_pdf_product(shape: GepShape, x, spec: QuadSpec = DEFAULT_QUAD):
    """Product-form density (1/E(X|chi-bar)) integral N(x/s) d chi-bar.

    Mathematically identical to gep_pdf; numerically an independent route,
    used to cross-validate the ratio form.
    """
    mix = shape.mixing()
    e1 = fcm_mean(mix)
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.isscalar(x) or getattr(x, "ndim", 1) == 0
    out = np.empty(xx.shape)
    if shape.alpha == 2.0:
        from .fcm import sigma_scale

        c = sigma_scale(mix)
        out[:] = np.exp(-0.5 * (xx / c) ** 2) / (_SQRT_2PI * c)
        return float(out[0]) if scalar else out
    cut = fcm_tail_cut(mix, min(spec.abs_tol, 1e-13))
    gamma0 = fcm_small_x_exponent(mix)
    for i, xi in enumerate(np.abs(xx)):

        def f(s):
            s = np.asarray(s, dtype=float)
            return np.exp(-0.5 * (xi / np.maximum(s, 1e-300)) ** 2) / _SQRT_2PI \
                * fcm_pdf(mix, s)

        val, _ = adaptive_quad(f, 0.0, cut, spec,
                               breaks=geometric_breaks(0.0, cut, 28),
                               power_at_zero=gamma0 if gamma0 < 1 and xi == 0 else None)
        out[i] = val / e1
    return float(out[0]) if scalar else out


def gep_moment(shape: GepShape, n: int) -> float:
    """E(X^n | N) E(X^(n+1) | chi-bar) / E(X | chi-bar) for even n; odd are zero."""
    if n == 0:
        return 1.0
    if float(n).is_integer() and int(n) % 2 == 1:
        return 0.0
    mix = shape.mixing()
    try:
        num = fcm_moment(mix, n + 1.0)
        den = fcm_mean(mix)
    except MomentUndefined:
        raise
    norm_moment = 2.0 ** (n / 2.0) / math.sqrt(math.pi) * math.gamma((n + 1.0) / 2.0)
    return norm_moment * num / den


def gep_exkurt(shape: GepShape) -> float:
    """3 E(X|chi) E(X^5|chi) / E(X^3|chi)^2 - 3."""
    if shape.alpha == 2.0:
        return 0.0
    mix = shape.mixing()
    m1 = fcm_mean(mix)
    m3 = fcm_moment(mix, 3.0)
    m5 = fcm_moment(mix, 5.0)
    return 3.0 * m1 * m5 / (m3 * m3) - 3.0


def gep_cdf(shape: GepShape, x, spec: QuadSpec = DEFAULT_QUAD):
    """CDF 1/2 + (1/(2 E(X|chi))) integral s erf(x/(sqrt2 s)) d chi-bar."""
    return gsas_cdf(shape.gsas_shape(), x, spec)


def gep_peak(shape: GepShape) -> float:
    return 1.0 / (_SQRT_2PI * fcm_mean(shape.mixing()))
