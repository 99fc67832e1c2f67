"""Fractional chi-mean distribution.

The standardized fractional chi family chi-bar(alpha, k): a two-parameter
sub-family of the generalized stable count, defined for both signs of k.
Positive k behaves like a chi/sqrt(k) generalization; negative k indexes the
characteristic family obtained by reflection.  This is the mixing law behind
every two-sided distribution in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DeltaRegime, DomainError, InvalidParams, MomentUndefined, PoleInNumerator
from .gsc import (
    GscParams,
    asymp_decay_const,
    asymp_prefactor,
    gsc_log_pdf,
    gsc_norm_const,
    gsc_pdf,
)
from .special import (
    DEFAULT_POLICY,
    SeriesPolicy,
    _is_gamma_pole,
    gamma_ratio_limit0,
    gamma_ratio_log,
    gamma_ratio_safe,
)


@dataclass(frozen=True)
class FcmShape:
    alpha: float
    k: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise InvalidParams(f"alpha must be in (0, 2], got {self.alpha}")
        if self.k == 0 or not np.isfinite(self.k):
            raise InvalidParams("k must be nonzero and finite")
        # 0 < k < 1 only normalizes when the small-x exponent k + alpha - 2
        # stays integrable
        if 0 < self.k < 1 and self.k + self.alpha <= 1.0:
            raise InvalidParams(
                f"(alpha={self.alpha}, k={self.k}) has a non-integrable origin"
            )


def sigma_scale(shape: FcmShape) -> float:
    """Standardization scale |k|^(1/2 - 1/alpha) / sqrt(2)."""
    return abs(shape.k) ** (0.5 - 1.0 / shape.alpha) / math.sqrt(2.0)


def fcm_gsc_params(shape: FcmShape) -> GscParams:
    """The generalized-stable-count parameters behind chi-bar(alpha, k).

    Single union mapping for both signs: sigma^sign(k), d = k - step(k),
    p = sign(k) alpha, with the Wright index alpha/2.
    """
    sgn = 1.0 if shape.k > 0 else -1.0
    h = 1.0 if shape.k > 0 else 0.0
    sigma = sigma_scale(shape) ** sgn
    return GscParams(alpha=shape.alpha / 2.0, sigma=sigma, d=shape.k - h, p=sgn * shape.alpha)


def fcm_pdf(shape: FcmShape, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Density of chi-bar(alpha, k) for x >= 0; alpha = 2 is a point mass."""
    if shape.alpha == 2.0:
        raise DeltaRegime(sigma_scale(shape) ** (1.0 if shape.k > 0 else -1.0))
    return gsc_pdf(fcm_gsc_params(shape), x, policy)


def fcm_log_pdf(shape: FcmShape, x, policy: SeriesPolicy = DEFAULT_POLICY):
    if shape.alpha == 2.0:
        raise DeltaRegime(sigma_scale(shape) ** (1.0 if shape.k > 0 else -1.0))
    return gsc_log_pdf(fcm_gsc_params(shape), x, policy)


def fcm_moment(shape: FcmShape, n: float) -> float:
    """E(X^n | chi-bar); n may be any real where the closed form exists.

    Positive k: sigma^n [G((k-1)/2)/G((k-1)/a)] [G((n+k-1)/a)/G((n+k-1)/2)]
    with scaled-pair limits at k = 1 and n + k = 1.  Negative k: the
    reflected form; moments stop existing at n >= |k| + alpha.
    """
    alpha, k = shape.alpha, shape.k
    if n == 0:
        return 1.0
    sig = sigma_scale(shape)
    if alpha == 2.0:
        return sig ** (n if k > 0 else -n)
    try:
        if k > 0:
            if k == 1.0:
                l1, s1 = math.log(gamma_ratio_limit0(0.5, 1.0 / alpha)), 1.0  # -> 2/alpha
            else:
                l1, s1 = gamma_ratio_log((k - 1.0) / 2.0, (k - 1.0) / alpha)
            if n + k == 1.0:
                l2, s2 = math.log(gamma_ratio_limit0(1.0 / alpha, 0.5)), 1.0  # -> alpha/2
            else:
                l2, s2 = gamma_ratio_log((n + k - 1.0) / alpha, (n + k - 1.0) / 2.0)
            if s1 == 0.0 or s2 == 0.0:
                return 0.0  # denominator pole: the continuation vanishes
            return s1 * s2 * math.exp(n * math.log(sig) + l1 + l2)
        kk = -k
        if n >= kk + alpha:
            raise MomentUndefined(
                f"moment n={n} does not exist for k={k} (tail index {kk + alpha})"
            )
        l1, s1 = gamma_ratio_log(kk / 2.0, kk / alpha)
        if n == kk:
            l2, s2 = math.log(gamma_ratio_limit0(1.0 / alpha, 0.5)), 1.0
        else:
            l2, s2 = gamma_ratio_log((kk - n) / alpha, (kk - n) / 2.0)
        if s1 == 0.0 or s2 == 0.0:
            return 0.0
        return s1 * s2 * math.exp(-n * math.log(sig) + l1 + l2)
    except PoleInNumerator as exc:
        raise MomentUndefined(f"non-removable pole at n={n}, k={k}: {exc}") from exc


def fcm_mean(shape: FcmShape) -> float:
    return fcm_moment(shape, 1.0)


def fcm_mean_limit(alpha: float) -> float:
    """Asymptotic mean alpha^(-1/alpha) of chi-bar(alpha, k) as k -> infinity."""
    if not (0.0 < alpha <= 2.0):
        raise DomainError(f"alpha must be in (0, 2], got {alpha}")
    return alpha ** (-1.0 / alpha)


def inverse_distribution(pdf, x: float) -> float:
    """Density of 1/X given the density of X: x^-2 pdf(1/x)."""
    if x <= 0:
        raise DomainError("inverse distribution defined for x > 0")
    return pdf(1.0 / x) / (x * x)


def fcm_inverse_gsc_params(shape: FcmShape) -> GscParams:
    """GSC parameters of the inverse distribution (d shifted up by one)."""
    alpha, k = shape.alpha, shape.k
    sig = sigma_scale(shape)
    if k > 0:
        return GscParams(alpha=alpha / 2.0, sigma=1.0 / sig, d=-(k - 1.0), p=-alpha)
    return GscParams(alpha=alpha / 2.0, sigma=sig, d=-k, p=alpha)


def fcm_inverse_pdf(shape: FcmShape, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Density of 1/X for X ~ chi-bar(alpha, k); for k = -1 this is the
    stable vol distribution."""
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xx <= 0):
        raise DomainError("x must be > 0")
    if shape.alpha == 2.0:
        raise DeltaRegime(sigma_scale(shape) ** (-1.0 if shape.k > 0 else 1.0))
    out = gsc_pdf(fcm_inverse_gsc_params(shape), x, policy)
    return out


def fcm_pdf_asymptotic(shape: FcmShape, x):
    """Large-x tail B'(a/2) C (x/s)^(k + a/(2-a) - 2) exp(-A(a/2)(x/s)^(2a/(2-a))).

    Positive k only; exact at alpha = 1 where the family is chi_k/sqrt(k).
    """
    alpha, k = shape.alpha, shape.k
    if k <= 0:
        raise DomainError("tail asymptotic defined for k > 0")
    half = alpha / 2.0
    a_const = asymp_decay_const(half)
    b_const = asymp_prefactor(half)
    c = gsc_norm_const(fcm_gsc_params(shape))
    sig = sigma_scale(shape)
    xx = np.asarray(x, dtype=float)
    scalar = np.isscalar(x) or getattr(x, "ndim", 1) == 0
    u = np.atleast_1d(xx) / sig
    expo = k + alpha / (2.0 - alpha) - 2.0
    q = 2.0 * alpha / (2.0 - alpha)
    with np.errstate(over="ignore", divide="ignore"):
        out = b_const * c * u ** expo * np.exp(-a_const * u ** q)
    return float(out[0]) if scalar else out


def fcm_small_x_exponent(shape: FcmShape) -> float:
    """Power-law exponent of the density near zero (k + alpha - 2 for k > 0)."""
    if shape.k > 0:
        return shape.k + shape.alpha - 2.0
    return math.inf  # k < 0 density vanishes faster than any power at 0


def fcm_tail_cut(shape: FcmShape, tol: float = 1e-13) -> float:
    """Upper integration limit with tail mass below tol."""
    alpha, k = shape.alpha, shape.k
    if alpha == 2.0:
        return 4.0 * sigma_scale(shape) ** (1.0 if k > 0 else -1.0)
    sig = sigma_scale(shape)
    if k > 0:
        half = alpha / 2.0
        a_const = asymp_decay_const(half)
        q = 2.0 * alpha / (2.0 - alpha)
        expo = max(k + alpha / (2.0 - alpha) - 2.0, 0.0)
        target = -math.log(tol)
        u = (target / a_const) ** (1.0 / q)
        for _ in range(3):
            u = ((target + expo * math.log(max(u, 1.0)) + 3.0) / a_const) ** (1.0 / q)
        return max(1.3 * u * sig, 8.0 * fcm_mean(shape), 2.0)
    # negative k: power tail c x^-(|k| + alpha + 1)
    kk = -k
    mirror = FcmShape(alpha=alpha, k=kk)
    c_norm = gsc_norm_const(fcm_gsc_params(mirror))
    beta = alpha / 2.0
    sig_m = sigma_scale(mirror)
    e_mean = fcm_mean(mirror)
    coef = c_norm * beta * gamma_ratio_safe(1.0, 1.0 - beta) * sig_m ** (2.0 - kk - alpha) / e_mean
    s = (max(coef, 1e-3) / (tol * (kk + alpha))) ** (1.0 / (kk + alpha))
    return max(2.0 * s, 8.0 / e_mean, 2.0)
