"""Generalized stable count distribution.

One-sided four-parameter family C (x/sigma)^(d-1) F_alpha((x/sigma)^p): the
Wright-function extension of the generalized gamma.  alpha = 0 is defined as
the generalized gamma limit; alpha = 1 degenerates to a point mass at sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import AsymptoticInvalid, DeltaRegime, DomainError, InvalidParams, MomentUndefined
from .special import (
    DEFAULT_POLICY,
    SeriesPolicy,
    _is_gamma_pole,
    gamma_ratio_limit0,
    gamma_ratio_log,
    gamma_ratio_safe,
    log_m_wright,
    m_wright,
)

# alpha below GG_FULL evaluates on the generalized-gamma limit branch; the
# exact Wright branch takes over above GG_NONE, linear blend in between
_GG_FULL = 0.02
_GG_NONE = 0.05


@dataclass(frozen=True)
class GscParams:
    alpha: float
    sigma: float
    d: float
    p: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0):
            raise InvalidParams(f"alpha must be in [0, 1], got {self.alpha}")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise InvalidParams(f"sigma must be finite and positive, got {self.sigma}")
        if self.p == 0 or not np.isfinite(self.p) or not np.isfinite(self.d):
            raise InvalidParams("p must be nonzero and d, p finite")
        # d p >= 0 is the normal regime; a slightly negative d/p (> -1) still
        # normalizes because F_alpha(z) ~ z near zero, and the fractional
        # chi-mean needs it for 0 < k < 1
        if self.d * self.p < 0 and self.d / self.p <= -1.0:
            raise InvalidParams(
                f"d/p = {self.d / self.p:.4g} <= -1 is not normalizable"
            )


@dataclass(frozen=True)
class GgParams:
    a: float
    d: float
    p: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and self.a > 0):
            raise InvalidParams(f"scale must be positive, got {self.a}")
        if self.p == 0 or self.d / self.p <= 0:
            raise InvalidParams("need p != 0 and d/p > 0 for a normalizable GG")


def gg_pdf(params: GgParams, x):
    """Generalized gamma density |p|/(a Gamma(d/p)) (x/a)^(d-1) exp(-(x/a)^p)."""
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xx < 0):
        raise DomainError("x must be >= 0")
    scalar = np.isscalar(x) or getattr(x, "ndim", 1) == 0
    a, d, p = params.a, params.d, params.p
    log_norm = math.log(abs(p) / a) - gammaln(d / p)
    out = np.zeros_like(xx)
    pos = xx > 0
    u = xx[pos] / a
    with np.errstate(over="ignore"):
        out[pos] = np.exp(log_norm + (d - 1) * np.log(u) - u ** p)
    if np.any(~pos):
        if d > 1:
            out[~pos] = 0.0
        elif d == 1:
            out[~pos] = math.exp(log_norm)
        else:
            out[~pos] = np.inf
    return float(out[0]) if scalar else out


def gsc_norm_const(params: GscParams) -> float:
    """Normalization C; requires alpha > 0 (alpha = 0 lives on the GG branch)."""
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p
    if alpha == 0:
        raise InvalidParams("no separate constant at alpha = 0; use the GG form")
    if d == 0:
        return abs(p) / (sigma * alpha)
    try:
        ratio = gamma_ratio_safe(alpha * d / p, d / p)
    except Exception as exc:
        raise InvalidParams(f"gamma pole in normalization: {exc}") from exc
    if ratio == 0.0:
        raise InvalidParams("normalization constant degenerates (denominator pole)")
    return abs(p) / sigma * ratio


def _gg_limit_params(params: GscParams) -> GgParams:
    # alpha -> 0 limit: GSC(alpha; sigma, d, p) -> GG(sigma, d + p, p)
    return GgParams(a=params.sigma, d=params.d + params.p, p=params.p)


def gsc_log_pdf(params: GscParams, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """log of gsc_pdf, stable for large degrees of freedom; -inf where pdf = 0."""
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p
    if alpha == 1.0:
        raise DeltaRegime(sigma)
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xx < 0):
        raise DomainError("x must be >= 0")
    scalar = np.isscalar(x) or getattr(x, "ndim", 1) == 0

    def _gg_log(par: GgParams, xs):
        with np.errstate(divide="ignore"):
            lg = np.where(xs > 0,
                          math.log(abs(par.p) / par.a) - gammaln(par.d / par.p)
                          + (par.d - 1) * np.log(np.maximum(xs, 1e-300) / par.a)
                          - (np.maximum(xs, 1e-300) / par.a) ** par.p,
                          -np.inf)
        return lg

    if alpha <= _GG_FULL:
        out = _gg_log(_gg_limit_params(params), xx)
        return float(out[0]) if scalar else out

    beta = alpha  # Wright index of F
    log_c = math.log(gsc_norm_const(params))
    out = np.full(xx.shape, -np.inf)
    pos = xx > 0
    u = xx[pos] / sigma
    z = u ** p
    # points whose density is below e^-85 may keep a cheap tail estimate
    rest = log_c + (d - 1) * np.log(u) + math.log(beta) + np.log(z)
    log_f = math.log(beta) + np.log(z) + log_m_wright(beta, z, policy, floor=-85.0 - rest)
    out[pos] = log_c + (d - 1) * np.log(u) + log_f
    if np.any(~pos):
        # limit exponent of x^(d-1) F(x^p) at 0 is d - 1 + p
        expo = d - 1 + p
        if expo > 0:
            out[~pos] = -np.inf
        elif expo == 0:
            out[~pos] = log_c + math.log(beta) + math.log(float(m_wright(beta, 0.0, policy)))
        else:
            out[~pos] = np.inf
    if _GG_FULL < alpha < _GG_NONE:
        w = (alpha - _GG_FULL) / (_GG_NONE - _GG_FULL)
        gg = _gg_log(_gg_limit_params(params), xx)
        with np.errstate(over="ignore", invalid="ignore"):
            out = np.log(w * np.exp(out) + (1 - w) * np.exp(gg))
    return float(out[0]) if scalar else out


def gsc_pdf(params: GscParams, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Density C (x/sigma)^(d-1) F_alpha((x/sigma)^p) with regime routing.

    alpha = 0 evaluates the generalized-gamma limit; alpha = 1 raises
    DeltaRegime (point mass at sigma).
    """
    if params.alpha == 0 or params.alpha <= _GG_FULL:
        return gg_pdf(_gg_limit_params(params), x)
    lg = gsc_log_pdf(params, x, policy)
    if np.isscalar(lg):
        return math.exp(lg) if lg < 700 else np.inf
    with np.errstate(over="ignore"):
        return np.exp(lg)


def gsc_moment(params: GscParams, n: float) -> float:
    """n-th moment sigma^n [G(d a/p)/G(d/p)] [G((n+d)/p)/G((n+d) a/p)].

    Zero-argument pairs (d = 0 or n = -d) go through the scaled-pair limit.
    """
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p
    if n == 0:
        return 1.0
    if alpha == 1.0:
        return sigma ** n
    if alpha == 0.0:
        # GG(sigma, d+p, p) moments
        try:
            return sigma ** n * gamma_ratio_safe((n + d + p) / p, (d + p) / p)
        except Exception as exc:
            raise MomentUndefined(str(exc)) from exc
    if d == 0:
        l1, s1 = math.log(gamma_ratio_limit0(alpha / p, 1.0 / p)), 1.0  # ratio -> 1/alpha
    else:
        a1, b1 = alpha * d / p, d / p
        if _is_gamma_pole(a1) or _is_gamma_pole(b1):
            raise MomentUndefined(f"normalization gammas at pole for d={d}, p={p}")
        l1, s1 = gamma_ratio_log(a1, b1)
    if n + d == 0:
        l2, s2 = math.log(gamma_ratio_limit0(1.0 / p, alpha / p)), 1.0  # ratio -> alpha
    else:
        a2, b2 = (n + d) / p, (n + d) * alpha / p
        if _is_gamma_pole(a2) or _is_gamma_pole(b2):
            raise MomentUndefined(f"moment gammas at pole for n={n}")
        l2, s2 = gamma_ratio_log(a2, b2)
    return s1 * s2 * math.exp(n * math.log(sigma) + l1 + l2)


def asymp_decay_const(alpha: float) -> float:
    """A(alpha) = (1 - alpha) alpha^(alpha/(1-alpha)) governing the stretched tail."""
    if not 0 < alpha < 1:
        raise AsymptoticInvalid(f"A(alpha) defined on (0, 1), got {alpha}")
    return (1.0 - alpha) * alpha ** (alpha / (1.0 - alpha))


def asymp_prefactor(alpha: float) -> float:
    """B'(alpha) = alpha^(1/(2(1-alpha))) / sqrt(2 pi (1-alpha))."""
    if not 0 < alpha < 1:
        raise AsymptoticInvalid(f"B'(alpha) defined on (0, 1), got {alpha}")
    return alpha ** (1.0 / (2.0 * (1.0 - alpha))) / math.sqrt(2.0 * math.pi * (1.0 - alpha))


def gsc_pdf_asymptotic(params: GscParams, x):
    """Large-x GG-variant tail; invalid for alpha < 0.05 (competing GG limit)."""
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p
    if alpha < 0.05:
        raise AsymptoticInvalid("tail asymptotic unusable for alpha < 0.05")
    if alpha >= 1.0:
        raise AsymptoticInvalid("no stretched-exponential tail at alpha = 1")
    xx = np.asarray(x, dtype=float)
    scalar = np.isscalar(x) or getattr(x, "ndim", 1) == 0
    a_const = asymp_decay_const(alpha)
    b_const = asymp_prefactor(alpha)
    c = gsc_norm_const(params)
    u = np.atleast_1d(xx) / sigma
    expo = d + p / (2.0 * (1.0 - alpha)) - 1.0
    with np.errstate(over="ignore", divide="ignore"):
        out = b_const * c * u ** expo * np.exp(-a_const * u ** (p / (1.0 - alpha)))
    return float(out[0]) if scalar else out


def gsc_tail_cut(params: GscParams, tol: float = 1e-10) -> float:
    """x beyond which the remaining mass is below tol, from the tail asymptotic.

    Inverts the stretched-exponential exponent, with a polynomial-prefactor
    correction iterated a few times.  Requires p > 0 (increasing argument).
    """
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p
    if p < 0:
        raise InvalidParams("tail cut needs p > 0")
    if alpha >= 1.0:
        return 2.0 * sigma
    target = -math.log(tol)
    if alpha <= _GG_FULL:
        q = p
        a_const = 1.0
        expo = max(d + p - 1.0, 0.0)
    else:
        q = p / (1.0 - alpha)
        a_const = asymp_decay_const(alpha)
        expo = max(d + p / (2.0 * (1.0 - alpha)) - 1.0, 0.0)
    u = (target / a_const) ** (1.0 / q)
    for _ in range(4):
        u = ((target + expo * math.log(max(u, 1.0)) + 3.0) / a_const) ** (1.0 / q)
    return max(1.3 * u * sigma, 4.0 * sigma)


def gsc_mgf(params: GscParams, t: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Moment generating function as the four-parameter Wright series in sigma*t.

    Real t only; t <= 0 always converges.
    """
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p
    if t == 0.0:
        return 1.0
    if alpha == 1.0:
        return math.exp(sigma * t)
    # moment series sum_n E(X^n) t^n / n!; identical to the four-parameter
    # Wright form but robust at the d = 0 removable limit
    total = 0.0
    tn_over_fact = 1.0  # t^n / n!
    best = None
    prev = None
    grow = 0
    for n in range(policy.max_terms):
        mom = gsc_moment(params, n) if n > 0 else 1.0
        term = mom * tn_over_fact
        total += term
        at = abs(term)
        if n > 2 and at <= policy.rel_tol * max(abs(total), 1e-300) \
                and prev is not None and prev <= policy.rel_tol * max(abs(total), 1e-300):
            return total
        if best is None or at < best[0]:
            best = (at, total, n)
            grow = 0
        elif n > 2:
            grow += 1
            if grow >= 3:
                break
        prev = at
        tn_over_fact *= t / (n + 1)
    if best is not None and best[0] <= math.sqrt(policy.rel_tol) * max(abs(best[1]), 1e-300):
        return best[1]
    from .errors import SeriesNotConverged

    raise SeriesNotConverged(f"MGF series did not converge for t={t}")
