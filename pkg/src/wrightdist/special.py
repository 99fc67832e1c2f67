"""Wright-function family and gamma helpers.

Everything here is pure and array-friendly.  The M-Wright function is the
workhorse: its sine-form series is fast and accurate for small arguments, and
a non-oscillatory Zolotarev-type integral takes over for large arguments where
the alternating series cancels catastrophically.  The leading GG-style
asymptotic is kept as a separate function for tail bounds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import gammaln, gammasgn, rgamma

from .errors import DivisionNearZero, DomainError, InvalidParams, PoleInNumerator, SeriesNotConverged

_LOG_PI = math.log(math.pi)
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class WrightArgs:
    """Arguments of the two-parameter Wright function W_{lambda, delta}(z)."""

    lam: float
    delta: float
    z: float

    def __post_init__(self):
        if not (np.isfinite(self.lam) and np.isfinite(self.delta) and np.isfinite(self.z)):
            raise InvalidParams("WrightArgs fields must be finite")
        if self.lam < -1:
            raise InvalidParams(f"first index must be >= -1, got {self.lam}")


@dataclass(frozen=True)
class Wright4Args:
    """Arguments of the four-parameter Wright function W[a, b; lam, mu](z)."""

    a: float
    b: float
    lam: float
    mu: float
    z: float

    def __post_init__(self):
        for v in (self.a, self.b, self.lam, self.mu, self.z):
            if not np.isfinite(v):
                raise InvalidParams("Wright4Args fields must be finite")


@dataclass(frozen=True)
class SeriesPolicy:
    rel_tol: float = 1e-12
    max_terms: int = 400
    # argument above which the series is abandoned; None = decide per call from
    # the series' own cancellation estimate (cached per alpha)
    asymptotic_switch_z: float | None = None

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise InvalidParams("rel_tol must be > 0")
        if self.max_terms < 10:
            raise InvalidParams("max_terms must be >= 10")


DEFAULT_POLICY = SeriesPolicy()


# ----------------------------------------------------------------------------
# gamma helpers
# ----------------------------------------------------------------------------
def _is_gamma_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gammaln_signed(x):
    """(log|Gamma(x)|, sign) for real x; sign 0 flags a pole."""
    x = np.asarray(x, dtype=float)
    sign = gammasgn(x)
    pole = (x <= 0) & (x == np.floor(x))
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = gammaln(x)
    lg = np.where(pole, np.inf, lg)
    sign = np.where(pole, 0.0, sign)
    return lg, sign


def gamma_ratio_safe(a: float, b: float) -> float:
    """Gamma(a)/Gamma(b) in log space with sign tracking.

    A pole in the denominator alone gives 0.  A pole in the numerator alone is
    not a removable limit and raises.  Both-at-zero limits must go through
    gamma_ratio_limit0 at the call site.
    """
    pa, pb = _is_gamma_pole(a), _is_gamma_pole(b)
    if pb and not pa:
        return 0.0
    if pa:
        raise PoleInNumerator(f"Gamma({a}) is singular; ratio Gamma({a})/Gamma({b}) undefined here")
    la, sa = gammaln_signed(a)
    lb, sb = gammaln_signed(b)
    return float(sa * sb * np.exp(la - lb))


def gamma_ratio_log(a: float, b: float):
    """(log|Gamma(a)/Gamma(b)|, sign) with the same pole policy as gamma_ratio_safe."""
    pa, pb = _is_gamma_pole(a), _is_gamma_pole(b)
    if pb and not pa:
        return -math.inf, 0.0
    if pa:
        raise PoleInNumerator(f"Gamma({a}) is singular; ratio Gamma({a})/Gamma({b}) undefined here")
    la, sa = gammaln_signed(a)
    lb, sb = gammaln_signed(b)
    return float(la - lb), float(sa * sb)


def gamma_ratio_limit0(a_coeff: float, b_coeff: float) -> float:
    """lim_{x->0} Gamma(a x)/Gamma(b x) = b/a for nonzero coefficients."""
    if a_coeff == 0 or b_coeff == 0:
        raise InvalidParams("limit form needs nonzero coefficients")
    return b_coeff / a_coeff


def wright_moment(lam: float, delta: float, d: float) -> float:
    """d-th Mellin moment of W_{-lam, delta}(-x): Gamma(d)/Gamma(d*lam + delta)."""
    return gamma_ratio_safe(d, d * lam + delta)


# ----------------------------------------------------------------------------
# generic two-parameter Wright series (oracle-grade, small |z| only)
# ----------------------------------------------------------------------------
def wright_series(lam: float, mu: float, z: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Direct summation of W_{lam, mu}(z) = sum z^n / (n! Gamma(lam n + mu)).

    Terms on a Gamma pole contribute zero (reciprocal-gamma convention).
    Intended for moderate |z|; the dedicated M-Wright path should be used for
    production density work.
    """
    if lam < -1:
        raise DomainError(f"first index must be >= -1, got {lam}")
    total = 0.0
    zn_fact = 1.0  # z^n / n!
    max_abs = 0.0
    tiny_run = 0
    for n in range(policy.max_terms):
        term = zn_fact * rgamma(lam * n + mu)
        total += term
        max_abs = max(max_abs, abs(term))
        scale = max(abs(total), 1e-300)
        if abs(term) <= policy.rel_tol * scale and abs(zn_fact) <= policy.rel_tol * scale:
            tiny_run += 1
            if tiny_run >= 3:
                return total
        else:
            tiny_run = 0
        zn_fact *= z / (n + 1)
    raise SeriesNotConverged(
        f"W_({lam},{mu})({z}) did not converge in {policy.max_terms} terms"
    )


# ----------------------------------------------------------------------------
# four-parameter Wright function
# ----------------------------------------------------------------------------
def wright4_ex(args: Wright4Args, policy: SeriesPolicy = DEFAULT_POLICY):
    """Four-parameter Wright series with an error estimate.

    Returns (value, abs_error_estimate, n_terms).  A divergent (asymptotic)
    tail is truncated at the smallest term, whose size is the error estimate.
    Denominator-gamma poles contribute zero; a numerator pole raises.
    """
    a, b, lam, mu, z = args.a, args.b, args.lam, args.mu, args.z
    total = 0.0
    max_abs = 0.0
    best = None  # (err, value_at_min, n) for asymptotic truncation
    prev_abs = None
    growing = 0
    log_zn = 0.0
    log_abs_z = math.log(abs(z)) if z != 0 else -math.inf
    sign_z = 1.0 if z >= 0 else -1.0
    for n in range(policy.max_terms):
        num = a * n + b
        if _is_gamma_pole(num):
            raise PoleInNumerator(f"Gamma({num}) singular at term n={n}")
        den = lam * n + mu
        if _is_gamma_pole(den):
            term = 0.0
            abs_term = 0.0
        else:
            lnum, snum = gammaln_signed(num)
            lden, sden = gammaln_signed(den)
            log_t = log_zn + lnum - gammaln(n + 1) - lden
            if log_t > 700:
                raise SeriesNotConverged(
                    f"four-parameter Wright term overflow at n={n} (z={z})"
                )
            abs_term = math.exp(log_t)
            term = snum * sden * (sign_z ** n) * abs_term
        total += term
        max_abs = max(max_abs, abs_term)
        scale = max(abs(total), 1e-300)
        if abs_term > 0:
            if abs_term <= policy.rel_tol * scale and (prev_abs is not None and prev_abs <= policy.rel_tol * scale):
                err = abs_term + _EPS * max_abs
                return total, err, n + 1
            if best is None or abs_term < best[0]:
                best = (abs_term, total, n + 1)
                growing = 0
            else:
                growing += 1
                if growing >= 3 and best is not None:
                    # asymptotic series: stop at the smallest term
                    err = best[0] + _EPS * max_abs
                    if err > max(policy.rel_tol * abs(best[1]), 1e-300) * 1e3 and err > 1e-280:
                        # leave the decision to the caller via the estimate
                        pass
                    return best[1], err, best[2]
            prev_abs = abs_term
        if n == 0 and z == 0:
            return total, _EPS * max(abs(total), 1.0), 1
        log_zn += log_abs_z
    if best is not None:
        return best[1], best[0] + _EPS * max_abs, best[2]
    raise SeriesNotConverged(
        f"four-parameter Wright series did not converge in {policy.max_terms} terms"
    )


def wright4(args: Wright4Args, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    value, err, _ = wright4_ex(args, policy)
    if err > max(abs(value) * math.sqrt(policy.rel_tol), 1e-250):
        raise SeriesNotConverged(
            f"four-parameter Wright error estimate {err:.3g} too large for value {value:.6g}"
        )
    return value


# ----------------------------------------------------------------------------
# M-Wright: series, integral fallback, asymptotic
# ----------------------------------------------------------------------------
def _m_series_batch(alpha: float, z: np.ndarray, policy: SeriesPolicy):
    """Sine-form series for M_alpha on an array of z >= 0.

    Returns (values, rel_err_estimate).  The estimate combines truncation and
    float64 cancellation (eps * max|term| / |sum|).
    """
    n_max = policy.max_terms
    n = np.arange(1, n_max + 1, dtype=float)
    s = np.sin(alpha * n * np.pi)
    with np.errstate(divide="ignore"):
        log_c = gammaln(alpha * n) - gammaln(n) + np.log(np.abs(s)) - _LOG_PI
    sign = np.where(s >= 0, 1.0, -1.0) * np.where((np.arange(n_max) % 2) == 0, 1.0, -1.0)
    dead = s == 0.0
    log_c = np.where(dead, -np.inf, log_c)

    zz = np.atleast_1d(np.asarray(z, dtype=float))
    with np.errstate(divide="ignore"):
        log_z = np.where(zz > 0, np.log(np.maximum(zz, 1e-300)), -np.inf)
    # term_n(z) = sign_n * exp(log_c_n + (n-1) log z)
    with np.errstate(invalid="ignore"):
        log_t = log_c[None, :] + (n - 1)[None, :] * log_z[:, None]
    log_t[zz == 0, 0] = log_c[0]  # z^0 = 1 at z = 0
    log_t = np.nan_to_num(log_t, nan=-np.inf, posinf=np.inf, neginf=-np.inf)
    big = log_t > 600
    log_t = np.where(big, -np.inf, log_t)  # caller must reject via the error estimate
    terms = sign[None, :] * np.exp(log_t)
    values = terms.sum(axis=1)
    max_abs = np.exp(log_t).max(axis=1)
    tail = np.exp(log_t[:, -3:]).max(axis=1)
    err = (tail + _EPS * max_abs) / np.maximum(np.abs(values), 1e-300)
    err = np.where(big.any(axis=1), np.inf, err)
    return values, err


def _logsinc(y):
    """log(sin(y)/y) for 0 <= y < pi, stable near zero."""
    y = np.asarray(y, dtype=float)
    small = y < 1e-4
    ys = np.where(small, 1.0, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(np.sin(ys) / ys)
    return np.where(small, -y * y / 6.0 * (1.0 + y * y / 20.0), out)


def _zolotarev_excess(phi, alpha: float) -> np.ndarray:
    """log(A(phi)/A(0)) >= 0 for the Zolotarev kernel, cancellation-free.

    A(phi) = sin(a phi)^(a/(1-a)) sin((1-a) phi) / sin(phi)^(1/(1-a)) and
    A(0) = (1-a) a^(a/(1-a)); the ratio reduces to a combination of
    log-sinc terms that stays O(phi^2) near zero.
    """
    phi = np.asarray(phi, dtype=float)
    one_m = 1.0 - alpha
    return (alpha / one_m) * _logsinc(alpha * phi) + _logsinc(one_m * phi) \
        - (1.0 / one_m) * _logsinc(phi)


def _zolotarev_a0(alpha: float) -> float:
    """A(0+) = (1-alpha) * alpha^(alpha/(1-alpha)), the tail-decay constant."""
    return (1.0 - alpha) * alpha ** (alpha / (1.0 - alpha))


def _m_wright_integral(alpha: float, z: float, want_deriv: bool = False):
    """M_alpha(z) by the non-oscillatory stable integral; optionally dM/dz.

    Uses M_alpha(z) = x^(alpha+1) L_alpha(x) / alpha with x = z^(-1/alpha) and
    the Zolotarev representation of the one-sided stable density L_alpha.
    Exact for all z > 0; intended for the large-z regime where the series
    cancels.  Returns (value, deriv or None), or the pair of logs via
    _log_m_wright_integral.
    """
    log_m, dlog = _log_m_wright_integral(alpha, z, want_dlog=want_deriv)
    value = math.exp(log_m) if log_m > -745 else 0.0
    if not want_deriv:
        return value, None
    return value, value * dlog


def _log_m_wright_integral(alpha: float, z: float, want_dlog: bool = False):
    """log M_alpha(z) (and optionally dlog M/dz) via the Zolotarev integral."""
    if z <= 0:
        raise DomainError("integral path needs z > 0")
    one_m = 1.0 - alpha
    lam = z ** (1.0 / one_m)
    a0 = _zolotarev_a0(alpha)
    la0 = lam * a0

    def f(phi):
        r = float(_zolotarev_excess(phi, alpha))
        # A(phi) e^{-lam (A(phi) - A0)} / A0, with A - A0 = A0 expm1(r)
        ex = -la0 * math.expm1(r)
        if ex < -745:
            return 0.0
        return math.exp(r + ex)

    # integrand is positive and decreasing; width shrinks like 1/sqrt(lam A0)
    pts = None
    if la0 > 10:
        w = min(math.pi * 0.4, 3.0 / math.sqrt(la0 * max(alpha, 0.05)))
        pts = [w, min(math.pi * 0.9, 12 * w)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        i0, _ = quad(f, 0.0, math.pi, points=pts, limit=200, epsabs=1e-290, epsrel=1e-11)
    if i0 <= 0:
        return -math.inf, 0.0
    # M(z) = A0 z^(alpha/(1-alpha)) e^(-lam A0) I0 / (pi (1-alpha))
    log_m = math.log(a0) + (alpha / one_m) * math.log(z) - la0 + math.log(i0) \
        - math.log(math.pi * one_m)
    if not want_dlog:
        return log_m, None

    def g(phi):
        r = float(_zolotarev_excess(phi, alpha))
        d = math.expm1(r)
        ex = -la0 * d
        if ex < -745:
            return 0.0
        return math.exp(r + ex) * d

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        i1, _ = quad(g, 0.0, math.pi, points=pts, limit=200, epsabs=1e-290, epsrel=1e-9)
    dlam_dz = lam / (one_m * z)
    # dlogM/dz = alpha/((1-alpha) z) - A0 dlam/dz (1 + I1/I0)
    dlog = alpha / (one_m * z) - a0 * dlam_dz * (1.0 + i1 / i0)
    return log_m, dlog


def m_wright_asymptotic(alpha: float, z) -> np.ndarray | float:
    """Leading GG-style asymptotic of M_alpha for large argument.

    M_alpha(x/alpha) ~ A x^(p/2 - 1) exp(-B x^p) with p = 1/(1-alpha); exact at
    alpha = 1/2.  Leading order only: used for tail bounds, not for precision
    evaluation.
    """
    if not 0 < alpha < 1:
        raise DomainError("asymptotic defined for 0 < alpha < 1")
    p = 1.0 / (1.0 - alpha)
    a_const = math.sqrt(p / (2 * math.pi))
    b_const = 1.0 / (alpha * p)
    x = np.asarray(z, dtype=float) * alpha
    with np.errstate(divide="ignore", invalid="ignore"):
        out = a_const * x ** (p / 2.0 - 1.0) * np.exp(-b_const * x ** p)
    return out if out.ndim else float(out)


def m_wright(alpha: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """Mainardi (M-Wright) function M_alpha(z) for 0 <= alpha < 1, z >= 0.

    Closed forms at alpha = 0 (exp(-z)) and alpha = 1/2 (exp(-z^2/4)/sqrt(pi));
    the sine-form series elsewhere, with the exact stable-integral fallback
    once the series' own cancellation estimate exceeds tolerance.
    """
    if not 0 <= alpha < 1:
        raise DomainError(f"alpha must be in [0, 1), got {alpha}")
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(zz < 0):
        raise DomainError("z must be >= 0")
    scalar = np.isscalar(z) or getattr(z, "ndim", 1) == 0
    if alpha == 0.0:
        out = np.exp(-zz)
        return float(out[0]) if scalar else out
    if alpha == 0.5:
        out = np.exp(-zz * zz / 4.0) / math.sqrt(math.pi)
        return float(out[0]) if scalar else out

    out = np.empty_like(zz)
    if policy.asymptotic_switch_z is not None:
        use_series = zz <= policy.asymptotic_switch_z
    else:
        use_series = np.ones(zz.shape, dtype=bool)
    if use_series.any():
        vals, err = _m_series_batch(alpha, zz[use_series], policy)
        ok = err <= max(policy.rel_tol * 100, 1e-10)
        out_s = np.where(ok, vals, np.nan)
        out[use_series] = out_s
        bad_idx = np.flatnonzero(use_series)[~ok]
    else:
        bad_idx = np.array([], dtype=int)
    hard = np.concatenate([np.flatnonzero(~use_series), bad_idx])
    if policy.asymptotic_switch_z is not None and len(np.flatnonzero(~use_series)) > 0:
        big = np.flatnonzero(~use_series)
        out[big] = m_wright_asymptotic(alpha, zz[big])
        hard = bad_idx
    for i in hard:
        val, _ = _m_wright_integral(alpha, float(zz[i]))
        out[i] = val
    if np.isnan(out).any():
        raise SeriesNotConverged("M-Wright evaluation failed to converge")
    return float(out[0]) if scalar else out


def _log_m_asymptotic(alpha: float, z: np.ndarray) -> np.ndarray:
    """log of the leading GG-style asymptotic (percent-grade, for bounds)."""
    p = 1.0 / (1.0 - alpha)
    x = np.maximum(np.asarray(z, dtype=float) * alpha, 1e-300)
    with np.errstate(over="ignore"):
        return 0.5 * math.log(p / (2 * math.pi)) + (p / 2.0 - 1.0) * np.log(x) \
            - x ** p / (alpha * p)


def log_m_wright(alpha: float, z, policy: SeriesPolicy = DEFAULT_POLICY, floor=None):
    """log M_alpha(z), usable deep in the tail where the value underflows.

    ``floor``: scalar or per-point array of log-significance levels; points
    whose asymptotic estimate falls 5+ nats below their floor keep the cheap
    estimate instead of triggering the exact integral.
    """
    if not 0 <= alpha < 1:
        raise DomainError(f"alpha must be in [0, 1), got {alpha}")
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    scalar = np.isscalar(z) or getattr(z, "ndim", 1) == 0
    if alpha == 0.0:
        out = -zz
        return float(out[0]) if scalar else out
    if alpha == 0.5:
        out = -zz * zz / 4.0 - 0.5 * _LOG_PI
        return float(out[0]) if scalar else out
    vals, err = _m_series_batch(alpha, zz, policy)
    out = np.full(zz.shape, -np.inf)
    ok = (err <= max(policy.rel_tol * 100, 1e-10)) & (vals > 0)
    out[ok] = np.log(vals[ok])
    hard = np.flatnonzero(~ok)
    if hard.size and floor is not None:
        floor_arr = np.broadcast_to(np.asarray(floor, dtype=float), zz.shape)
        est = _log_m_asymptotic(alpha, zz[hard])
        skip = est < floor_arr[hard] - 5.0
        out[hard[skip]] = est[skip]
        hard = hard[~skip]
    for i in hard:
        if zz[i] == 0:
            out[i] = math.log(rgamma(1.0 - alpha))
        else:
            out[i], _ = _log_m_wright_integral(alpha, float(zz[i]))
    return float(out[0]) if scalar else out


def _m_deriv_series_batch(alpha: float, z: np.ndarray, policy: SeriesPolicy):
    """Series for dM_alpha/dz (shifted sine form), with error estimate."""
    n_max = policy.max_terms
    n = np.arange(2, n_max + 2, dtype=float)
    s = np.sin(alpha * n * np.pi)
    with np.errstate(divide="ignore"):
        log_c = gammaln(alpha * n) - gammaln(n - 1) + np.log(np.abs(s)) - _LOG_PI
    sign = -np.where(s >= 0, 1.0, -1.0) * np.where((np.arange(n_max) % 2) == 0, 1.0, -1.0)
    log_c = np.where(s == 0.0, -np.inf, log_c)

    zz = np.atleast_1d(np.asarray(z, dtype=float))
    with np.errstate(divide="ignore"):
        log_z = np.where(zz > 0, np.log(np.maximum(zz, 1e-300)), -np.inf)
    with np.errstate(invalid="ignore"):
        log_t = log_c[None, :] + (n - 2)[None, :] * log_z[:, None]
    log_t[zz == 0, 0] = log_c[0]
    log_t = np.nan_to_num(log_t, nan=-np.inf, posinf=np.inf, neginf=-np.inf)
    big = log_t > 600
    log_t = np.where(big, -np.inf, log_t)
    terms = sign[None, :] * np.exp(log_t)
    values = terms.sum(axis=1)
    max_abs = np.exp(log_t).max(axis=1)
    tail = np.exp(log_t[:, -3:]).max(axis=1)
    err = (tail + _EPS * max_abs) / np.maximum(np.abs(values), 1e-300)
    err = np.where(big.any(axis=1), np.inf, err)
    return values, err


def m_wright_deriv(alpha: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """dM_alpha/dz for 0 < alpha < 1; at z = 0 equals -Gamma(2 alpha) sin(2 alpha pi) / pi."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(zz < 0):
        raise DomainError("z must be >= 0")
    scalar = np.isscalar(z) or getattr(z, "ndim", 1) == 0
    if alpha == 0.5:
        out = -(zz / 2.0) * np.exp(-zz * zz / 4.0) / math.sqrt(math.pi)
        return float(out[0]) if scalar else out
    vals, err = _m_deriv_series_batch(alpha, zz, policy)
    out = vals.copy()
    bad = err > max(policy.rel_tol * 100, 1e-9)
    for i in np.flatnonzero(bad):
        _, d = _m_wright_integral(alpha, float(zz[i]), want_deriv=True)
        out[i] = d
    return float(out[0]) if scalar else out


def f_wright(alpha: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """F_alpha(z) = W_{-alpha,0}(-z) = alpha z M_alpha(z), for 0 < alpha < 1, z >= 0."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    zz = np.asarray(z, dtype=float)
    return alpha * zz * m_wright(alpha, z, policy)


def log_f_wright(alpha: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """log F_alpha(z); -inf at z = 0."""
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    scalar = np.isscalar(z) or getattr(z, "ndim", 1) == 0
    with np.errstate(divide="ignore"):
        out = math.log(alpha) + np.log(zz) + log_m_wright(alpha, zz, policy)
    return float(out[0]) if scalar else out


def q_ratio(alpha: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """Q_alpha(z) = -W_{-alpha,-1}(-z) / W_{-alpha,0}(-z) = (alpha+1) + alpha z M'/M."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(zz < 0):
        raise DomainError("z must be >= 0")
    scalar = np.isscalar(z) or getattr(z, "ndim", 1) == 0
    if alpha == 0.5:
        out = 1.5 - zz * zz / 4.0
        return float(out[0]) if scalar else out
    m_vals, m_err = _m_series_batch(alpha, zz, policy)
    d_vals, d_err = _m_deriv_series_batch(alpha, zz, policy)
    out = np.empty_like(zz)
    ok = (m_err <= 1e-10) & (d_err <= 1e-9) & (np.abs(m_vals) > 1e-280)
    with np.errstate(invalid="ignore", divide="ignore"):
        out[ok] = (alpha + 1.0) + alpha * zz[ok] * d_vals[ok] / m_vals[ok]
    for i in np.flatnonzero(~ok):
        zi = float(zz[i])
        if zi == 0.0:
            out[i] = alpha + 1.0
            continue
        log_m, dlog = _log_m_wright_integral(alpha, zi, want_dlog=True)
        if log_m == -math.inf:
            raise DivisionNearZero(f"M_{alpha}({zi}) underflows; Q ratio unavailable")
        out[i] = (alpha + 1.0) + alpha * zi * dlog
    return float(out[0]) if scalar else out
