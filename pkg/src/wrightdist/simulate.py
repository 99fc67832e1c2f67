"""Random-variable generation through the generalized square-root diffusion.

dS = sigma_u^2 mu(S/theta_u) dt + sigma_u sqrt(S) dW drives S toward the
stationary law that the drift mu was solved for (stationary Fokker-Planck),
subsuming the CIR model at the gamma limit.  Two-sided samples follow as
X = N / S (ratio family) or X = S N (product family).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, Exploded, InvalidParams
from .fcm import FcmShape, fcm_mean, fcm_tail_cut, sigma_scale
from .gsc import GscParams, asymp_decay_const, _GG_FULL
from .special import DEFAULT_POLICY, SeriesPolicy, q_ratio


@dataclass(frozen=True)
class SdeConfig:
    dt: float = 1.0 / 365.0
    sigma_u: float = 1.0
    theta_u: float = 1.0
    horizon_years: float = 100.0
    seed: int = 0
    drift_cache_step: float = 0.01
    reflect_floor: float = 1e-6
    ceiling: float = 1e9
    n_paths: int = 8

    def __post_init__(self):
        if not (self.dt > 0 and self.horizon_years > 0):
            raise InvalidParams("dt and horizon must be positive")
        if not (self.sigma_u > 0 and self.theta_u > 0 and self.reflect_floor > 0):
            raise InvalidParams("sigma_u, theta_u, reflect_floor must be positive")


def q_chi(alpha: float, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """Q_(alpha/2)(z^alpha), the ratio entering every chi-family drift."""
    z = np.asarray(z, dtype=float)
    return q_ratio(alpha / 2.0, z ** alpha, policy)


def drift_mu_gsc(params: GscParams, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Mean-reverting drift (p/2a) Q_a((x/sigma)^p) + d/2 - p/2a for a GSC target."""
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p
    xx = np.asarray(x, dtype=float)
    if np.any(np.atleast_1d(xx) <= 0):
        raise DomainError("drift defined for x > 0")
    u = xx / sigma
    if alpha <= _GG_FULL:
        # gamma/GG limit: the target is GG(sigma, d+p, p)
        return (d + p) / 2.0 - (p / 2.0) * u ** p
    return (p / (2.0 * alpha)) * q_ratio(alpha, u ** p, policy) + (d / 2.0 - p / (2.0 * alpha))


def drift_mu_fcm(shape: FcmShape, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Drift with chi-bar(alpha, k) stationary: Q^(chi)(x/sigma) + (k-3)/2, k > 0."""
    if shape.k <= 0:
        raise DomainError("drift defined for k > 0")
    xx = np.asarray(x, dtype=float)
    if np.any(np.atleast_1d(xx) <= 0):
        raise DomainError("drift defined for x > 0")
    return q_chi(shape.alpha, xx / sigma_scale(shape), policy) + (shape.k - 3.0) / 2.0


def drift_mu_fcm_inverse(shape: FcmShape, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Product-route drift Q^(chi)(x/sigma) + k/2 - 1, stationary at the inverse law.

    k follows the positive convention of the exponential-power family.
    """
    if shape.k <= 0:
        raise DomainError("drift defined for k > 0 (positive convention)")
    xx = np.asarray(x, dtype=float)
    if np.any(np.atleast_1d(xx) <= 0):
        raise DomainError("drift defined for x > 0")
    return q_chi(shape.alpha, xx / sigma_scale(shape), policy) + shape.k / 2.0 - 1.0


def drift_mu_fcm_ratio_neg(shape: FcmShape, x, policy: SeriesPolicy = DEFAULT_POLICY):
    """Ratio-route alternative for the negative-k family: -Q^(chi)((x sigma)^-1) + 1 - k/2.

    Divergent at x -> 0 (e.g. 1/(2x^2) - 1 at alpha = k = 1); the product
    route is what the sampler uses.
    """
    if shape.k <= 0:
        raise DomainError("drift defined for k > 0 (positive convention)")
    xx = np.asarray(x, dtype=float)
    if np.any(np.atleast_1d(xx) <= 0):
        raise DomainError("drift defined for x > 0")
    return -q_chi(shape.alpha, 1.0 / (xx * sigma_scale(shape)), policy) + 1.0 - shape.k / 2.0


@dataclass
class DriftFn:
    """Drift with a lookup table over an x-grid plus an asymptotic extension.

    The SDE stepper calls it millions of times; exact Wright-ratio values are
    cached on a grid (default step 0.01) and linearly interpolated, with the
    tail branch taking over past the grid.
    """

    x_grid: np.ndarray
    values: np.ndarray
    tail: object  # callable for x beyond the grid
    floor_value: float = field(default=0.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, self.x_grid, self.values,
                        left=self.values[0], right=np.nan)
        beyond = x > self.x_grid[-1]
        if np.any(beyond):
            out = np.where(beyond, self.tail(np.maximum(x, self.x_grid[-1])), out)
        return out

    def fixed_point(self) -> float:
        sign = np.sign(self.values)
        flips = np.flatnonzero(np.diff(sign) != 0)
        if flips.size == 0:
            return float(self.x_grid[np.argmin(np.abs(self.values))])
        i = flips[-1]
        x0, x1 = self.x_grid[i], self.x_grid[i + 1]
        y0, y1 = self.values[i], self.values[i + 1]
        return float(x0 - y0 * (x1 - x0) / (y1 - y0))

    def slope_at(self, x: float) -> float:
        h = max(4.0 * (self.x_grid[1] - self.x_grid[0]), 1e-4)
        return float((self(x + h) - self(x - h)) / (2.0 * h))


def _fcm_drift_tail(shape: FcmShape, d_eff: float):
    alpha = shape.alpha
    sig = sigma_scale(shape)
    q = 2.0 * alpha / (2.0 - alpha)
    a_const = asymp_decay_const(alpha / 2.0)
    nu = d_eff + alpha / (2.0 - alpha) - 1.0

    def tail(x):
        u = np.asarray(x, dtype=float) / sig
        return nu / 2.0 + 0.5 - (a_const * q / 2.0) * u ** q

    return tail


def make_fcm_drift(shape: FcmShape, cfg: SdeConfig, inverse: bool = False,
                   policy: SeriesPolicy = DEFAULT_POLICY) -> DriftFn:
    """Tabulated drift for chi-bar(alpha, k) or its inverse law (product route)."""
    x_hi = 1.5 * fcm_tail_cut(shape, 1e-9)
    grid = np.arange(cfg.reflect_floor, x_hi + cfg.drift_cache_step, cfg.drift_cache_step)
    mu = drift_mu_fcm_inverse(shape, grid, policy) if inverse \
        else drift_mu_fcm(shape, grid, policy)
    d_eff = shape.k if inverse else shape.k - 1.0
    return DriftFn(x_grid=grid, values=np.asarray(mu, dtype=float),
                   tail=_fcm_drift_tail(shape, d_eff))


def make_gsc_drift(params: GscParams, cfg: SdeConfig,
                   policy: SeriesPolicy = DEFAULT_POLICY) -> DriftFn:
    from .gsc import gsc_tail_cut

    x_hi = 1.5 * gsc_tail_cut(params, 1e-9)
    grid = np.arange(cfg.reflect_floor, x_hi + cfg.drift_cache_step, cfg.drift_cache_step)
    mu = drift_mu_gsc(params, grid, policy)
    alpha, sigma, d, p = params.alpha, params.sigma, params.d, params.p

    if alpha <= _GG_FULL:
        def tail(x):
            return (d + p) / 2.0 - (p / 2.0) * (np.asarray(x, dtype=float) / sigma) ** p
    else:
        q = p / (1.0 - alpha)
        a_const = asymp_decay_const(alpha)
        nu = d + p / (2.0 * (1.0 - alpha)) - 1.0

        def tail(x):
            u = np.asarray(x, dtype=float) / sigma
            return nu / 2.0 + 0.5 - (a_const * q / 2.0) * u ** q

    return DriftFn(x_grid=grid, values=np.asarray(mu, dtype=float), tail=tail)


@dataclass
class SdeResult:
    samples: np.ndarray
    mean: float
    var: float
    exkurt: float
    hist_edges: np.ndarray
    hist_density: np.ndarray
    n_steps: int
    burn_in_steps: int
    thin: int
    fixed_point: float


def sde_run(drift: DriftFn, cfg: SdeConfig, bins: int = 200) -> SdeResult:
    """Euler-Maruyama with reflection at the floor; returns thinned samples,
    a histogram, and empirical moments.

    Burn-in is ten mean-reversion half-lives (from the drift slope at its
    fixed point); samples are thinned by roughly one relaxation time.
    """
    x_star = drift.fixed_point()
    slope = drift.slope_at(x_star)
    lam = cfg.sigma_u ** 2 * abs(slope) / cfg.theta_u
    if lam <= 0:
        lam = 1.0
    burn_time = 10.0 * math.log(2.0) / lam
    n_total = int(round(cfg.horizon_years / cfg.dt))
    burn_steps = min(int(burn_time / cfg.dt) + 1, max(n_total // 2, 1))
    thin = max(1, int(round(0.5 / (lam * cfg.dt))))

    rng = np.random.default_rng(cfg.seed)
    sqrt_dt = math.sqrt(cfg.dt)
    s = np.full(cfg.n_paths, x_star * cfg.theta_u, dtype=float)
    keep = []
    for step in range(n_total):
        z = rng.standard_normal(cfg.n_paths)
        mu = drift(s / cfg.theta_u)
        s = s + cfg.sigma_u ** 2 * mu * cfg.dt \
            + cfg.sigma_u * np.sqrt(np.maximum(s, cfg.reflect_floor)) * sqrt_dt * z
        s = np.where(s < cfg.reflect_floor,
                     cfg.reflect_floor + (cfg.reflect_floor - s), s)
        if np.any(s > cfg.ceiling):
            raise Exploded(f"path exceeded ceiling {cfg.ceiling} at step {step}")
        if step >= burn_steps and (step - burn_steps) % thin == 0:
            keep.append(s.copy())
    if not keep:
        raise InvalidParams("horizon too short: no samples past burn-in")
    samples = np.concatenate(keep)
    mean = float(samples.mean())
    var = float(samples.var())
    m4 = float(((samples - mean) ** 4).mean())
    exkurt = m4 / var ** 2 - 3.0 if var > 0 else math.nan
    density, edges = np.histogram(samples, bins=bins, density=True)
    return SdeResult(samples=samples, mean=mean, var=var, exkurt=exkurt,
                     hist_edges=edges, hist_density=density,
                     n_steps=n_total, burn_in_steps=burn_steps, thin=thin,
                     fixed_point=x_star)


def sample_gsas(shape: FcmShape, cfg: SdeConfig, count: int,
                policy: SeriesPolicy = DEFAULT_POLICY) -> np.ndarray:
    """count draws of X = N / S with S from the stationary mixing stream."""
    if shape.k <= 0:
        raise DomainError("sampler needs k > 0")
    rng = np.random.default_rng(cfg.seed + 1)
    if shape.alpha == 2.0:
        # the mixing law is a point mass; draws are exactly normal
        return rng.standard_normal(count) / sigma_scale(shape)
    s = _stationary_stream(make_fcm_drift(shape, cfg, policy=policy), cfg, count)
    return rng.standard_normal(count) / s


def sample_gep(shape, cfg: SdeConfig, count: int,
               policy: SeriesPolicy = DEFAULT_POLICY) -> np.ndarray:
    """count draws of X = S N with S from the inverse-law stream (product route)."""
    fshape = FcmShape(alpha=shape.alpha, k=shape.k)
    s = _stationary_stream(make_fcm_drift(fshape, cfg, inverse=True, policy=policy),
                           cfg, count)
    rng = np.random.default_rng(cfg.seed + 1)
    return s * rng.standard_normal(count)


def _stationary_stream(drift: DriftFn, cfg: SdeConfig, count: int) -> np.ndarray:
    # extend the horizon until the thinned stream is long enough
    x_star = drift.fixed_point()
    lam = cfg.sigma_u ** 2 * abs(drift.slope_at(x_star)) / cfg.theta_u
    thin = max(1, int(round(0.5 / (max(lam, 1e-12) * cfg.dt))))
    burn = 10.0 * math.log(2.0) / max(lam, 1e-12)
    need_years = burn + (count / cfg.n_paths + 2) * thin * cfg.dt
    run_cfg = SdeConfig(dt=cfg.dt, sigma_u=cfg.sigma_u, theta_u=cfg.theta_u,
                        horizon_years=max(cfg.horizon_years, need_years),
                        seed=cfg.seed, drift_cache_step=cfg.drift_cache_step,
                        reflect_floor=cfg.reflect_floor, ceiling=cfg.ceiling,
                        n_paths=cfg.n_paths)
    res = sde_run(drift, run_cfg)
    if res.samples.size < count:
        raise InvalidParams(f"stream too short: {res.samples.size} < {count}")
    return res.samples[:count]
