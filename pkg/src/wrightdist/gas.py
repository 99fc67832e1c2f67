"""Skew-Gaussian kernel and the experimental skew extension of the symmetric family.

The kernel g(x, s) = (1/(q pi)) integral cos(tau (st)^a + (x/q) st) e^(-t^2/2) dt
carries all the skewness; the mixing density is untouched.  The oscillatory
t-integral is segmented at successive zeros of the cosine phase with
Gauss-Legendre rules per segment; the Gaussian factor makes the tail sum
absolutely convergent, so no sequence acceleration is needed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, OscillationTooFast, PositivityViolation
from .fcm import FcmShape, fcm_pdf, fcm_small_x_exponent, fcm_tail_cut
from .gsas import gsas_pdf
from .quadrature import DEFAULT_QUAD, QuadSpec, adaptive_quad, geometric_breaks

log = logging.getLogger(__name__)

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_GL8_X, _GL8_W = np.polynomial.legendre.leggauss(8)
# e^(-t^2/2) < 4e-17 past this point; contributions are below double noise
_T_FLOOR = 8.7
# widest allowed segment, so the Gaussian factor stays resolved by 8 nodes
_SEG_WIDTH = 0.35


@dataclass(frozen=True)
class OscQuadSpec:
    t_cut: float = 100.0
    zero_crossing_segmentation: bool = True
    rel_tol: float = 1e-10
    max_segments: int = 200000

    def __post_init__(self):
        if not self.t_cut > 0:
            raise InvalidParams("t_cut must be > 0")


DEFAULT_OSC = OscQuadSpec()


@dataclass(frozen=True)
class SkewShape:
    alpha: float
    k: float
    theta: float
    q: float = field(init=False)
    tau: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise InvalidParams(f"alpha must be in (0, 2], got {self.alpha}")
        if self.k == 0 or not np.isfinite(self.k):
            raise InvalidParams("k must be nonzero and finite")
        bound = min(self.alpha, 2.0 - self.alpha)
        if abs(self.theta) > bound:
            raise InvalidParams(
                f"theta {self.theta} outside the admissible diamond |theta| <= {bound}"
            )
        if abs(self.theta) >= 1.0:
            raise InvalidParams("theta = +-1 is excluded")
        if self.theta != 0.0 and self.k < 0:
            raise InvalidParams("skewness is only supported for k > 0")
        object.__setattr__(self, "q", math.cos(self.theta * math.pi / 2.0) ** (1.0 / self.alpha))
        object.__setattr__(self, "tau", math.tan(self.theta * math.pi / 2.0))

    def fcm(self) -> FcmShape:
        return FcmShape(alpha=self.alpha, k=self.k)


def _kernel_edges(shape: SkewShape, x: float, s: float, osc: OscQuadSpec) -> np.ndarray:
    """Segment edges for the cosine-phase integral on [0, t_cut].

    Segments are sized so the phase advances at most pi/2 per segment (hence
    every zero crossing of the cosine starts a fresh segment) and never wider
    than the Gaussian-resolution cap.  The power term's infinite slope at the
    origin (alpha < 1) gets a dedicated first cut.
    """
    q, tau, alpha = shape.q, shape.tau, shape.alpha
    t_hi = min(osc.t_cut, _T_FLOOR)
    c_pow = abs(tau) * s ** alpha
    c_lin = abs(x) * s / q
    if not osc.zero_crossing_segmentation:
        n = max(16, int(8 * (c_pow * t_hi ** alpha + c_lin * t_hi)))
        if n > osc.max_segments:
            raise OscillationTooFast(f"{n} segments exceed budget {osc.max_segments}")
        return np.linspace(0.0, t_hi, n + 1)
    half_pi = math.pi / 2.0
    head = t_hi
    if c_pow > 0 and alpha < 1.0:
        head = min((half_pi / c_pow) ** (1.0 / alpha), t_hi)
    slope_pow = alpha * c_pow * (head ** (alpha - 1.0) if alpha < 1.0
                                 else t_hi ** (alpha - 1.0))
    step = min(_SEG_WIDTH, half_pi / max(c_lin + slope_pow, 1e-12))
    n = int((t_hi - min(head, step)) / step) + 2
    if n > osc.max_segments:
        raise OscillationTooFast(f"{n} segments exceed budget {osc.max_segments}")
    start = min(head, step)
    body = np.arange(start, t_hi, step)
    edges = np.concatenate([[0.0], body, [t_hi]])
    if start > _SEG_WIDTH:
        edges = np.concatenate([edges, np.arange(_SEG_WIDTH, start, _SEG_WIDTH)])
    return np.unique(edges)


def _skew_kernel_batch(shape: SkewShape, x: float, s: np.ndarray,
                       osc: OscQuadSpec = DEFAULT_OSC) -> np.ndarray:
    """Kernel on an s-batch: segments from all s are pooled into one
    cos/exp evaluation, which is where the time goes."""
    q, tau, alpha = shape.q, shape.tau, shape.alpha
    s = np.atleast_1d(np.asarray(s, dtype=float))
    out = np.empty(s.shape)
    if shape.theta == 0.0:
        return np.exp(-0.5 * (x * s) ** 2) / _SQRT_2PI
    if alpha == 1.0:
        y = (tau + x / q) * s
        return np.exp(-0.5 * y * y) / (q * _SQRT_2PI)
    zero = s == 0.0
    out[zero] = 1.0 / (q * _SQRT_2PI)
    live = np.flatnonzero(~zero)
    if live.size == 0:
        return out
    sums = np.zeros(live.size)
    block_rows = 0
    mids, halves, owner = [], [], []

    def flush():
        nonlocal mids, halves, owner, block_rows
        if not mids:
            return
        mid = np.concatenate(mids)
        half = np.concatenate(halves)
        own = np.concatenate(owner)
        t = mid[:, None] + half[:, None] * _GL8_X[None, :]
        c_pow = tau * s[live] ** alpha
        c_lin = x * s[live] / q
        ph = c_pow[own, None] * t ** alpha + c_lin[own, None] * t
        seg = half * (np.cos(ph) * np.exp(-0.5 * t * t) @ _GL8_W)
        np.add.at(sums, own, seg)
        mids, halves, owner = [], [], []
        block_rows = 0

    for j, i in enumerate(live):
        edges = _kernel_edges(shape, x, float(s[i]), osc)
        mids.append(0.5 * (edges[1:] + edges[:-1]))
        halves.append(0.5 * (edges[1:] - edges[:-1]))
        owner.append(np.full(edges.size - 1, j))
        block_rows += edges.size - 1
        if block_rows >= 1_500_000:  # keep the pooled node matrix ~100 MB
            flush()
    flush()
    out[live] = sums / (q * math.pi)
    return out


def skew_kernel(shape: SkewShape, x: float, s: float,
                osc: OscQuadSpec = DEFAULT_OSC) -> float:
    """g(x, s) for s >= 0; collapses to N(xs) at theta = 0 and to a shifted
    normal at alpha = 1."""
    if s < 0:
        raise InvalidParams("s must be >= 0")
    return float(_skew_kernel_batch(shape, x, np.array([s]), osc)[0])


def gas_pdf(shape: SkewShape, x, spec: QuadSpec = DEFAULT_QUAD,
            osc: OscQuadSpec = DEFAULT_OSC):
    """Skew density: Gaussian part (1/q) L_(alpha,k)(x/q) plus the tail-kernel
    correction integral.

    theta = 0 falls through to the symmetric density exactly (same code
    path).  Densities below -1e-6 raise PositivityViolation: theta is outside
    the distribution's valid range.
    """
    fcm_shape = shape.fcm()
    if shape.theta == 0.0:
        return gsas_pdf(fcm_shape, x, spec)
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.isscalar(x) or getattr(x, "ndim", 1) == 0
    q = shape.q
    out = np.empty(xx.shape)
    cut = fcm_tail_cut(fcm_shape, min(spec.abs_tol, 1e-12))
    if shape.alpha < 0.5:
        # slow tail decay: the correction integral needs a generous s-range;
        # report the bound in use rather than truncating silently
        cut = max(cut, 1e3)
        log.info("small-alpha tail kernel: extending s-range to %.3g", cut)
    gamma0 = fcm_small_x_exponent(fcm_shape) + 1.0
    for i, xi in enumerate(xx):
        gauss_part = gsas_pdf(fcm_shape, xi / q, spec) / q

        def h_part(s):
            s = np.asarray(s, dtype=float)
            g = _skew_kernel_batch(shape, xi, s, osc)
            n = np.exp(-0.5 * (xi * s / q) ** 2) / (_SQRT_2PI * q)
            return s * (g - n) * fcm_pdf(fcm_shape, s)

        # the kernel oscillates in s on the scale q/|x|; seed panels fine
        # enough that the error estimator sees the oscillation
        breaks = geometric_breaks(0.0, cut, 14)
        if abs(xi) > 2.0:
            step = math.pi * q / (2.0 * abs(xi))
            n_uniform = int(min(cut, 80.0 * q / abs(xi) + 5.0) / step)
            if n_uniform < 4000:
                breaks = np.unique(np.concatenate([
                    breaks, step * np.arange(1, n_uniform + 1)]))
        corr, _ = adaptive_quad(
            h_part, 0.0, cut,
            QuadSpec(rel_tol=max(spec.rel_tol, 1e-7), abs_tol=max(spec.abs_tol, 1e-9),
                     max_panels=max(spec.max_panels, 8000)),
            breaks=breaks,
            power_at_zero=gamma0 if gamma0 < 1 else None,
        )
        val = gauss_part + corr
        if val < -1e-6:
            raise PositivityViolation(
                f"density {val:.3g} at x={xi}: theta={shape.theta} outside valid range"
            )
        out[i] = val
    return float(out[0]) if scalar else out


def gas_symmetry_check(shape: SkewShape, x: float,
                       spec: QuadSpec = DEFAULT_QUAD,
                       osc: OscQuadSpec = DEFAULT_OSC):
    """Evaluates (L(-x; theta), L(x; -theta)); the pair must agree."""
    mirrored = SkewShape(alpha=shape.alpha, k=shape.k, theta=-shape.theta)
    return (float(gas_pdf(shape, -x, spec, osc)),
            float(gas_pdf(mirrored, x, spec, osc)))
