"""Wright-function distribution family.

One-sided generalized stable counts and fractional chi-mean laws, the
two-sided symmetric/skew alpha-stable extensions with degrees of freedom,
their multivariate forms, square-root-diffusion samplers, and the contour
fitter for heavy-tailed return data.
"""

from . import errors
from .fcm import (
    FcmShape,
    fcm_inverse_pdf,
    fcm_mean,
    fcm_mean_limit,
    fcm_moment,
    fcm_pdf,
    fcm_pdf_asymptotic,
    inverse_distribution,
    sigma_scale,
)
from .fit import (
    FitResult,
    FitTarget,
    ReturnSeries,
    contour_grid,
    fit_bivariate,
    fit_series,
    fit_skew,
    read_returns_csv,
    summarize,
    trace_solution,
)
from .gas import OscQuadSpec, SkewShape, gas_pdf, gas_symmetry_check, skew_kernel
from .gep import GepShape, gep_cdf, gep_exkurt, gep_moment, gep_pdf, gep_peak
from .gsas import (
    GsasMoments,
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
from .gsc import (
    GgParams,
    GscParams,
    gg_pdf,
    gsc_mgf,
    gsc_moment,
    gsc_norm_const,
    gsc_pdf,
    gsc_pdf_asymptotic,
)
from .multivariate import (
    CovMatrix,
    MvShapes,
    covariance_adjust,
    mv_adp_pdf,
    mv_adp_summary,
    mv_ell_pdf,
    mv_ell_summary,
    peak_ratio_correlation,
)
from .quadrature import QuadSpec
from .simulate import (
    DriftFn,
    SdeConfig,
    drift_mu_fcm,
    drift_mu_fcm_inverse,
    drift_mu_fcm_ratio_neg,
    drift_mu_gsc,
    sample_gep,
    sample_gsas,
    sde_run,
)
from .special import (
    SeriesPolicy,
    Wright4Args,
    WrightArgs,
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

__version__ = "0.1.0"
