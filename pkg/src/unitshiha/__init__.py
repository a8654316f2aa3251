"""unitshiha: the unit Shiha distribution and its benchmarking toolkit.

Exact evaluation, moments, entropy, stress-strength reliability, quantiles
and random variates for the unit Shiha law; maximum-likelihood fitting with
bootstrap confidence intervals for it and seven classical unit-interval
competitors; goodness-of-fit comparison (AIC/AICC/BIC/HQIC, KS test) and a
Monte Carlo estimator-quality harness.
"""

from .core import (
    ConvergenceError,
    MomentSummary,
    StressStrengthInput,
    UShParams,
    rejection_envelope_constant,
    sh_cdf,
    sh_pdf,
    ush_cdf,
    ush_entropy,
    ush_hazard,
    ush_log_pdf,
    ush_mgf,
    ush_moment_summary,
    ush_pdf,
    ush_quantile,
    ush_raw_moment,
    ush_sample,
    ush_sample_rejection,
    ush_stress_strength,
)
from .datasets import BUNDLED_DATASETS, IngestionError, UnitSample, load_dataset
from .families import (
    DEFAULT_PARAM_BOUNDS,
    FAMILIES,
    FAMILY_ORDER,
    DistFamily,
    ParamVector,
    dist_cdf,
    dist_log_pdf,
    dist_pdf,
    dist_quantile,
    get_family,
)
from .fitting import (
    BootstrapCI,
    FitResult,
    bootstrap_ci,
    fit_mle,
    ush_log_likelihood,
    ush_score,
)
from .gof import (
    DescriptiveStats,
    GofReport,
    descriptive_stats,
    evaluate_fit,
    info_criteria,
    ks_pvalue,
    ks_statistic,
    pp_qq_points,
    ttt_points,
)
from .report import AnalysisReport, analyze_dataset, emit_report
from .simulation import SimCellResult, SimConfig, run_cell, run_study
from .special import log_gamma, reg_inc_beta

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BUNDLED_DATASETS",
    "BootstrapCI",
    "ConvergenceError",
    "DEFAULT_PARAM_BOUNDS",
    "DescriptiveStats",
    "DistFamily",
    "FAMILIES",
    "FAMILY_ORDER",
    "FitResult",
    "GofReport",
    "IngestionError",
    "MomentSummary",
    "ParamVector",
    "SimCellResult",
    "SimConfig",
    "StressStrengthInput",
    "UShParams",
    "UnitSample",
    "analyze_dataset",
    "bootstrap_ci",
    "descriptive_stats",
    "dist_cdf",
    "dist_log_pdf",
    "dist_pdf",
    "dist_quantile",
    "emit_report",
    "evaluate_fit",
    "fit_mle",
    "get_family",
    "info_criteria",
    "ks_pvalue",
    "ks_statistic",
    "load_dataset",
    "log_gamma",
    "pp_qq_points",
    "reg_inc_beta",
    "rejection_envelope_constant",
    "run_cell",
    "run_study",
    "sh_cdf",
    "sh_pdf",
    "ttt_points",
    "ush_cdf",
    "ush_entropy",
    "ush_hazard",
    "ush_log_pdf",
    "ush_log_likelihood",
    "ush_mgf",
    "ush_moment_summary",
    "ush_pdf",
    "ush_quantile",
    "ush_raw_moment",
    "ush_sample",
    "ush_sample_rejection",
    "ush_score",
    "ush_stress_strength",
]
