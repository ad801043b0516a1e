"""Non-exchangeability measures, sharp bounds and the coordinate-swap
permutation test for bivariate copulas."""

from ._nonexch import (
    PERTURBATION_C_MAX,
    ConfigError,
    Copula,
    DataError,
    PseudoSample,
    Rect,
    TestResult,
    __version__,
    bound_report,
    c_p,
    convex3,
    empirical_copula,
    feasible_rho_range,
    k_mu,
    mix_symmetric,
    mix_transpose,
    mu_p,
    mu_p_normalized,
    norm_cdf,
    norm_quantile,
    parse_copula,
    prescribe_alpha,
    prescribe_alpha_symmetric,
    pseudo_observations,
    rho_m_theta,
    run_demo,
    run_level,
    run_power,
    run_test,
    sample_family,
    sample_kendall,
    sample_spearman,
    sigma_p,
    spearman_rho,
    t_statistic,
    tau_m_theta,
)

__all__ = [
    "PERTURBATION_C_MAX",
    "ConfigError",
    "Copula",
    "DataError",
    "PseudoSample",
    "Rect",
    "TestResult",
    "__version__",
    "bound_report",
    "c_p",
    "convex3",
    "empirical_copula",
    "feasible_rho_range",
    "k_mu",
    "mix_symmetric",
    "mix_transpose",
    "mu_p",
    "mu_p_normalized",
    "norm_cdf",
    "norm_quantile",
    "parse_copula",
    "prescribe_alpha",
    "prescribe_alpha_symmetric",
    "pseudo_observations",
    "rho_m_theta",
    "run_demo",
    "run_level",
    "run_power",
    "run_test",
    "sample_family",
    "sample_kendall",
    "sample_spearman",
    "sigma_p",
    "spearman_rho",
    "t_statistic",
    "tau_m_theta",
]
