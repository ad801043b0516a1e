#pragma once

#include <optional>
#include <utility>

#include "nonexch/copula.hpp"

namespace nonexch {

/// Uniform evaluation grid: nodes j/G, j = 1..G.
struct GridSpec {
    int points = 200;
};

/// L^p exponent: a finite real >= 1, or infinity.
class PNorm {
public:
    PNorm(double p);  // NOLINT(google-explicit-constructor): 1, 2, inf read naturally
    static PNorm inf();
    bool is_inf() const noexcept;
    double value() const noexcept { return p_; }  // +inf when is_inf()

private:
    double p_;
};

/// Asymmetry/dependence summary with the slack of both sharp bounds:
/// mu_p <= (2/c_p) sigma_p for every p, and for p = 1 the chain continues
/// with sigma_1 <= 2 - |rho| (tight at the Frechet bounds).
struct MeasureReport {
    double mu_p = 0.0;
    double sigma_p = 0.0;
    double rho = 0.0;
    PNorm p;
    int grid = 0;
    double bound1_slack = 0.0;                 // 2 sigma_p / c_p - mu_p
    std::optional<double> bound2_slack;        // (2 - |rho|)/6 - sigma_1/6, p = 1 only
};

/// Normalisation constant of the Schweizer-Wolff measure:
/// ((2p+2)! / (2 (p!)^2))^(1/p) for finite p, 4 at infinity.
/// Finite p above 20 is rejected (factorial overflow guard).
double c_p(PNorm p);

/// Supremum of mu_p over all copulas:
/// (2 * 3^-p / ((p+1)(p+2)))^(1/p) for finite p, 1/3 at infinity.
double k_mu(PNorm p);

/// Raw (unnormalised) asymmetry mu_p(C) = d_p(C, C^t) on the grid. All
/// numeric values quoted by the underlying theory are raw; divide by
/// k_mu(p) via mu_p_normalized for the [0,1] scale.
double mu_p(const Copula& c, PNorm p, GridSpec grid = {});

/// mu_p / k_mu(p), in [0, 1 + O(1/G)].
double mu_p_normalized(const Copula& c, PNorm p, GridSpec grid = {});

/// Schweizer-Wolff dependence sigma_p(C) = c_p * d_p(C, Pi) on the grid.
double sigma_p(const Copula& c, PNorm p, GridSpec grid = {});

/// Spearman's rho(C) = 12 int C du dv - 3, midpoint rule on the grid.
double spearman_rho(const Copula& c, GridSpec grid = {});

/// Closed forms for the shifted-min family, theta in [0, 1/3].
double rho_m_theta(double theta);   ///< 1 - 6 theta + 6 theta^2
double tau_m_theta(double theta);   ///< (1 - 2 theta)^2

/// Full report; bound2_slack present only for p = 1.
MeasureReport bound_report(const Copula& c, PNorm p, GridSpec grid = {});

/// Feasible Spearman range [2 mu0 - 1, 1 - 4 mu0] for a prescribed
/// asymmetry mu0 in [0, 1/3] in the shifted-min mixture construction.
std::pair<double, double> feasible_rho_range(double mu0);

/// Transpose-mixing weight alpha = (1 + mu0/muC)/2 in [1/2, 1] achieving
/// mu_p(alpha C + (1-alpha) C^t) = mu0; requires 0 <= mu0 <= muC, muC > 0.
double prescribe_alpha(double mu0, double muC);

/// Symmetric-mixing weight alpha = mu0/muC achieving
/// mu_p(alpha C + (1-alpha) S) = mu0.
double prescribe_alpha_symmetric(double mu0, double muC);

}  // namespace nonexch
