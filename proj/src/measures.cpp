#include "nonexch/measures.hpp"

#include <cmath>
#include <limits>

#include "nonexch/errors.hpp"

namespace nonexch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxFiniteP = 20.0;

void validate_grid(GridSpec g) {
    if (g.points < 2) throw ConfigError("grid must have at least 2 points per axis");
}

void validate_constant_p(PNorm p) {
    if (!p.is_inf() && p.value() > kMaxFiniteP)
        throw ConfigError("finite p above 20 is rejected (factorial overflow guard)");
}

// Compensated (Kahan) accumulator; grid sums stay deterministic to the last
// bit because summation is sequential in a fixed order.
struct Kahan {
    double sum = 0.0, carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

template <typename F>
double grid_p_distance(PNorm p, GridSpec g, F&& diff) {
    const int G = g.points;
    if (p.is_inf()) {
        double worst = 0.0;
        for (int j = 1; j <= G; ++j) {
            const double u = static_cast<double>(j) / G;
            for (int k = 1; k <= G; ++k) {
                const double d = std::abs(diff(u, static_cast<double>(k) / G));
                if (d > worst) worst = d;
            }
        }
        return worst;
    }
    const double pv = p.value();
    Kahan acc;
    for (int j = 1; j <= G; ++j) {
        const double u = static_cast<double>(j) / G;
        for (int k = 1; k <= G; ++k) {
            const double d = std::abs(diff(u, static_cast<double>(k) / G));
            acc.add(pv == 1.0 ? d : std::pow(d, pv));
        }
    }
    return std::pow(acc.sum / (static_cast<double>(G) * G), 1.0 / pv);
}

}  // namespace

PNorm::PNorm(double p) : p_(p) {
    if (std::isnan(p) || p < 1.0) throw ConfigError("p must be a real >= 1 or infinity");
}

PNorm PNorm::inf() { return PNorm(kInf); }

bool PNorm::is_inf() const noexcept { return std::isinf(p_); }

double c_p(PNorm p) {
    validate_constant_p(p);
    if (p.is_inf()) return 4.0;
    const double pv = p.value();
    return std::exp((std::lgamma(2.0 * pv + 3.0) - std::log(2.0) - 2.0 * std::lgamma(pv + 1.0)) / pv);
}

double k_mu(PNorm p) {
    validate_constant_p(p);
    if (p.is_inf()) return 1.0 / 3.0;
    const double pv = p.value();
    return std::pow(2.0 * std::pow(3.0, -pv) / ((pv + 1.0) * (pv + 2.0)), 1.0 / pv);
}

double mu_p(const Copula& c, PNorm p, GridSpec grid) {
    validate_grid(grid);
    return grid_p_distance(p, grid, [&](double u, double v) { return c(u, v) - c(v, u); });
}

double mu_p_normalized(const Copula& c, PNorm p, GridSpec grid) {
    return mu_p(c, p, grid) / k_mu(p);
}

double sigma_p(const Copula& c, PNorm p, GridSpec grid) {
    validate_grid(grid);
    const double d = grid_p_distance(p, grid, [&](double u, double v) { return c(u, v) - u * v; });
    return c_p(p) * d;
}

double spearman_rho(const Copula& c, GridSpec grid) {
    validate_grid(grid);
    // Midpoint nodes: the O(1/G) bias of one-sided Riemann sums would
    // dominate the 12 int C - 3 estimate (it does not cancel the way it
    // does for copula differences), midpoint leaves O(1/G^2).
    const int G = grid.points;
    Kahan acc;
    for (int j = 1; j <= G; ++j) {
        const double u = (j - 0.5) / G;
        for (int k = 1; k <= G; ++k) acc.add(c(u, (k - 0.5) / G));
    }
    return 12.0 * acc.sum / (static_cast<double>(G) * G) - 3.0;
}

double rho_m_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0 / 3.0))
        throw ConfigError("m_theta parameter must lie in [0, 1/3]");
    return 1.0 - 6.0 * theta + 6.0 * theta * theta;
}

double tau_m_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0 / 3.0))
        throw ConfigError("m_theta parameter must lie in [0, 1/3]");
    const double t = 1.0 - 2.0 * theta;
    return t * t;
}

MeasureReport bound_report(const Copula& c, PNorm p, GridSpec grid) {
    validate_grid(grid);
    MeasureReport r{.mu_p = mu_p(c, p, grid),
                    .sigma_p = sigma_p(c, p, grid),
                    .rho = spearman_rho(c, grid),
                    .p = p,
                    .grid = grid.points};
    r.bound1_slack = 2.0 * r.sigma_p / c_p(p) - r.mu_p;
    // Second link of the p=1 chain: splitting int |C - Pi| by sign bounds
    // the positive part by int (M - Pi) = 1/12 and the negative part by
    // int (Pi - W) = 1/12, giving sigma_1 + rho <= 2 and sigma_1 - rho <= 2,
    // i.e. sigma_1 <= 2 - |rho| (tight at M and W).
    if (!p.is_inf() && p.value() == 1.0)
        r.bound2_slack = (2.0 - std::abs(r.rho)) / 6.0 - r.sigma_p / 6.0;
    return r;
}

std::pair<double, double> feasible_rho_range(double mu0) {
    if (!(mu0 >= 0.0 && mu0 <= 1.0 / 3.0))
        throw ConfigError("target asymmetry must lie in [0, 1/3]");
    return {2.0 * mu0 - 1.0, 1.0 - 4.0 * mu0};
}

double prescribe_alpha(double mu0, double muC) {
    if (!(muC > 0.0)) throw ConfigError("base copula asymmetry must be positive");
    if (!(mu0 >= 0.0 && mu0 <= muC))
        throw ConfigError("target asymmetry must lie in [0, mu_p(C)]");
    return 0.5 * (1.0 + mu0 / muC);
}

double prescribe_alpha_symmetric(double mu0, double muC) {
    if (!(muC > 0.0)) throw ConfigError("base copula asymmetry must be positive");
    if (!(mu0 >= 0.0 && mu0 <= muC))
        throw ConfigError("target asymmetry must lie in [0, mu_p(C)]");
    return mu0 / muC;
}

}  // namespace nonexch
