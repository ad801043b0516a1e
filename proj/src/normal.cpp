#include "nonexch/normal.hpp"

#include <cmath>
#include <limits>

namespace nonexch {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kSeriesCutoff = 8.0;

// Phi(x) - 1/2 = phi(x) * (x + x^3/3 + x^5/(3*5) + ...). Converges for all
// x; practical up to the cutoff where the tail switches to the continued
// fraction. Terms decrease once 2k+3 > x^2.
double cdf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 400; ++k) {
        term *= x2 / static_cast<double>(2 * k + 1);
        const double prev = sum;
        sum += term;
        if (sum == prev) break;
    }
    return 0.5 + norm_pdf(x) * sum;
}

// Upper tail 1 - Phi(x) = phi(x) / (x + 1/(x + 2/(x + 3/(x + ...)))) for
// x > 0 (Laplace continued fraction), evaluated by modified Lentz until the
// running correction converges. Full double relative accuracy for x >= 2,
// where the direct series would lose precision to cancellation.
double tail_cf(double x) {
    constexpr double tiny = 1e-300;
    double f = x, c = x, d = 0.0;
    for (int k = 1; k < 500; ++k) {
        const double ak = static_cast<double>(k);
        d = x + ak * d;
        if (d == 0.0) d = tiny;
        c = x + ak / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return norm_pdf(x) / f;
}

}  // namespace

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double norm_cdf(double x) {
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    if (x > 38.0) return 1.0;
    if (x < -38.0) return 0.0;
    // Lower tail via the continued fraction: the series result 1/2 - phi*S
    // cancels there and its absolute eps-level noise would be a large
    // relative error in a tiny tail probability.
    if (x < -2.0) return tail_cf(-x);
    if (x > kSeriesCutoff) return 1.0 - tail_cf(x);
    return cdf_series(x);
}

double norm_quantile(double p) {
    if (std::isnan(p) || p < 0.0 || p > 1.0)
        return std::numeric_limits<double>::quiet_NaN();
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    if (p == 0.5) return 0.0;
    // Work in the lower half and mirror.
    if (p > 0.5) return -norm_quantile(1.0 - p);

    // Asymptotic start: Phi(-x) ~ phi(x)/x gives
    // x ~ sqrt(-2 log p - log(2 pi) - 2 log x), iterated twice.
    double x;
    if (p < 0.1) {
        double t = std::sqrt(-2.0 * std::log(p));
        for (int i = 0; i < 2; ++i) {
            const double inner = -2.0 * std::log(p) - std::log(2.0 * 3.14159265358979323846) - 2.0 * std::log(t);
            if (inner > 0.0) t = std::sqrt(inner);
        }
        x = -t;
    } else {
        x = (p - 0.5) * kSqrt2Pi;  // first-order expansion around the median
    }

    // Bracketed Newton iteration. Phi is strictly increasing, so a simple
    // bisection fallback keeps every step inside the bracket.
    double lo = -40.0, hi = 0.0;
    for (int it = 0; it < 60; ++it) {
        const double f = norm_cdf(x) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double d = norm_pdf(x);
        double step = (d > 0.0) ? f / d : 0.0;
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * (1.0 + std::abs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

}  // namespace nonexch
