#include "nonexch/samplers.hpp"

#include <cmath>

#include "nonexch/errors.hpp"
#include "nonexch/normal.hpp"

namespace nonexch {

namespace {

void validate(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::independence:
            return;
        case Family::gaussian:
            if (!(spec.param > -1.0 && spec.param < 1.0))
                throw ConfigError("gaussian correlation must lie in (-1, 1)");
            return;
        case Family::clayton:
            if (!(spec.param > 0.0)) throw ConfigError("clayton parameter must be > 0");
            return;
        case Family::fgm:
            if (!(spec.param >= -1.0 && spec.param <= 1.0))
                throw ConfigError("fgm parameter must lie in [-1, 1]");
            return;
        case Family::m_theta:
            if (!(spec.param >= 0.0 && spec.param <= 1.0 / 3.0))
                throw ConfigError("m_theta parameter must lie in [0, 1/3]");
            return;
    }
    throw ConfigError("unknown family");
}

inline std::pair<double, double> draw_gaussian(double r, RngStream& rng) {
    const double z1 = norm_quantile(rng.uniform01());
    const double z2 = norm_quantile(rng.uniform01());
    const double y = r * z1 + std::sqrt((1.0 - r) * (1.0 + r)) * z2;
    return {norm_cdf(z1), norm_cdf(y)};
}

inline std::pair<double, double> draw_clayton(double theta, RngStream& rng) {
    const double u = rng.uniform01();
    const double w = rng.uniform01();
    const double v =
        std::pow(std::pow(u, -theta) * (std::pow(w, -theta / (theta + 1.0)) - 1.0) + 1.0,
                 -1.0 / theta);
    return {u, v};
}

inline std::pair<double, double> draw_fgm(double theta, RngStream& rng) {
    const double u = rng.uniform01();
    const double w = rng.uniform01();
    // Conditional CDF v (1 + a (1 - v)) = w with a = theta (1 - 2u); the
    // rationalised root 2w / (b + sqrt(b^2 - 4aw)) is the one in [0,1] and
    // degrades gracefully to the linear solution v = w as a -> 0.
    const double a = theta * (1.0 - 2.0 * u);
    const double b = 1.0 + a;
    const double v = 2.0 * w / (b + std::sqrt(b * b - 4.0 * a * w));
    return {u, v};
}

inline std::pair<double, double> draw_shift(double theta, RngStream& rng) {
    const double u = rng.uniform01();
    double v = u + theta;
    if (v >= 1.0) v -= 1.0;
    return {u, v};
}

}  // namespace

Copula FamilySpec::copula() const {
    validate(*this);
    switch (family) {
        case Family::independence: return Copula::independence();
        case Family::gaussian: return Copula::gaussian(param);
        case Family::clayton: return Copula::clayton(param);
        case Family::fgm: return Copula::fgm(param);
        case Family::m_theta: return Copula::m_theta(param);
    }
    throw ConfigError("unknown family");
}

std::string FamilySpec::name() const {
    switch (family) {
        case Family::independence: return "independence";
        case Family::gaussian: return "gaussian";
        case Family::clayton: return "clayton";
        case Family::fgm: return "fgm";
        case Family::m_theta: return "m_theta";
    }
    return "?";
}

FamilySpec parse_family(const std::string& name, double param) {
    FamilySpec spec;
    if (name == "independence" || name == "pi") spec.family = Family::independence;
    else if (name == "gaussian") spec.family = Family::gaussian;
    else if (name == "clayton") spec.family = Family::clayton;
    else if (name == "fgm") spec.family = Family::fgm;
    else if (name == "m_theta") spec.family = Family::m_theta;
    else throw ConfigError("unknown family '" + name + "'");
    spec.param = param;
    validate(spec);
    return spec;
}

Sample sample(const FamilySpec& spec, int n, RngStream& rng) {
    validate(spec);
    if (n < 2) throw ConfigError("sample size must be at least 2");
    Sample s;
    s.xy.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        switch (spec.family) {
            case Family::independence:
                s.xy.emplace_back(rng.uniform01(), rng.uniform01());
                break;
            case Family::gaussian:
                s.xy.push_back(draw_gaussian(spec.param, rng));
                break;
            case Family::clayton:
                s.xy.push_back(draw_clayton(spec.param, rng));
                break;
            case Family::fgm:
                s.xy.push_back(draw_fgm(spec.param, rng));
                break;
            case Family::m_theta:
                s.xy.push_back(draw_shift(spec.param, rng));
                break;
        }
    }
    return s;
}

Sample sample_m1_mixture(double alpha, int n, RngStream& rng) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("mixture weight must lie in [0, 1]");
    if (n < 2) throw ConfigError("sample size must be at least 2");
    Sample s;
    s.xy.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto [u, v] = draw_shift(1.0 / 3.0, rng);
        if (!(rng.uniform01() < alpha)) std::swap(u, v);
        s.xy.emplace_back(u, v);
    }
    return s;
}

}  // namespace nonexch
