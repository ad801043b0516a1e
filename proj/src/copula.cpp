#include "nonexch/copula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <utility>

#include "nonexch/errors.hpp"
#include "nonexch/normal.hpp"

namespace nonexch {

namespace detail {

enum class Kind {
    independence,
    frechet_upper,
    frechet_lower,
    gaussian,
    clayton,
    fgm,
    shifted_min,
    perturbed,
    transpose,
    survival,
    mix_t,    // alpha C + (1-alpha) C^t
    mix_s,    // alpha C + (1-alpha) S
    convex3,  // beta C + gamma C^t + (1-beta-gamma) S
};

struct CopulaNode {
    Kind kind;
    double a = 0.0;                                  // family parameter / alpha / beta
    double b = 0.0;                                  // gamma (convex3)
    std::shared_ptr<const CopulaNode> child;         // C
    std::shared_ptr<const CopulaNode> partner;       // S
};

using NodePtr = std::shared_ptr<const CopulaNode>;

namespace {

double node_eval(const CopulaNode& n, double u, double v);

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

// Antisymmetric in an order-stable way: the u*v and (1-u)*(1-v) factors are
// evaluated symmetrically, so A(v,u) == -A(u,v) holds bit-exactly.
inline double perturbation_poly(double u, double v) {
    return (u * v) * ((1.0 - u) * (1.0 - v)) * (u - v);
}

// Adaptive Simpson with Richardson correction, absolute tolerance.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 24);
}

// C_r(u,v) = int_0^u Phi((Phi^-1(v) - r Phi^-1(t)) / sqrt(1-r^2)) dt,
// integrated in the substituted variable s = Phi^-1(t):
// int_{-inf}^{Phi^-1(u)} Phi((Phi^-1(v) - r s) / sqrt(1-r^2)) phi(s) ds,
// which keeps the quantile function out of the inner loop. The normal
// weight is truncated at |s| = 8.5 (mass below 1e-17, far under the
// quadrature tolerance).
double gaussian_eval(double r, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    if (r == 0.0) return u * v;
    const double yv = norm_quantile(v);
    const double sd = std::sqrt((1.0 - r) * (1.0 + r));
    const double lo = -8.5;
    const double hi = std::min(norm_quantile(u), 8.5);
    if (hi <= lo) return 0.0;
    auto f = [&](double t) { return norm_cdf((yv - r * t) / sd) * norm_pdf(t); };
    return integrate(f, lo, hi, kGaussQuadTol);
}

double clayton_eval(double theta, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    return std::pow(std::pow(u, -theta) + std::pow(v, -theta) - 1.0, -1.0 / theta);
}

double shifted_min_eval(double theta, double u, double v) {
    const double seg = pos(u - 1.0 + theta) + pos(v - theta);
    return std::min(std::min(u, v), seg);
}

double node_eval(const CopulaNode& n, double u, double v) {
    switch (n.kind) {
        case Kind::independence:
            return u * v;
        case Kind::frechet_upper:
            return std::min(u, v);
        case Kind::frechet_lower:
            return pos(u + v - 1.0);
        case Kind::gaussian:
            return gaussian_eval(n.a, u, v);
        case Kind::clayton:
            return clayton_eval(n.a, u, v);
        case Kind::fgm:
            return (u * v) * (1.0 + n.a * ((1.0 - u) * (1.0 - v)));
        case Kind::shifted_min:
            return shifted_min_eval(n.a, u, v);
        case Kind::perturbed:
            return u * v + n.a * perturbation_poly(u, v);
        case Kind::transpose:
            return node_eval(*n.child, v, u);
        case Kind::survival:
            return u + v - 1.0 + node_eval(*n.child, 1.0 - u, 1.0 - v);
        case Kind::mix_t:
            return n.a * node_eval(*n.child, u, v) + (1.0 - n.a) * node_eval(*n.child, v, u);
        case Kind::mix_s:
            return n.a * node_eval(*n.child, u, v) + (1.0 - n.a) * node_eval(*n.partner, u, v);
        case Kind::convex3:
            return n.a * node_eval(*n.child, u, v) + n.b * node_eval(*n.child, v, u) +
                   (1.0 - n.a - n.b) * node_eval(*n.partner, u, v);
    }
    return 0.0;  // unreachable
}

bool node_symmetric(const CopulaNode& n) {
    switch (n.kind) {
        case Kind::independence:
        case Kind::frechet_upper:
        case Kind::frechet_lower:
        case Kind::gaussian:
        case Kind::clayton:
        case Kind::fgm:
            return true;
        case Kind::shifted_min:
            return n.a == 0.0;
        case Kind::perturbed:
            return n.a == 0.0;
        case Kind::transpose:
        case Kind::survival:
            return node_symmetric(*n.child);
        case Kind::mix_t:
            return n.a == 0.5 || node_symmetric(*n.child);
        case Kind::mix_s:
            return n.a == 0.0 || node_symmetric(*n.child);
        case Kind::convex3:
            return n.a == n.b || node_symmetric(*n.child);
    }
    return false;
}

// Shortest decimal form that round-trips to the same double.
std::string format_double(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string node_describe(const CopulaNode& n) {
    switch (n.kind) {
        case Kind::independence: return "pi";
        case Kind::frechet_upper: return "m";
        case Kind::frechet_lower: return "w";
        case Kind::gaussian: return "gaussian:" + format_double(n.a);
        case Kind::clayton: return "clayton:" + format_double(n.a);
        case Kind::fgm: return "fgm:" + format_double(n.a);
        case Kind::shifted_min: return "m_theta:" + format_double(n.a);
        case Kind::perturbed: return "perturbed:" + format_double(n.a);
        case Kind::transpose: return "transpose:" + node_describe(*n.child);
        case Kind::survival: return "survival:" + node_describe(*n.child);
        case Kind::mix_t: return "mix_t:" + format_double(n.a) + ":" + node_describe(*n.child);
        case Kind::mix_s:
            return "mix_s:" + format_double(n.a) + ":" + node_describe(*n.child) + ":" +
                   node_describe(*n.partner);
        case Kind::convex3:
            return "convex3:" + format_double(n.a) + ":" + format_double(n.b) + ":" +
                   node_describe(*n.child) + ":" + node_describe(*n.partner);
    }
    return "";
}

NodePtr make_leaf(Kind k, double a = 0.0) {
    auto n = std::make_shared<CopulaNode>();
    n->kind = k;
    n->a = a;
    return n;
}

void require_param(bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
}

void require_symmetric_partner(const Copula& s) {
    if (!s.symmetric_by_construction() && s.grid_asymmetry() > 1e-9)
        throw ConfigError("mixing partner must be a symmetric copula (grid asymmetry > 1e-9)");
}

}  // namespace

}  // namespace detail

using detail::CopulaNode;
using detail::Kind;
using detail::NodePtr;

Copula::Copula(NodePtr node) : node_(std::move(node)) {}

Copula Copula::independence() { return Copula(detail::make_leaf(Kind::independence)); }
Copula Copula::frechet_upper() { return Copula(detail::make_leaf(Kind::frechet_upper)); }
Copula Copula::frechet_lower() { return Copula(detail::make_leaf(Kind::frechet_lower)); }

Copula Copula::gaussian(double r) {
    detail::require_param(std::isfinite(r) && r > -1.0 && r < 1.0,
                          "gaussian correlation must lie in (-1, 1)");
    return Copula(detail::make_leaf(Kind::gaussian, r));
}

Copula Copula::clayton(double theta) {
    detail::require_param(std::isfinite(theta) && theta > 0.0, "clayton parameter must be > 0");
    return Copula(detail::make_leaf(Kind::clayton, theta));
}

Copula Copula::fgm(double theta) {
    detail::require_param(std::isfinite(theta) && theta >= -1.0 && theta <= 1.0,
                          "fgm parameter must lie in [-1, 1]");
    return Copula(detail::make_leaf(Kind::fgm, theta));
}

Copula Copula::m_theta(double theta) {
    detail::require_param(std::isfinite(theta) && theta >= 0.0 && theta <= 1.0 / 3.0,
                          "m_theta parameter must lie in [0, 1/3]");
    return Copula(detail::make_leaf(Kind::shifted_min, theta));
}

Copula Copula::perturbed_product(double c) {
    detail::require_param(std::isfinite(c) && std::abs(c) <= kPerturbationCmax,
                          "perturbation coefficient exceeds the admissibility threshold");
    return Copula(detail::make_leaf(Kind::perturbed, c));
}

double Copula::eval(double u, double v) const {
    if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0))
        throw std::domain_error("copula arguments must lie in [0, 1]");
    return detail::node_eval(*node_, u, v);
}

double Copula::volume(const Rect& r) const {
    if (!(r.u_lo >= 0.0 && r.u_lo <= r.u_hi && r.u_hi <= 1.0 && r.v_lo >= 0.0 &&
          r.v_lo <= r.v_hi && r.v_hi <= 1.0))
        throw std::domain_error("invalid rectangle");
    return detail::node_eval(*node_, r.u_hi, r.v_hi) - detail::node_eval(*node_, r.u_lo, r.v_hi) -
           detail::node_eval(*node_, r.u_hi, r.v_lo) + detail::node_eval(*node_, r.u_lo, r.v_lo);
}

Copula Copula::transpose() const {
    auto n = std::make_shared<CopulaNode>();
    n->kind = Kind::transpose;
    n->child = node_;
    return Copula(std::move(n));
}

Copula Copula::survival() const {
    auto n = std::make_shared<CopulaNode>();
    n->kind = Kind::survival;
    n->child = node_;
    return Copula(std::move(n));
}

bool Copula::symmetric_by_construction() const { return detail::node_symmetric(*node_); }

double Copula::grid_asymmetry(int grid_points) const {
    const int g = grid_points < 2 ? 2 : grid_points;
    double worst = 0.0;
    for (int j = 1; j < g; ++j) {
        const double u = static_cast<double>(j) / g;
        for (int k = j + 1; k < g; ++k) {
            const double v = static_cast<double>(k) / g;
            worst = std::max(worst, std::abs(detail::node_eval(*node_, u, v) -
                                             detail::node_eval(*node_, v, u)));
        }
    }
    return worst;
}

std::string Copula::describe() const { return detail::node_describe(*node_); }

Copula mix_transpose(const Copula& c, double alpha) {
    detail::require_param(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
                          "mixing weight must lie in [0, 1]");
    auto n = std::make_shared<CopulaNode>();
    n->kind = Kind::mix_t;
    n->a = alpha;
    n->child = c.node_;
    return Copula(std::move(n));
}

Copula mix_symmetric(const Copula& c, const Copula& s, double alpha) {
    detail::require_param(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
                          "mixing weight must lie in [0, 1]");
    detail::require_symmetric_partner(s);
    auto n = std::make_shared<CopulaNode>();
    n->kind = Kind::mix_s;
    n->a = alpha;
    n->child = c.node_;
    n->partner = s.node_;
    return Copula(std::move(n));
}

Copula convex3(const Copula& c, double beta, double gamma, const Copula& s) {
    detail::require_param(std::isfinite(beta) && std::isfinite(gamma) && beta >= 0.0 &&
                              gamma >= 0.0 && beta + gamma <= 1.0 + 1e-12,
                          "convex weights must be nonnegative with beta + gamma <= 1");
    detail::require_symmetric_partner(s);
    auto n = std::make_shared<CopulaNode>();
    n->kind = Kind::convex3;
    n->a = beta;
    n->b = gamma;
    n->child = c.node_;
    n->partner = s.node_;
    return Copula(std::move(n));
}

}  // namespace nonexch
