#pragma once

#include <memory>
#include <string>

namespace nonexch {

namespace detail {
struct CopulaNode;
}

/// Axis-aligned rectangle [u_lo, u_hi] x [v_lo, v_hi] inside the unit square.
struct Rect {
    double u_lo, u_hi, v_lo, v_hi;
};

/// Largest admissible coefficient for perturbed_product(). The density of
/// Pi + c*A is 1 + c * d2A/dudv, whose minimum over the unit square is -1,
/// attained at the corners (1,0) and (0,1); any |c| <= 1 therefore keeps the
/// density nonnegative. tools/perturbation_scan.cpp reproduces the number
/// from a 1000x1000 discrete density scan.
inline constexpr double kPerturbationCmax = 1.0;

/// Absolute tolerance of the one-dimensional quadrature behind the gaussian
/// family; every gaussian evaluation is accurate to this level.
inline constexpr double kGaussQuadTol = 1e-7;

/// An immutable, evaluable copula expression: family leaves combined by
/// transpose, survival and convex mixing. Evaluation is pure and safe to
/// call concurrently from any number of threads.
class Copula {
public:
    // -- family leaves ------------------------------------------------------
    static Copula independence();               ///< Pi(u,v) = u v
    static Copula frechet_upper();              ///< M(u,v) = min(u,v)
    static Copula frechet_lower();              ///< W(u,v) = max(u+v-1, 0)
    static Copula gaussian(double r);           ///< correlation r in (-1,1)
    static Copula clayton(double theta);        ///< theta > 0
    static Copula fgm(double theta);            ///< theta in [-1,1]
    /// Shifted-min family M_theta(u,v) = min{u, v, (u-1+theta)^+ + (v-theta)^+},
    /// theta in [0, 1/3]; maximally asymmetric at theta = 1/3.
    static Copula m_theta(double theta);
    /// Pi + c * A with the antisymmetric polynomial
    /// A(u,v) = u v (1-u)(1-v)(u-v); requires |c| <= kPerturbationCmax.
    static Copula perturbed_product(double c);

    // -- evaluation ---------------------------------------------------------
    /// CDF value at (u,v); throws std::domain_error outside the unit square.
    double eval(double u, double v) const;
    double operator()(double u, double v) const { return eval(u, v); }

    /// C-volume of a rectangle; >= 0 for every valid copula (up to the
    /// evaluation accuracy of the leaves involved).
    double volume(const Rect& r) const;

    // -- algebra ------------------------------------------------------------
    Copula transpose() const;  ///< C^t(u,v) = C(v,u)
    Copula survival() const;   ///< u + v - 1 + C(1-u, 1-v)

    /// True when the expression is symmetric identically (leaf families that
    /// are exchangeable by definition, and symmetric compositions thereof).
    bool symmetric_by_construction() const;

    /// max |C(u,v) - C(v,u)| over an interior grid.
    double grid_asymmetry(int grid_points = 48) const;

    /// Canonical textual form, parseable by experiments::parse_copula.
    std::string describe() const;

private:
    explicit Copula(std::shared_ptr<const detail::CopulaNode> node);
    std::shared_ptr<const detail::CopulaNode> node_;

    friend Copula mix_transpose(const Copula& c, double alpha);
    friend Copula mix_symmetric(const Copula& c, const Copula& s, double alpha);
    friend Copula convex3(const Copula& c, double beta, double gamma, const Copula& s);
};

/// alpha C + (1-alpha) C^t, alpha in [0,1].
Copula mix_transpose(const Copula& c, double alpha);

/// alpha C + (1-alpha) S for a symmetric S, alpha in [0,1]. S must be
/// symmetric by construction or have grid asymmetry <= 1e-9.
Copula mix_symmetric(const Copula& c, const Copula& s, double alpha);

/// beta C + gamma C^t + (1-beta-gamma) S, beta, gamma >= 0, beta+gamma <= 1,
/// S symmetric as in mix_symmetric.
Copula convex3(const Copula& c, double beta, double gamma, const Copula& s);

}  // namespace nonexch
