#pragma once

#include <string>

#include "nonexch/copula.hpp"
#include "nonexch/empirical.hpp"
#include "nonexch/rng.hpp"

namespace nonexch {

enum class Family {
    independence,
    gaussian,
    clayton,
    fgm,
    m_theta,
};

/// A copula family tag plus its parameter (ignored for independence).
struct FamilySpec {
    Family family = Family::independence;
    double param = 0.0;

    /// The analytic counterpart; used as the sampling oracle in tests.
    Copula copula() const;
    std::string name() const;
};

FamilySpec parse_family(const std::string& name, double param);

/// n i.i.d. pairs with uniform(0,1) marginals and the requested copula.
/// Gaussian pairs come from correlating two inverse-CDF normals; Clayton and
/// FGM from conditional inversion; m_theta from the circular shift
/// v = u + theta mod 1, whose CDF is exactly the shifted-min formula.
Sample sample(const FamilySpec& spec, int n, RngStream& rng);

/// Mixture alpha * M_{1/3} + (1-alpha) * M_{1/3}^t: each draw keeps the
/// (u,v) pair with probability alpha and swaps it otherwise.
Sample sample_m1_mixture(double alpha, int n, RngStream& rng);

}  // namespace nonexch
