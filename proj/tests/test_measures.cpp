#include <doctest.h>

#include <cmath>
#include <vector>

#include "nonexch/errors.hpp"
#include "nonexch/measures.hpp"
#include "nonexch/rng.hpp"

using namespace nonexch;

namespace {
const PNorm kInf = PNorm::inf();

// expected == 0 demands machine zero; otherwise relative comparison.
void check_rel(double got, double expected, double rel, double zero_floor) {
    if (expected == 0.0) {
        CHECK(std::abs(got) <= zero_floor);
    } else {
        CHECK(std::abs(got - expected) <= rel * std::abs(expected));
    }
}
}  // namespace

TEST_CASE("closed-form constants") {
    CHECK(std::abs(c_p(PNorm(1.0)) - 12.0) <= 1e-12);
    CHECK(std::abs(c_p(PNorm(2.0)) - std::sqrt(90.0)) <= 1e-12);
    CHECK(c_p(kInf) == 4.0);
    CHECK(std::abs(k_mu(PNorm(1.0)) - 1.0 / 9.0) <= 1e-12);
    CHECK(std::abs(k_mu(PNorm(2.0)) - std::sqrt(1.0 / 54.0)) <= 1e-12);
    CHECK(std::abs(k_mu(kInf) - 1.0 / 3.0) <= 1e-12);
    CHECK_THROWS_AS(c_p(PNorm(20.5)), ConfigError);
    CHECK_THROWS_AS(k_mu(PNorm(21.0)), ConfigError);
    CHECK_THROWS_AS(PNorm(0.5), ConfigError);
    CHECK_THROWS_AS(PNorm(std::nan("")), ConfigError);
}

TEST_CASE("mu_p examples") {
    const GridSpec g{500};
    for (double p : {1.0, 2.0}) CHECK(mu_p(Copula::independence(), PNorm(p), g) == 0.0);
    CHECK(mu_p(Copula::independence(), kInf, g) == 0.0);
    CHECK(std::abs(mu_p(Copula::m_theta(1.0 / 3.0), kInf, g) - 1.0 / 3.0) <= 2.0 / g.points);
    CHECK(std::abs(mu_p(Copula::m_theta(1.0 / 6.0), kInf, g) - 1.0 / 6.0) <= 2.0 / g.points);
    CHECK(std::abs(mu_p(Copula::m_theta(0.25), kInf, g) - 0.25) <= 2.0 / g.points);
    CHECK_THROWS_AS(mu_p(Copula::independence(), PNorm(1.0), GridSpec{1}), ConfigError);
}

TEST_CASE("sigma_p examples") {
    const GridSpec g{200};
    CHECK(sigma_p(Copula::independence(), PNorm(1.0), g) == 0.0);
    // 12 * int (M - Pi) = 12/12 = 1, and symmetrically for W.
    CHECK(std::abs(sigma_p(Copula::frechet_upper(), PNorm(1.0), g) - 1.0) <= 2.0 / g.points);
    CHECK(std::abs(sigma_p(Copula::frechet_lower(), PNorm(1.0), g) - 1.0) <= 2.0 / g.points);
    // sigma_inf(M) = 4 sup (min(u,v) - uv) = 4 * 1/4 = 1.
    CHECK(std::abs(sigma_p(Copula::frechet_upper(), kInf, g) - 1.0) <= 8.0 / g.points);
}

TEST_CASE("normalized mu_p") {
    const GridSpec g{500};
    CHECK(std::abs(mu_p_normalized(Copula::m_theta(1.0 / 3.0), kInf, g) - 1.0) <=
          6.0 / g.points);
    CHECK(mu_p_normalized(Copula::independence(), PNorm(1.0), g) == 0.0);
    const Copula mixed = mix_transpose(Copula::m_theta(1.0 / 3.0), 0.75);
    CHECK(std::abs(mu_p_normalized(mixed, kInf, g) - 0.5) <= 9.0 / g.points);
}

TEST_CASE("spearman rho by quadrature") {
    const GridSpec g{200};
    CHECK(std::abs(spearman_rho(Copula::independence(), g)) <= 2.0 / g.points);
    CHECK(std::abs(spearman_rho(Copula::frechet_upper(), g) - 1.0) <= 3.0 / g.points);
    CHECK(std::abs(spearman_rho(Copula::frechet_lower(), g) + 1.0) <= 3.0 / g.points);
    CHECK(std::abs(spearman_rho(Copula::m_theta(1.0 / 3.0), g) + 1.0 / 3.0) <= 3.0 / g.points);
    for (double theta : {0.0, 1.0 / 6.0, 0.25, 1.0 / 3.0}) {
        CAPTURE(theta);
        CHECK(std::abs(spearman_rho(Copula::m_theta(theta), g) - rho_m_theta(theta)) <=
              3.0 / g.points);
    }
}

TEST_CASE("closed-form concordance of the shifted-min family") {
    CHECK(rho_m_theta(0.0) == 1.0);
    CHECK(std::abs(rho_m_theta(1.0 / 3.0) + 1.0 / 3.0) <= 1e-15);
    CHECK(std::abs(rho_m_theta(1.0 / 6.0) - 1.0 / 6.0) <= 1e-15);
    CHECK(tau_m_theta(0.0) == 1.0);
    CHECK(std::abs(tau_m_theta(1.0 / 3.0) - 1.0 / 9.0) <= 1e-15);
    CHECK(std::abs(tau_m_theta(0.25) - 0.25) <= 1e-15);
    CHECK_THROWS_AS(rho_m_theta(0.4), ConfigError);
    CHECK_THROWS_AS(tau_m_theta(-0.1), ConfigError);
}

TEST_CASE("transpose-mixing scaling law is exact on the grid") {
    const GridSpec g{100};
    const std::vector<Copula> bases = {Copula::m_theta(1.0 / 3.0), Copula::m_theta(0.25),
                                       Copula::perturbed_product(kPerturbationCmax)};
    const std::vector<PNorm> ps = {PNorm(1.0), PNorm(2.0), kInf};
    for (const auto& c : bases) {
        CAPTURE(c.describe());
        for (const auto& p : ps) {
            const double base = mu_p(c, p, g);
            for (int i = 0; i <= 10; ++i) {
                const double alpha = i / 10.0;
                const double got = mu_p(mix_transpose(c, alpha), p, g);
                check_rel(got, std::abs(2.0 * alpha - 1.0) * base, 1e-12, 1e-12 * base);
            }
        }
    }
}

TEST_CASE("symmetric-mixing law and general convex combination") {
    const GridSpec g{100};
    const Copula pi = Copula::independence();
    const std::vector<PNorm> ps = {PNorm(1.0), PNorm(2.0), kInf};
    for (const auto& c : {Copula::m_theta(1.0 / 3.0), Copula::perturbed_product(0.8)}) {
        CAPTURE(c.describe());
        for (const auto& p : ps) {
            const double base = mu_p(c, p, g);
            for (int i = 0; i <= 10; ++i) {
                const double alpha = i / 10.0;
                check_rel(mu_p(mix_symmetric(c, pi, alpha), p, g), alpha * base, 1e-12,
                          1e-12 * base);
            }
            RngStream rng(77);
            for (int i = 0; i < 20; ++i) {
                const double beta = rng.uniform01();
                const double gamma = rng.uniform01() * (1.0 - beta);
                check_rel(mu_p(convex3(c, beta, gamma, pi), p, g),
                          std::abs(beta - gamma) * base, 1e-11, 1e-11 * base);
            }
        }
    }
}

TEST_CASE("mixing is asymmetry-reducing in the convex sense") {
    const GridSpec g{64};
    const Copula c = Copula::m_theta(1.0 / 3.0);
    RngStream rng(5);
    for (const auto& p : {PNorm(1.0), PNorm(2.0), PNorm::inf()}) {
        for (int i = 0; i < 30; ++i) {
            const double a1 = rng.uniform01();
            const double a2 = rng.uniform01();
            const double lam = rng.uniform01();
            const double blend = mu_p(mix_transpose(c, lam * a1 + (1.0 - lam) * a2), p, g);
            const double hull = lam * mu_p(mix_transpose(c, a1), p, g) +
                                (1.0 - lam) * mu_p(mix_transpose(c, a2), p, g);
            CHECK(blend <= hull + 1e-12);
        }
    }
}

TEST_CASE("bound chain slack across the family sweep") {
    const GridSpec g{100};
    const double tol = 2.0 / g.points;
    std::vector<Copula> sweep = {
        Copula::independence(),
        Copula::frechet_upper(),
        Copula::frechet_lower(),
        Copula::clayton(0.5),
        Copula::clayton(2.0),
        Copula::clayton(8.0),
        Copula::fgm(-1.0),
        Copula::fgm(0.5),
        Copula::fgm(1.0),
        Copula::m_theta(0.1),
        Copula::m_theta(0.25),
        Copula::m_theta(1.0 / 3.0),
        Copula::perturbed_product(kPerturbationCmax),
        Copula::perturbed_product(-0.7),
        Copula::gaussian(0.5),
        mix_transpose(Copula::m_theta(1.0 / 3.0), 0.8),
        convex3(Copula::m_theta(0.25), 0.5, 0.1, Copula::fgm(0.5)),
        Copula::m_theta(1.0 / 3.0).survival(),
    };
    for (const auto& c : sweep) {
        CAPTURE(c.describe());
        for (const auto& p : {PNorm(1.0), PNorm(2.0), PNorm::inf()}) {
            const MeasureReport r = bound_report(c, p, g);
            CHECK(r.bound1_slack >= -tol);
            if (!p.is_inf() && p.value() == 1.0) {
                REQUIRE(r.bound2_slack.has_value());
                CHECK(*r.bound2_slack >= -tol);
            } else {
                CHECK(!r.bound2_slack.has_value());
            }
            CHECK(mu_p_normalized(c, p, g) <= 1.0 + 6.0 / g.points);
        }
    }
}

TEST_CASE("sharpness of the perturbation family") {
    const GridSpec g{200};
    for (double c : {kPerturbationCmax, kPerturbationCmax / 2.0}) {
        const Copula pc = Copula::perturbed_product(c);
        for (const auto& p : {PNorm(1.0), PNorm(2.0), PNorm::inf()}) {
            const double ratio = mu_p(pc, p, g) / sigma_p(pc, p, g);
            CHECK(std::abs(ratio - 2.0 / c_p(p)) <= 1e-10);
        }
        const MeasureReport r = bound_report(pc, PNorm(1.0), g);
        CHECK(std::abs(r.bound1_slack) <= 1e-10);
    }
}

TEST_CASE("transpose and survival invariance of mu_p") {
    const GridSpec g{100};
    for (const auto& c : {Copula::m_theta(1.0 / 3.0), Copula::clayton(2.0),
                          Copula::perturbed_product(0.9), Copula::fgm(-0.5)}) {
        CAPTURE(c.describe());
        for (const auto& p : {PNorm(1.0), PNorm(2.0), PNorm::inf()}) {
            // Transposition permutes grid node pairs, so the sums agree term
            // by term.
            CHECK(mu_p(c.transpose(), p, g) == mu_p(c, p, g));
            CHECK(std::abs(mu_p(c.survival(), p, g) - mu_p(c, p, g)) <= 2e-12);
        }
    }
}

TEST_CASE("bound_report fields") {
    const GridSpec g{100};
    const MeasureReport r = bound_report(Copula::frechet_upper(), PNorm(1.0), g);
    CHECK(r.mu_p == 0.0);
    CHECK(r.grid == 100);
    CHECK(r.bound1_slack >= 0.0);
    // |rho| = 1 makes the second bound tight up to grid error.
    REQUIRE(r.bound2_slack.has_value());
    CHECK(std::abs(*r.bound2_slack) <= 3.0 / g.points);
}

TEST_CASE("feasible rho range") {
    auto [lo0, hi0] = feasible_rho_range(0.0);
    CHECK(lo0 == -1.0);
    CHECK(hi0 == 1.0);
    auto [lo3, hi3] = feasible_rho_range(1.0 / 3.0);
    CHECK(lo3 == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(hi3 == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    auto [lo6, hi6] = feasible_rho_range(1.0 / 6.0);
    CHECK(lo6 == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(hi6 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(lo6 <= hi6);
    CHECK_THROWS_AS(feasible_rho_range(0.5), ConfigError);
}

TEST_CASE("alpha prescriptions") {
    CHECK(prescribe_alpha(1.0 / 3.0, 1.0 / 3.0) == 1.0);
    CHECK(prescribe_alpha(0.0, 1.0 / 3.0) == 0.5);
    CHECK(prescribe_alpha(1.0 / 6.0, 1.0 / 3.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(prescribe_alpha_symmetric(0.0, 0.2) == 0.0);
    CHECK(prescribe_alpha_symmetric(0.2, 0.2) == 1.0);
    CHECK(prescribe_alpha_symmetric(1.0 / 12.0, 1.0 / 3.0) ==
          doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(prescribe_alpha(0.4, 0.3), ConfigError);
    CHECK_THROWS_AS(prescribe_alpha(0.1, 0.0), ConfigError);
    CHECK_THROWS_AS(prescribe_alpha_symmetric(-0.1, 0.3), ConfigError);

    // The prescription closes the loop: mixing with the prescribed alpha
    // hits the target asymmetry.
    const GridSpec g{100};
    const Copula c = Copula::m_theta(1.0 / 3.0);
    const double muC = mu_p(c, PNorm::inf(), g);
    const double target = 0.4 * muC;
    const double a = prescribe_alpha(target, muC);
    CHECK(std::abs(mu_p(mix_transpose(c, a), PNorm::inf(), g) - target) <= 1e-12);
    const double as = prescribe_alpha_symmetric(target, muC);
    CHECK(std::abs(mu_p(mix_symmetric(c, Copula::independence(), as), PNorm::inf(), g) -
                   target) <= 1e-12);
}
