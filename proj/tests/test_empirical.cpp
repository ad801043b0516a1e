#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "nonexch/empirical.hpp"
#include "nonexch/errors.hpp"
#include "nonexch/rng.hpp"

using namespace nonexch;

namespace {

PseudoSample from_ranks(const std::vector<int>& rx, const std::vector<int>& ry) {
    const double denom = static_cast<double>(rx.size()) + 1.0;
    std::vector<std::pair<double, double>> uv;
    uv.reserve(rx.size());
    for (std::size_t i = 0; i < rx.size(); ++i) uv.emplace_back(rx[i] / denom, ry[i] / denom);
    return PseudoSample(std::move(uv), true);
}

// Naive reference: count pseudo-observations at every grid node.
double t_statistic_naive(const PseudoSample& ps, double p, int G) {
    const double n = static_cast<double>(ps.size());
    double acc = 0.0;
    auto cn = [&](double u, double v) {
        std::size_t count = 0;
        for (const auto& [ui, vi] : ps.points())
            if (ui <= u && vi <= v) ++count;
        return static_cast<double>(count) / n;
    };
    for (int j = 1; j <= G; ++j)
        for (int k = 1; k <= G; ++k) {
            const double a = cn(static_cast<double>(j) / G, static_cast<double>(k) / G);
            const double b = cn(static_cast<double>(k) / G, static_cast<double>(j) / G);
            const double d = std::abs(a - b);
            acc += (p == 1.0) ? d : std::pow(d, p);
        }
    return acc * n / (static_cast<double>(G) * G);
}

// Exact integral of n * |C_n - C_n^t|^p: C_n is piecewise constant on the
// rectangles induced by the pseudo-observation coordinates, so summing cell
// midpoint values times areas is exact.
double t_statistic_exact_cells(const PseudoSample& ps, double p) {
    std::set<double> cuts{0.0, 1.0};
    for (const auto& [u, v] : ps.points()) {
        cuts.insert(u);
        cuts.insert(v);
    }
    const std::vector<double> edges(cuts.begin(), cuts.end());
    const double n = static_cast<double>(ps.size());
    auto cn = [&](double u, double v) {
        std::size_t count = 0;
        for (const auto& [ui, vi] : ps.points())
            if (ui <= u && vi <= v) ++count;
        return static_cast<double>(count) / n;
    };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
            const double mu = 0.5 * (edges[i] + edges[i + 1]);
            const double mv = 0.5 * (edges[j] + edges[j + 1]);
            const double d = std::abs(cn(mu, mv) - cn(mv, mu));
            const double area = (edges[i + 1] - edges[i]) * (edges[j + 1] - edges[j]);
            acc += ((p == 1.0) ? d : std::pow(d, p)) * area;
        }
    return n * acc;
}

}  // namespace

TEST_CASE("pseudo-observation rank arithmetic") {
    const Sample s1{{{1.0, 10.0}, {2.0, 20.0}}};
    const auto ps1 = pseudo_observations(s1);
    CHECK(ps1.ranked());
    CHECK(ps1.points()[0] == std::pair{1.0 / 3.0, 1.0 / 3.0});
    CHECK(ps1.points()[1] == std::pair{2.0 / 3.0, 2.0 / 3.0});

    const Sample s2{{{5.0, 2.0}, {1.0, 9.0}, {3.0, 4.0}}};
    const auto ps2 = pseudo_observations(s2);
    CHECK(ps2.points()[0] == std::pair{3.0 / 4.0, 1.0 / 4.0});
    CHECK(ps2.points()[1] == std::pair{1.0 / 4.0, 3.0 / 4.0});
    CHECK(ps2.points()[2] == std::pair{2.0 / 4.0, 2.0 / 4.0});
}

TEST_CASE("pseudo-observations are invariant under increasing transforms") {
    RngStream rng(21);
    std::vector<std::pair<double, double>> xy(40);
    for (auto& q : xy) q = {rng.uniform01() * 10 - 5, rng.uniform01() * 3};
    const auto base = pseudo_observations(Sample{xy});
    auto transformed = xy;
    for (auto& q : transformed) {
        q.first = std::exp(q.first);
        q.second = q.second * q.second * q.second + 2.0;
    }
    const auto after = pseudo_observations(Sample{transformed});
    CHECK(after.points() == base.points());
}

TEST_CASE("tie and data errors") {
    CHECK_THROWS_AS(pseudo_observations(Sample{{{1.0, 2.0}}}), DataError);
    CHECK_THROWS_AS(
        pseudo_observations(Sample{{{1.0, 2.0}, {std::nan(""), 3.0}, {2.0, 4.0}}}), DataError);

    const Sample tied{{{1.0, 5.0}, {1.0, 6.0}, {2.0, 7.0}}};
    try {
        pseudo_observations(tied);
        FAIL("expected TieError");
    } catch (const TieError& e) {
        CHECK(e.margin() == 'x');
        CHECK(e.indices() == std::vector<std::size_t>{0, 1});
    }

    // Random tie breaking keeps non-tied order and yields valid ranks.
    RngStream rng(9);
    bool broke = false;
    const auto ps = pseudo_observations(tied, TiePolicy::random, &rng, &broke);
    CHECK(broke);
    CHECK(ps.ranked());
    CHECK(ps.points()[2].first == 3.0 / 4.0);  // untied value keeps top rank
    // Deterministic given the stream.
    RngStream rng2(9);
    const auto ps2 = pseudo_observations(tied, TiePolicy::random, &rng2, &broke);
    CHECK(ps.points() == ps2.points());
    CHECK_THROWS_AS(pseudo_observations(tied, TiePolicy::random, nullptr), ConfigError);
}

TEST_CASE("empirical copula counts") {
    const auto ps = from_ranks({1, 2, 3}, {2, 3, 1});
    CHECK(empirical_copula(ps, 1.0, 1.0) == 1.0);
    CHECK(empirical_copula(ps, 0.2, 0.0) == 0.0);
    // Only the y-rank-1 point has v <= 0.25, and its u = 0.75 > 0.5.
    CHECK(empirical_copula(ps, 0.5, 0.25) == 0.0);
    CHECK_THROWS_AS(empirical_copula(ps, 1.2, 0.5), std::domain_error);

    // Marginal section: C_n(j/(n+1), 1) = j/n for ranked inputs.
    RngStream rng(3);
    std::vector<std::pair<double, double>> xy(25);
    for (auto& q : xy) q = {rng.uniform01(), rng.uniform01()};
    const auto rps = pseudo_observations(Sample{xy});
    const int n = 25;
    for (int j = 1; j <= n; ++j)
        CHECK(empirical_copula(rps, j / (n + 1.0), 1.0) ==
              doctest::Approx(j / static_cast<double>(n)).epsilon(1e-15));

    // Monotone in each argument.
    for (double u = 0.1; u < 1.0; u += 0.2)
        for (double v = 0.1; v < 1.0; v += 0.2) {
            CHECK(empirical_copula(rps, u, v) <= empirical_copula(rps, u + 0.1, v));
            CHECK(empirical_copula(rps, u, v) <= empirical_copula(rps, u, v + 0.1));
        }
}

TEST_CASE("t statistic on swap-symmetric configurations is zero") {
    CHECK(t_statistic(from_ranks({1, 2}, {1, 2}), StatConfig{1.0, GridSpec{35}}) == 0.0);
    CHECK(t_statistic(from_ranks({1, 2, 3, 4}, {1, 2, 3, 4}), StatConfig{2.0, GridSpec{20}}) ==
          0.0);
}

TEST_CASE("3-cycle oracle: exact cell integration gives 1/8") {
    const auto ps = from_ranks({1, 2, 3}, {2, 3, 1});
    const double exact = t_statistic_exact_cells(ps, 1.0);
    CHECK(exact == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(std::abs(t_statistic(ps, StatConfig{1.0, GridSpec{200}}) - 0.125) <= 0.02);
}

TEST_CASE("fast statistic equals the naive double loop exactly") {
    RngStream rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 49);
        const int G = 2 + static_cast<int>(rng.uniform01() * 19);
        const double p = (rep % 3 == 0) ? 1.0 : ((rep % 3 == 1) ? 2.0 : 1.7);
        std::vector<std::pair<double, double>> xy(static_cast<std::size_t>(n));
        for (auto& q : xy) q = {rng.uniform01(), rng.uniform01()};
        const auto ps = pseudo_observations(Sample{xy});
        CAPTURE(n);
        CAPTURE(G);
        CAPTURE(p);
        CHECK(t_statistic(ps, StatConfig{p, GridSpec{G}}) == t_statistic_naive(ps, p, G));
    }
}

TEST_CASE("t statistic invariances") {
    RngStream rng(32);
    std::vector<std::pair<double, double>> xy(60);
    for (auto& q : xy) q = {rng.uniform01(), rng.uniform01()};
    const auto ps = pseudo_observations(Sample{xy});
    const StatConfig cfg{1.0, GridSpec{35}};
    const double t = t_statistic(ps, cfg);

    // Strictly increasing marginal transforms leave the ranks alone.
    auto warped = xy;
    for (auto& q : warped) q = {std::atan(5.0 * q.first), std::exp(q.second)};
    CHECK(t_statistic(pseudo_observations(Sample{warped}), cfg) == t);

    // Swapping every pair transposes C_n and |C_n - C_n^t| is unchanged.
    auto swapped = xy;
    for (auto& q : swapped) std::swap(q.first, q.second);
    const double ts = t_statistic(pseudo_observations(Sample{swapped}), cfg);
    CHECK(ts == doctest::Approx(t).epsilon(1e-12));
}

TEST_CASE("statistic configuration validation") {
    const auto ps = from_ranks({1, 2}, {2, 1});
    CHECK_THROWS_AS(t_statistic(ps, StatConfig{0.5, GridSpec{35}}), ConfigError);
    CHECK_THROWS_AS(
        t_statistic(ps, StatConfig{std::numeric_limits<double>::infinity(), GridSpec{35}}),
        ConfigError);
    CHECK_THROWS_AS(t_statistic(ps, StatConfig{1.0, GridSpec{1}}), ConfigError);
}

TEST_CASE("sample concordance estimators") {
    CHECK(sample_spearman(from_ranks({1, 2, 3, 4}, {1, 2, 3, 4})) == 1.0);
    CHECK(sample_spearman(from_ranks({1, 2, 3, 4}, {4, 3, 2, 1})) == -1.0);
    CHECK(sample_spearman(from_ranks({1, 2, 3}, {2, 3, 1})) ==
          doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(sample_kendall(from_ranks({1, 2, 3, 4}, {1, 2, 3, 4})) == 1.0);
    CHECK(sample_kendall(from_ranks({1, 2, 3, 4}, {4, 3, 2, 1})) == -1.0);
    CHECK(sample_kendall(from_ranks({1, 2, 3}, {2, 3, 1})) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

    // Kendall via inversion counting agrees with the O(n^2) definition.
    RngStream rng(41);
    std::vector<std::pair<double, double>> xy(200);
    for (auto& q : xy) q = {rng.uniform01(), rng.uniform01()};
    const auto ps = pseudo_observations(Sample{xy});
    const auto& pts = ps.points();
    long long conc = 0, disc = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double s =
                (pts[i].first - pts[j].first) * (pts[i].second - pts[j].second);
            (s > 0 ? conc : disc)++;
        }
    const double tau_ref =
        static_cast<double>(conc - disc) / (0.5 * pts.size() * (pts.size() - 1));
    CHECK(sample_kendall(ps) == doctest::Approx(tau_ref).epsilon(1e-13));

    // Unranked inputs are rejected.
    const PseudoSample unranked({{0.4, 0.6}, {0.2, 0.9}}, false);
    CHECK_THROWS_AS(sample_spearman(unranked), ConfigError);
    CHECK_THROWS_AS(sample_kendall(unranked), ConfigError);
}
