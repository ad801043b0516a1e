#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nonexch/measures.hpp"
#include "nonexch/rng.hpp"

namespace nonexch {

/// Raw paired observations. Continuous marginals are assumed; exact ties
/// within a margin are rejected (or jittered on request) downstream.
struct Sample {
    std::vector<std::pair<double, double>> xy;
    std::size_t size() const noexcept { return xy.size(); }
};

/// Rank-transformed observations in (0,1)^2. `ranked` is true iff each
/// margin is exactly the multiset {1/(n+1), ..., n/(n+1)}; coordinate-swap
/// resamples lose that property while keeping all coordinates in (0,1).
class PseudoSample {
public:
    PseudoSample(std::vector<std::pair<double, double>> uv, bool ranked);

    std::size_t size() const noexcept { return uv_.size(); }
    bool ranked() const noexcept { return ranked_; }
    const std::vector<std::pair<double, double>>& points() const noexcept { return uv_; }

private:
    std::vector<std::pair<double, double>> uv_;
    bool ranked_;
};

/// Configuration of the asymmetry statistic: finite exponent p >= 1 and the
/// Riemann grid resolution.
struct StatConfig {
    double p = 1.0;
    GridSpec grid{35};
};

enum class TiePolicy {
    error,   ///< throw TieError listing the tied indices (default)
    random,  ///< break ties by rank-stable random jitter
};

/// Ranks divided by n+1. Throws DataError on NaN or n < 2 and TieError on
/// exact within-margin ties unless policy is TiePolicy::random, in which
/// case tied values are ordered by a random draw (non-tied order is
/// unaffected) and the rng is required.
PseudoSample pseudo_observations(const Sample& s);
PseudoSample pseudo_observations(const Sample& s, TiePolicy policy, RngStream* rng,
                                 bool* ties_broken = nullptr);

/// C_n(u,v) = (1/n) #{i : u_i <= u and v_i <= v}.
double empirical_copula(const PseudoSample& ps, double u, double v);

/// T_n = (n/G^2) sum_{j,k} |C_n(j/G,k/G) - C_n(k/G,j/G)|^p. Computed by
/// bucketing the points into the grid and accumulating rank counts, so a
/// single evaluation costs O(n + G^2) rather than O(n G^2); the result is
/// bit-identical to the naive double loop.
double t_statistic(const PseudoSample& ps, const StatConfig& cfg);

/// Spearman's rank correlation 1 - 6 sum d_i^2 / (n(n^2-1)); requires a
/// ranked pseudo-sample.
double sample_spearman(const PseudoSample& ps);

/// Kendall's tau (concordant - discordant) / (n(n-1)/2) via inversion
/// counting, O(n log n); requires a ranked pseudo-sample.
double sample_kendall(const PseudoSample& ps);

}  // namespace nonexch
