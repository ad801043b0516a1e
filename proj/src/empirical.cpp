#include "nonexch/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "nonexch/errors.hpp"

namespace nonexch {

namespace {

void validate_stat_config(const StatConfig& cfg) {
    if (!(std::isfinite(cfg.p) && cfg.p >= 1.0))
        throw ConfigError("statistic exponent must be a finite real >= 1");
    if (cfg.grid.points < 2) throw ConfigError("grid must have at least 2 points per axis");
}

// Ranks of one margin (1-based). `jitter`, when present, breaks exact ties;
// otherwise ties raise TieError with the offending indices.
std::vector<int> margin_ranks(const std::vector<std::pair<double, double>>& xy, bool first,
                              char margin, const std::vector<double>* jitter) {
    const std::size_t n = xy.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t i) { return first ? xy[i].first : xy[i].second; };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (key(a) != key(b)) return key(a) < key(b);
        return jitter ? (*jitter)[a] < (*jitter)[b] : false;
    });
    if (!jitter) {
        std::vector<std::size_t> tied;
        for (std::size_t i = 1; i < n; ++i)
            if (key(order[i]) == key(order[i - 1])) {
                tied.push_back(order[i - 1]);
                tied.push_back(order[i]);
            }
        if (!tied.empty()) {
            std::sort(tied.begin(), tied.end());
            tied.erase(std::unique(tied.begin(), tied.end()), tied.end());
            throw TieError(margin, std::move(tied));
        }
    }
    std::vector<int> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<int>(i) + 1;
    return rank;
}

// Smallest grid index j in [1,G] with x <= j/G, agreeing bit-for-bit with
// the comparisons the naive evaluation performs at nodes j/G.
inline int grid_bucket(double x, int G) {
    int j = static_cast<int>(std::ceil(x * G));
    if (j < 1) j = 1;
    if (j > G) j = G;
    while (j > 1 && x <= static_cast<double>(j - 1) / G) --j;
    while (j < G && x > static_cast<double>(j) / G) ++j;
    return j;
}

}  // namespace

PseudoSample::PseudoSample(std::vector<std::pair<double, double>> uv, bool ranked)
    : uv_(std::move(uv)), ranked_(ranked) {
    for (const auto& [u, v] : uv_)
        if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0))
            throw DataError("pseudo-observations must lie strictly inside (0,1)^2");
}

PseudoSample pseudo_observations(const Sample& s) {
    return pseudo_observations(s, TiePolicy::error, nullptr);
}

PseudoSample pseudo_observations(const Sample& s, TiePolicy policy, RngStream* rng,
                                 bool* ties_broken) {
    const std::size_t n = s.size();
    if (n < 2) throw DataError("sample must contain at least 2 observations");
    for (const auto& [x, y] : s.xy)
        if (std::isnan(x) || std::isnan(y)) throw DataError("sample contains NaN entries");
    if (ties_broken) *ties_broken = false;

    std::vector<double> jitter;
    const std::vector<double>* jx = nullptr;
    if (policy == TiePolicy::random) {
        if (!rng) throw ConfigError("random tie breaking requires an RngStream");
        bool any_tie = false;
        try {
            (void)margin_ranks(s.xy, true, 'x', nullptr);
            (void)margin_ranks(s.xy, false, 'y', nullptr);
        } catch (const TieError&) {
            any_tie = true;
        }
        if (any_tie) {
            if (ties_broken) *ties_broken = true;
            jitter.resize(n);
            for (auto& j : jitter) j = rng->uniform01();
            jx = &jitter;
        }
    }

    const auto rx = margin_ranks(s.xy, true, 'x', jx);
    const auto ry = margin_ranks(s.xy, false, 'y', jx);
    std::vector<std::pair<double, double>> uv(n);
    const double denom = static_cast<double>(n) + 1.0;
    for (std::size_t i = 0; i < n; ++i)
        uv[i] = {static_cast<double>(rx[i]) / denom, static_cast<double>(ry[i]) / denom};
    return PseudoSample(std::move(uv), true);
}

double empirical_copula(const PseudoSample& ps, double u, double v) {
    if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0))
        throw std::domain_error("empirical copula arguments must lie in [0, 1]");
    std::size_t count = 0;
    for (const auto& [ui, vi] : ps.points())
        if (ui <= u && vi <= v) ++count;
    return static_cast<double>(count) / static_cast<double>(ps.size());
}

double t_statistic(const PseudoSample& ps, const StatConfig& cfg) {
    validate_stat_config(cfg);
    const int G = cfg.grid.points;
    const std::size_t n = ps.size();
    const double nd = static_cast<double>(n);

    // Occupancy counts per grid cell, then 2-D cumulative sums: cum[j][k] is
    // the number of points with u <= j/G and v <= k/G.
    std::vector<std::int64_t> cum((G + 1) * (G + 1), 0);
    auto at = [G](std::vector<std::int64_t>& m, int j, int k) -> std::int64_t& {
        return m[static_cast<std::size_t>(j) * (G + 1) + k];
    };
    for (const auto& [u, v] : ps.points()) ++at(cum, grid_bucket(u, G), grid_bucket(v, G));
    for (int j = 1; j <= G; ++j)
        for (int k = 1; k <= G; ++k)
            at(cum, j, k) += at(cum, j - 1, k) + at(cum, j, k - 1) - at(cum, j - 1, k - 1);

    // Same per-cell arithmetic and summation order as the naive double loop.
    double acc = 0.0;
    for (int j = 1; j <= G; ++j)
        for (int k = 1; k <= G; ++k) {
            const double a = static_cast<double>(at(cum, j, k)) / nd;
            const double b = static_cast<double>(at(cum, k, j)) / nd;
            const double d = std::abs(a - b);
            acc += (cfg.p == 1.0) ? d : std::pow(d, cfg.p);
        }
    return acc * nd / (static_cast<double>(G) * G);
}

double sample_spearman(const PseudoSample& ps) {
    if (!ps.ranked()) throw ConfigError("sample_spearman requires a ranked pseudo-sample");
    const std::size_t n = ps.size();
    const double denom = static_cast<double>(n) + 1.0;
    std::int64_t ssd = 0;
    for (const auto& [u, v] : ps.points()) {
        const std::int64_t d = static_cast<std::int64_t>(std::llround(u * denom)) -
                               static_cast<std::int64_t>(std::llround(v * denom));
        ssd += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * static_cast<double>(ssd) / (nn * (nn * nn - 1.0));
}

namespace {

// Inversion count by merge sort (Knight's method for tie-free ranks).
std::int64_t count_inversions(std::vector<int>& a, std::vector<int>& scratch, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(a, scratch, lo, mid) + count_inversions(a, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[i] <= a[j]) {
            scratch[k++] = a[i++];
        } else {
            inv += static_cast<std::int64_t>(mid - i);
            scratch[k++] = a[j++];
        }
    }
    while (i < mid) scratch[k++] = a[i++];
    while (j < hi) scratch[k++] = a[j++];
    std::copy(scratch.begin() + lo, scratch.begin() + hi, a.begin() + lo);
    return inv;
}

}  // namespace

double sample_kendall(const PseudoSample& ps) {
    if (!ps.ranked()) throw ConfigError("sample_kendall requires a ranked pseudo-sample");
    const std::size_t n = ps.size();
    const double denom = static_cast<double>(n) + 1.0;
    // v-ranks listed in increasing u-rank order; discordant pairs are
    // exactly the inversions of that sequence.
    std::vector<int> seq(n);
    for (const auto& [u, v] : ps.points()) {
        const auto rx = static_cast<std::size_t>(std::llround(u * denom));
        seq[rx - 1] = static_cast<int>(std::llround(v * denom));
    }
    std::vector<int> scratch(n);
    const std::int64_t inv = count_inversions(seq, scratch, 0, n);
    const double pairs = 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
    return 1.0 - 2.0 * static_cast<double>(inv) / pairs;
}

}  // namespace nonexch
