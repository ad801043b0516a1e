#pragma once

#include <array>
#include <cstdint>

namespace nonexch {

/// Counter-based deterministic random stream (Philox4x32-10, Salmon et al.
/// 2011 -- the generator behind numpy.random.Philox).
///
/// A stream is identified by (seed, stream_id): the seed is the Philox key,
/// the stream id occupies the high half of the 128-bit counter, and draws
/// walk the low half. Streams with distinct ids therefore never overlap,
/// which makes split() safe for parallel replicates: results depend only on
/// the (seed, id, draw index) triple, never on scheduling order.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

    /// Derive an independent stream; deterministic in (parent id, index).
    RngStream split(std::uint64_t index) const noexcept;

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    /// Uniform draw strictly inside (0,1): 53-bit lattice offset by half a
    /// step, so 0 and 1 are never returned.
    double uniform01() noexcept;

    /// Fair coin.
    bool bernoulli_half() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_;
    std::array<std::uint32_t, 4> buf_;
    int pos_;
};

/// SplitMix64 finalizer; used to derive stream ids and sub-seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace nonexch
