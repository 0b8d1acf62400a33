#pragma once

#include <cstddef>
#include <cstdint>

namespace latentiv {

/// Counter-based pseudo-random stream. Draw i is a pure function of
/// (seed, i), so equal seeds give equal sequences on every platform.
/// A stream has a single owner; workers get their own via derive().
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Standard normal draw (Box-Muller).
    double normal() noexcept;

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Independent child stream for task `index`. Does not advance this stream.
    RngStream derive(std::uint64_t index) const noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace latentiv
