#include "latentiv/rng.hpp"

#include <cmath>
#include <numbers>

namespace latentiv {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kDeriveSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed) noexcept : seed_(seed), key_(mix64(seed + kGolden)) {}

std::uint64_t RngStream::next_u64() noexcept
{
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RngStream::uniform() noexcept
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) noexcept
{
    // Rejection keeps the result unbiased for bounds that do not divide 2^64.
    const std::uint64_t limit = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= limit) return r % bound;
    }
}

double RngStream::normal() noexcept
{
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream RngStream::derive(std::uint64_t index) const noexcept
{
    return RngStream(mix64(seed_ ^ kDeriveSalt) + mix64(index + kGolden));
}

}  // namespace latentiv
