#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace gdrb {

/// Counter-based Philox4x32-10 generator. A generator is addressed by
/// (seed, stream): distinct streams under the same seed are statistically
/// independent, which makes parallel construction and simulation reproducible
/// regardless of evaluation order.
class PhiloxRng {
public:
    explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_double();

    /// Uniform double in (0, 1].
    double next_double_open_low();

    /// Standard normal via Box-Muller.
    double next_gaussian();

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_cached_gaussian_ = false;
    double cached_gaussian_ = 0.0;
};

/// Stream identifiers: tag in the top byte, two payload fields below.
std::uint64_t make_stream(std::uint8_t tag, std::uint32_t a, std::uint32_t b);

/// Derive an independent child seed, e.g. one per confidence-interval run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

/// Haar-random element of SU(2) (uniform unit quaternion).
Eigen::Matrix2cd haar_su2(PhiloxRng& rng);

} // namespace gdrb
