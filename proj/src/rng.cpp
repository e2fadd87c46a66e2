#include "gdrb/rng.hpp"

#include <cmath>
#include <numbers>

namespace gdrb {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t prod = std::uint64_t(a) * b;
    hi = std::uint32_t(prod >> 32);
    lo = std::uint32_t(prod);
}

std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 2> key,
                                          std::array<std::uint32_t, 4> ctr)
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = { hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0 };
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

PhiloxRng::PhiloxRng(std::uint64_t seed, std::uint64_t stream)
    : key_{ std::uint32_t(seed), std::uint32_t(seed >> 32) }, stream_(stream)
{
}

void PhiloxRng::refill()
{
    buf_ = philox_block(key_, { std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                std::uint32_t(stream_), std::uint32_t(stream_ >> 32) });
    ++block_;
    pos_ = 0;
}

std::uint32_t PhiloxRng::next_u32()
{
    if (pos_ >= 4)
        refill();
    return buf_[pos_++];
}

std::uint64_t PhiloxRng::next_u64()
{
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double PhiloxRng::next_double()
{
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double PhiloxRng::next_double_open_low()
{
    return double((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double PhiloxRng::next_gaussian()
{
    if (have_cached_gaussian_) {
        have_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    const double u1 = next_double_open_low();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = radius * std::sin(angle);
    have_cached_gaussian_ = true;
    return radius * std::cos(angle);
}

std::uint64_t PhiloxRng::next_below(std::uint64_t n)
{
    return std::uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

std::uint64_t make_stream(std::uint8_t tag, std::uint32_t a, std::uint32_t b)
{
    return (std::uint64_t(tag) << 56) | (std::uint64_t(a & 0xFFFFFFu) << 32) | std::uint64_t(b);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
{
    return splitmix64(seed ^ splitmix64(tag ^ splitmix64(index)));
}

Eigen::Matrix2cd haar_su2(PhiloxRng& rng)
{
    Eigen::Vector4d q;
    double norm = 0.0;
    do {
        for (int i = 0; i < 4; ++i)
            q(i) = rng.next_gaussian();
        norm = q.norm();
    } while (norm < 1e-8);
    q /= norm;
    const std::complex<double> a(q(0), q(1));
    const std::complex<double> b(q(2), q(3));
    Eigen::Matrix2cd u;
    u << a, -std::conj(b), b, std::conj(a);
    return u;
}

} // namespace gdrb
