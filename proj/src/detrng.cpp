#include "solar/detrng.hpp"

#include "solar/detmath.hpp"

#include <cmath>

namespace solar {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSeedSalt = 0x6A09E667F3BCC908ULL;
constexpr std::uint64_t kStreamSalt = 0xBB67AE8584CAA73BULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngState seed_stream(std::uint64_t base_seed, std::uint64_t stream_id) {
    RngState st;
    st.base_seed_ = base_seed;
    st.stream_id_ = stream_id;
    std::uint64_t sm = mix64(base_seed ^ kSeedSalt) ^ rotl(mix64(stream_id + kStreamSalt), 32);
    for (auto& w : st.s_) {
        sm += kGolden;
        w = mix64(sm);
    }
    if ((st.s_[0] | st.s_[1] | st.s_[2] | st.s_[3]) == 0) {
        st.s_ = {kGolden, kSeedSalt, kStreamSalt, 0x3C6EF372FE94F82BULL};
    }
    return st;
}

std::uint64_t RngState::next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngState::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::next_gaussian() {
    // Leva (1992), ACM TOMS 18(4), quadratic bounds around the acceptance region.
    for (;;) {
        const double u = next_unit();
        const double v = 1.7156 * (next_unit() - 0.5);
        if (u <= 0.0) continue;
        const double x = u - 0.449871;
        const double y = std::fabs(v) + 0.386595;
        const double q = x * x + y * (0.19600 * y - 0.25472 * x);
        if (q < 0.27597) return v / u;
        if (q > 0.27846) continue;
        if (v * v <= -4.0 * u * u * dm::log(u)) return v / u;
    }
}

}  // namespace solar
