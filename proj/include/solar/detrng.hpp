#pragma once

#include <array>
#include <cstdint>

namespace solar {

/// xoshiro256** stream keyed by (base_seed, stream_id).
///
/// Seeding: both keys go through the splitmix64 finalizer with distinct
/// offsets, are combined, and the result feeds four splitmix64 steps that
/// fill the state. All constants are listed in README.md.
class RngState {
public:
    RngState() = default;

    std::uint64_t next_u64();
    /// (next_u64() >> 11) * 2^-53, in [0, 1).
    double next_unit();
    /// Standard normal by Leva's ratio-of-uniforms method.
    double next_gaussian();

    const std::array<std::uint64_t, 4>& state() const { return s_; }
    std::uint64_t base_seed() const { return base_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    friend RngState seed_stream(std::uint64_t base_seed, std::uint64_t stream_id);
    friend bool operator==(const RngState&, const RngState&) = default;

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t base_seed_ = 0;
    std::uint64_t stream_id_ = 0;
};

RngState seed_stream(std::uint64_t base_seed, std::uint64_t stream_id);

/// splitmix64 output finalizer.
std::uint64_t mix64(std::uint64_t z);

}  // namespace solar
