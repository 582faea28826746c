#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace mirg {

/* Reproducible random streams.
 *
 * A stream is identified by (seed, stream_id).  Two streams with different
 * ids are statistically independent regardless of how many draws either has
 * consumed, so work can be farmed out to replicates/chunks/layers that each
 * derive their own stream up front.  derive() is keyed on the stream identity,
 * never on mutable state: deriving after 0 or 10^9 draws gives the same child.
 *
 * Engine: xoshiro256++ seeded through splitmix64.  The sequence for a given
 * (seed, stream_id) is fixed by this implementation, not by the platform.
 */

// One splitmix64 step: advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

// Stable 64-bit tag for a name (FNV-1a); used to label experiment streams.
std::uint64_t hash_tag(std::string_view name);

// Order-sensitive combination of two stream tags.
std::uint64_t combine_tags(std::uint64_t a, std::uint64_t b);

class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();

    // Uniform on [0,1), 53-bit resolution.
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as input to log() and inverse power CDFs.
    double u01_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Child stream keyed on (seed, stream_id, tag); independent of draw count.
    RngStream derive(std::uint64_t tag) const {
        return RngStream(seed_, combine_tags(stream_id_, tag));
    }
    RngStream derive(std::string_view name) const { return derive(hash_tag(name)); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> s_;
};

}  // namespace mirg
