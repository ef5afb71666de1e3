#ifndef POCLAB_RNG_HPP
#define POCLAB_RNG_HPP

#include <array>
#include <cstdint>

namespace poclab {

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011).
// Every draw is a pure function of (key, counter), so per-(site, replica)
// streams derived from one master seed are reproducible under any
// parallel schedule.
namespace philox {

inline std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                     std::array<uint32_t, 2> key) {
    constexpr uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const uint64_t p0 = uint64_t(m0) * ctr[0];
        const uint64_t p1 = uint64_t(m1) * ctr[2];
        ctr = {uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], uint32_t(p1),
               uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], uint32_t(p0)};
        key[0] += w0;
        key[1] += w1;
    }
    return ctr;
}

} // namespace philox

// Stream classes keep draws made for different purposes statistically
// independent even when they share (seed, replica, site).
enum class StreamClass : uint32_t {
    sample = 1,
    boundary = 2,
    coupling = 3,
    percolation = 4,
    audit = 5,
};

// One 64-bit word from the (seed, stream, replica, site, index) cell of
// the counter lattice.
inline uint64_t counter_bits(uint64_t seed, StreamClass stream, uint32_t replica,
                             uint32_t site, uint32_t index) {
    const std::array<uint32_t, 2> key = {uint32_t(seed), uint32_t(seed >> 32)};
    const std::array<uint32_t, 4> ctr = {
        static_cast<uint32_t>(stream) ^ (index << 8), replica, site, index};
    const auto out = philox::block(ctr, key);
    return (uint64_t(out[0]) << 32) | out[1];
}

// Uniform double in [0, 1) with 53 random bits.
inline double counter_uniform(uint64_t seed, StreamClass stream, uint32_t replica,
                              uint32_t site, uint32_t index) {
    return double(counter_bits(seed, stream, replica, site, index) >> 11) *
           0x1.0p-53;
}

} // namespace poclab

#endif
