#pragma once

#include <array>
#include <cstdint>

namespace pairkey {

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC 2011). A keyed bijection of a 128-bit
// counter: substreams indexed by (seed, substream) never overlap, so
// per-sample streams can be evaluated in any order or in parallel.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter apply(Counter ctr, Key key) {
        for (int round = 0; round < 9; ++round) {
            ctr = single_round(ctr, key);
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return single_round(ctr, key);
    }

private:
    static Counter single_round(const Counter& c, const Key& k) {
        const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
        const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
        return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
                static_cast<std::uint32_t>(p1),
                static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
                static_cast<std::uint32_t>(p0)};
    }
};

// One stream = (seed, substream). The key carries the seed, the high counter
// words carry the substream index, and the low words count draws.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t substream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          hi_{static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)} {}

    std::uint64_t next_u64();

    // Uniform on (0, 1] with 53-bit resolution. Never returns 0, so it is
    // safe to feed into a logarithm.
    double uniform();

    // Standard normal via Box-Muller; draws come in cached pairs.
    double gaussian();

private:
    void refill();

    Philox4x32::Key key_;
    std::array<std::uint32_t, 2> hi_;
    std::uint64_t draw_ = 0;
    Philox4x32::Counter buf_{};
    int buf_pos_ = 4;
    double cached_gauss_ = 0.0;
    bool has_cached_gauss_ = false;
};

}  // namespace pairkey
