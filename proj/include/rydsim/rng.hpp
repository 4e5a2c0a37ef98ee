#pragma once

#include <cstdint>
#include <array>

namespace rydsim {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
// Stateless: output is a pure function of (key, counter), so independent
// streams and parallel evaluation are reproducible by construction.
struct Philox4x32 {
    static constexpr uint32_t M0 = 0xD2511F53u;
    static constexpr uint32_t M1 = 0xCD9E8D57u;
    static constexpr uint32_t W0 = 0x9E3779B9u;
    static constexpr uint32_t W1 = 0xBB67AE85u;

    static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                         std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = static_cast<uint64_t>(M0) * ctr[0];
            uint64_t p1 = static_cast<uint64_t>(M1) * ctr[2];
            std::array<uint32_t, 4> next = {
                static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                static_cast<uint32_t>(p1),
                static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                static_cast<uint32_t>(p0),
            };
            ctr = next;
            key[0] += W0;
            key[1] += W1;
        }
        return ctr;
    }
};

// Seedable, splittable wrapper.  `stream` isolates independent consumers
// (e.g. sweep points) of the same seed; draws are indexed by an internal
// 64-bit counter.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          stream_(stream) {}

    CounterRng split(uint64_t substream) const {
        CounterRng r = *this;
        r.stream_ = stream_ * 0x9E3779B97F4A7C15ull + substream + 1;
        r.index_ = 0;
        return r;
    }

    uint32_t next_u32() {
        if (lane_ == 4) refill();
        return buf_[lane_++];
    }

    uint64_t next_u64() {
        uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // uniform in [0,1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    long binomial(long n, double p) {
        long k = 0;
        for (long i = 0; i < n; ++i)
            if (bernoulli(p)) ++k;
        return k;
    }

private:
    void refill() {
        std::array<uint32_t, 4> ctr = {
            static_cast<uint32_t>(index_), static_cast<uint32_t>(index_ >> 32),
            static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)};
        buf_ = Philox4x32::block(ctr, key_);
        ++index_;
        lane_ = 0;
    }

    std::array<uint32_t, 2> key_;
    uint64_t stream_ = 0;
    uint64_t index_ = 0;
    std::array<uint32_t, 4> buf_{};
    int lane_ = 4;
};

}  // namespace rydsim
