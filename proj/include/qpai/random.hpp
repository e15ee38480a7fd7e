#pragma once

#include <cstdint>
#include <random>

namespace qpai {

// splitmix64 step; used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded PRNG exposing the two draw kinds the learner needs. The raw
// 64-bit stream is mapped the same way on every platform, so runs are
// reproducible from the seed alone.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    // uniform in [0, 1)
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform in [0, n)
    int index(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 gen_;
};

}  // namespace qpai
