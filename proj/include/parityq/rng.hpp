#pragma once

#include <cstdint>
#include <random>

namespace parityq {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random stream. Wraps std::mt19937_64 (whose sequence is fixed
// by the standard) and provides bias-free integer draws, so identical seeds
// produce identical bytes on every platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(splitmix64(seed)) {}

    uint64_t u64() { return gen_(); }
    bool bit() { return u64() & 1; }

    // Uniform in [0, n) via rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        if ((n & (n - 1)) == 0) return u64() & (n - 1);
        uint64_t rem = (0 - n) % n; // 2^64 mod n
        uint64_t x;
        do { x = u64(); } while (x < rem);
        return x % n;
    }

    double real01() { return double(u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return real01() < p;
    }

    // Stream for subtask `index` of a run seeded with `master`; documented so
    // independent implementations can reproduce sharded runs.
    static uint64_t derive(uint64_t master, uint64_t index) {
        return splitmix64(master ^ splitmix64(index + 0x51a1de5f00dULL));
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace parityq
