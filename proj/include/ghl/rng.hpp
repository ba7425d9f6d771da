#pragma once

#include <cstdint>

namespace ghl {

// splitmix64: tiny, seedable, identical output on every platform.
// Certificates record the seed, so trial suites must not depend on
// library-specific generators.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

    // uniform in [lo, hi]
    long long range(long long lo, long long hi) {
        return lo + (long long)below(uint64_t(hi - lo + 1));
    }

  private:
    uint64_t state_;
};

}  // namespace ghl
