#ifndef FONDPS_RNG_H
#define FONDPS_RNG_H

#include <cstdint>

namespace fondps {

/*
  splitmix64-based generator. Standard-library distributions are not
  reproducible across implementations, so all randomized suites go
  through this one.
*/
class Rng {
    std::uint64_t state;

public:
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        return n == 0 ? 0 : next() % n;
    }

    // uniform in [lo, hi] inclusive
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() {
        return (next() & 1) != 0;
    }
};

} // namespace fondps

#endif
