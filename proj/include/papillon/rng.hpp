#pragma once

#include <cstdint>

namespace papillon {

// splitmix64 stream. The randomized strategies derive one stream per
// (seed, source, target) so all-pairs runs are independent of visit order
// and worker scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound), rejection sampled to stay unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

  private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline Rng pair_rng(std::uint64_t seed, std::uint64_t s, std::uint64_t t) {
    return Rng(mix64(seed ^ mix64(s ^ 0x9e3779b97f4a7c15ull)) ^ mix64(t ^ 0xd1342543de82ef95ull));
}

} // namespace papillon
