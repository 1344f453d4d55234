#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace opinionsim::rng {

/// splitmix64 finalizer; a bijection on uint64, used for seed mixing only.
constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derive a labeled sub-seed. Injective in `label` for a fixed `seed` (and
/// vice versa), so disjoint labels never alias streams.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t label) {
    return mix(seed ^ mix(label ^ 0xA0761D6478BD642FULL));
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive(derive(seed, a), b);
}

/// Fixed stream labels. One master seed per run is split into these so that
/// toggling one mechanism (e.g. events) never perturbs the draws of another.
enum Label : std::uint64_t {
    kGraph = 1,
    kOpinions = 2,
    kStubbornness = 3,
    kCategoryPerm = 4,
    kEvents = 5,
    kInjectWiring = 6,
    kInjectOpinions = 7,
    kInjectStubbornness = 8,
    kGraphAttempt = 9,
};

/// Deterministic random stream. mt19937_64 output is pinned by the standard;
/// all value derivation (uniforms, bounded ints) is done here explicitly so
/// results do not depend on library implementations of <random> distributions.
class Stream {
  public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n), n >= 1, rejection-sampled (no modulo bias).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        std::uint64_t x = eng_();
        while (x >= limit) x = eng_();
        return x % n;
    }

    std::uint64_t raw() { return eng_(); }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace opinionsim::rng
