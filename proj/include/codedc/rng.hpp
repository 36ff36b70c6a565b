#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace codedc {

// Deterministic, platform-independent random streams. Standard-library
// distributions are implementation-defined, so the transforms live here;
// every stream is derived from a root seed and a handful of integer tags,
// which makes draws independent of execution order (splittable per
// (worker, step, iteration)).

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Mixes an arbitrary list of integer tags into a fresh stream seed.
template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t root, Tags... tags) {
    std::uint64_t s = root;
    ((s = splitmix64(s) ^ (static_cast<std::uint64_t>(tags) + 0x9e3779b97f4a7c15ULL)), ...);
    return splitmix64(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller; one spare kept between calls
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace codedc
