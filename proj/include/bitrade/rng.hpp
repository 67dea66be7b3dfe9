#pragma once
#include <cmath>
#include <cstdint>

namespace bitrade {

/// Counter-based 64-bit generator (splitmix64 stream) with a Box-Muller
/// transform for Gaussians. The output sequence is a pure function of the
/// seed, which keeps sample paths reproducible across runs and platforms
/// with the same floating-point environment.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1].
    double uniform() { return ((next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    /// Standard Gaussian via Box-Muller; pairs are cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace bitrade
