//
// torlab/rng.hpp -- deterministic random streams for experiments
//
// Every experiment owns a master seed; each trial derives an independent
// child seed from (master, experiment name, trial index).  The derivation is
// pinned constant-for-constant so independent implementations agree:
//
//   x = master XOR fnv1a64(name) XOR trial_index
//   child = splitmix64_mix(x)
//
// splitmix64_mix is the finalizer of Steele et al.'s SplitMix64:
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31;
// It is a bijection on 64-bit words, so distinct inputs give distinct seeds.
//
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace torlab {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view experiment_name,
                                 std::uint64_t trial_index) {
    return splitmix64_mix(master ^ fnv1a64(experiment_name) ^ trial_index);
}

// Uniform/Gaussian generator over mt19937_64.  Gaussians use the polar
// (Marsaglia) method so the stream is fixed by this header, not by the
// standard library's unspecified normal_distribution algorithm.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // uniform in [0,1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t uniform_index(std::uint64_t n) {
        // rejection to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // centered complex Gaussian with E|z|^2 = 1
    std::complex<double> complex_normal() {
        const double inv_sqrt2 = 0.7071067811865475244;
        return {normal() * inv_sqrt2, normal() * inv_sqrt2};
    }

    // uniform phase e^{i theta}
    std::complex<double> unit_phase() {
        const double theta = uniform() * 2.0 * M_PI;
        return {std::cos(theta), std::sin(theta)};
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace torlab
