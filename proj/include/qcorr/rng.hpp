// rng.hpp — Seeded, splittable random streams (xoshiro256++ seeded via splitmix64).
//
// Every sampler in the library takes an explicit RngStream. Parallel work items
// derive independent streams from (master seed, item index), so results are
// deterministic and independent of the worker count.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace qcorr {

inline std::uint64_t splitmix64_next(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        for (auto& s : state_) s = splitmix64_next(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // standard normal, Box-Muller with one cached value
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // uniform direction on the unit sphere
    std::array<double, 3> unit_vector() {
        while (true) {
            std::array<double, 3> v{normal(), normal(), normal()};
            const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            if (n > 1e-12) return {v[0] / n, v[1] / n, v[2] / n};
        }
    }

    // uniform point in the closed unit ball
    std::array<double, 3> ball_point() {
        const auto dir = unit_vector();
        const double r = std::cbrt(uniform());
        return {r * dir[0], r * dir[1], r * dir[2]};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace qcorr
