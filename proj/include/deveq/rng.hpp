#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "deveq/hvec.hpp"

namespace deveq {

// Deterministic random source. Distributions are built from raw 64-bit draws
// rather than std:: distribution objects, whose streams are
// implementation-defined; identical seeds must give identical files.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller; two draws per call, no cached spare.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    std::uint64_t bits() { return gen_(); }

    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
    }

    HVec normal_vec(std::size_t n) {
        HVec v(n);
        for (double& x : v) x = normal();
        return v;
    }

    HVec unit_vec(std::size_t n) {
        HVec v = normal_vec(n);
        double r = norm(v);
        if (r == 0.0) return basis(n, 0);
        for (double& x : v) x /= r;
        return v;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace deveq
