#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "adjpair/symbol.hpp"

namespace adjpair {

/// Seeded generator whose output does not depend on the standard library's
/// distribution implementations, so reports are reproducible across builds.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform on {lo, ..., hi}.
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    /// Standard normal by Box–Muller.
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    cplx complex_normal() {
        const double re = normal();
        return {re, normal()};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace adjpair
