#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testsup {

/// Deterministic generator; every test fixes its own seed.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::vector<double> random_signal(std::mt19937_64& g, std::int64_t n,
                                         double lo = -4.0, double hi = 4.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> f(n);
    for (auto& v : f) v = d(g);
    return f;
}

inline bool close(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testsup
