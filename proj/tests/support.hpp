#pragma once

#include <cmath>
#include <random>

namespace molion::test {

inline double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

/// Fixed-seed generator so property tests are reproducible.
inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

/// Log-uniform sample in [lo, hi].
inline double log_uniform(double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng()));
}

}  // namespace molion::test
