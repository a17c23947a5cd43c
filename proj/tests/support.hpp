#pragma once

#include <random>

#include "ilt/grid.hpp"

namespace ilt::test {

inline RealGrid random_real(std::size_t n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    RealGrid g(n);
    for (auto& v : g) v = d(rng);
    return g;
}

inline ComplexGrid random_complex(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    ComplexGrid g(n);
    for (auto& v : g) v = Complex{d(rng), d(rng)};
    return g;
}

inline BinaryPattern random_pattern(std::size_t n, std::mt19937_64& rng, double p = 0.5) {
    std::bernoulli_distribution d(p);
    RealGrid g(n);
    for (auto& v : g) v = d(rng) ? 1.0 : 0.0;
    return BinaryPattern(std::move(g));
}

inline double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs_diff(const RealGrid& a, const RealGrid& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace ilt::test
