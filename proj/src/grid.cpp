#include "ilt/grid.hpp"

#include <algorithm>
#include <cmath>

namespace ilt {

BinaryPattern::BinaryPattern(RealGrid grid) : grid_(std::move(grid)) {
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        const double v = grid_[i];
        if (v != 0.0 && v != 1.0)
            throw std::invalid_argument("binary pattern value " + std::to_string(v) + " at index " +
                                        std::to_string(i) + " is not 0 or 1");
    }
}

std::size_t BinaryPattern::count_ones() const {
    return static_cast<std::size_t>(std::count(grid_.begin(), grid_.end(), 1.0));
}

bool all_finite(const RealGrid& g) {
    return std::all_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); });
}

bool all_finite(const ComplexGrid& g) {
    return std::all_of(g.begin(), g.end(),
                       [](Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

RealGrid project_box(const RealGrid& u) {
    RealGrid out = u;
    for (double& v : out) v = std::min(std::max(0.0, v), 1.0);
    return out;
}

double l1_norm(const RealGrid& x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

double l2_norm(const RealGrid& x) { return std::sqrt(inner(x, x)); }

double l2_norm(const ComplexGrid& x) { return std::sqrt(inner(x, x)); }

double inner(const ComplexGrid& a, const ComplexGrid& b) {
    require_same_shape(a, b, "inner");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

double inner(const RealGrid& a, const RealGrid& b) {
    require_same_shape(a, b, "inner");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ComplexGrid to_complex(const RealGrid& g) {
    ComplexGrid out(g.side());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i];
    return out;
}

RealGrid real_part(const ComplexGrid& g) {
    RealGrid out(g.side());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].real();
    return out;
}

RealGrid imag_part(const ComplexGrid& g) {
    RealGrid out(g.side());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i].imag();
    return out;
}

RealGrid magnitude(const ComplexGrid& g) {
    RealGrid out(g.side());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = std::abs(g[i]);
    return out;
}

}  // namespace ilt
