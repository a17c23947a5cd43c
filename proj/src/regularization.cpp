#include "ilt/regularization.hpp"

#include <cmath>
#include <stdexcept>

namespace ilt {

namespace {

RealGrid combine(const RealGrid& a, const RealGrid& b, double sign) {
    require_same_shape(a, b, "split triple");
    RealGrid out(a.side());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + sign * b[i];
    return out;
}

void require_differentiable(const RealGrid& u) {
    if (u.side() < 2) throw DimensionError("finite differences need a grid side of at least 2");
}

}  // namespace

SplitTriple operator+(const SplitTriple& a, const SplitTriple& b) {
    return {combine(a.tv_x, b.tv_x, 1.0), combine(a.tv_y, b.tv_y, 1.0), combine(a.pen, b.pen, 1.0)};
}

SplitTriple operator-(const SplitTriple& a, const SplitTriple& b) {
    return {combine(a.tv_x, b.tv_x, -1.0), combine(a.tv_y, b.tv_y, -1.0), combine(a.pen, b.pen, -1.0)};
}

double l1_norm(const SplitTriple& t) { return l1_norm(t.tv_x) + l1_norm(t.tv_y) + l1_norm(t.pen); }

double l2_norm(const SplitTriple& t) {
    return std::sqrt(inner(t.tv_x, t.tv_x) + inner(t.tv_y, t.tv_y) + inner(t.pen, t.pen));
}

std::pair<RealGrid, RealGrid> diff_forward(const RealGrid& u) {
    require_differentiable(u);
    const std::size_t n = u.side();
    RealGrid dx(n), dy(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c + 1 < n; ++c) dx(r, c) = u(r, c + 1) - u(r, c);
    for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t c = 0; c < n; ++c) dy(r, c) = u(r + 1, c) - u(r, c);
    return {std::move(dx), std::move(dy)};
}

RealGrid diff_x_adjoint(const RealGrid& gx) {
    require_differentiable(gx);
    const std::size_t n = gx.side();
    RealGrid out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c + 1 < n; ++c) {
            out(r, c) -= gx(r, c);
            out(r, c + 1) += gx(r, c);
        }
    return out;
}

RealGrid diff_y_adjoint(const RealGrid& gy) {
    require_differentiable(gy);
    const std::size_t n = gy.side();
    RealGrid out(n);
    for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) -= gy(r, c);
            out(r + 1, c) += gy(r, c);
        }
    return out;
}

RealGrid diff_adjoint(const RealGrid& gx, const RealGrid& gy) {
    require_same_shape(gx, gy, "diff_adjoint");
    RealGrid out = diff_x_adjoint(gx);
    const RealGrid y = diff_y_adjoint(gy);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
    return out;
}

double tv_norm(const RealGrid& u) {
    const auto [dx, dy] = diff_forward(u);
    return l1_norm(dx) + l1_norm(dy);
}

double binarity_penalty(const RealGrid& u) {
    double s = 0.0;
    for (double v : u) s += std::abs(v * (1.0 - v));
    return s;
}

SplitTriple phi(const RealGrid& u, double beta1, double beta2) {
    auto [dx, dy] = diff_forward(u);
    for (double& v : dx) v *= beta1;
    for (double& v : dy) v *= beta1;
    RealGrid pen(u.side());
    for (std::size_t i = 0; i < u.size(); ++i) pen[i] = beta2 * u[i] * (1.0 - u[i]);
    return {std::move(dx), std::move(dy), std::move(pen)};
}

double shrink(double x, double kappa) {
    const double mag = std::abs(x) - kappa;
    if (mag <= 0.0) return 0.0;
    return x > 0.0 ? mag : -mag;
}

RealGrid shrink(const RealGrid& x, double kappa) {
    if (kappa < 0.0) throw std::invalid_argument("shrink threshold must be >= 0");
    RealGrid out(x.side());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = kappa == 0.0 ? x[i] : shrink(x[i], kappa);
    return out;
}

SplitTriple shrink(const SplitTriple& x, double kappa) {
    return {shrink(x.tv_x, kappa), shrink(x.tv_y, kappa), shrink(x.pen, kappa)};
}

}  // namespace ilt
