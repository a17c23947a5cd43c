#pragma once

#include <utility>

#include "ilt/grid.hpp"

namespace ilt {

/// Three-component field matching the splitting map
/// phi(U) = (beta1 * Dx U, beta1 * Dy U, beta2 * U .* (1 - U)).
/// Also carries the Bregman variables d and b.
struct SplitTriple {
    RealGrid tv_x;
    RealGrid tv_y;
    RealGrid pen;

    static SplitTriple zeros(std::size_t n) { return {RealGrid(n), RealGrid(n), RealGrid(n)}; }
    std::size_t side() const noexcept { return tv_x.side(); }
};

SplitTriple operator+(const SplitTriple& a, const SplitTriple& b);
SplitTriple operator-(const SplitTriple& a, const SplitTriple& b);
double l1_norm(const SplitTriple& t);
double l2_norm(const SplitTriple& t);

/// Forward differences; the last column of Dx and last row of Dy are zero.
std::pair<RealGrid, RealGrid> diff_forward(const RealGrid& u);

/// Adjoint of diff_forward: returns Dx^T gx + Dy^T gy.
RealGrid diff_adjoint(const RealGrid& gx, const RealGrid& gy);
RealGrid diff_x_adjoint(const RealGrid& gx);
RealGrid diff_y_adjoint(const RealGrid& gy);

/// Anisotropic total variation ||Dx U||_1 + ||Dy U||_1.
double tv_norm(const RealGrid& u);

double binarity_penalty(const RealGrid& u);

SplitTriple phi(const RealGrid& u, double beta1, double beta2);

double shrink(double x, double kappa);
RealGrid shrink(const RealGrid& x, double kappa);
SplitTriple shrink(const SplitTriple& x, double kappa);

}  // namespace ilt
