#pragma once

// Brute-force reference implementations. Slow on purpose; nothing here may
// depend on the solver.

#include <cstddef>
#include <functional>

#include "ilt/grid.hpp"

namespace ilt::validation {

struct OracleResult {
    Complex argmin;
    double min_value = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr std::size_t kNaiveConvolutionCap = 32;

/// Direct double-sum zero-padded convolution, cropped so kernel index
/// side/2 aligns with the output pixel. Throws for masks larger than 32x32.
ComplexGrid convolve_naive(const ComplexGrid& kernel, const RealGrid& u);

/// Per-pixel V-subproblem cost (T(|v|^2) - I)^2 + rho/2 |v - w|^2.
double v_cost(Complex v, Complex w, double target, double rho, double tr);

/// Dense search along the ray through w (magnitudes in [0, |w| + 2 sqrt(tr)])
/// plus the candidates |w|, sqrt(tr), sqrt(tr) - 1e-9 and the first magnitude that prints.
OracleResult v_oracle(Complex w, double target, double rho, double tr, std::size_t samples = 100'000);

/// 2-D grid search over the square of half-width |w| + 2 sqrt(tr) around 0.
/// Used once to validate the ray reduction behind v_oracle.
OracleResult v_oracle_plane(Complex w, double target, double rho, double tr, std::size_t per_axis = 200);

/// Central differences (f(U + h e_i) - f(U - h e_i)) / 2h.
RealGrid fd_gradient(const std::function<double(const RealGrid&)>& f, const RealGrid& u, double h = 1e-6);

/// Central differences with respect to real and imaginary parts, packed as
/// d/dRe + i d/dIm.
ComplexGrid fd_gradient(const std::function<double(const ComplexGrid&)>& f, const ComplexGrid& v, double h = 1e-6);

inline constexpr double kBesselDomain = 50.0;

/// J1 by power series (|x| <= 20) or normalized Miller backward recurrence
/// (20 < |x| < 50). Throws std::domain_error outside |x| < 50.
double bessel_j1(double x);

/// J1(x) / x with the limit 1/2 at 0.
double jinc(double x);

}  // namespace ilt::validation
