#include "ilt/validation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ilt::validation {

ComplexGrid convolve_naive(const ComplexGrid& kernel, const RealGrid& u) {
    const std::size_t n = u.side();
    if (n > kNaiveConvolutionCap)
        throw std::invalid_argument("convolve_naive: mask side " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(kNaiveConvolutionCap));
    const long k = static_cast<long>(kernel.side());
    const long c = k / 2;
    const long nn = static_cast<long>(n);
    ComplexGrid out(n);
    for (long i = 0; i < nn; ++i)
        for (long j = 0; j < nn; ++j) {
            Complex acc{0.0, 0.0};
            for (long p = 0; p < k; ++p) {
                const long y = i + c - p;
                if (y < 0 || y >= nn) continue;
                for (long q = 0; q < k; ++q) {
                    const long x = j + c - q;
                    if (x < 0 || x >= nn) continue;
                    acc += kernel(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) *
                           u(static_cast<std::size_t>(y), static_cast<std::size_t>(x));
                }
            }
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
        }
    return out;
}

double v_cost(Complex v, Complex w, double target, double rho, double tr) {
    const double t = (std::norm(v) >= tr) ? 1.0 : 0.0;
    return (t - target) * (t - target) + 0.5 * rho * std::norm(v - w);
}

OracleResult v_oracle(Complex w, double target, double rho, double tr, std::size_t samples) {
    if (!(rho > 0.0)) throw std::invalid_argument("v_oracle: rho must be > 0");
    if (samples < 2) throw std::invalid_argument("v_oracle: need at least 2 samples");
    const double wm = std::abs(w);
    const Complex dir = wm > 0.0 ? w / wm : Complex{1.0, 0.0};
    const double root = std::sqrt(tr);
    const double upper = wm + 2.0 * root;

    OracleResult best{dir * wm, v_cost(w, w, target, rho, tr), 1};
    auto consider = [&](double m) {
        const Complex v = dir * m;
        const double c = v_cost(v, w, target, rho, tr);
        ++best.evaluations;
        if (c < best.min_value) {
            best.min_value = c;
            best.argmin = v;
        }
    };
    // On the ray |v|^2 = m^2 and |v - w| = |m - |w||; the dense scan uses that
    // form and only the winner is re-scored with the complex cost.
    double scan_best = std::numeric_limits<double>::infinity();
    double scan_m = 0.0;
    const double step = upper / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double m = step * static_cast<double>(i);
        const double t = m * m >= tr ? 1.0 : 0.0;
        const double c = (t - target) * (t - target) + 0.5 * rho * (m - wm) * (m - wm);
        if (c < scan_best) {
            scan_best = c;
            scan_m = m;
        }
    }
    best.evaluations += samples - 1;
    consider(scan_m);
    consider(root);
    consider(root - 1e-9);
    // smallest magnitude that rounds to the printed side
    double m = root;
    while (std::norm(dir * m) < tr) m = std::nextafter(m, 2.0 * m + 1.0);
    consider(m);
    return best;
}

OracleResult v_oracle_plane(Complex w, double target, double rho, double tr, std::size_t per_axis) {
    if (per_axis < 2) throw std::invalid_argument("v_oracle_plane: need at least 2 points per axis");
    const double half = std::abs(w) + 2.0 * std::sqrt(tr);
    OracleResult best{w, v_cost(w, w, target, rho, tr), 1};
    for (std::size_t a = 0; a < per_axis; ++a) {
        const double re = -half + 2.0 * half * static_cast<double>(a) / static_cast<double>(per_axis - 1);
        for (std::size_t b = 0; b < per_axis; ++b) {
            const double im = -half + 2.0 * half * static_cast<double>(b) / static_cast<double>(per_axis - 1);
            const Complex v{re, im};
            const double c = v_cost(v, w, target, rho, tr);
            ++best.evaluations;
            if (c < best.min_value) {
                best.min_value = c;
                best.argmin = v;
            }
        }
    }
    return best;
}

RealGrid fd_gradient(const std::function<double(const RealGrid&)>& f, const RealGrid& u, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: step must be > 0");
    RealGrid g(u.side());
    RealGrid probe = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
        probe[i] = u[i] + h;
        const double up = f(probe);
        probe[i] = u[i] - h;
        const double down = f(probe);
        probe[i] = u[i];
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

ComplexGrid fd_gradient(const std::function<double(const ComplexGrid&)>& f, const ComplexGrid& v, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: step must be > 0");
    ComplexGrid g(v.side());
    ComplexGrid probe = v;
    for (std::size_t i = 0; i < v.size(); ++i) {
        probe[i] = v[i] + Complex{h, 0.0};
        const double re_up = f(probe);
        probe[i] = v[i] - Complex{h, 0.0};
        const double re_down = f(probe);
        probe[i] = v[i] + Complex{0.0, h};
        const double im_up = f(probe);
        probe[i] = v[i] - Complex{0.0, h};
        const double im_down = f(probe);
        probe[i] = v[i];
        g[i] = {(re_up - re_down) / (2.0 * h), (im_up - im_down) / (2.0 * h)};
    }
    return g;
}

namespace {

double j1_series(double x) {
    // sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
    const long double half = static_cast<long double>(x) / 2.0L;
    const long double q = -half * half;
    long double term = half;
    long double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<long double>(k) * static_cast<long double>(k + 1));
        sum += term;
        if (std::fabs(term) <= 1e-16L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

double j1_miller(double x) {
    // Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized with
    // J0 + 2 (J2 + J4 + ...) = 1.
    const double ax = std::abs(x);
    int start = static_cast<int>(ax) + 60;
    if (start % 2) ++start;
    double next = 0.0, cur = 1e-30, j1 = 0.0, norm = 0.0;
    for (int k = start; k > 0; --k) {
        const double prev = 2.0 * k / ax * cur - next;
        next = cur;
        cur = prev;  // cur is J_{k-1}
        if (k - 1 == 1) j1 = cur;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? cur : 2.0 * cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            j1 *= 1e-250;
            norm *= 1e-250;
        }
    }
    const double value = j1 / norm;
    return x < 0 ? -value : value;
}

}  // namespace

double bessel_j1(double x) {
    if (!(std::abs(x) < kBesselDomain)) throw std::domain_error("bessel_j1: |x| must be < 50");
    return std::abs(x) <= 20.0 ? j1_series(x) : j1_miller(x);
}

double jinc(double x) { return x == 0.0 ? 0.5 : bessel_j1(x) / x; }

}  // namespace ilt::validation
