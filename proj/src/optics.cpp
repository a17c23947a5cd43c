#include "ilt/optics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace ilt {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwDeleter {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer make_buffer_uninit(std::size_t count) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer(p);
}

FftwBuffer make_buffer(std::size_t count) {
    auto buf = make_buffer_uninit(count);
    std::fill_n(&buf[0][0], 2 * count, 0.0);
    return buf;
}

struct RealBufferDeleter {
    void operator()(double* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], RealBufferDeleter>;

RealBuffer make_real_buffer_uninit(std::size_t count) {
    auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * count));
    if (p == nullptr) throw std::bad_alloc();
    return RealBuffer(p);
}

RealBuffer make_real_buffer(std::size_t count) {
    auto buf = make_real_buffer_uninit(count);
    std::fill_n(buf.get(), count, 0.0);
    return buf;
}

// Real-to-half-complex plans on an m x m grid.
struct RealPlans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit RealPlans(std::size_t m) {
        auto real = make_real_buffer(m * m);
        auto spec = make_buffer(m * (m / 2 + 1));
        std::lock_guard lock(planner_mutex());
        const int side = static_cast<int>(m);
        forward = fftw_plan_dft_r2c_2d(side, side, real.get(), spec.get(), FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_2d(side, side, spec.get(), real.get(), FFTW_ESTIMATE);
        if (forward == nullptr || backward == nullptr) throw std::runtime_error("FFTW planning failed");
    }
    ~RealPlans() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
    RealPlans(const RealPlans&) = delete;
    RealPlans& operator=(const RealPlans&) = delete;
};

bool has_small_factors(std::size_t v) {
    for (std::size_t p : {2u, 3u, 5u, 7u})
        while (v % p == 0) v /= p;
    return v == 1;
}

std::size_t fft_friendly_size(std::size_t minimum) {
    std::size_t v = minimum;
    while (v % 2 != 0 || !has_small_factors(v)) ++v;
    return v;
}

}  // namespace

void OpticsConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("optics config: " + msg); };
    if (!(wavelength_nm > 0.0)) fail("wavelength_nm must be > 0");
    if (!(numerical_aperture > 0.0 && numerical_aperture < 1.0)) fail("numerical_aperture must lie in (0, 1)");
    if (!std::isfinite(defocus_nm)) fail("defocus_nm must be finite");
    if (!(pixel_size_nm > 0.0)) fail("pixel_size_nm must be > 0");
    if (kernel_size == 0) fail("kernel_size must be > 0");
    if (!(sigmoid_steepness > 0.0)) fail("sigmoid_steepness must be > 0");
    if (!(threshold > 0.0 && threshold < 1.0)) fail("threshold must lie in (0, 1)");
}

double cutoff_frequency(const OpticsConfig& cfg) { return cfg.numerical_aperture / cfg.wavelength_nm; }

Complex pupil_value(const OpticsConfig& cfg, double f, double g) {
    const double rho2 = f * f + g * g;
    const double fc = cutoff_frequency(cfg);
    if (std::sqrt(rho2) > fc) return {0.0, 0.0};
    if (cfg.defocus_nm == 0.0) return {1.0, 0.0};
    const double lambda = cfg.wavelength_nm;
    const double aberration = cfg.defocus_nm * std::sqrt(1.0 - rho2 * lambda * lambda);
    return std::polar(1.0, -2.0 * std::numbers::pi / lambda * aberration);
}

ComplexGrid build_pupil(const OpticsConfig& cfg, const FrequencyLattice& lattice) {
    if (lattice.samples == 0 || !(lattice.step > 0.0) || lattice.supersample == 0)
        throw std::invalid_argument("frequency lattice must have samples > 0, step > 0, supersample > 0");
    const std::size_t ss = lattice.supersample;
    ComplexGrid pupil(lattice.samples);
    for (std::size_t r = 0; r < lattice.samples; ++r) {
        const double g0 = lattice.frequency(r);
        for (std::size_t c = 0; c < lattice.samples; ++c) {
            const double f0 = lattice.frequency(c);
            if (ss == 1) {
                pupil(r, c) = pupil_value(cfg, f0, g0);
                continue;
            }
            Complex acc{0.0, 0.0};
            for (std::size_t a = 0; a < ss; ++a) {
                const double dg = ((static_cast<double>(a) + 0.5) / static_cast<double>(ss) - 0.5) * lattice.step;
                for (std::size_t b = 0; b < ss; ++b) {
                    const double df =
                        ((static_cast<double>(b) + 0.5) / static_cast<double>(ss) - 0.5) * lattice.step;
                    acc += pupil_value(cfg, f0 + df, g0 + dg);
                }
            }
            pupil(r, c) = acc / static_cast<double>(ss * ss);
        }
    }
    return pupil;
}

PsfKernel build_psf(const OpticsConfig& cfg) { return build_psf(cfg, kPsfOversample, kPsfSupersample); }

PsfKernel build_psf(const OpticsConfig& cfg, std::size_t oversample, std::size_t supersample) {
    cfg.validate();
    if (oversample == 0) throw std::invalid_argument("oversample must be > 0");
    const std::size_t k = cfg.kernel_size;
    const std::size_t m = k * oversample;
    const FrequencyLattice lattice{m, 1.0 / (static_cast<double>(m) * cfg.pixel_size_nm), supersample};
    const ComplexGrid pupil = build_pupil(cfg, lattice);

    // Centred pupil -> FFT order (ifftshift), inverse transform, then centre the result.
    auto buf = make_buffer(m * m);
    const std::size_t half = m / 2;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            const Complex v = pupil(r, c);
            const std::size_t idx = ((r + m - half) % m) * m + (c + m - half) % m;
            buf[idx][0] = v.real();
            buf[idx][1] = v.imag();
        }
    }
    {
        fftw_plan plan;
        {
            std::lock_guard lock(planner_mutex());
            plan = fftw_plan_dft_2d(static_cast<int>(m), static_cast<int>(m), buf.get(), buf.get(), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    // Spatial index s (FFT order) sits at offset s relative to the origin; place
    // the origin at kernel index k/2.
    ComplexGrid samples(k);
    const long kc = static_cast<long>(k / 2);
    const long mm = static_cast<long>(m);
    Complex sum{0.0, 0.0};
    for (std::size_t r = 0; r < k; ++r) {
        const long y = (static_cast<long>(r) - kc + mm) % mm;
        for (std::size_t c = 0; c < k; ++c) {
            const long x = (static_cast<long>(c) - kc + mm) % mm;
            const auto& v = buf[static_cast<std::size_t>(y * mm + x)];
            samples(r, c) = {v[0], v[1]};
            sum += samples(r, c);
        }
    }
    if (std::abs(sum) == 0.0) throw std::runtime_error("PSF has zero DC gain; kernel too small for the optics");
    for (auto& v : samples) v /= sum;

    PsfKernel psf{std::move(samples), cfg, 0.0};
    Complex total{0.0, 0.0};
    for (const auto& v : psf.samples) total += v;
    psf.dc_gain = std::abs(total);
    return psf;
}

PsfKernel with_samples(const PsfKernel& base, ComplexGrid samples) {
    PsfKernel out{std::move(samples), base.config, 0.0};
    Complex total{0.0, 0.0};
    for (const auto& v : out.samples) total += v;
    out.dc_gain = std::abs(total);
    return out;
}

PsfKernel perturb_kernel(const PsfKernel& base, double relative, std::uint64_t seed) {
    if (!(relative >= 0.0) || !std::isfinite(relative))
        throw std::invalid_argument("perturb_kernel: relative noise level must be finite and >= 0");
    ComplexGrid noisy = base.samples;
    if (relative > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        ComplexGrid noise(noisy.side());
        for (auto& z : noise) {
            const double re = normal(rng);
            const double im = normal(rng);
            z = Complex{re, im};
        }
        const double scale = relative * l2_norm(base.samples) / l2_norm(noise);
        for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] += scale * noise[i];
    }
    return with_samples(base, std::move(noisy));
}

// The kernel is split into real and imaginary parts so that every transform
// is real-to-complex: H u = (Kr * u) + i (Ki * u) for real u.
struct Convolver::Impl {
    Impl(std::size_t n_, std::size_t k_, std::size_t m_)
        : n(n_), k(k_), m(m_), half(m_ / 2 + 1), plans(m_), kr_hat(make_buffer(m_ * half)),
          ki_hat(make_buffer(m_ * half)) {}

    std::size_t n, k, m, half;
    RealPlans plans;
    FftwBuffer kr_hat;
    FftwBuffer ki_hat;
    bool has_imag = false;

    FftwBuffer spectrum(const RealGrid& u) const {
        auto real = make_real_buffer_uninit(m * m);
        for (std::size_t r = 0; r < n; ++r) {
            std::copy_n(&u(r, 0), n, &real[r * m]);
            std::fill_n(&real[r * m + n], m - n, 0.0);
        }
        std::fill_n(&real[n * m], (m - n) * m, 0.0);
        auto spec = make_buffer_uninit(m * half);
        fftw_execute_dft_r2c(plans.forward, real.get(), spec.get());
        return spec;
    }

    // out = sum_j (conj?) kernel_j_hat * spec_j, accumulated with real weights.
    struct Term {
        const fftw_complex* data;
        const fftw_complex* kernel;
        double weight;
        bool conjugate_kernel;
    };

    RealBuffer inverse(std::initializer_list<Term> terms) const {
        auto spec = make_buffer_uninit(m * half);
        bool first = true;
        for (const Term& t : terms) {
            const double sign = t.conjugate_kernel ? -1.0 : 1.0;
            for (std::size_t i = 0; i < m * half; ++i) {
                const double kr = t.kernel[i][0];
                const double ki = sign * t.kernel[i][1];
                const double re = t.weight * (t.data[i][0] * kr - t.data[i][1] * ki);
                const double im = t.weight * (t.data[i][0] * ki + t.data[i][1] * kr);
                if (first) {
                    spec[i][0] = re;
                    spec[i][1] = im;
                } else {
                    spec[i][0] += re;
                    spec[i][1] += im;
                }
            }
            first = false;
        }
        auto real = make_real_buffer_uninit(m * m);
        fftw_execute_dft_c2r(plans.backward, spec.get(), real.get());
        return real;
    }

    // Output pixel (r, c) of a convolution sits at full index (r + k/2, c + k/2).
    double conv_at(const RealBuffer& full, std::size_t r, std::size_t c) const {
        return full[(r + k / 2) * m + (c + k / 2)];
    }
    // Output pixel j of a correlation sits at circular lag j - k/2.
    double corr_at(const RealBuffer& full, std::size_t r, std::size_t c) const {
        return full[((r + m - k / 2) % m) * m + (c + m - k / 2) % m];
    }
};

Convolver::Convolver(const ComplexGrid& kernel, std::size_t n)
    : n_(n), k_(kernel.side()), m_(fft_friendly_size(n + kernel.side() - 1)) {
    if (n == 0) throw DimensionError("mask side must be positive");
    impl_ = std::make_unique<Impl>(n_, k_, m_);
    auto kr = make_real_buffer(m_ * m_);
    auto ki = make_real_buffer(m_ * m_);
    for (std::size_t r = 0; r < k_; ++r)
        for (std::size_t c = 0; c < k_; ++c) {
            kr[r * m_ + c] = kernel(r, c).real();
            ki[r * m_ + c] = kernel(r, c).imag();
            if (kernel(r, c).imag() != 0.0) impl_->has_imag = true;
        }
    fftw_execute_dft_r2c(impl_->plans.forward, kr.get(), impl_->kr_hat.get());
    fftw_execute_dft_r2c(impl_->plans.forward, ki.get(), impl_->ki_hat.get());
}

Convolver::~Convolver() = default;
Convolver::Convolver(Convolver&&) noexcept = default;
Convolver& Convolver::operator=(Convolver&&) noexcept = default;

ComplexGrid Convolver::apply(const RealGrid& u) const {
    if (u.side() != n_) throw DimensionError("convolve: mask side does not match convolver");
    const Impl& im = *impl_;
    const auto uh = im.spectrum(u);
    const double scale = 1.0 / static_cast<double>(m_ * m_);
    const auto re = im.inverse({{uh.get(), im.kr_hat.get(), scale, false}});
    ComplexGrid out(n_);
    if (im.has_imag) {
        const auto imag = im.inverse({{uh.get(), im.ki_hat.get(), scale, false}});
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) out(r, c) = {im.conv_at(re, r, c), im.conv_at(imag, r, c)};
    } else {
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) out(r, c) = {im.conv_at(re, r, c), 0.0};
    }
    return out;
}

ComplexGrid Convolver::apply(const ComplexGrid& u) const {
    if (u.side() != n_) throw DimensionError("convolve: mask side does not match convolver");
    const Impl& im = *impl_;
    const auto ur = im.spectrum(real_part(u));
    const auto ui = im.spectrum(imag_part(u));
    const double s = 1.0 / static_cast<double>(m_ * m_);
    // (Kr + iKi)(ur + i ui) = (Kr ur - Ki ui) + i (Ki ur + Kr ui)
    const auto re = im.inverse({{ur.get(), im.kr_hat.get(), s, false}, {ui.get(), im.ki_hat.get(), -s, false}});
    const auto imag = im.inverse({{ur.get(), im.ki_hat.get(), s, false}, {ui.get(), im.kr_hat.get(), s, false}});
    ComplexGrid out(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) out(r, c) = {im.conv_at(re, r, c), im.conv_at(imag, r, c)};
    return out;
}

ComplexGrid Convolver::adjoint(const ComplexGrid& rgrid) const {
    if (rgrid.side() != n_) throw DimensionError("adjoint: grid side does not match convolver");
    const Impl& im = *impl_;
    const auto rr = im.spectrum(real_part(rgrid));
    const auto ri = im.spectrum(imag_part(rgrid));
    const double s = 1.0 / static_cast<double>(m_ * m_);
    // conj(K) correlated with r: (Kr - iKi) . (rr + i ri) = (Kr.rr + Ki.ri) + i (Kr.ri - Ki.rr)
    const auto re = im.inverse({{rr.get(), im.kr_hat.get(), s, true}, {ri.get(), im.ki_hat.get(), s, true}});
    const auto imag = im.inverse({{ri.get(), im.kr_hat.get(), s, true}, {rr.get(), im.ki_hat.get(), -s, true}});
    ComplexGrid out(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) out(r, c) = {im.corr_at(re, r, c), im.corr_at(imag, r, c)};
    return out;
}

RealGrid Convolver::adjoint_real(const ComplexGrid& rgrid) const {
    if (rgrid.side() != n_) throw DimensionError("adjoint: grid side does not match convolver");
    const Impl& im = *impl_;
    const double s = 1.0 / static_cast<double>(m_ * m_);
    const auto rr = im.spectrum(real_part(rgrid));
    RealBuffer re;
    if (im.has_imag) {
        const auto ri = im.spectrum(imag_part(rgrid));
        re = im.inverse({{rr.get(), im.kr_hat.get(), s, true}, {ri.get(), im.ki_hat.get(), s, true}});
    } else {
        re = im.inverse({{rr.get(), im.kr_hat.get(), s, true}});
    }
    RealGrid out(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) out(r, c) = im.corr_at(re, r, c);
    return out;
}

ImagingModel::ImagingModel(PsfKernel psf, std::size_t mask_side)
    : psf_(std::move(psf)), conv_(psf_.samples, mask_side) {}

ComplexGrid convolve(const PsfKernel& h, const RealGrid& u) { return Convolver(h.samples, u.side()).apply(u); }

RealGrid aerial_image(const ComplexGrid& v) {
    RealGrid out(v.side());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::norm(v[i]);
    return out;
}

double sigmoid(double x, double steepness, double threshold) {
    return 1.0 / (1.0 + std::exp(-steepness * (x - threshold)));
}

RealGrid image_sigmoid(const RealGrid& intensity, double steepness, double threshold) {
    if (!(steepness > 0.0)) throw std::invalid_argument("sigmoid steepness must be > 0");
    RealGrid out(intensity.side());
    for (std::size_t i = 0; i < intensity.size(); ++i) out[i] = sigmoid(intensity[i], steepness, threshold);
    return out;
}

BinaryPattern image_threshold(const RealGrid& intensity, double threshold) {
    RealGrid out(intensity.side());
    for (std::size_t i = 0; i < intensity.size(); ++i) out[i] = intensity[i] >= threshold ? 1.0 : 0.0;
    return BinaryPattern(std::move(out));
}

}  // namespace ilt
