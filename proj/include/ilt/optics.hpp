#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

#include "ilt/grid.hpp"

namespace ilt {

/// Coherent projection optics and resist parameters. Lengths in nm.
struct OpticsConfig {
    double wavelength_nm = 193.0;
    double numerical_aperture = 0.85;
    double defocus_nm = 0.0;
    double pixel_size_nm = 5.0;
    std::size_t kernel_size = 100;
    double sigmoid_steepness = 20.0;
    double threshold = 0.3;

    /// Throws std::invalid_argument naming the first violated bound.
    void validate() const;
};

/// Cutoff frequency NA / lambda in nm^-1.
double cutoff_frequency(const OpticsConfig& cfg);

/// Square frequency lattice centred on DC: index k maps to (k - samples/2) * step.
struct FrequencyLattice {
    std::size_t samples = 0;
    double step = 0.0;  // nm^-1
    /// Sub-cell samples per axis averaged into each pupil value; 1 = point sampling.
    std::size_t supersample = 1;

    double frequency(std::size_t k) const {
        return (static_cast<double>(k) - static_cast<double>(samples / 2)) * step;
    }
};

/// Pupil transfer function at one frequency point, including the defocus phase.
Complex pupil_value(const OpticsConfig& cfg, double f, double g);

/// Samples the pupil on a centred lattice; row index is g, column index is f.
ComplexGrid build_pupil(const OpticsConfig& cfg, const FrequencyLattice& lattice);

struct PsfKernel {
    ComplexGrid samples;
    OpticsConfig config;
    double dc_gain = 0.0;

    std::size_t size() const noexcept { return samples.side(); }
    std::size_t center() const noexcept { return samples.side() / 2; }
};

/// Pupil oversampling used by build_psf: the lattice step is
/// 1 / (oversample * kernel_size * pixel_size).
inline constexpr std::size_t kPsfOversample = 16;
inline constexpr std::size_t kPsfSupersample = 8;

PsfKernel build_psf(const OpticsConfig& cfg);
PsfKernel build_psf(const OpticsConfig& cfg, std::size_t oversample, std::size_t supersample);

/// Replaces the samples and recomputes dc_gain as |sum of samples| (no renormalization).
PsfKernel with_samples(const PsfKernel& base, ComplexGrid samples);

/// Adds seeded complex Gaussian noise N with ||N||_2 = relative * ||H||_2.
/// dc_gain is recomputed, the kernel is not renormalized.
PsfKernel perturb_kernel(const PsfKernel& base, double relative, std::uint64_t seed);

/// Linear zero-padded convolution with a fixed kernel on n x n masks, cropped
/// to the central n x n window. Kernel index `center` is aligned with the
/// output pixel. Computed with FFTs on a padded grid large enough that the
/// circular product never wraps. Safe to share across threads.
class Convolver {
public:
    Convolver(const ComplexGrid& kernel, std::size_t n);
    ~Convolver();
    Convolver(Convolver&&) noexcept;
    Convolver& operator=(Convolver&&) noexcept;
    Convolver(const Convolver&) = delete;
    Convolver& operator=(const Convolver&) = delete;

    std::size_t mask_side() const noexcept { return n_; }
    std::size_t padded_side() const noexcept { return m_; }

    ComplexGrid apply(const RealGrid& u) const;
    ComplexGrid apply(const ComplexGrid& u) const;
    /// Adjoint of apply: correlation with the conjugated kernel.
    ComplexGrid adjoint(const ComplexGrid& r) const;
    /// Re(adjoint(r)), the only part a real mask gradient needs.
    RealGrid adjoint_real(const ComplexGrid& r) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::size_t m_ = 0;
};

/// PSF plus its prepared convolver for one mask size.
class ImagingModel {
public:
    ImagingModel(PsfKernel psf, std::size_t mask_side);

    const PsfKernel& psf() const noexcept { return psf_; }
    const OpticsConfig& optics() const noexcept { return psf_.config; }
    std::size_t mask_side() const noexcept { return conv_.mask_side(); }
    const Convolver& convolver() const noexcept { return conv_; }

    ComplexGrid field(const RealGrid& u) const { return conv_.apply(u); }

private:
    PsfKernel psf_;
    Convolver conv_;
};

ComplexGrid convolve(const PsfKernel& h, const RealGrid& u);

RealGrid aerial_image(const ComplexGrid& v);

double sigmoid(double x, double steepness, double threshold);
RealGrid image_sigmoid(const RealGrid& intensity, double steepness, double threshold);
BinaryPattern image_threshold(const RealGrid& intensity, double threshold);

}  // namespace ilt
