#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ilt/optics.hpp"
#include "ilt/validation.hpp"
#include "support.hpp"

using namespace ilt;

namespace {

PsfKernel kernel_from(ComplexGrid samples) {
    PsfKernel k;
    k.samples = std::move(samples);
    return with_samples(k, k.samples);
}

}  // namespace

TEST_CASE("cutoff frequency") {
    OpticsConfig c;
    CHECK(cutoff_frequency(c) == doctest::Approx(0.85 / 193.0));
    CHECK(cutoff_frequency(c) == doctest::Approx(4.4041e-3).epsilon(1e-4));
    c.numerical_aperture = 0.5;
    c.wavelength_nm = 1.0;
    CHECK(cutoff_frequency(c) == 0.5);
    c.defocus_nm = 80.0;
    CHECK(cutoff_frequency(c) == 0.5);
}

TEST_CASE("config validation") {
    OpticsConfig c;
    CHECK_NOTHROW(c.validate());
    c.numerical_aperture = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = OpticsConfig{};
    c.threshold = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = OpticsConfig{};
    c.kernel_size = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("pupil values") {
    OpticsConfig c;
    const double fc = cutoff_frequency(c);
    CHECK(pupil_value(c, 0.3 * fc, 0.2 * fc) == Complex{1.0, 0.0});
    CHECK(pupil_value(c, 1.01 * fc, 0.0) == Complex{0.0, 0.0});
    c.defocus_nm = 50.0;
    CHECK(pupil_value(c, 0.8 * fc, 0.8 * fc) == Complex{0.0, 0.0});
    const Complex expected = std::exp(Complex{0.0, -2.0 * std::numbers::pi * 50.0 / 193.0});
    CHECK(std::abs(pupil_value(c, 0.0, 0.0) - expected) < 1e-15);
    CHECK(std::abs(std::abs(pupil_value(c, 0.5 * fc, 0.1 * fc)) - 1.0) < 1e-15);
}

TEST_CASE("build_pupil samples the disc on a centred lattice") {
    OpticsConfig c;
    const double fc = cutoff_frequency(c);
    const FrequencyLattice lat{16, fc / 4.0, 1};
    const ComplexGrid p = build_pupil(c, lat);
    CHECK(p(8, 8) == Complex{1.0, 0.0});   // DC
    CHECK(p(8, 12) == Complex{1.0, 0.0});  // exactly on the cutoff
    CHECK(p(8, 13) == Complex{0.0, 0.0});
    CHECK(p(0, 0) == Complex{0.0, 0.0});
}

TEST_CASE("PSF at best focus is real, symmetric and normalized") {
    const OpticsConfig c;
    const PsfKernel h = build_psf(c);
    REQUIRE(h.size() == 100);
    const std::size_t k = h.size();
    const std::size_t ctr = h.center();
    double max_imag = 0.0, max_asym = 0.0;
    Complex sum{0.0, 0.0};
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t col = 0; col < k; ++col) {
            sum += h.samples(r, col);
            max_imag = std::max(max_imag, std::abs(h.samples(r, col).imag()));
            // 180 degree rotation about the centre, where the mirror lies inside the kernel
            if (r >= 1 && col >= 1) {
                const std::size_t rr = 2 * ctr - r, cc = 2 * ctr - col;
                max_asym = std::max(max_asym, std::abs(h.samples(r, col) - h.samples(rr, cc)));
                // 90 degree rotation
                const std::size_t qr = col, qc = 2 * ctr - r;
                max_asym = std::max(max_asym, std::abs(h.samples(r, col) - h.samples(qr, qc)));
            }
        }
    CHECK(max_imag < 1e-10);
    CHECK(max_asym < 1e-10);
    CHECK(std::abs(std::abs(sum) - 1.0) < 1e-12);
    CHECK(std::abs(h.dc_gain - 1.0) < 1e-12);
    // Peak at the centre.
    for (const auto& v : h.samples) CHECK(std::abs(v) <= std::abs(h.samples(ctr, ctr)) + 1e-15);
}

TEST_CASE("PSF radial profile follows the jinc inside the main lobe") {
    const OpticsConfig c;
    const PsfKernel h = build_psf(c);
    const std::size_t ctr = h.center();
    const double s = 2.0 * std::numbers::pi * c.numerical_aperture / c.wavelength_nm * c.pixel_size_nm;
    const double h0 = h.samples(ctr, ctr).real();
    std::size_t checked = 0;
    for (std::size_t r = 1; s * static_cast<double>(r) < 3.83; ++r) {
        const double ref = validation::jinc(s * static_cast<double>(r)) / 0.5;
        const double got = h.samples(ctr, ctr + r).real() / h0;
        CHECK(std::abs(got - ref) <= 0.02 * std::abs(ref));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("PSF with defocus keeps unit DC gain and is complex") {
    OpticsConfig c;
    c.defocus_nm = 50.0;
    const PsfKernel h = build_psf(c);
    CHECK(std::abs(h.dc_gain - 1.0) < 1e-12);
    double max_imag = 0.0;
    for (const auto& v : h.samples) max_imag = std::max(max_imag, std::abs(v.imag()));
    CHECK(max_imag > 1e-4);
}

TEST_CASE("PSF for other kernel sizes satisfies the DC invariant") {
    for (std::size_t k : {5u, 16u, 31u}) {
        OpticsConfig c;
        c.kernel_size = k;
        CHECK(std::abs(build_psf(c).dc_gain - 1.0) < 1e-12);
    }
}

TEST_CASE("convolution with a centred impulse is the identity") {
    std::mt19937_64 rng(21);
    for (std::size_t k : {1u, 4u, 5u}) {
        ComplexGrid imp(k);
        imp(k / 2, k / 2) = Complex{1.0, 0.0};
        const PsfKernel h = kernel_from(imp);
        const RealGrid u = test::random_real(9, rng);
        const ComplexGrid v = convolve(h, u);
        CHECK(test::max_abs_diff(v, to_complex(u)) < 1e-12);
    }
}

TEST_CASE("convolution matches the naive double sum") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 3 + t % 9;
        const std::size_t k = 1 + (t * 7) % 8;
        const ComplexGrid kern = test::random_complex(k, rng);
        const RealGrid u = test::random_real(n, rng, -1.0, 1.0);
        const ComplexGrid fast = convolve(kernel_from(kern), u);
        const ComplexGrid slow = validation::convolve_naive(kern, u);
        CHECK(test::max_abs_diff(fast, slow) < 1e-10);
    }
}

TEST_CASE("convolution is linear") {
    std::mt19937_64 rng(23);
    const PsfKernel h = kernel_from(test::random_complex(5, rng));
    const RealGrid a = test::random_real(10, rng), b = test::random_real(10, rng);
    const double alpha = 0.7, beta = -1.9;
    RealGrid mix(10);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = alpha * a[i] + beta * b[i];
    const ComplexGrid ha = convolve(h, a), hb = convolve(h, b), hm = convolve(h, mix);
    ComplexGrid lin(10);
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = alpha * ha[i] + beta * hb[i];
    CHECK(test::max_abs_diff(hm, lin) < 1e-10);
}

TEST_CASE("unit impulse mask returns the cropped kernel") {
    std::mt19937_64 rng(24);
    const ComplexGrid kern = test::random_complex(5, rng);
    RealGrid u(11);
    u(5, 5) = 1.0;
    const ComplexGrid v = convolve(kernel_from(kern), u);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) CHECK(std::abs(v(3 + r, 3 + c) - kern(r, c)) < 1e-10);
}

TEST_CASE("adjoint identity <Hu, r> = <u, H* r>") {
    std::mt19937_64 rng(25);
    for (std::size_t k : {3u, 6u}) {
        const ComplexGrid kern = test::random_complex(k, rng);
        const Convolver conv(kern, 12);
        const ComplexGrid uc = test::random_complex(12, rng);
        const ComplexGrid r = test::random_complex(12, rng);
        const double lhs = inner(conv.apply(uc), r);
        const double rhs = inner(uc, conv.adjoint(r));
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
        const RealGrid ur = test::random_real(12, rng);
        CHECK(std::abs(inner(conv.apply(ur), r) - inner(ur, conv.adjoint_real(r))) < 1e-10);
        CHECK(test::max_abs_diff(conv.adjoint_real(r), real_part(conv.adjoint(r))) < 1e-12);
    }
}

TEST_CASE("convolver rejects mismatched sizes") {
    const Convolver conv(ComplexGrid(3, Complex{1.0, 0.0}), 8);
    CHECK_THROWS_AS(conv.apply(RealGrid(7)), DimensionError);
}

TEST_CASE("aerial image") {
    CHECK(aerial_image(ComplexGrid(3)) == RealGrid(3));
    ComplexGrid v(1);
    v[0] = Complex{3.0, 4.0};
    CHECK(aerial_image(v)[0] == doctest::Approx(25.0));
}

TEST_CASE("open area images to unit intensity") {
    OpticsConfig c;
    c.kernel_size = 40;
    const ImagingModel m(build_psf(c), 100);
    const RealGrid a = aerial_image(m.field(RealGrid(100, 1.0)));
    // interior pixels at least one kernel radius from the edge
    for (std::size_t r = 20; r < 80; ++r)
        for (std::size_t col = 20; col < 80; ++col) CHECK(std::abs(a(r, col) - 1.0) < 1e-6);
}

TEST_CASE("aerial image of a symmetric mask is symmetric at best focus") {
    const OpticsConfig c;
    const std::size_t n = 48;
    RealGrid u(n);
    for (std::size_t r = 10; r < 20; ++r)
        for (std::size_t col = 8; col < 30; ++col) {
            u(r, col) = 1.0;
            u(n - 1 - r, n - 1 - col) = 1.0;
        }
    const ImagingModel m(build_psf(c), n);
    const RealGrid a = aerial_image(m.field(u));
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t col = 0; col < n; ++col)
            worst = std::max(worst, std::abs(a(r, col) - a(n - 1 - r, n - 1 - col)));
    CHECK(worst < 1e-8);
}

TEST_CASE("sigmoid") {
    CHECK(sigmoid(0.3, 20.0, 0.3) == 0.5);
    CHECK(sigmoid(50.0, 20.0, 0.3) == doctest::Approx(1.0));
    CHECK(sigmoid(-50.0, 20.0, 0.3) == doctest::Approx(0.0));
    // derivative a S (1 - S) peaks at tr
    auto deriv = [](double x) {
        const double s = sigmoid(x, 20.0, 0.3);
        return 20.0 * s * (1.0 - s);
    };
    CHECK(deriv(0.3) > deriv(0.29));
    CHECK(deriv(0.3) > deriv(0.31));
    CHECK(deriv(0.3) == doctest::Approx(5.0));
    const RealGrid s = image_sigmoid(RealGrid(2, 0.3), 20.0, 0.3);
    for (double v : s) CHECK(v == 0.5);
}

TEST_CASE("sigmoid converges to the hard threshold") {
    std::mt19937_64 rng(26);
    RealGrid x = test::random_real(20, rng);
    for (auto& v : x)
        if (std::abs(v - 0.3) < 0.05) v = v < 0.3 ? 0.25 : 0.35;
    const RealGrid s = image_sigmoid(x, 1e3, 0.3);
    const BinaryPattern t = image_threshold(x, 0.3);
    double mean = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mean += std::abs(s[i] - t[i]);
    CHECK(mean / static_cast<double>(x.size()) < 1e-6);
}

TEST_CASE("threshold") {
    RealGrid x(2, std::vector<double>{0.3, 0.29, 0.31, 1.0});
    const BinaryPattern t = image_threshold(x, 0.3);
    CHECK(t[0] == 1.0);
    CHECK(t[1] == 0.0);
    CHECK(t[2] == 1.0);
    const BinaryPattern b(RealGrid(2, std::vector<double>{0.0, 1.0, 1.0, 0.0}));
    CHECK(image_threshold(b.grid(), 0.5) == b);
}

TEST_CASE("perturbed kernel has the requested relative noise and is seeded") {
    const OpticsConfig c;
    const PsfKernel h = build_psf(c);
    const PsfKernel p1 = perturb_kernel(h, 1e-3, 7);
    const PsfKernel p2 = perturb_kernel(h, 1e-3, 7);
    const PsfKernel p3 = perturb_kernel(h, 1e-3, 8);
    CHECK(p1.samples == p2.samples);
    CHECK_FALSE(p1.samples == p3.samples);
    ComplexGrid diff(h.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = p1.samples[i] - h.samples[i];
    CHECK(l2_norm(diff) / l2_norm(h.samples) == doctest::Approx(1e-3).epsilon(1e-9));
    CHECK(perturb_kernel(h, 0.0, 1).samples == h.samples);
    CHECK_THROWS_AS(perturb_kernel(h, -1.0, 1), std::invalid_argument);
}
