#include <doctest.h>

#include "ilt/grid.hpp"
#include "support.hpp"

using namespace ilt;

TEST_CASE("project_box clamps to [0, 1]") {
    RealGrid u(2, std::vector<double>{1.2, -0.3, 0.5, 1.0});
    const RealGrid p = project_box(u);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    CHECK(p[2] == 0.5);
    CHECK(p[3] == 1.0);
}

TEST_CASE("project_box is idempotent") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const RealGrid u = test::random_real(9, rng, -2.0, 3.0);
        const RealGrid once = project_box(u);
        CHECK(project_box(once) == once);
        for (double v : once) CHECK((v >= 0.0 && v <= 1.0));
    }
}

TEST_CASE("norms") {
    CHECK(l1_norm(RealGrid(4)) == 0.0);
    RealGrid g(3);
    g(1, 2) = 3.0;
    CHECK(l2_norm(g) == 3.0);
    CHECK(l1_norm(g) == 3.0);
    ComplexGrid z(2);
    z[0] = Complex{3.0, 4.0};
    CHECK(l2_norm(z) == doctest::Approx(5.0));
}

TEST_CASE("inner(X, X) equals l2_norm(X)^2") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        const ComplexGrid x = test::random_complex(7, rng);
        const double n2 = l2_norm(x);
        CHECK(std::abs(inner(x, x) - n2 * n2) <= 1e-12 * n2 * n2);
        const RealGrid r = test::random_real(7, rng, -1.0, 1.0);
        const double r2 = l2_norm(r);
        CHECK(std::abs(inner(r, r) - r2 * r2) <= 1e-12 * r2 * r2);
    }
}

TEST_CASE("inner is the real part of the Hermitian product") {
    ComplexGrid a(1), b(1);
    a[0] = Complex{1.0, 2.0};
    b[0] = Complex{3.0, -1.0};
    // conj(1+2i) (3-i) = (1-2i)(3-i) = 1 - 7i
    CHECK(inner(a, b) == doctest::Approx(1.0));
}

TEST_CASE("grid constructors reject bad lengths") {
    CHECK_THROWS_AS(RealGrid(3, std::vector<double>(8)), DimensionError);
    CHECK_THROWS_AS(RealGrid(0), DimensionError);
    CHECK_NOTHROW(RealGrid(2, std::vector<double>(4)));
}

TEST_CASE("dimension mismatch is reported") {
    CHECK_THROWS_AS(inner(RealGrid(2), RealGrid(3)), DimensionError);
    CHECK_THROWS_AS(inner(ComplexGrid(2), ComplexGrid(3)), DimensionError);
}

TEST_CASE("BinaryPattern accepts only 0/1") {
    CHECK_THROWS(BinaryPattern(RealGrid(2, std::vector<double>{0.0, 1.0, 0.5, 0.0})));
    const BinaryPattern p(RealGrid(2, std::vector<double>{0.0, 1.0, 1.0, 0.0}));
    CHECK(p.count_ones() == 2);
}

TEST_CASE("row-major layout") {
    RealGrid g(3);
    g(1, 2) = 7.0;
    CHECK(g[1 * 3 + 2] == 7.0);
}

TEST_CASE("complex helpers") {
    ComplexGrid z(1);
    z[0] = Complex{3.0, -4.0};
    CHECK(real_part(z)[0] == 3.0);
    CHECK(imag_part(z)[0] == -4.0);
    CHECK(magnitude(z)[0] == doctest::Approx(5.0));
    CHECK(to_complex(RealGrid(1, 2.0))[0] == Complex{2.0, 0.0});
    CHECK(all_finite(z));
    z[0] = Complex{std::nan(""), 0.0};
    CHECK_FALSE(all_finite(z));
}
