#include <doctest.h>

#include "ilt/regularization.hpp"
#include "support.hpp"

using namespace ilt;

namespace {

// Stencil written out pixel by pixel, independent of diff_forward.
std::pair<RealGrid, RealGrid> stencil_oracle(const RealGrid& u) {
    const std::size_t n = u.side();
    RealGrid dx(n), dy(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            dx(r, c) = c + 1 < n ? u(r, c + 1) - u(r, c) : 0.0;
            dy(r, c) = r + 1 < n ? u(r + 1, c) - u(r, c) : 0.0;
        }
    return {dx, dy};
}

}  // namespace

TEST_CASE("diff_forward on constant and ramp grids") {
    const auto [cx, cy] = diff_forward(RealGrid(6, 2.5));
    CHECK(l1_norm(cx) == 0.0);
    CHECK(l1_norm(cy) == 0.0);

    RealGrid ramp(5);
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c) ramp(r, c) = static_cast<double>(c);
    const auto [dx, dy] = diff_forward(ramp);
    for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t c = 0; c < 4; ++c) CHECK(dx(r, c) == 1.0);
        CHECK(dx(r, 4) == 0.0);
    }
    CHECK(l1_norm(dy) == 0.0);
    CHECK_THROWS_AS(diff_forward(RealGrid(1)), DimensionError);
}

TEST_CASE("single interior pixel stencil") {
    RealGrid u(5);
    u(2, 2) = 1.0;
    const auto [dx, dy] = diff_forward(u);
    const auto [ox, oy] = stencil_oracle(u);
    CHECK(dx == ox);
    CHECK(dy == oy);
    auto nonzeros = [](const RealGrid& g) {
        std::size_t k = 0;
        for (double v : g) k += v != 0.0;
        return k;
    };
    CHECK(nonzeros(dx) == 2);
    CHECK(nonzeros(dy) == 2);
    CHECK(dx(2, 1) == 1.0);
    CHECK(dx(2, 2) == -1.0);
    CHECK(dy(1, 2) == 1.0);
    CHECK(dy(2, 2) == -1.0);
    CHECK(tv_norm(u) == l1_norm(ox) + l1_norm(oy));
    CHECK(tv_norm(u) == 4.0);
}

TEST_CASE("diff_forward matches the stencil oracle on random grids") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        const RealGrid u = test::random_real(2 + t, rng, -1.0, 1.0);
        const auto [dx, dy] = diff_forward(u);
        const auto [ox, oy] = stencil_oracle(u);
        CHECK(test::max_abs_diff(dx, ox) == 0.0);
        CHECK(test::max_abs_diff(dy, oy) == 0.0);
    }
}

TEST_CASE("diff adjoints satisfy <Du, g> = <u, D^T g>") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + t;
        const RealGrid u = test::random_real(n, rng, -1.0, 1.0);
        const RealGrid gx = test::random_real(n, rng, -1.0, 1.0);
        const RealGrid gy = test::random_real(n, rng, -1.0, 1.0);
        const auto [dx, dy] = diff_forward(u);
        CHECK(std::abs(inner(dx, gx) - inner(u, diff_x_adjoint(gx))) < 1e-12);
        CHECK(std::abs(inner(dy, gy) - inner(u, diff_y_adjoint(gy))) < 1e-12);
        CHECK(std::abs(inner(dx, gx) + inner(dy, gy) - inner(u, diff_adjoint(gx, gy))) < 1e-12);
    }
}

TEST_CASE("tv_norm properties") {
    CHECK(tv_norm(RealGrid(4, 0.7)) == 0.0);
    std::mt19937_64 rng(33);
    const RealGrid u = test::random_real(8, rng);
    for (double alpha : {-2.0, 0.5, 3.0}) {
        RealGrid s = u;
        for (auto& v : s) v *= alpha;
        CHECK(tv_norm(s) == doctest::Approx(std::abs(alpha) * tv_norm(u)).epsilon(1e-12));
    }
}

TEST_CASE("binarity penalty") {
    std::mt19937_64 rng(34);
    CHECK(binarity_penalty(test::random_pattern(7, rng).grid()) == 0.0);
    CHECK(binarity_penalty(RealGrid(6, 0.5)) == doctest::Approx(0.25 * 36));
    RealGrid g(3);
    g(0, 0) = 2.0;
    CHECK(binarity_penalty(g) == 2.0);
}

TEST_CASE("phi") {
    auto is_zero = [](const SplitTriple& t) { return l1_norm(t) == 0.0; };
    CHECK(is_zero(phi(RealGrid(4), 0.01, 0.015)));
    CHECK(is_zero(phi(RealGrid(4, 1.0), 0.01, 0.015)));
    const SplitTriple p = phi(RealGrid(4, 0.5), 0.01, 0.015);
    for (double v : p.pen) CHECK(v == doctest::Approx(0.00375).epsilon(1e-12));

    std::mt19937_64 rng(35);
    const RealGrid u = test::random_real(9, rng);
    const SplitTriple q = phi(u, 1.0, 0.3);
    CHECK(std::abs(l1_norm(q.tv_x) + l1_norm(q.tv_y) - tv_norm(u)) < 1e-12);
}

TEST_CASE("shrink") {
    CHECK(shrink(0.5, 0.2) == doctest::Approx(0.3));
    CHECK(shrink(-0.5, 0.2) == doctest::Approx(-0.3));
    CHECK(shrink(0.1, 0.2) == 0.0);
    CHECK(shrink(-0.1, 0.2) == 0.0);
}

TEST_CASE("shrink is 1-Lipschitz, shrinks l1 and is the identity at kappa 0") {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int t = 0; t < 10000; ++t) {
        const double x = d(rng), y = d(rng), k = std::abs(d(rng));
        CHECK(std::abs(shrink(x, k) - shrink(y, k)) <= std::abs(x - y) + 1e-15);
        CHECK(std::abs(shrink(x, k)) <= std::abs(x));
        CHECK(shrink(x, 0.0) == x);
    }
    const RealGrid g = test::random_real(6, rng, -1.0, 1.0);
    CHECK(shrink(g, 0.0) == g);
    CHECK(l1_norm(shrink(g, 0.3)) <= l1_norm(g));
    const SplitTriple s{g, g, g};
    const SplitTriple sh = shrink(s, 0.3);
    CHECK(sh.tv_x == shrink(g, 0.3));
    CHECK(sh.pen == shrink(g, 0.3));
}

TEST_CASE("regularizer vanishes exactly on constant binary grids") {
    auto f = [](const RealGrid& u) { return 0.01 * tv_norm(u) + 0.015 * binarity_penalty(u); };
    CHECK(f(RealGrid(6)) == 0.0);
    CHECK(f(RealGrid(6, 1.0)) == 0.0);
    std::mt19937_64 rng(37);
    for (int t = 0; t < 50; ++t) {
        CHECK(f(test::random_real(6, rng)) > 0.0);
        RealGrid b = test::random_pattern(6, rng).grid();
        b(0, 0) = 1.0;
        b(0, 1) = 0.0;  // never constant
        CHECK(f(b) > 0.0);
    }
}

TEST_CASE("triple arithmetic") {
    std::mt19937_64 rng(38);
    const SplitTriple a{test::random_real(4, rng), test::random_real(4, rng), test::random_real(4, rng)};
    const SplitTriple z = a - a;
    CHECK(l1_norm(z) == 0.0);
    const SplitTriple twice = a + a;
    CHECK(l2_norm(twice) == doctest::Approx(2.0 * l2_norm(a)));
}
