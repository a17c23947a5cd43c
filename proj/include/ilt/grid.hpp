#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ilt {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Square n x n pixel field stored row-major. Element (row, col) lives at
/// index row * n + col, which is the vectorized layout every operator in
/// this library acts on.
template <class T>
class Grid {
public:
    using value_type = T;

    Grid() = default;

    explicit Grid(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {
        if (n == 0) throw DimensionError("grid side must be positive");
    }

    Grid(std::size_t n, std::vector<T> data) : n_(n), data_(std::move(data)) {
        if (n == 0) throw DimensionError("grid side must be positive");
        if (data_.size() != n * n)
            throw DimensionError("grid data length " + std::to_string(data_.size()) +
                                 " does not match " + std::to_string(n) + "x" + std::to_string(n));
    }

    std::size_t side() const noexcept { return n_; }
    std::size_t width() const noexcept { return n_; }
    std::size_t height() const noexcept { return n_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
    const T& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    bool same_shape(const Grid& other) const noexcept { return n_ == other.n_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

using RealGrid = Grid<double>;
using ComplexGrid = Grid<Complex>;

/// A grid whose every value is exactly 0 or 1.
class BinaryPattern {
public:
    BinaryPattern() = default;
    explicit BinaryPattern(RealGrid grid);

    const RealGrid& grid() const noexcept { return grid_; }
    std::size_t side() const noexcept { return grid_.side(); }
    double operator[](std::size_t i) const { return grid_[i]; }
    double operator()(std::size_t r, std::size_t c) const { return grid_(r, c); }
    std::size_t count_ones() const;

    friend bool operator==(const BinaryPattern&, const BinaryPattern&) = default;

private:
    RealGrid grid_;
};

template <class A, class B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
    if (a.side() != b.side())
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.side()) +
                             " vs " + std::to_string(b.side()) + ")");
}

bool all_finite(const RealGrid& g);
bool all_finite(const ComplexGrid& g);

RealGrid project_box(const RealGrid& u);

double l1_norm(const RealGrid& x);
double l2_norm(const RealGrid& x);
double l2_norm(const ComplexGrid& x);

/// Real part of the Hermitian inner product sum(conj(a) * b).
double inner(const ComplexGrid& a, const ComplexGrid& b);
double inner(const RealGrid& a, const RealGrid& b);

ComplexGrid to_complex(const RealGrid& g);
RealGrid real_part(const ComplexGrid& g);
RealGrid imag_part(const ComplexGrid& g);
RealGrid magnitude(const ComplexGrid& g);

}  // namespace ilt
