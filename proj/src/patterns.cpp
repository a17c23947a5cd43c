#include "ilt/patterns.hpp"

#include <cmath>
#include <stdexcept>

namespace ilt::patterns {

namespace {

constexpr double kReferenceSide = 144.0;

std::vector<Rect> scaled(std::size_t n, const std::vector<Rect>& layout) {
    const double s = static_cast<double>(n) / kReferenceSide;
    auto px = [s](std::size_t v) { return static_cast<std::size_t>(std::lround(static_cast<double>(v) * s)); };
    std::vector<Rect> out;
    out.reserve(layout.size());
    for (const auto& r : layout) out.push_back({px(r.row), px(r.col), std::max<std::size_t>(1, px(r.height)),
                                                std::max<std::size_t>(1, px(r.width))});
    return out;
}

}  // namespace

BinaryPattern from_rects(std::size_t n, const std::vector<Rect>& rects) {
    RealGrid g(n);
    for (const auto& r : rects) {
        if (r.row + r.height > n || r.col + r.width > n)
            throw std::invalid_argument("rectangle exceeds the grid");
        for (std::size_t y = r.row; y < r.row + r.height; ++y)
            for (std::size_t x = r.col; x < r.col + r.width; ++x) g(y, x) = 1.0;
    }
    return BinaryPattern(std::move(g));
}

BinaryPattern ten_rectangles(std::size_t n) {
    // 3-4-3 staggered rows of 20 x 20 squares (100 nm, just under the coherent half-pitch).
    static const std::vector<Rect> layout = {
        {8, 14, 20, 20},   {8, 62, 20, 20},   {8, 110, 20, 20},
        {56, 0, 20, 20},   {56, 42, 20, 20},  {56, 84, 20, 20},  {56, 124, 20, 20},
        {104, 14, 20, 20}, {104, 62, 20, 20}, {104, 110, 20, 20},
    };
    return from_rects(n, scaled(n, layout));
}

BinaryPattern strips(std::size_t n) {
    static const std::vector<Rect> layout = {
        {16, 16, 24, 112},
        {60, 16, 24, 112},
        {104, 16, 24, 50},
        {104, 78, 24, 50},
    };
    return from_rects(n, scaled(n, layout));
}

BinaryPattern mixed(std::size_t n) {
    static const std::vector<Rect> layout = {
        {14, 14, 24, 116},
        {58, 14, 22, 22}, {58, 61, 22, 22}, {58, 108, 22, 22},
        {102, 14, 26, 60},
        {102, 100, 26, 26},
    };
    return from_rects(n, scaled(n, layout));
}

std::vector<std::string> names() { return {"ten_rectangles", "strips", "mixed"}; }

BinaryPattern by_name(const std::string& name, std::size_t n) {
    if (name == "ten_rectangles" || name == "ten_squares") return ten_rectangles(n);
    if (name == "strips") return strips(n);
    if (name == "mixed") return mixed(n);
    throw std::invalid_argument("unknown pattern '" + name + "' (expected ten_rectangles, strips or mixed)");
}

}  // namespace ilt::patterns
