#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ilt/grid.hpp"

namespace ilt::patterns {

struct Rect {
    std::size_t row, col, height, width;
};

BinaryPattern from_rects(std::size_t n, const std::vector<Rect>& rects);

// Approximate reconstructions of the three experiment families (isolated
// rectangles, long strips, and a mixture) on a 144 x 144 grid at 5 nm
// pixels. Layouts are scaled proportionally for other sizes.
BinaryPattern ten_rectangles(std::size_t n = 144);
BinaryPattern strips(std::size_t n = 144);
BinaryPattern mixed(std::size_t n = 144);

std::vector<std::string> names();
/// Throws std::invalid_argument for unknown names.
BinaryPattern by_name(const std::string& name, std::size_t n = 144);

}  // namespace ilt::patterns
