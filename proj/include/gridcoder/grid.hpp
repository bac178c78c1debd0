#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gridcoder/error.hpp"

namespace gridcoder {

// ARC palette index. 0 is background, 1..9 are foreground colors.
using Color = std::uint8_t;

inline constexpr Color kBackground = 0;
inline constexpr int kNumColors = 10;
inline constexpr int kTaskGridLimit = 30;
inline constexpr int kEvalGridLimit = 120;

struct Point {
    int x = 0;
    int y = 0;
    auto operator<=>(const Point&) const = default;
};

struct Pixel {
    int x = 0;
    int y = 0;
    Color color = kBackground;
    bool operator==(const Pixel&) const = default;
};

using Rows = std::vector<std::vector<int>>;

/// Immutable-by-convention raster of ARC colors.
///
/// Cells are stored densely in row-major order; "pixels" in the ARC sense are
/// the non-background cells. The origin records where this grid sits inside an
/// enclosing grid and only matters for object overlay; equality ignores it.
class Grid {
public:
    /// A 1x1 background grid.
    Grid();

    /// Throws EvalError when the shape is empty or exceeds the evaluation cap.
    Grid(int width, int height, Color fill = kBackground, Point origin = {});

    int width() const { return width_; }
    int height() const { return height_; }
    Point origin() const { return origin_; }
    std::size_t area() const { return cells_.size(); }

    Color at(int x, int y) const { return cells_[static_cast<std::size_t>(y) * width_ + x]; }
    void set(int x, int y, Color c) { cells_[static_cast<std::size_t>(y) * width_ + x] = c; }
    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::span<const Color> cells() const { return cells_; }

    Grid with_origin(Point origin) const;

    /// Non-background cells in row-major order.
    std::vector<Pixel> pixels() const;
    int foreground_count() const;
    bool empty_foreground() const { return foreground_count() == 0; }

    /// Count of each color, background included.
    std::array<int, kNumColors> histogram() const;

    bool same_shape(const Grid& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    /// Structural equality that also compares origins.
    bool placed_equal(const Grid& other) const { return *this == other && origin_ == other.origin_; }

    std::uint64_t content_hash() const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_;
    }

private:
    int width_ = 1;
    int height_ = 1;
    Point origin_{};
    std::vector<Color> cells_;
};

/// Builds a grid from ARC row-major nested arrays. Throws MalformedGrid on
/// ragged, empty or out-of-palette input.
Grid grid_from_rows(const Rows& rows);

Rows grid_to_rows(const Grid& g);

/// Fraction of equal cells (background included); 0 when shapes differ.
double pixelwise_similarity(const Grid& a, const Grid& b);

struct RandomGridParams {
    int min_width = 3;
    int max_width = 10;
    int min_height = 3;
    int max_height = 10;
    double density = 0.5;
    std::vector<Color> palette{1, 2, 3, 4, 5, 6, 7, 8, 9};
};

/// Deterministic for a given seed and parameter set. Throws InvalidConfig on
/// an empty palette, out-of-range sizes or a density outside [0, 1].
Grid random_grid(std::uint64_t seed, const RandomGridParams& params);

}  // namespace gridcoder
