#pragma once

// Internal grid transforms backing the DSL primitives.

#include <span>

#include "gridcoder/dsl.hpp"
#include "gridcoder/grid.hpp"

namespace gridcoder::ops {

Grid crop(const Grid& g, int x0, int y0, int w, int h);
Grid recolor_foreground(const Grid& g, Color c);
Grid shift(const Grid& g, int dx, int dy);
Grid flip_horizontal(const Grid& g);
Grid flip_vertical(const Grid& g);
Grid rotate_cw(const Grid& g);
Grid rotate_180(const Grid& g);
Grid rotate_ccw(const Grid& g);
Grid upscale(const Grid& g, int fx, int fy);
Grid gravitate(const Grid& g, int dx, int dy);
Grid gravitate_split(const Grid& g, bool horizontal);

enum class Merge { Or, And, Xor, Difference, Nor };
Grid cellwise(const Grid& a, const Grid& b, Merge m);

Grid concat(const Grid& a, const Grid& b, bool horizontal);
Grid color_swap(const Grid& g, Color from, Color to);
Grid invert_colors(const Grid& g);
Grid duplicate_line(const Grid& g, int side);  // 0 top, 1 bottom, 2 left, 3 right
Grid remove_outline(const Grid& g);
Grid insert_outline(const Grid& g);
Grid shear(const Grid& g, int mode);  // 0 left, 1 right, 2 zigzag
Grid major_pixel(const Grid& g);
Grid minor_pixel(const Grid& g);

/// Most frequent foreground color, lowest on ties; nullopt if none.
std::optional<Color> dominant_foreground(const Grid& g);

/// Most frequent color counting background, lowest on ties.
Color dominant_color(const Grid& g);

// Object-level helpers.
Grid compress_linear(const GridList& objects);
Grid compress_quad(const GridList& objects, bool pad);
Grid overlay_objects(const Grid& canvas, const GridList& objects);

}  // namespace gridcoder::ops
