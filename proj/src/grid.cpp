#include "gridcoder/grid.hpp"

#include <array>
#include <random>
#include <string>

namespace gridcoder {

Grid::Grid() : cells_(1, kBackground) {}

Grid::Grid(int width, int height, Color fill, Point origin)
    : width_(width), height_(height), origin_(origin) {
    if (width < 1 || height < 1) {
        throw EvalError("grid shape " + std::to_string(width) + "x" + std::to_string(height) +
                        " is empty");
    }
    if (width > kEvalGridLimit || height > kEvalGridLimit) {
        throw EvalError("grid shape " + std::to_string(width) + "x" + std::to_string(height) +
                        " exceeds the evaluation cap");
    }
    cells_.assign(static_cast<std::size_t>(width) * height, fill);
}

Grid Grid::with_origin(Point origin) const {
    Grid g = *this;
    g.origin_ = origin;
    return g;
}

std::vector<Pixel> Grid::pixels() const {
    std::vector<Pixel> out;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (Color c = at(x, y); c != kBackground) out.push_back({x, y, c});
    return out;
}

int Grid::foreground_count() const {
    int n = 0;
    for (Color c : cells_) n += c != kBackground;
    return n;
}

std::array<int, kNumColors> Grid::histogram() const {
    std::array<int, kNumColors> h{};
    for (Color c : cells_) ++h[c];
    return h;
}

std::uint64_t Grid::content_hash() const {
    // FNV-1a over shape and cells.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(width_));
    mix(static_cast<std::uint64_t>(height_));
    for (Color c : cells_) mix(c);
    return h;
}

Grid grid_from_rows(const Rows& rows) {
    if (rows.empty() || rows.front().empty()) throw MalformedGrid("grid has no cells");
    const auto width = rows.front().size();
    if (width > kTaskGridLimit || rows.size() > kTaskGridLimit)
        throw MalformedGrid("grid exceeds 30x30");
    Grid g(static_cast<int>(width), static_cast<int>(rows.size()));
    for (std::size_t y = 0; y < rows.size(); ++y) {
        if (rows[y].size() != width)
            throw MalformedGrid("ragged grid: row " + std::to_string(y) + " has " +
                                std::to_string(rows[y].size()) + " cells, expected " +
                                std::to_string(width));
        for (std::size_t x = 0; x < width; ++x) {
            int v = rows[y][x];
            if (v < 0 || v >= kNumColors)
                throw MalformedGrid("color " + std::to_string(v) + " out of range at row " +
                                    std::to_string(y) + ", column " + std::to_string(x));
            g.set(static_cast<int>(x), static_cast<int>(y), static_cast<Color>(v));
        }
    }
    return g;
}

Rows grid_to_rows(const Grid& g) {
    Rows rows(static_cast<std::size_t>(g.height()), std::vector<int>(static_cast<std::size_t>(g.width())));
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) rows[y][x] = g.at(x, y);
    return rows;
}

double pixelwise_similarity(const Grid& a, const Grid& b) {
    if (!a.same_shape(b)) return 0.0;
    auto ca = a.cells();
    auto cb = b.cells();
    std::size_t same = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) same += ca[i] == cb[i];
    return static_cast<double>(same) / static_cast<double>(ca.size());
}

Grid random_grid(std::uint64_t seed, const RandomGridParams& p) {
    if (p.palette.empty()) throw InvalidConfig("random_grid: empty palette");
    for (Color c : p.palette)
        if (c >= kNumColors) throw InvalidConfig("random_grid: palette color out of range");
    if (p.min_width < 1 || p.max_width > kTaskGridLimit || p.min_width > p.max_width ||
        p.min_height < 1 || p.max_height > kTaskGridLimit || p.min_height > p.max_height)
        throw InvalidConfig("random_grid: size range must lie within [1, 30]");
    if (!(p.density >= 0.0 && p.density <= 1.0))
        throw InvalidConfig("random_grid: density must lie within [0, 1]");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> wd(p.min_width, p.max_width);
    std::uniform_int_distribution<int> hd(p.min_height, p.max_height);
    const int w = wd(rng);
    const int h = hd(rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, p.palette.size() - 1);
    Grid g(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (coin(rng) < p.density) g.set(x, y, p.palette[pick(rng)]);
    return g;
}

}  // namespace gridcoder
