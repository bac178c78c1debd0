#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

#include "grid_ops.hpp"
#include "gridcoder/dsl.hpp"

namespace gridcoder {

namespace {

struct Component {
    std::vector<Point> cells;
    int min_x = 0;
    int min_y = 0;
    int max_x = 0;
    int max_y = 0;
    Color color = kBackground;  // meaningful for uniform-color components
};

// Connected components in row-major discovery order. `joinable(a, b)` decides
// whether two member colors belong together; `member` filters seed cells.
template <typename Member, typename Joinable>
std::vector<Component> components(const Grid& g, bool eight_way, Member member, Joinable joinable) {
    std::vector<char> seen(g.area(), 0);
    std::vector<Component> out;
    const auto idx = [&](int x, int y) { return static_cast<std::size_t>(y) * g.width() + x; };
    for (int y = 0; y < g.height(); ++y) {
        for (int x = 0; x < g.width(); ++x) {
            if (seen[idx(x, y)] || !member(g.at(x, y))) continue;
            Component comp;
            comp.color = g.at(x, y);
            comp.min_x = comp.max_x = x;
            comp.min_y = comp.max_y = y;
            std::deque<Point> queue{{x, y}};
            seen[idx(x, y)] = 1;
            while (!queue.empty()) {
                const Point p = queue.front();
                queue.pop_front();
                comp.cells.push_back(p);
                comp.min_x = std::min(comp.min_x, p.x);
                comp.max_x = std::max(comp.max_x, p.x);
                comp.min_y = std::min(comp.min_y, p.y);
                comp.max_y = std::max(comp.max_y, p.y);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if ((dx == 0 && dy == 0) || (!eight_way && dx != 0 && dy != 0)) continue;
                        const int nx = p.x + dx;
                        const int ny = p.y + dy;
                        if (!g.contains(nx, ny) || seen[idx(nx, ny)]) continue;
                        const Color c = g.at(nx, ny);
                        if (!member(c) || !joinable(g.at(p.x, p.y), c)) continue;
                        seen[idx(nx, ny)] = 1;
                        queue.push_back({nx, ny});
                    }
                }
            }
            out.push_back(std::move(comp));
        }
    }
    return out;
}

Grid component_grid(const Grid& g, const Component& c) {
    Grid obj(c.max_x - c.min_x + 1, c.max_y - c.min_y + 1, kBackground,
             {g.origin().x + c.min_x, g.origin().y + c.min_y});
    for (const Point& p : c.cells) obj.set(p.x - c.min_x, p.y - c.min_y, g.at(p.x, p.y));
    return obj;
}

GridList connected_objects(const Grid& g, bool eight_way, bool uniform) {
    GridList out;
    if (uniform) {
        const Color bg = ops::dominant_color(g);
        auto member = [bg](Color c) { return c != kBackground && c != bg; };
        auto same = [](Color a, Color b) { return a == b; };
        for (const auto& c : components(g, eight_way, member, same)) out.push_back(component_grid(g, c));
    } else {
        auto member = [](Color c) { return c != kBackground; };
        auto any = [](Color, Color) { return true; };
        for (const auto& c : components(g, eight_way, member, any)) out.push_back(component_grid(g, c));
    }
    return out;
}

// Uniform-color components shaped as a filled rectangle (at least two cells)
// or a one-cell-thick frame (at least 3x3). Frames are returned with their
// interior; rectangles nested inside another detected rectangle are dropped.
GridList rectangle_objects(const Grid& g) {
    auto member = [](Color c) { return c != kBackground; };
    auto same = [](Color a, Color b) { return a == b; };
    std::vector<Component> rects;
    for (auto& c : components(g, false, member, same)) {
        const int w = c.max_x - c.min_x + 1;
        const int h = c.max_y - c.min_y + 1;
        const int n = static_cast<int>(c.cells.size());
        bool filled = n == w * h && n >= 2;
        bool frame = false;
        if (!filled && w >= 3 && h >= 3 && n == 2 * w + 2 * h - 4) {
            frame = std::all_of(c.cells.begin(), c.cells.end(), [&](const Point& p) {
                return p.x == c.min_x || p.x == c.max_x || p.y == c.min_y || p.y == c.max_y;
            });
        }
        if (filled || frame) rects.push_back(std::move(c));
    }
    GridList out;
    for (std::size_t i = 0; i < rects.size(); ++i) {
        const auto& a = rects[i];
        bool nested = false;
        for (std::size_t j = 0; j < rects.size() && !nested; ++j) {
            if (i == j) continue;
            const auto& b = rects[j];
            nested = a.min_x > b.min_x && a.max_x < b.max_x && a.min_y > b.min_y && a.max_y < b.max_y;
        }
        if (!nested)
            out.push_back(ops::crop(g, a.min_x, a.min_y, a.max_x - a.min_x + 1, a.max_y - a.min_y + 1));
    }
    return out;
}

// Bands of consecutive non-empty rows and columns partition the grid into a
// lattice; each occupied lattice cell is one object, tightened to its content.
GridList lattice_objects(const Grid& g) {
    auto bands = [](int n, auto occupied) {
        std::vector<std::pair<int, int>> out;
        int start = -1;
        for (int i = 0; i <= n; ++i) {
            const bool occ = i < n && occupied(i);
            if (occ && start < 0) start = i;
            if (!occ && start >= 0) {
                out.emplace_back(start, i);
                start = -1;
            }
        }
        return out;
    };
    auto row_bands = bands(g.height(), [&](int y) {
        for (int x = 0; x < g.width(); ++x)
            if (g.at(x, y) != kBackground) return true;
        return false;
    });
    auto col_bands = bands(g.width(), [&](int x) {
        for (int y = 0; y < g.height(); ++y)
            if (g.at(x, y) != kBackground) return true;
        return false;
    });
    GridList out;
    for (auto [y0, y1] : row_bands) {
        for (auto [x0, x1] : col_bands) {
            int min_x = x1, min_y = y1, max_x = -1, max_y = -1;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x)
                    if (g.at(x, y) != kBackground) {
                        min_x = std::min(min_x, x);
                        min_y = std::min(min_y, y);
                        max_x = std::max(max_x, x);
                        max_y = std::max(max_y, y);
                    }
            if (max_x < 0) continue;
            out.push_back(ops::crop(g, min_x, min_y, max_x - min_x + 1, max_y - min_y + 1));
        }
    }
    return out;
}

double variance(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size());
}

bool spread_horizontally(const GridList& objects) {
    std::vector<double> xs, ys;
    for (const auto& o : objects) {
        xs.push_back(o.origin().x);
        ys.push_back(o.origin().y);
    }
    return variance(xs) >= variance(ys);
}

}  // namespace

GridList get_objects(const Grid& g, int variant) {
    switch (variant) {
        case 1: return rectangle_objects(g);
        case 2: return connected_objects(g, false, false);
        case 3: return connected_objects(g, true, false);
        case 4: return connected_objects(g, false, true);
        case 5: return connected_objects(g, true, true);
        case 6: return lattice_objects(g);
        default: throw EvalError("get_objects variant must be 1..6");
    }
}

namespace ops {

Grid compress_linear(const GridList& objects) {
    if (objects.empty()) throw EvalError("compress_objects_linear on an empty object list");
    const bool horizontal = spread_horizontally(objects);
    std::vector<const Grid*> order;
    for (const auto& o : objects) order.push_back(&o);
    std::stable_sort(order.begin(), order.end(), [&](const Grid* a, const Grid* b) {
        return horizontal ? std::pair(a->origin().x, a->origin().y) < std::pair(b->origin().x, b->origin().y)
                          : std::pair(a->origin().y, a->origin().x) < std::pair(b->origin().y, b->origin().x);
    });
    int total = 0;
    int span = 0;
    for (const Grid* o : order) {
        total += horizontal ? o->width() : o->height();
        span = std::max(span, horizontal ? o->height() : o->width());
    }
    Grid out = horizontal ? Grid(total, span) : Grid(span, total);
    int offset = 0;
    for (const Grid* o : order) {
        for (int y = 0; y < o->height(); ++y)
            for (int x = 0; x < o->width(); ++x) {
                if (horizontal)
                    out.set(offset + x, y, o->at(x, y));
                else
                    out.set(x, offset + y, o->at(x, y));
            }
        offset += horizontal ? o->width() : o->height();
    }
    return out;
}

Grid compress_quad(const GridList& objects, bool pad) {
    const int n = static_cast<int>(objects.size());
    if (n == 0) throw EvalError("compress_objects_quad on an empty object list");
    if (n > 9) throw EvalError("compress_objects_quad supports at most 9 objects");
    int rows = 2, cols = 2;
    if (n > 6) {
        rows = cols = 3;
    } else if (n > 4) {
        if (spread_horizontally(objects))
            cols = 3;
        else
            rows = 3;
    }
    std::vector<const Grid*> order;
    for (const auto& o : objects) order.push_back(&o);
    std::stable_sort(order.begin(), order.end(), [](const Grid* a, const Grid* b) {
        return std::pair(a->origin().y, a->origin().x) < std::pair(b->origin().y, b->origin().x);
    });
    int cw = 0, ch = 0;
    for (const Grid* o : order) {
        cw = std::max(cw, o->width());
        ch = std::max(ch, o->height());
    }
    const int gap = pad ? 1 : 0;
    Grid out(cols * cw + (cols - 1) * gap, rows * ch + (rows - 1) * gap);
    for (int i = 0; i < n; ++i) {
        const Grid* o = order[static_cast<std::size_t>(i)];
        const int ox = (i % cols) * (cw + gap);
        const int oy = (i / cols) * (ch + gap);
        for (int y = 0; y < o->height(); ++y)
            for (int x = 0; x < o->width(); ++x) out.set(ox + x, oy + y, o->at(x, y));
    }
    return out;
}

Grid overlay_objects(const Grid& canvas, const GridList& objects) {
    Grid out(canvas.width(), canvas.height(), dominant_color(canvas), canvas.origin());
    for (const auto& o : objects) {
        for (int y = 0; y < o.height(); ++y) {
            for (int x = 0; x < o.width(); ++x) {
                const Color c = o.at(x, y);
                const int tx = o.origin().x - canvas.origin().x + x;
                const int ty = o.origin().y - canvas.origin().y + y;
                if (c != kBackground && out.contains(tx, ty)) out.set(tx, ty, c);
            }
        }
    }
    return out;
}

}  // namespace ops
}  // namespace gridcoder
