#include "grid_ops.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace gridcoder::ops {

Grid crop(const Grid& g, int x0, int y0, int w, int h) {
    if (w < 1 || h < 1) throw EvalError("crop produces an empty grid");
    Grid out(w, h, kBackground, {g.origin().x + x0, g.origin().y + y0});
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.set(x, y, g.at(x0 + x, y0 + y));
    return out;
}

Grid recolor_foreground(const Grid& g, Color c) {
    Grid out = g;
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            if (g.at(x, y) != kBackground) out.set(x, y, c);
    return out;
}

Grid shift(const Grid& g, int dx, int dy) {
    Grid out(g.width(), g.height(), kBackground, g.origin());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            if (out.contains(x + dx, y + dy)) out.set(x + dx, y + dy, g.at(x, y));
    return out;
}

Grid flip_horizontal(const Grid& g) {
    Grid out(g.width(), g.height(), kBackground, g.origin());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) out.set(g.width() - 1 - x, y, g.at(x, y));
    return out;
}

Grid flip_vertical(const Grid& g) {
    Grid out(g.width(), g.height(), kBackground, g.origin());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) out.set(x, g.height() - 1 - y, g.at(x, y));
    return out;
}

Grid rotate_cw(const Grid& g) {
    const int h = g.height();
    Grid out(h, g.width(), kBackground, g.origin());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) out.set(x, y, g.at(y, h - 1 - x));
    return out;
}

Grid rotate_180(const Grid& g) {
    Grid out(g.width(), g.height(), kBackground, g.origin());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            out.set(g.width() - 1 - x, g.height() - 1 - y, g.at(x, y));
    return out;
}

Grid rotate_ccw(const Grid& g) {
    const int w = g.width();
    Grid out(g.height(), w, kBackground, g.origin());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) out.set(x, y, g.at(w - 1 - y, x));
    return out;
}

Grid upscale(const Grid& g, int fx, int fy) {
    Grid out(g.width() * fx, g.height() * fy, kBackground, g.origin());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) out.set(x, y, g.at(x / fx, y / fy));
    return out;
}

namespace {

// Stable-compacts the foreground of one line segment toward its start or end.
template <typename Get, typename Set>
void compact_line(int begin, int end, bool toward_begin, Get get, Set set) {
    std::vector<Color> fg;
    for (int i = begin; i < end; ++i)
        if (Color c = get(i); c != kBackground) fg.push_back(c);
    for (int i = begin; i < end; ++i) set(i, kBackground);
    const int n = static_cast<int>(fg.size());
    const int start = toward_begin ? begin : end - n;
    for (int k = 0; k < n; ++k) set(start + k, fg[static_cast<std::size_t>(k)]);
}

}  // namespace

Grid gravitate(const Grid& g, int dx, int dy) {
    Grid out = g;
    if (dx != 0) {
        for (int y = 0; y < g.height(); ++y)
            compact_line(
                0, g.width(), dx < 0, [&](int i) { return g.at(i, y); },
                [&](int i, Color c) { out.set(i, y, c); });
    } else {
        for (int x = 0; x < g.width(); ++x)
            compact_line(
                0, g.height(), dy < 0, [&](int i) { return g.at(x, i); },
                [&](int i, Color c) { out.set(x, i, c); });
    }
    return out;
}

Grid gravitate_split(const Grid& g, bool horizontal) {
    Grid out = g;
    if (horizontal) {
        const int mid = g.width() / 2;
        for (int y = 0; y < g.height(); ++y) {
            auto get = [&](int i) { return g.at(i, y); };
            auto set = [&](int i, Color c) { out.set(i, y, c); };
            compact_line(0, mid, true, get, set);
            compact_line(mid, g.width(), false, get, set);
        }
    } else {
        const int mid = g.height() / 2;
        for (int x = 0; x < g.width(); ++x) {
            auto get = [&](int i) { return g.at(x, i); };
            auto set = [&](int i, Color c) { out.set(x, i, c); };
            compact_line(0, mid, true, get, set);
            compact_line(mid, g.height(), false, get, set);
        }
    }
    return out;
}

std::optional<Color> dominant_foreground(const Grid& g) {
    auto h = g.histogram();
    std::optional<Color> best;
    for (int c = 1; c < kNumColors; ++c)
        if (h[c] > 0 && (!best || h[c] > h[*best])) best = static_cast<Color>(c);
    return best;
}

Color dominant_color(const Grid& g) {
    auto h = g.histogram();
    int best = 0;
    for (int c = 1; c < kNumColors; ++c)
        if (h[c] > h[best]) best = c;
    return static_cast<Color>(best);
}

Grid cellwise(const Grid& a, const Grid& b, Merge m) {
    if (!a.same_shape(b)) throw EvalError("cellwise merge needs two grids of the same shape");
    Grid out(a.width(), a.height(), kBackground, a.origin());
    Color nor_color = 5;
    if (m == Merge::Nor) {
        if (auto c = dominant_foreground(a))
            nor_color = *c;
        else if (auto cb = dominant_foreground(b))
            nor_color = *cb;
    }
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            const Color ca = a.at(x, y);
            const Color cb = b.at(x, y);
            const bool fa = ca != kBackground;
            const bool fb = cb != kBackground;
            Color c = kBackground;
            switch (m) {
                case Merge::Or: c = fa ? ca : cb; break;
                case Merge::And: c = (fa && fb) ? ca : kBackground; break;
                case Merge::Xor: c = fa != fb ? (fa ? ca : cb) : kBackground; break;
                case Merge::Difference: c = (fa && !fb) ? ca : kBackground; break;
                case Merge::Nor: c = (!fa && !fb) ? nor_color : kBackground; break;
            }
            out.set(x, y, c);
        }
    }
    return out;
}

Grid concat(const Grid& a, const Grid& b, bool horizontal) {
    if (horizontal) {
        if (a.height() != b.height()) throw EvalError("hconcat needs grids of equal height");
        Grid out(a.width() + b.width(), a.height(), kBackground, a.origin());
        for (int y = 0; y < a.height(); ++y) {
            for (int x = 0; x < a.width(); ++x) out.set(x, y, a.at(x, y));
            for (int x = 0; x < b.width(); ++x) out.set(a.width() + x, y, b.at(x, y));
        }
        return out;
    }
    if (a.width() != b.width()) throw EvalError("vconcat needs grids of equal width");
    Grid out(a.width(), a.height() + b.height(), kBackground, a.origin());
    for (int x = 0; x < a.width(); ++x) {
        for (int y = 0; y < a.height(); ++y) out.set(x, y, a.at(x, y));
        for (int y = 0; y < b.height(); ++y) out.set(x, a.height() + y, b.at(x, y));
    }
    return out;
}

Grid color_swap(const Grid& g, Color from, Color to) {
    Grid out = g;
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x)
            if (g.at(x, y) == from) out.set(x, y, to);
    return out;
}

Grid invert_colors(const Grid& g) {
    auto h = g.histogram();
    int most = -1;
    int least = -1;
    for (int c = 1; c < kNumColors; ++c) {
        if (h[c] == 0) continue;
        if (most < 0 || h[c] > h[most]) most = c;
        if (least < 0 || h[c] < h[least]) least = c;
    }
    if (most < 0 || most == least) return g;
    Grid out = g;
    for (int y = 0; y < g.height(); ++y) {
        for (int x = 0; x < g.width(); ++x) {
            if (g.at(x, y) == most)
                out.set(x, y, static_cast<Color>(least));
            else if (g.at(x, y) == least)
                out.set(x, y, static_cast<Color>(most));
        }
    }
    return out;
}

Grid duplicate_line(const Grid& g, int side) {
    const bool rows = side < 2;
    Grid out(g.width() + (rows ? 0 : 1), g.height() + (rows ? 1 : 0), kBackground, g.origin());
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            int sx = x;
            int sy = y;
            switch (side) {
                case 0: sy = std::max(0, y - 1); break;
                case 1: sy = std::min(y, g.height() - 1); break;
                case 2: sx = std::max(0, x - 1); break;
                default: sx = std::min(x, g.width() - 1); break;
            }
            out.set(x, y, g.at(sx, sy));
        }
    }
    return out;
}

Grid remove_outline(const Grid& g) {
    if (g.width() < 3 || g.height() < 3) throw EvalError("remove_outline needs at least 3x3");
    return crop(g, 1, 1, g.width() - 2, g.height() - 2);
}

Grid insert_outline(const Grid& g) {
    Grid out(g.width() + 2, g.height() + 2, kBackground, g.origin());
    for (int y = 0; y < g.height(); ++y)
        for (int x = 0; x < g.width(); ++x) out.set(x + 1, y + 1, g.at(x, y));
    return out;
}

Grid shear(const Grid& g, int mode) {
    static constexpr std::array<int, 3> kZigzag{-1, 0, 1};
    Grid out(g.width(), g.height(), kBackground, g.origin());
    for (int y = 0; y < g.height(); ++y) {
        const int r = g.height() - 1 - y;  // rows counted from the bottom
        int dx = 0;
        switch (mode) {
            case 0: dx = -r; break;
            case 1: dx = r; break;
            default: dx = kZigzag[static_cast<std::size_t>(r % 3)]; break;
        }
        for (int x = 0; x < g.width(); ++x)
            if (out.contains(x + dx, y)) out.set(x + dx, y, g.at(x, y));
    }
    return out;
}

Grid major_pixel(const Grid& g) {
    return Grid(1, 1, dominant_foreground(g).value_or(kBackground));
}

Grid minor_pixel(const Grid& g) {
    auto h = g.histogram();
    int least = -1;
    for (int c = 1; c < kNumColors; ++c)
        if (h[c] > 0 && (least < 0 || h[c] < h[least])) least = c;
    return Grid(1, 1, least < 0 ? kBackground : static_cast<Color>(least));
}

}  // namespace gridcoder::ops
