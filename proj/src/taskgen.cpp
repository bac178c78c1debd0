#include "gridcoder/taskgen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <regex>
#include <unordered_set>

#include "gridcoder/error.hpp"
#include "gridcoder/hash.hpp"
#include "gridcoder/task_io.hpp"

namespace gridcoder {

namespace {

using Rng = std::mt19937_64;

constexpr int kMaxAttempts = 200;

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& choice(Rng& rng, const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::uint64_t salt(std::string_view id) {
    Fnv1a h;
    h.add(id);
    return h.value();
}

bool is_split_piece(const std::string& name) {
    return name.find("half") != std::string::npos || name.find("third") != std::string::npos ||
           name.find("fourth") != std::string::npos || name.find("quadrant") != std::string::npos;
}

class Builder {
public:
    explicit Builder(const Vocabulary& v) : v_(v) {}
    Expr x() const { return input_expr(v_); }
    Expr leaf(std::string_view name) const { return leaf_expr(name, v_); }
    Expr fn(std::string_view name) const { return leaf_expr(name, v_, true); }
    Expr call(std::string_view name, std::vector<Expr> args) const { return call_expr(name, std::move(args), v_); }
    Expr wrap(std::string_view name, Expr inner) const { return graft(leaf(name), inner, v_); }
    const Vocabulary& vocab() const { return v_; }

private:
    const Vocabulary& v_;
};

// Left-to-right pairing, one level at a time: [a b c d e] -> [ab cd e] -> [abcd e].
Expr reduce_pairwise(const Builder& b, std::string_view op, std::vector<Expr> items) {
    while (items.size() > 1) {
        std::vector<Expr> next;
        for (std::size_t i = 0; i < items.size(); i += 2) {
            if (i + 1 < items.size())
                next.push_back(b.call(op, {items[i], items[i + 1]}));
            else
                next.push_back(items[i]);
        }
        items = std::move(next);
    }
    return items.front();
}

std::vector<std::string> names_of(const Registry& reg, const std::vector<PrimitiveId>& ids) {
    std::vector<std::string> out;
    for (PrimitiveId id : ids) out.push_back(reg.spec(id).name);
    return out;
}

// Whole-grid transforms used as optional final steps.
std::vector<std::string> post_pool(const Registry& reg, bool allow_rotations = true) {
    std::vector<std::string> out;
    for (const auto& n : names_of(reg, reg.unary_grid_transforms())) {
        if (is_split_piece(n)) continue;
        if (!allow_rotations && n.rfind("rot", 0) == 0) continue;
        out.push_back(n);
    }
    return out;
}

Expr maybe_post(Rng& rng, const Builder& b, Expr e, double p, bool allow_rotations = true) {
    if (!coin(rng, p)) return e;
    return b.wrap(choice(rng, post_pool(b.vocab().registry(), allow_rotations)), std::move(e));
}

std::vector<Color> random_palette(Rng& rng, int lo, int hi) {
    std::vector<Color> all{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(pick(rng, lo, hi)));
    return all;
}

Grid random_input(Rng& rng, int w_lo, int w_hi, int h_lo, int h_hi, std::vector<Color> palette = {}) {
    RandomGridParams p;
    p.min_width = w_lo;
    p.max_width = w_hi;
    p.min_height = h_lo;
    p.max_height = h_hi;
    p.density = std::uniform_real_distribution<double>(0.25, 0.7)(rng);
    p.palette = palette.empty() ? random_palette(rng, 2, 4) : std::move(palette);
    return random_grid(rng(), p);
}

// ---- object scenes ----

// Connected single-color shape inside a w x h box, cropped to its bounds.
// symmetry: 0 none, 1 left-right, 2 top-bottom.
Grid random_blob(Rng& rng, int w, int h, Color color, int symmetry = 0) {
    std::vector<char> on(static_cast<std::size_t>(w * h), 0);
    auto cell = [&](int x, int y) -> char& { return on[static_cast<std::size_t>(y * w + x)]; };
    int sx = pick(rng, 0, w - 1);
    int sy = pick(rng, 0, h - 1);
    if (symmetry == 1) sx = (w - 1) / 2;
    if (symmetry == 2) sy = (h - 1) / 2;
    cell(sx, sy) = 1;
    const int target = pick(rng, std::max(1, w * h / 2), w * h);
    int count = 1;
    while (count < target) {
        std::vector<Point> options;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                if (cell(x, y)) continue;
                const bool touch = (x > 0 && cell(x - 1, y)) || (x + 1 < w && cell(x + 1, y)) ||
                                   (y > 0 && cell(x, y - 1)) || (y + 1 < h && cell(x, y + 1));
                if (touch) options.push_back({x, y});
            }
        if (options.empty()) break;
        const Point p = choice(rng, options);
        cell(p.x, p.y) = 1;
        ++count;
    }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (symmetry == 1 && cell(x, y)) cell(w - 1 - x, y) = 1;
            if (symmetry == 2 && cell(x, y)) cell(x, h - 1 - y) = 1;
        }
    int x0 = w, y0 = h, x1 = -1, y1 = -1;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (cell(x, y)) {
                x0 = std::min(x0, x);
                y0 = std::min(y0, y);
                x1 = std::max(x1, x);
                y1 = std::max(y1, y);
            }
    Grid g(x1 - x0 + 1, y1 - y0 + 1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (cell(x, y)) g.set(x - x0, y - y0, color);
    return g;
}

// Pastes objects without touching (8-neighborhood gap of one cell).
std::optional<Grid> place_objects(Rng& rng, int width, int height, const std::vector<Grid>& objects) {
    Grid canvas(width, height);
    std::vector<char> taken(static_cast<std::size_t>(width * height), 0);
    for (const Grid& o : objects) {
        if (o.width() > width || o.height() > height) return std::nullopt;
        bool placed = false;
        for (int attempt = 0; attempt < 60 && !placed; ++attempt) {
            const int px = pick(rng, 0, width - o.width());
            const int py = pick(rng, 0, height - o.height());
            bool free = true;
            for (int y = py - 1; y <= py + o.height() && free; ++y)
                for (int x = px - 1; x <= px + o.width() && free; ++x)
                    if (canvas.contains(x, y) && taken[static_cast<std::size_t>(y * width + x)]) free = false;
            if (!free) continue;
            for (int y = 0; y < o.height(); ++y)
                for (int x = 0; x < o.width(); ++x) {
                    taken[static_cast<std::size_t>((py + y) * width + px + x)] = 1;
                    if (o.at(x, y) != kBackground) canvas.set(px + x, py + y, o.at(x, y));
                }
            placed = true;
        }
        if (!placed) return std::nullopt;
    }
    return canvas;
}

// Repeats the last column (or row) when that axis has odd length.
Grid even_along(const Grid& g, bool columns) {
    const int w = g.width() + (columns && g.width() % 2 ? 1 : 0);
    const int h = g.height() + (!columns && g.height() % 2 ? 1 : 0);
    Grid out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.set(x, y, g.at(std::min(x, g.width() - 1), std::min(y, g.height() - 1)));
    return out;
}

using InputMaker = std::function<std::optional<Grid>(Rng&)>;

std::optional<Grid> scene(Rng& rng, int n_lo, int n_hi, int box, int symmetry_axis = 0) {
    const int n = pick(rng, n_lo, n_hi);
    std::vector<Grid> objs;
    for (int i = 0; i < n; ++i) {
        const Color c = static_cast<Color>(pick(rng, 1, 9));
        const int sym = symmetry_axis && coin(rng) ? symmetry_axis : 0;
        objs.push_back(random_blob(rng, pick(rng, 1, box), pick(rng, 1, box), c, sym));
    }
    return place_objects(rng, pick(rng, 8, 14), pick(rng, 8, 14), objs);
}

// Builds support and query pairs by running the truth on fresh inputs.
std::optional<GeneratedSample> realize(const GeneratorConfig& cfg, Rng& rng, const std::string& id,
                                       const Expr& expr, const InputMaker& make_input) {
    const Vocabulary& v = Vocabulary::get(cfg.dsl_version);
    TokenSequence tokens;
    ProgramTree tree;
    try {
        tokens = encode_expr(expr, v);
        tree = parse(tokens, v);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (static_cast<int>(tokens.size()) > kDefaultMaxLength) return std::nullopt;
    const int n_support = pick(rng, cfg.min_support, cfg.max_support);
    std::vector<Example> pairs;
    for (int i = 0; i < n_support + cfg.n_query; ++i) {
        std::optional<Example> ex;
        for (int tries = 0; tries < 8 && !ex; ++tries) {
            auto in = make_input(rng);
            if (!in || in->width() > kTaskGridLimit || in->height() > kTaskGridLimit) continue;
            try {
                Grid out = evaluate(tree, *in);
                if (out.width() > kTaskGridLimit || out.height() > kTaskGridLimit) continue;
                bool dup = false;
                for (const auto& p : pairs) dup = dup || p.input == *in;
                if (dup) continue;
                ex = Example{*in, out.with_origin({})};
            } catch (const Error&) {
            }
        }
        if (!ex) return std::nullopt;
        pairs.push_back(std::move(*ex));
    }
    bool all_identity = true, all_same = true;
    for (const auto& p : pairs) {
        all_identity = all_identity && p.input == p.output;
        all_same = all_same && p.output == pairs.front().output;
    }
    if (all_identity || all_same) return std::nullopt;
    GeneratedSample s;
    s.task.id = id + "_" + std::to_string(cfg.seed);
    s.task.support.assign(pairs.begin(), pairs.begin() + n_support);
    s.task.query.assign(pairs.begin() + n_support, pairs.end());
    s.truth = std::move(tokens);
    s.generator_id = id;
    s.seed = cfg.seed;
    s.dsl_version = cfg.dsl_version;
    return s;
}

void validate(const GeneratorConfig& cfg, int min_version, std::string_view id) {
    if (cfg.dsl_version < 1 || cfg.dsl_version > 3) throw InvalidConfig("DSL version must be 1, 2 or 3");
    if (cfg.dsl_version < min_version)
        throw InvalidConfig(std::string(id) + " needs DSL version " + std::to_string(min_version));
    if (cfg.min_support < 2 || cfg.max_support < cfg.min_support)
        throw InvalidConfig("support count range must satisfy 2 <= min <= max");
    if (cfg.n_query < 1) throw InvalidConfig("n_query must be at least 1");
    if (cfg.min_size < 1 || cfg.max_size < cfg.min_size || cfg.max_size > kTaskGridLimit)
        throw InvalidConfig("grid size range must lie in [1, 30]");
}

using Attempt = std::function<std::optional<GeneratedSample>(Rng&)>;

GeneratedSample run_attempts(const GeneratorConfig& cfg, std::string_view id, const Attempt& attempt) {
    for (int a = 0; a < kMaxAttempts; ++a) {
        Rng rng(mix64(mix64(cfg.seed, salt(id)), static_cast<std::uint64_t>(a)));
        if (auto s = attempt(rng)) return std::move(*s);
    }
    throw Error(std::string(id) + ": no valid sample for seed " + std::to_string(cfg.seed));
}

InputMaker plain_inputs(const GeneratorConfig& cfg) {
    return [cfg](Rng& rng) -> std::optional<Grid> {
        return random_input(rng, cfg.min_size, cfg.max_size, cfg.min_size, cfg.max_size);
    };
}

}  // namespace

// ---- curated pairs ----

const std::vector<std::pair<PrimitiveId, PrimitiveId>>& curated_pairs(int dsl_version) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<PrimitiveId, PrimitiveId>>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(dsl_version); it != cache.end()) return it->second;

    const Registry& reg = Registry::get(dsl_version);
    const auto pool = reg.unary_grid_transforms();
    std::vector<Grid> probes;
    for (int i = 0; i < 32; ++i) {
        RandomGridParams p;
        p.min_width = p.min_height = 4;
        p.max_width = p.max_height = 8;
        p.palette = {1, 2, 3, 4};
        p.density = 0.3 + 0.4 * (i % 4) / 3.0;
        probes.push_back(random_grid(mix64(0x9e0be5, static_cast<std::uint64_t>(i)), p));
    }
    auto apply = [&](PrimitiveId id, const Grid& g) -> std::optional<Grid> {
        try {
            Value arg = g;
            return std::get<Grid>(reg.apply(id, std::span<const Value>(&arg, 1)));
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    auto fingerprint = [](const std::vector<std::optional<Grid>>& outs) {
        Fnv1a h;
        for (const auto& o : outs) h.add(o ? o->content_hash() : 0x5eedULL);
        return h.value();
    };
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::optional<Grid>> identity(probes.begin(), probes.end());
    seen.insert(fingerprint(identity));
    std::vector<std::vector<std::optional<Grid>>> single(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (const auto& g : probes) single[i].push_back(apply(pool[i], g));
        seen.insert(fingerprint(single[i]));
    }
    std::vector<std::pair<PrimitiveId, PrimitiveId>> kept;
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            std::vector<std::optional<Grid>> outs;
            int failures = 0;
            for (const auto& first : single[i]) {
                outs.push_back(first ? apply(pool[j], *first) : std::nullopt);
                failures += !outs.back();
            }
            if (failures * 2 > static_cast<int>(probes.size())) continue;
            if (!seen.insert(fingerprint(outs)).second) continue;
            kept.emplace_back(pool[i], pool[j]);
        }
    return cache.emplace(dsl_version, std::move(kept)).first->second;
}

// ---- templates ----

Expr tiling_expr(int cols, int rows, const std::vector<std::string>& tiles, const Vocabulary& vocab) {
    if (cols < 1 || rows < 1 || tiles.size() != static_cast<std::size_t>(cols * rows))
        throw InvalidConfig("tiling needs cols*rows tile names");
    const Builder b(vocab);
    std::vector<Expr> row_exprs;
    for (int r = 0; r < rows; ++r) {
        std::vector<Expr> row;
        for (int c = 0; c < cols; ++c) {
            const std::string& t = tiles[static_cast<std::size_t>(r * cols + c)];
            row.push_back(t == kIdentityName ? b.x() : b.leaf(t));
        }
        row_exprs.push_back(reduce_pairwise(b, "hconcat", std::move(row)));
    }
    return reduce_pairwise(b, "vconcat", std::move(row_exprs));
}

Expr split_merge_expr(const std::vector<std::string>& pieces, const std::string& merge, const Vocabulary& vocab) {
    const Builder b(vocab);
    std::vector<Expr> p;
    for (const auto& name : pieces) p.push_back(b.leaf(name));
    switch (p.size()) {
        case 2: return b.call(merge, {p[0], p[1]});
        case 3: return b.call(merge, {p[0], b.call(merge, {p[1], p[2]})});
        case 4: return b.call(merge, {b.call(merge, {p[0], p[1]}), b.call(merge, {p[2], p[3]})});
        default: throw InvalidConfig("split-merge needs 2 to 4 pieces");
    }
}

// ---- generators ----

GeneratedSample gen_trivial(const GeneratorConfig& cfg) {
    validate(cfg, 1, "trivial");
    const Vocabulary& v = Vocabulary::get(cfg.dsl_version);
    const Registry& reg = v.registry();
    const Builder b(v);
    return run_attempts(cfg, "trivial", [&](Rng& rng) {
        Expr e;
        if (coin(rng, 0.25)) {
            e = b.leaf(reg.spec(choice(rng, reg.unary_grid_transforms())).name);
        } else {
            const auto& [first, second] = choice(rng, curated_pairs(cfg.dsl_version));
            e = b.wrap(reg.spec(second).name, b.leaf(reg.spec(first).name));
        }
        return realize(cfg, rng, "trivial", e, plain_inputs(cfg));
    });
}

GeneratedSample gen_split_merge(const GeneratorConfig& cfg) {
    validate(cfg, 1, "split_merge");
    const Builder b(Vocabulary::get(cfg.dsl_version));
    struct Split {
        std::vector<std::string> pieces;
        int cols, rows;  // how many pieces span each axis
    };
    static const std::vector<Split> splits = {
        {{"lefthalf", "righthalf"}, 2, 1},
        {{"tophalf", "bottomhalf"}, 1, 2},
        {{"leftthird", "vcenterthird", "rightthird"}, 3, 1},
        {{"topthird", "hcenterthird", "bottomthird"}, 1, 3},
        {{"hfirstfourth", "hsecondfourth", "hthirdfourth", "hlastfourth"}, 4, 1},
        {{"vfirstfourth", "vsecondfourth", "vthirdfourth", "vlastfourth"}, 1, 4},
        {{"first_quadrant", "second_quadrant", "third_quadrant", "fourth_quadrant"}, 2, 2},
    };
    static const std::vector<std::string> merges = {"cellwiseOR", "cellwiseXOR", "cellwiseAND", "cellwiseNOR",
                                                    "cellwiseDifference"};
    return run_attempts(cfg, "split_merge", [&](Rng& rng) {
        const Split& s = choice(rng, splits);
        const std::string& m = choice(rng, merges);
        const Expr e = maybe_post(rng, b, split_merge_expr(s.pieces, m, b.vocab()), 0.5);
        const int cols = s.cols, rows = s.rows;
        const auto palette = random_palette(rng, 1, 2);
        return realize(cfg, rng, "split_merge", e, [=, &cfg](Rng& r) -> std::optional<Grid> {
            const int pw = pick(r, std::max(2, cfg.min_size / cols), std::max(2, cfg.max_size / cols));
            const int ph = pick(r, std::max(2, cfg.min_size / rows), std::max(2, cfg.max_size / rows));
            return random_input(r, pw * cols, pw * cols, ph * rows, ph * rows, palette);
        });
    });
}

GeneratedSample gen_tiling(const GeneratorConfig& cfg) {
    validate(cfg, 1, "tiling");
    const Builder b(Vocabulary::get(cfg.dsl_version));
    struct Layout {
        int cols, rows;
    };
    static const std::vector<Layout> layouts = {{2, 2}, {3, 3}, {2, 1}, {3, 1}, {4, 1}, {1, 2}, {1, 3}, {1, 4}};
    static const std::vector<std::string> tile_ops = {"<Identity>", "rot90", "rot180", "rot270", "hmirror",
                                                      "vmirror"};
    return run_attempts(cfg, "tiling", [&](Rng& rng) {
        const Layout l = choice(rng, layouts);
        bool square = false;
        std::vector<std::string> tiles;
        for (int i = 0; i < l.cols * l.rows; ++i) {
            tiles.push_back(choice(rng, tile_ops));
            square = square || tiles.back() == "rot90" || tiles.back() == "rot270";
        }
        const Expr e = tiling_expr(l.cols, l.rows, tiles, b.vocab());
        const int max_w = std::max(cfg.min_size, std::min(cfg.max_size, kTaskGridLimit / l.cols));
        const int max_h = std::max(cfg.min_size, std::min(cfg.max_size, kTaskGridLimit / l.rows));
        return realize(cfg, rng, "tiling", e, [=, &cfg](Rng& r) -> std::optional<Grid> {
            if (square) {
                const int side = pick(r, cfg.min_size, std::min(max_w, max_h));
                return random_input(r, side, side, side, side);
            }
            return random_input(r, cfg.min_size, max_w, cfg.min_size, max_h);
        });
    });
}

GeneratedSample gen_objects_v2(const GeneratorConfig& cfg) {
    validate(cfg, 2, "objects_v2");
    const Builder b(Vocabulary::get(cfg.dsl_version));
    static const std::vector<std::string> in_place = {"set_fg_color1", "set_fg_color2", "set_fg_color3",
                                                      "set_fg_color4", "set_fg_color5", "set_fg_color6",
                                                      "set_fg_color7", "set_fg_color8", "set_fg_color9",
                                                      "hmirror",       "vmirror",       "rot180"};
    static const std::vector<std::string> crop_ops = {"<none>",        "set_fg_color2", "set_fg_color5",
                                                      "set_fg_color8", "hmirror",       "vmirror",
                                                      "rot90",         "rot180",        "rot270"};
    static const std::vector<std::string> compressors = {"compress_objects_linear", "compress_objects_quad",
                                                         "compress_objects_quad_pad"};
    return run_attempts(cfg, "objects_v2", [&](Rng& rng) {
        const std::string getter = "get_objects" + std::to_string(pick(rng, 2, 5));
        const Expr objs = b.leaf(getter);
        Expr e;
        if (coin(rng)) {
            e = b.call("apply_to_grid", {b.x(), b.call("for_each", {objs, b.fn(choice(rng, in_place))})});
        } else {
            const std::string& t = choice(rng, crop_ops);
            const Expr list = t == "<none>" ? objs : b.call("for_each", {objs, b.fn(t)});
            e = b.call(choice(rng, compressors), {list});
        }
        e = maybe_post(rng, b, e, 0.3);
        return realize(cfg, rng, "objects_v2", e, [](Rng& r) { return scene(r, 1, 4, 4); });
    });
}

GeneratedSample gen_selector_v3(const GeneratorConfig& cfg) {
    validate(cfg, 3, "selector_v3");
    const Builder b(Vocabulary::get(cfg.dsl_version));
    return run_attempts(cfg, "selector_v3", [&](Rng& rng) {
        const Expr objs = b.leaf(coin(rng) ? "get_objects2" : "get_objects3");
        const bool keep = coin(rng);
        const int criterion = pick(rng, 0, 2);  // 0 size, 1 left-right symmetry, 2 top-bottom symmetry
        Expr e;
        if (criterion == 0) {
            const Expr sizes = b.call("for_each", {objs, b.fn("get_object_size")});
            const std::string which = coin(rng) ? "largest" : "smallest";
            e = keep ? b.call("keep_" + which, {objs, sizes})
                     : b.call("apply_to_grid", {b.x(), b.call("filter_" + which, {objs, sizes})});
        } else {
            Expr flags = b.call("for_each", {objs, b.fn(criterion == 1 ? "is_h_symmetrical" : "is_v_symmetrical")});
            if (coin(rng)) flags = b.call("logical_not", {flags});
            e = keep ? b.call("keep_boolean", {objs, flags})
                     : b.call("apply_to_grid", {b.x(), b.call("filter_boolean", {objs, flags})});
        }
        e = maybe_post(rng, b, e, 0.3, keep);
        const int axis = criterion;
        return realize(cfg, rng, "selector_v3", e, [axis](Rng& r) { return scene(r, 2, 4, 4, axis); });
    });
}

GeneratedSample gen_windowing_v3(const GeneratorConfig& cfg) {
    validate(cfg, 3, "windowing_v3");
    const Builder b(Vocabulary::get(cfg.dsl_version));
    static const std::vector<std::string> inner_ops = {"hmirror", "vmirror", "rot180", "rot90", "rot270",
                                                       "set_fg_color3", "set_fg_color6"};
    return run_attempts(cfg, "windowing_v3", [&](Rng& rng) {
        const int n_frames = pick(rng, 1, 3);
        const bool with_boundary = coin(rng);
        const std::string& t = choice(rng, inner_ops);
        const bool square = t == "rot90" || t == "rot270";
        const Expr frames = b.leaf("get_objects1");
        const Expr inner = with_boundary ? b.call("for_each", {frames, b.fn(t)})
                                         : b.call("for_each", {b.call("for_each", {frames, b.fn("remove_outline")}),
                                                               b.fn(t)});
        Expr e;
        if (n_frames == 1)
            e = b.call("cellwise_OR_list", {inner});
        else
            e = b.call("apply_to_grid",
                       {b.x(), with_boundary ? inner : b.call("for_each", {inner, b.fn("insert_outline")})});
        e = maybe_post(rng, b, e, 0.3);
        return realize(cfg, rng, "windowing_v3", e, [n_frames, square](Rng& r) -> std::optional<Grid> {
            std::vector<Grid> objs;
            for (int i = 0; i < n_frames; ++i) {
                const int w = pick(r, 4, 7);
                const int h = square ? w : pick(r, 4, 7);
                const Color frame = static_cast<Color>(pick(r, 1, 9));
                Grid g(w, h);
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x) {
                        if (x == 0 || y == 0 || x == w - 1 || y == h - 1)
                            g.set(x, y, frame);
                        else if (coin(r, 0.45))
                            g.set(x, y, static_cast<Color>(1 + (frame + pick(r, 0, 7)) % 9));
                    }
                objs.push_back(g);
            }
            return place_objects(r, pick(r, 10, 18), pick(r, 10, 18), objs);
        });
    });
}

GeneratedSample gen_recombiner_v3(const GeneratorConfig& cfg) {
    validate(cfg, 3, "recombiner_v3");
    const Builder b(Vocabulary::get(cfg.dsl_version));
    static const std::vector<std::string> modifiers = {"invert_colors", "set_fg_color1", "set_fg_color4",
                                                       "set_fg_color7", "set_fg_color9"};
    return run_attempts(cfg, "recombiner_v3", [&](Rng& rng) {
        const Expr objs = b.leaf("get_objects2");
        const Expr largest = b.call("keep_largest", {objs, b.call("for_each", {objs, b.fn("get_object_size")})});
        const bool horizontal = coin(rng);
        Expr first = b.wrap(horizontal ? "lefthalf" : "tophalf", largest);
        Expr second = b.wrap(horizontal ? "righthalf" : "bottomhalf", largest);
        const std::string& mod = choice(rng, modifiers);
        if (coin(rng))
            first = b.wrap(mod, first);
        else
            second = b.wrap(mod, second);
        Expr e = b.call(horizontal ? "hconcat" : "vconcat", {first, second});
        e = maybe_post(rng, b, e, 0.3);
        return realize(cfg, rng, "recombiner_v3", e, [horizontal](Rng& r) -> std::optional<Grid> {
            const int n = pick(r, 1, 3);
            std::vector<Grid> objs;
            for (int i = 0; i < n; ++i) {
                const Color a = static_cast<Color>(pick(r, 1, 9));
                const Color c = static_cast<Color>(1 + (a + pick(r, 0, 7)) % 9);
                Grid g = even_along(random_blob(r, pick(r, 2, 6), pick(r, 2, 6), a), horizontal);
                for (int y = 0; y < g.height(); ++y)
                    for (int x = 0; x < g.width(); ++x)
                        if (g.at(x, y) != kBackground && coin(r, 0.35)) g.set(x, y, c);
                objs.push_back(g);
            }
            return place_objects(r, pick(r, 10, 16), pick(r, 10, 16), objs);
        });
    });
}

// ---- registry of generators ----

namespace {

struct GeneratorEntry {
    std::string id;
    int min_version;
    GeneratedSample (*fn)(const GeneratorConfig&);
};

const std::vector<GeneratorEntry>& generators() {
    static const std::vector<GeneratorEntry> g = {
        {"trivial", 1, gen_trivial},           {"split_merge", 1, gen_split_merge},
        {"tiling", 1, gen_tiling},             {"objects_v2", 2, gen_objects_v2},
        {"selector_v3", 3, gen_selector_v3},   {"windowing_v3", 3, gen_windowing_v3},
        {"recombiner_v3", 3, gen_recombiner_v3},
    };
    return g;
}

const GeneratorEntry& entry(std::string_view id) {
    for (const auto& e : generators())
        if (e.id == id) return e;
    throw ConfigError("unknown generator '" + std::string(id) + "'");
}

}  // namespace

std::vector<std::string> generator_ids(int dsl_version) {
    std::vector<std::string> out;
    for (const auto& e : generators())
        if (dsl_version == 0 || e.min_version <= dsl_version) out.push_back(e.id);
    return out;
}

int generator_min_version(std::string_view id) { return entry(id).min_version; }

GeneratedSample generate(std::string_view id, const GeneratorConfig& config) { return entry(id).fn(config); }

std::vector<GeneratedSample> generate_mixed(const GeneratorConfig& config, std::size_t count) {
    const auto ids = generator_ids(config.dsl_version);
    std::vector<GeneratedSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        GeneratorConfig c = config;
        c.seed = config.seed + i;
        out.push_back(generate(ids[i % ids.size()], c));
    }
    return out;
}

std::string contract_violation(const GeneratedSample& sample) {
    if (static_cast<int>(sample.truth.size()) > kDefaultMaxLength) return "truth longer than 40 tokens";
    try {
        const Vocabulary& v = Vocabulary::get(sample.dsl_version);
        const ProgramTree tree = parse(sample.truth, v);
        auto check = [&](const std::vector<Example>& pairs, const char* which) -> std::string {
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if (!(evaluate(tree, pairs[i].input) == pairs[i].output))
                    return std::string(which) + " pair " + std::to_string(i) + " not reproduced";
            return {};
        };
        if (auto s = check(sample.task.support, "support"); !s.empty()) return s;
        return check(sample.task.query, "query");
    } catch (const Error& e) {
        return e.what();
    }
}

nlohmann::json sample_to_json(const GeneratedSample& sample) {
    const Vocabulary& v = Vocabulary::get(sample.dsl_version);
    return {{"task", task_to_json(sample.task)},
            {"truth", token_names(sample.truth, v)},
            {"generator", sample.generator_id},
            {"seed", sample.seed},
            {"dsl_version", sample.dsl_version}};
}

GeneratedSample sample_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FormatError("sample: expected an object");
    for (const char* key : {"task", "truth", "generator", "seed", "dsl_version"})
        if (!j.contains(key)) throw FormatError(std::string("sample.") + key + ": missing");
    GeneratedSample s;
    try {
        s.dsl_version = j["dsl_version"].get<int>();
        s.generator_id = j["generator"].get<std::string>();
        s.seed = j["seed"].get<std::uint64_t>();
        s.truth = tokens_from_names(j["truth"].get<std::vector<std::string>>(), Vocabulary::get(s.dsl_version));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("sample: ") + e.what());
    }
    s.task = task_from_json(j["task"], s.generator_id + "_" + std::to_string(s.seed));
    return s;
}

// ---- coverage ----

std::string structure_signature(const Expr& expr, const Vocabulary& vocab) {
    if (expr.op == vocab.identity()) return expr.args.empty() ? "X" : structure_signature(expr.args.front(), vocab);
    const PrimitiveSpec& spec = vocab.registry().spec(static_cast<PrimitiveId>(expr.op));
    std::string head = spec.name;
    if (spec.grid_to_grid()) head = spec.name.rfind("rot", 0) == 0 ? "R" : "U";
    if (expr.as_function) return head;
    if (expr.args.empty()) return head + "(X)";
    std::string out = head + "(";
    for (std::size_t i = 0; i < expr.args.size(); ++i) {
        if (i) out += ",";
        out += structure_signature(expr.args[i], vocab);
    }
    return out + ")";
}

namespace {

std::string with_post(const std::string& p, const std::string& post = "[UR]") {
    return "(" + p + "|" + post + "\\(" + p + "\\))";
}

std::string call_re(const std::string& op, const std::vector<std::string>& args) {
    std::string out = op + "\\(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i];
    return out + "\\)";
}

std::string tiling_re(int cols, int rows) {
    const std::string tile = "(X|[UR]\\(X\\))";
    auto pairwise = [](const std::string& op, std::vector<std::string> items) {
        while (items.size() > 1) {
            std::vector<std::string> next;
            for (std::size_t i = 0; i < items.size(); i += 2)
                next.push_back(i + 1 < items.size() ? call_re(op, {items[i], items[i + 1]}) : items[i]);
            items = std::move(next);
        }
        return items.front();
    };
    std::vector<std::string> row_list(static_cast<std::size_t>(rows),
                                      pairwise("hconcat", std::vector<std::string>(static_cast<std::size_t>(cols), tile)));
    return pairwise("vconcat", row_list);
}

}  // namespace

const std::vector<CoveragePattern>& training_coverage() {
    static const std::vector<CoveragePattern> patterns = [] {
        std::vector<CoveragePattern> p;
        p.push_back({"trivial", "X|[UR]\\(X\\)|[UR]\\([UR]\\(X\\)\\)"});

        const std::string m = "cellwise(OR|AND|XOR|NOR|Difference)";
        const std::string piece = "U\\(X\\)";
        p.push_back({"split_merge", with_post(call_re(m, {piece, piece}))});
        p.push_back({"split_merge", with_post(call_re(m, {piece, call_re(m, {piece, piece})}))});
        p.push_back({"split_merge", with_post(call_re(m, {call_re(m, {piece, piece}), call_re(m, {piece, piece})}))});

        for (auto [c, r] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 1}, {3, 1}, {4, 1}, {1, 2}, {1, 3}, {1, 4}})
            p.push_back({"tiling", tiling_re(c, r)});

        const std::string g2 = "get_objects[2-5]\\(X\\)";
        const std::string g2_list = "(" + g2 + "|" + call_re("for_each", {g2, "[UR]"}) + ")";
        p.push_back({"objects_v2", with_post(call_re("apply_to_grid", {"X", call_re("for_each", {g2, "[UR]"})}))});
        p.push_back({"objects_v2", with_post(call_re("compress_objects_(linear|quad|quad_pad)", {g2_list}))});

        const std::string g3 = "get_objects[23]\\(X\\)";
        const std::string sizes = call_re("for_each", {g3, "get_object_size"});
        const std::string sym = call_re("for_each", {g3, "is_[hv]_symmetrical"});
        const std::string flags = "(" + sym + "|" + call_re("logical_not", {sym}) + ")";
        p.push_back({"selector_v3", with_post("(" + call_re("keep_(largest|smallest)", {g3, sizes}) + "|" +
                                              call_re("keep_boolean", {g3, flags}) + ")")});
        p.push_back({"selector_v3",
                     with_post(call_re("apply_to_grid", {"X", "(" + call_re("filter_(largest|smallest)", {g3, sizes}) +
                                                                  "|" + call_re("filter_boolean", {g3, flags}) + ")"}),
                               "U")});

        const std::string g1 = "get_objects1\\(X\\)";
        const std::string inner =
            "(" + call_re("for_each", {g1, "[UR]"}) + "|" + call_re("for_each", {call_re("for_each", {g1, "U"}), "[UR]"}) + ")";
        p.push_back({"windowing_v3", with_post(call_re("cellwise_OR_list", {inner}))});
        p.push_back({"windowing_v3",
                     with_post(call_re("apply_to_grid", {"X", "(" + inner + "|" + call_re("for_each", {inner, "U"}) + ")"}))});

        const std::string g = "get_objects2\\(X\\)";
        const std::string largest = call_re("keep_largest", {g, call_re("for_each", {g, "get_object_size"})});
        const std::string half = "(U\\(" + largest + "\\)|U\\(U\\(" + largest + "\\)\\))";
        p.push_back({"recombiner_v3", with_post(call_re("(hconcat|vconcat)", {half, half}))});
        return p;
    }();
    return patterns;
}

std::string covered_by(const std::string& signature) {
    static const std::vector<std::regex> compiled = [] {
        std::vector<std::regex> out;
        for (const auto& p : training_coverage()) out.emplace_back(p.regex, std::regex::ECMAScript);
        return out;
    }();
    for (std::size_t i = 0; i < compiled.size(); ++i)
        if (std::regex_match(signature, compiled[i])) return training_coverage()[i].family;
    return {};
}

// ---- out-of-distribution suite ----

namespace {

std::vector<Grid> apply_expr(const Expr& e, const std::vector<Grid>& inputs, const Vocabulary& v) {
    const ProgramTree tree = expr_to_tree(e, v);
    std::vector<Grid> out;
    for (const auto& g : inputs) out.push_back(evaluate(tree, g));
    return out;
}

Expr compose(const std::vector<Expr>& stages, const Vocabulary& v) {
    Expr e = stages.front();
    for (std::size_t k = 1; k < stages.size(); ++k) e = graft(stages[k], e, v);
    return e;
}

struct OodSpec {
    std::string description;
    std::string gap;
    std::vector<Expr> stages;           // what the restricted guidance proposes
    std::optional<Expr> truth;          // defaults to the composed stages
    InputMaker inputs;
};

// Object scene whose objects all differ in size.
std::optional<Grid> sized_scene(Rng& r) {
    const int n = pick(r, 2, 4);
    std::vector<Grid> objs;
    std::vector<int> sizes;
    for (int i = 0; i < n; ++i) {
        Grid g = random_blob(r, pick(r, 2, 5), pick(r, 2, 5), static_cast<Color>(pick(r, 1, 9)));
        const int s = g.foreground_count();
        if (std::find(sizes.begin(), sizes.end(), s) != sizes.end()) return std::nullopt;
        sizes.push_back(s);
        objs.push_back(g);
    }
    return place_objects(r, pick(r, 9, 14), pick(r, 9, 14), objs);
}

std::vector<OodSpec> ood_specs(const Builder& b) {
    const Expr x = b.x();
    const Expr objs = b.leaf("get_objects2");
    const Expr sizes = b.call("for_each", {objs, b.fn("get_object_size")});
    const Expr largest = b.call("keep_largest", {objs, sizes});
    const Expr smallest = b.call("keep_smallest", {objs, sizes});
    const Expr tile2x2 = b.call("vconcat", {b.call("hconcat", {x, x}), b.call("hconcat", {x, x})});
    const Expr r = b.leaf("rot180");
    auto small_inputs = [](int lo, int hi, int colors_lo) {
        return [=](Rng& rng) -> std::optional<Grid> {
            return random_input(rng, lo, hi, lo, hi, random_palette(rng, colors_lo, colors_lo + 1));
        };
    };
    auto no_aqua = [](Rng& rng) -> std::optional<Grid> {
        return random_input(rng, 4, 8, 4, 8, {1, 2, 3, 4, 5, 6, 7, 9});
    };
    const Expr up2 = b.wrap("upscale_horizontal_by_two", b.leaf("rot90"));

    std::vector<OodSpec> s;
    s.push_back({"tile 2x2 then invert colors", "no post-transform after tiling",
                 {tile2x2, b.leaf("invert_colors")}, std::nullopt, small_inputs(3, 5, 2)});
    s.push_back({"gravitate left, gravitate up, recolor to 8", "chain depth 3 exceeds 2",
                 {b.wrap("gravitate_up", b.leaf("gravitate_left")), b.leaf("set_fg_color8")}, std::nullopt, no_aqua});
    s.push_back({"rot90, upscale horizontally, upscale vertically", "chain depth 3 exceeds 2",
                 {up2, b.leaf("upscale_vertical_by_two")}, std::nullopt, small_inputs(3, 6, 2)});
    s.push_back({"task 2 then hmirror", "chain depth 4 exceeds 2",
                 {up2, b.wrap("hmirror", b.leaf("upscale_vertical_by_two"))}, std::nullopt, small_inputs(3, 6, 2)});
    s.push_back({"task 3 then invert colors", "chain depth 5 exceeds 2",
                 {up2, b.wrap("hmirror", b.leaf("upscale_vertical_by_two")), b.leaf("invert_colors")}, std::nullopt,
                 small_inputs(3, 6, 2)});
    {
        const Expr row_a = b.call("hconcat", {b.call("hconcat", {r, x}), b.call("hconcat", {r, x})});
        const Expr row_b = b.call("hconcat", {b.call("hconcat", {x, r}), b.call("hconcat", {x, r})});
        const Expr row3_a = b.call("hconcat", {b.call("hconcat", {r, x}), r});
        const Expr row3_b = b.call("hconcat", {b.call("hconcat", {x, r}), x});
        const Expr nine = b.call("vconcat", {b.call("vconcat", {row3_a, row3_b}), row3_a});
        s.push_back({"tile 2x4 alternating rot180 and identity", "2x4 tiling layout is never generated", {nine},
                     b.call("vconcat", {row_a, row_b}), small_inputs(3, 5, 2)});
    }
    s.push_back({"tile the smallest object twice horizontally", "selection is never combined with tiling",
                 {smallest, b.leaf("hmirror")}, b.call("hconcat", {smallest, smallest}), sized_scene});
    s.push_back({"crop largest, rot90, duplicate top row then bottom row", "two post-transforms after a crop",
                 {b.wrap("rot90", largest), b.wrap("duplicate_bottom_row", b.leaf("duplicate_top_row"))},
                 std::nullopt, sized_scene});
    s.push_back({"filter out the largest object then rot270", "rotation after filtering is never generated",
                 {b.call("apply_to_grid", {x, b.call("filter_largest", {objs, sizes})}), b.leaf("rot270")},
                 std::nullopt, sized_scene});
    s.push_back({"crop largest, OR its left and right halves", "cropping is never combined with split-merge",
                 {largest, b.call("cellwiseOR", {b.leaf("lefthalf"), b.leaf("righthalf")})}, std::nullopt,
                 sized_scene});
    return s;
}

}  // namespace

std::vector<OodTask> gen_ood_suite(std::uint64_t seed) {
    const Vocabulary& v = Vocabulary::get(3);
    const Builder b(v);
    std::vector<OodTask> out;
    const auto specs = ood_specs(b);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const OodSpec& spec = specs[i];
        const Expr truth = spec.truth ? *spec.truth : compose(spec.stages, v);
        const bool composable = !spec.truth;
        GeneratorConfig cfg;
        cfg.dsl_version = 3;
        cfg.min_support = cfg.max_support = 3;
        cfg.seed = seed;
        const std::string id = "ood_" + std::to_string(i);
        GeneratedSample sample = run_attempts(cfg, id, [&](Rng& rng) -> std::optional<GeneratedSample> {
            auto s = realize(cfg, rng, id, truth, spec.inputs);
            if (!s) return std::nullopt;
            // Every stage must run on the support inputs for the guidance to key on them.
            try {
                std::vector<Grid> cur;
                for (const auto& ex : s->task.support) cur.push_back(ex.input);
                for (const auto& stage : spec.stages) cur = apply_expr(stage, cur, v);
            } catch (const Error&) {
                return std::nullopt;
            }
            return s;
        });
        OodTask t;
        t.sample = std::move(sample);
        t.description = spec.description;
        t.coverage_gap = spec.gap;
        t.signature = structure_signature(tree_to_expr(parse(t.sample.truth, v), v), v);
        t.guidance_stages = spec.stages;
        t.composable = composable;
        out.push_back(std::move(t));
    }
    return out;
}

std::shared_ptr<StagedGuidance> ood_guidance(const OodTask& task, const OracleConfig& config) {
    const Vocabulary& v = Vocabulary::get(task.sample.dsl_version);
    std::vector<Grid> cur;
    for (const auto& ex : task.sample.task.support) cur.push_back(ex.input);
    std::vector<StagedGuidance::Stage> stages;
    std::shared_ptr<const OracleGuidance> fallback;
    for (std::size_t k = 0; k < task.guidance_stages.size(); ++k) {
        const Expr& e = task.guidance_stages[k];
        auto oracle = std::make_shared<OracleGuidance>(encode_expr(e, v), v, config);
        if (k == 0)
            fallback = oracle;
        else
            stages.push_back({cur, oracle});
        cur = apply_expr(e, cur, v);
    }
    return std::make_shared<StagedGuidance>(std::move(stages), std::move(fallback));
}

}  // namespace gridcoder
