#include <algorithm>
#include <mutex>
#include <string>

#include "grid_ops.hpp"
#include "gridcoder/dsl.hpp"

namespace gridcoder {

std::string_view kind_name(ValueKind kind) {
    switch (kind) {
        case ValueKind::Grid: return "Grid";
        case ValueKind::GridList: return "GridList";
        case ValueKind::Int: return "Int";
        case ValueKind::IntList: return "IntList";
        case ValueKind::Bool: return "Bool";
        case ValueKind::BoolList: return "BoolList";
        case ValueKind::FunctionRef: return "FunctionRef";
    }
    return "?";
}

namespace {

using K = ValueKind;

const Grid& grid_arg(std::span<const Value> a, std::size_t i) { return std::get<Grid>(a[i]); }
const GridList& list_arg(std::span<const Value> a, std::size_t i) { return std::get<GridList>(a[i]); }

// Halves keep floor(n/2) lines; the second half is the trailing floor(n/2).
Grid half(const Grid& g, int which) {
    const int w = g.width(), h = g.height();
    switch (which) {
        case 0: return ops::crop(g, 0, 0, w, h / 2);
        case 1: return ops::crop(g, 0, h - h / 2, w, h / 2);
        case 2: return ops::crop(g, 0, 0, w / 2, h);
        default: return ops::crop(g, w - w / 2, 0, w / 2, h);
    }
}

// Piece i of k along rows or columns, using floor boundaries i*n/k.
Grid slice(const Grid& g, int i, int k, bool columns) {
    const int n = columns ? g.width() : g.height();
    const int b0 = i * n / k;
    const int b1 = (i + 1) * n / k;
    return columns ? ops::crop(g, b0, 0, b1 - b0, g.height()) : ops::crop(g, 0, b0, g.width(), b1 - b0);
}

Grid quadrant(const Grid& g, int q) {
    const int w = g.width(), h = g.height();
    const int x0 = (q == 1 || q == 3) ? w - w / 2 : 0;
    const int y0 = q >= 2 ? h - h / 2 : 0;
    return ops::crop(g, x0, y0, w / 2, h / 2);
}

Grid symmetrize(const Grid& g, int mode) {
    Grid out = g;
    const int w = g.width(), h = g.height();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            switch (mode) {
                case 0: if (x < w / 2) out.set(w - 1 - x, y, g.at(x, y)); break;
                case 1: if (x < w / 2) out.set(x, y, g.at(w - 1 - x, y)); break;
                case 2: if (y < h / 2) out.set(x, h - 1 - y, g.at(x, y)); break;
                default: if (y < h / 2) out.set(x, y, g.at(x, h - 1 - y)); break;
            }
        }
    }
    return out;
}

void check_lengths(std::size_t a, std::size_t b, const char* name) {
    if (a != b) throw EvalError(std::string(name) + ": object and value lists differ in length");
    if (a == 0) throw EvalError(std::string(name) + ": empty object list");
}

// Index of the extreme value; ties resolve to the leftmost origin, then topmost.
std::size_t extreme_index(const GridList& objs, const IntList& vals, bool largest) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        const bool better = largest ? vals[i] > vals[best] : vals[i] < vals[best];
        if (better) {
            best = i;
        } else if (vals[i] == vals[best]) {
            auto key = [&](std::size_t j) { return std::pair(objs[j].origin().x, objs[j].origin().y); };
            if (key(i) < key(best)) best = i;
        }
    }
    return best;
}

#define GRID_OP(expr) [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value { \
    const Grid& g = grid_arg(a, 0);                                                          \
    (void)g;                                                                                 \
    return expr;                                                                             \
}

#define SET_FG(k) GRID_OP(ops::recolor_foreground(g, k))

PrimitiveSpec unary(std::string name, int version, PrimitiveImpl impl, K ret = K::Grid) {
    return {std::move(name), version, {K::Grid}, ret, 0, {kind_bit(K::Grid)}, impl};
}

PrimitiveSpec binary_grid(std::string name, PrimitiveImpl impl) {
    return {std::move(name), 1, {K::Grid, K::Grid}, K::Grid, 0, {kind_bit(K::Grid), kind_bit(K::Grid)}, impl};
}

PrimitiveSpec typed(std::string name, int version, std::vector<K> params, K ret, PrimitiveImpl impl) {
    std::vector<KindMask> accepts;
    for (K k : params) accepts.push_back(kind_bit(k));
    return {std::move(name), version, std::move(params), ret, 0, std::move(accepts), impl};
}

std::vector<PrimitiveSpec> build_catalog() {
    std::vector<PrimitiveSpec> s;
    // ---- version 1 ----
    s.push_back(unary("set_fg_color1", 1, SET_FG(1)));
    s.push_back(unary("set_fg_color2", 1, SET_FG(2)));
    s.push_back(unary("set_fg_color3", 1, SET_FG(3)));
    s.push_back(unary("set_fg_color4", 1, SET_FG(4)));
    s.push_back(unary("set_fg_color5", 1, SET_FG(5)));
    s.push_back(unary("set_fg_color6", 1, SET_FG(6)));
    s.push_back(unary("set_fg_color7", 1, SET_FG(7)));
    s.push_back(unary("set_fg_color8", 1, SET_FG(8)));
    s.push_back(unary("set_fg_color9", 1, SET_FG(9)));
    s.push_back(unary("shift_left", 1, GRID_OP(ops::shift(g, -1, 0))));
    s.push_back(unary("shift_right", 1, GRID_OP(ops::shift(g, 1, 0))));
    s.push_back(unary("shift_up", 1, GRID_OP(ops::shift(g, 0, -1))));
    s.push_back(unary("shift_down", 1, GRID_OP(ops::shift(g, 0, 1))));
    s.push_back(unary("vmirror", 1, GRID_OP(ops::flip_vertical(g))));
    s.push_back(unary("hmirror", 1, GRID_OP(ops::flip_horizontal(g))));
    s.push_back(unary("rot90", 1, GRID_OP(ops::rotate_cw(g))));
    s.push_back(unary("rot180", 1, GRID_OP(ops::rotate_180(g))));
    s.push_back(unary("rot270", 1, GRID_OP(ops::rotate_ccw(g))));
    s.push_back(unary("tophalf", 1, GRID_OP(half(g, 0))));
    s.push_back(unary("bottomhalf", 1, GRID_OP(half(g, 1))));
    s.push_back(unary("lefthalf", 1, GRID_OP(half(g, 2))));
    s.push_back(unary("righthalf", 1, GRID_OP(half(g, 3))));
    s.push_back(unary("symmetrize_left_around_vertical", 1, GRID_OP(symmetrize(g, 0))));
    s.push_back(unary("symmetrize_right_around_vertical", 1, GRID_OP(symmetrize(g, 1))));
    s.push_back(unary("symmetrize_top_around_horizontal", 1, GRID_OP(symmetrize(g, 2))));
    s.push_back(unary("symmetrize_bottom_around_horizontal", 1, GRID_OP(symmetrize(g, 3))));
    s.push_back(unary("upscale_horizontal_by_two", 1, GRID_OP(ops::upscale(g, 2, 1))));
    s.push_back(unary("upscale_vertical_by_two", 1, GRID_OP(ops::upscale(g, 1, 2))));
    s.push_back(unary("upscale_by_two", 1, GRID_OP(ops::upscale(g, 2, 2))));
    s.push_back(unary("gravitate_right", 1, GRID_OP(ops::gravitate(g, 1, 0))));
    s.push_back(unary("gravitate_left", 1, GRID_OP(ops::gravitate(g, -1, 0))));
    s.push_back(unary("gravitate_up", 1, GRID_OP(ops::gravitate(g, 0, -1))));
    s.push_back(unary("gravitate_down", 1, GRID_OP(ops::gravitate(g, 0, 1))));
    s.push_back(unary("gravitate_left_right", 1, GRID_OP(ops::gravitate_split(g, true))));
    s.push_back(unary("gravitate_top_down", 1, GRID_OP(ops::gravitate_split(g, false))));
    // Row bands pair with hcenterthird, column bands with vcenterthird, so that
    // [topthird, hcenterthird, bottomthird] yields three same-shape pieces.
    s.push_back(unary("topthird", 1, GRID_OP(slice(g, 0, 3, false))));
    s.push_back(unary("vcenterthird", 1, GRID_OP(slice(g, 1, 3, true))));
    s.push_back(unary("bottomthird", 1, GRID_OP(slice(g, 2, 3, false))));
    s.push_back(unary("leftthird", 1, GRID_OP(slice(g, 0, 3, true))));
    s.push_back(unary("hcenterthird", 1, GRID_OP(slice(g, 1, 3, false))));
    s.push_back(unary("rightthird", 1, GRID_OP(slice(g, 2, 3, true))));
    s.push_back(binary_grid("cellwiseOR", [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return ops::cellwise(grid_arg(a, 0), grid_arg(a, 1), ops::Merge::Or);
    }));
    s.push_back(binary_grid("cellwiseAND", [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return ops::cellwise(grid_arg(a, 0), grid_arg(a, 1), ops::Merge::And);
    }));
    s.push_back(binary_grid("cellwiseXOR", [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return ops::cellwise(grid_arg(a, 0), grid_arg(a, 1), ops::Merge::Xor);
    }));
    s.push_back(binary_grid("cellwiseDifference", [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return ops::cellwise(grid_arg(a, 0), grid_arg(a, 1), ops::Merge::Difference);
    }));
    s.push_back(binary_grid("cellwiseNOR", [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return ops::cellwise(grid_arg(a, 0), grid_arg(a, 1), ops::Merge::Nor);
    }));
    s.push_back(binary_grid("vconcat", [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return ops::concat(grid_arg(a, 0), grid_arg(a, 1), false);
    }));
    s.push_back(binary_grid("hconcat", [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return ops::concat(grid_arg(a, 0), grid_arg(a, 1), true);
    }));
    {
        auto cc = unary("color_change", 1, [](std::span<const Value> a, const EvalContext& ctx, const Registry&) -> Value {
            if (!ctx.binding) throw EvalError("color_change evaluated without a color binding");
            return ops::color_swap(grid_arg(a, 0), ctx.binding->from, ctx.binding->to);
        });
        cc.latent_params = 2;
        s.push_back(std::move(cc));
    }
    s.push_back(unary("invert_colors", 1, GRID_OP(ops::invert_colors(g))));
    s.push_back(unary("first_quadrant", 1, GRID_OP(quadrant(g, 0))));
    s.push_back(unary("second_quadrant", 1, GRID_OP(quadrant(g, 1))));
    s.push_back(unary("third_quadrant", 1, GRID_OP(quadrant(g, 2))));
    s.push_back(unary("fourth_quadrant", 1, GRID_OP(quadrant(g, 3))));
    s.push_back(unary("hfirstfourth", 1, GRID_OP(slice(g, 0, 4, true))));
    s.push_back(unary("hsecondfourth", 1, GRID_OP(slice(g, 1, 4, true))));
    s.push_back(unary("hthirdfourth", 1, GRID_OP(slice(g, 2, 4, true))));
    s.push_back(unary("hlastfourth", 1, GRID_OP(slice(g, 3, 4, true))));
    s.push_back(unary("vfirstfourth", 1, GRID_OP(slice(g, 0, 4, false))));
    s.push_back(unary("vsecondfourth", 1, GRID_OP(slice(g, 1, 4, false))));
    s.push_back(unary("vthirdfourth", 1, GRID_OP(slice(g, 2, 4, false))));
    s.push_back(unary("vlastfourth", 1, GRID_OP(slice(g, 3, 4, false))));
    s.push_back(unary("duplicate_top_row", 1, GRID_OP(ops::duplicate_line(g, 0))));
    s.push_back(unary("duplicate_bottom_row", 1, GRID_OP(ops::duplicate_line(g, 1))));
    s.push_back(unary("duplicate_left_column", 1, GRID_OP(ops::duplicate_line(g, 2))));
    s.push_back(unary("duplicate_right_column", 1, GRID_OP(ops::duplicate_line(g, 3))));
    s.push_back(unary("remove_outline", 1, GRID_OP(ops::remove_outline(g))));
    s.push_back(unary("shear_grid_left", 1, GRID_OP(ops::shear(g, 0))));
    s.push_back(unary("shear_grid_right", 1, GRID_OP(ops::shear(g, 1))));
    s.push_back(unary("shear_grid_zigzag", 1, GRID_OP(ops::shear(g, 2))));
    s.push_back(unary("insert_outline", 1, GRID_OP(ops::insert_outline(g))));
    s.push_back(unary("get_major_pixel", 1, GRID_OP(ops::major_pixel(g))));
    s.push_back(unary("get_minor_pixel", 1, GRID_OP(ops::minor_pixel(g))));
    s.push_back(unary("upscale_by_three", 1, GRID_OP(ops::upscale(g, 3, 3))));

    // ---- version 2 ----
    s.push_back(unary("get_objects1", 2, GRID_OP(get_objects(g, 1)), K::GridList));
    s.push_back(unary("get_objects2", 2, GRID_OP(get_objects(g, 2)), K::GridList));
    s.push_back(unary("get_objects3", 2, GRID_OP(get_objects(g, 3)), K::GridList));
    s.push_back(unary("get_objects4", 2, GRID_OP(get_objects(g, 4)), K::GridList));
    s.push_back(unary("get_objects5", 2, GRID_OP(get_objects(g, 5)), K::GridList));
    s.push_back(unary("get_objects6", 2, GRID_OP(get_objects(g, 6)), K::GridList));
    s.push_back(typed("compress_objects_linear", 2, {K::GridList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          return ops::compress_linear(list_arg(a, 0));
                      }));
    s.push_back(typed("compress_objects_quad", 2, {K::GridList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          return ops::compress_quad(list_arg(a, 0), false);
                      }));
    s.push_back(typed("compress_objects_quad_pad", 2, {K::GridList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          return ops::compress_quad(list_arg(a, 0), true);
                      }));
    s.push_back(typed("for_each", 2, {K::GridList, K::FunctionRef}, K::GridList,
                      [](std::span<const Value> a, const EvalContext& ctx, const Registry& reg) -> Value {
                          const auto& objs = list_arg(a, 0);
                          const auto fn = std::get<FunctionRef>(a[1]);
                          const auto& spec = reg.spec(fn.id);
                          if (!spec.unary_on_grid()) throw TypeError("for_each lambda must take a Grid");
                          auto call = [&](const Grid& o) {
                              Value arg = o;
                              return reg.apply(fn.id, std::span<const Value>(&arg, 1), ctx);
                          };
                          switch (spec.return_kind) {
                              case K::Grid: {
                                  GridList out;
                                  for (const auto& o : objs)
                                      out.push_back(std::get<Grid>(call(o)).with_origin(o.origin()));
                                  return out;
                              }
                              case K::Int: {
                                  IntList out;
                                  for (const auto& o : objs) out.push_back(std::get<int>(call(o)));
                                  return out;
                              }
                              case K::Bool: {
                                  BoolList out;
                                  for (const auto& o : objs) out.push_back(std::get<bool>(call(o)));
                                  return out;
                              }
                              default: throw TypeError("for_each lambda must return Grid, Int or Bool");
                          }
                      }));
    s.push_back(typed("apply_to_grid", 2, {K::Grid, K::GridList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          return ops::overlay_objects(grid_arg(a, 0), list_arg(a, 1));
                      }));
    s.push_back(typed("cellwise_OR_list", 2, {K::GridList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          const auto& objs = list_arg(a, 0);
                          if (objs.empty()) throw EvalError("cellwise_OR_list on an empty list");
                          Grid acc = objs.front();
                          for (std::size_t i = 1; i < objs.size(); ++i)
                              acc = ops::cellwise(acc, objs[i], ops::Merge::Or);
                          return acc.with_origin({});
                      }));
    s.push_back(unary("get_pixels", 2, [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        IntList out;
        for (const auto& p : grid_arg(a, 0).pixels()) out.push_back(p.color);
        return out;
    }, K::IntList));
    s.push_back(unary("get_object_size", 2, [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
        return grid_arg(a, 0).foreground_count();
    }, K::Int));
    {
        PrimitiveSpec count{"count", 2, {K::GridList}, K::Int, 0, {kAnyList},
                            [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                                return std::visit(
                                    [](const auto& v) -> int {
                                        using T = std::decay_t<decltype(v)>;
                                        if constexpr (std::is_same_v<T, GridList> || std::is_same_v<T, IntList> ||
                                                      std::is_same_v<T, BoolList>)
                                            return static_cast<int>(v.size());
                                        else
                                            throw TypeError("count needs a list");
                                    },
                                    a[0]);
                            }};
        s.push_back(std::move(count));
    }

    // ---- version 3 ----
    s.push_back(typed("filter_largest", 3, {K::GridList, K::IntList}, K::GridList,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          const auto& objs = list_arg(a, 0);
                          const auto& vals = std::get<IntList>(a[1]);
                          check_lengths(objs.size(), vals.size(), "filter_largest");
                          GridList out = objs;
                          out.erase(out.begin() + static_cast<std::ptrdiff_t>(extreme_index(objs, vals, true)));
                          return out;
                      }));
    s.push_back(typed("filter_smallest", 3, {K::GridList, K::IntList}, K::GridList,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          const auto& objs = list_arg(a, 0);
                          const auto& vals = std::get<IntList>(a[1]);
                          check_lengths(objs.size(), vals.size(), "filter_smallest");
                          GridList out = objs;
                          out.erase(out.begin() + static_cast<std::ptrdiff_t>(extreme_index(objs, vals, false)));
                          return out;
                      }));
    s.push_back(typed("keep_largest", 3, {K::GridList, K::IntList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          const auto& objs = list_arg(a, 0);
                          const auto& vals = std::get<IntList>(a[1]);
                          check_lengths(objs.size(), vals.size(), "keep_largest");
                          return objs[extreme_index(objs, vals, true)];
                      }));
    s.push_back(typed("keep_smallest", 3, {K::GridList, K::IntList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          const auto& objs = list_arg(a, 0);
                          const auto& vals = std::get<IntList>(a[1]);
                          check_lengths(objs.size(), vals.size(), "keep_smallest");
                          return objs[extreme_index(objs, vals, false)];
                      }));
    s.push_back(unary("is_h_symmetrical", 3, GRID_OP(g == ops::flip_horizontal(g)), K::Bool));
    s.push_back(unary("is_v_symmetrical", 3, GRID_OP(g == ops::flip_vertical(g)), K::Bool));
    {
        PrimitiveSpec lnot{"logical_not", 3, {K::Bool}, K::Bool, 0,
                           {static_cast<KindMask>(kind_bit(K::Bool) | kind_bit(K::BoolList))},
                           [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                               if (const bool* b = std::get_if<bool>(&a[0])) return !*b;
                               BoolList out = std::get<BoolList>(a[0]);
                               out.flip();
                               return out;
                           }};
        s.push_back(std::move(lnot));
    }
    s.push_back(typed("keep_boolean", 3, {K::GridList, K::BoolList}, K::Grid,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          const auto& objs = list_arg(a, 0);
                          const auto& flags = std::get<BoolList>(a[1]);
                          check_lengths(objs.size(), flags.size(), "keep_boolean");
                          for (std::size_t i = 0; i < objs.size(); ++i)
                              if (flags[i]) return objs[i];
                          throw EvalError("keep_boolean: no object is flagged true");
                      }));
    s.push_back(typed("filter_boolean", 3, {K::GridList, K::BoolList}, K::GridList,
                      [](std::span<const Value> a, const EvalContext&, const Registry&) -> Value {
                          const auto& objs = list_arg(a, 0);
                          const auto& flags = std::get<BoolList>(a[1]);
                          check_lengths(objs.size(), flags.size(), "filter_boolean");
                          GridList out;
                          for (std::size_t i = 0; i < objs.size(); ++i)
                              if (!flags[i]) out.push_back(objs[i]);
                          return out;
                      }));
    return s;
}

#undef SET_FG
#undef GRID_OP

constexpr std::size_t kVersionSize[] = {0, 74, 89, 98};

}  // namespace

Registry::Registry(int version, std::vector<PrimitiveSpec> specs)
    : version_(version), specs_(std::move(specs)) {}

const Registry& Registry::get(int version) {
    if (version < 1 || version > 3) throw InvalidConfig("DSL version must be 1, 2 or 3");
    static const std::vector<PrimitiveSpec> catalog = build_catalog();
    static const Registry registries[3] = {
        Registry(1, {catalog.begin(), catalog.begin() + kVersionSize[1]}),
        Registry(2, {catalog.begin(), catalog.begin() + kVersionSize[2]}),
        Registry(3, {catalog.begin(), catalog.begin() + kVersionSize[3]}),
    };
    return registries[version - 1];
}

std::optional<PrimitiveId> Registry::find(std::string_view name) const {
    for (std::size_t i = 0; i < specs_.size(); ++i)
        if (specs_[i].name == name) return static_cast<PrimitiveId>(i);
    return std::nullopt;
}

PrimitiveId Registry::id(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw VocabError("unknown primitive '" + std::string(name) + "' in DSL version " +
                     std::to_string(version_));
}

std::optional<ValueKind> Registry::result_kind(PrimitiveId id, std::span<const ValueKind> args,
                                               std::optional<ValueKind> lambda_return) const {
    const auto& s = spec(id);
    if (args.size() != s.arity()) return std::nullopt;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!(s.accepts[i] & kind_bit(args[i]))) return std::nullopt;
    if (s.name == "for_each") {
        if (!lambda_return) return std::nullopt;
        switch (*lambda_return) {
            case K::Grid: return K::GridList;
            case K::Int: return K::IntList;
            case K::Bool: return K::BoolList;
            default: return std::nullopt;
        }
    }
    if (s.name == "logical_not") return args[0];
    return s.return_kind;
}

Value Registry::apply(PrimitiveId id, std::span<const Value> args, const EvalContext& ctx) const {
    const auto& s = spec(id);
    if (args.size() != s.arity())
        throw TypeError(s.name + " expects " + std::to_string(s.arity()) + " arguments, got " +
                        std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!(s.accepts[i] & kind_bit(kind_of(args[i]))))
            throw TypeError(s.name + ": argument " + std::to_string(i) + " has kind " +
                            std::string(kind_name(kind_of(args[i]))));
    if (s.name == "for_each" && !spec(std::get<FunctionRef>(args[1]).id).unary_on_grid())
        throw TypeError("for_each lambda must take a Grid");
    return s.impl(args, ctx, *this);
}

std::vector<PrimitiveId> Registry::unary_grid_transforms() const {
    std::vector<PrimitiveId> out;
    for (std::size_t i = 0; i < specs_.size(); ++i)
        if (specs_[i].grid_to_grid() && specs_[i].latent_params == 0) out.push_back(static_cast<PrimitiveId>(i));
    return out;
}

std::span<const PrimitiveSpec> registry(int version) { return Registry::get(version).specs(); }

Value apply_primitive(std::string_view name, std::span<const Value> args, const EvalContext& ctx, int version) {
    const auto& reg = Registry::get(version);
    return reg.apply(reg.id(name), args, ctx);
}

const std::vector<ColorBinding>& resolve_color_change() {
    static const std::vector<ColorBinding> bindings = [] {
        std::vector<ColorBinding> out;
        for (int a = 0; a < kNumColors; ++a)
            for (int b = 0; b < kNumColors; ++b)
                if (a != b) out.push_back({static_cast<Color>(a), static_cast<Color>(b)});
        return out;
    }();
    return bindings;
}

}  // namespace gridcoder
