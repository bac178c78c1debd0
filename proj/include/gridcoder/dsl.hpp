#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gridcoder/grid.hpp"

namespace gridcoder {

enum class ValueKind : std::uint8_t { Grid, GridList, Int, IntList, Bool, BoolList, FunctionRef };

std::string_view kind_name(ValueKind kind);

using KindMask = std::uint8_t;

constexpr KindMask kind_bit(ValueKind k) { return static_cast<KindMask>(1u << static_cast<unsigned>(k)); }

inline constexpr KindMask kAnyList =
    kind_bit(ValueKind::GridList) | kind_bit(ValueKind::IntList) | kind_bit(ValueKind::BoolList);

using PrimitiveId = std::uint16_t;

/// An unapplied unary primitive, passed as the lambda argument of for_each.
struct FunctionRef {
    PrimitiveId id = 0;
    bool operator==(const FunctionRef&) const = default;
};

using GridList = std::vector<Grid>;
using IntList = std::vector<int>;
using BoolList = std::vector<bool>;

// Alternative order mirrors ValueKind.
using Value = std::variant<Grid, GridList, int, IntList, bool, BoolList, FunctionRef>;

inline ValueKind kind_of(const Value& v) { return static_cast<ValueKind>(v.index()); }

/// The hidden (from, to) colors of color_change, resolved at check time.
struct ColorBinding {
    Color from = 0;
    Color to = 0;
    auto operator<=>(const ColorBinding&) const = default;
};

struct EvalContext {
    std::optional<ColorBinding> binding;
};

class Registry;

using PrimitiveImpl = Value (*)(std::span<const Value> args, const EvalContext& ctx,
                                const Registry& registry);

struct PrimitiveSpec {
    std::string name;
    int dsl_version = 1;
    std::vector<ValueKind> param_kinds;
    ValueKind return_kind = ValueKind::Grid;
    // color_change's two colors; they never appear as program arguments.
    int latent_params = 0;
    // Accepted kinds per parameter. Equal to param_kinds except for the
    // overloaded primitives (count, logical_not).
    std::vector<KindMask> accepts;
    PrimitiveImpl impl = nullptr;

    std::size_t arity() const { return param_kinds.size(); }
    bool unary_on_grid() const {
        return param_kinds.size() == 1 && param_kinds[0] == ValueKind::Grid;
    }
    bool grid_to_grid() const { return unary_on_grid() && return_kind == ValueKind::Grid; }
};

/// The primitive catalog of one DSL version. Versions are cumulative and
/// share ids: version 1 is the first 74 entries, version 2 the first 89,
/// version 3 all 98.
class Registry {
public:
    static const Registry& get(int version);

    int version() const { return version_; }
    std::size_t size() const { return specs_.size(); }
    std::span<const PrimitiveSpec> specs() const { return specs_; }
    const PrimitiveSpec& spec(PrimitiveId id) const { return specs_.at(id); }
    std::optional<PrimitiveId> find(std::string_view name) const;
    PrimitiveId id(std::string_view name) const;

    /// Kind-checks the arguments, then runs the primitive. Throws TypeError on
    /// a kind mismatch and EvalError on a semantic failure.
    Value apply(PrimitiveId id, std::span<const Value> args, const EvalContext& ctx = {}) const;

    /// Result kind for the given argument kinds; for_each needs the lambda's
    /// return kind. nullopt when the combination is ill-typed.
    std::optional<ValueKind> result_kind(PrimitiveId id, std::span<const ValueKind> args,
                                         std::optional<ValueKind> lambda_return = {}) const;

    /// Unary Grid->Grid primitives without latent parameters, in registry
    /// order. These are the moves of the similarity-guided search and the
    /// building blocks of the trivial task generator.
    std::vector<PrimitiveId> unary_grid_transforms() const;

private:
    Registry(int version, std::vector<PrimitiveSpec> specs);

    int version_;
    std::vector<PrimitiveSpec> specs_;
};

/// Cumulative primitive list for a DSL version (1, 2 or 3).
std::span<const PrimitiveSpec> registry(int version);

/// Applies a primitive by name under the given version's registry.
Value apply_primitive(std::string_view name, std::span<const Value> args,
                      const EvalContext& ctx = {}, int version = 3);

/// Every candidate latent binding of color_change: the 90 ordered pairs of
/// distinct colors in lexicographic (from, to) order.
const std::vector<ColorBinding>& resolve_color_change();

/// Object detection variants 1..6 (get_objects1 .. get_objects6).
GridList get_objects(const Grid& g, int variant);

}  // namespace gridcoder
