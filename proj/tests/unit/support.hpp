#pragma once

#include <doctest.h>

#include "gridcoder/dsl.hpp"
#include "gridcoder/grid.hpp"
#include "gridcoder/program.hpp"

namespace test {

inline gridcoder::Grid G(const gridcoder::Rows& rows) { return gridcoder::grid_from_rows(rows); }

inline gridcoder::Grid apply1(std::string_view name, const gridcoder::Grid& g) {
    gridcoder::Value v = g;
    return std::get<gridcoder::Grid>(gridcoder::apply_primitive(name, std::span<const gridcoder::Value>(&v, 1)));
}

inline gridcoder::Value applyv(std::string_view name, std::vector<gridcoder::Value> args,
                               const gridcoder::EvalContext& ctx = {}) {
    return gridcoder::apply_primitive(name, args, ctx);
}

inline gridcoder::TokenSequence seq(std::initializer_list<const char*> names, int version = 3) {
    std::vector<std::string> v(names.begin(), names.end());
    return gridcoder::tokens_from_names(v, gridcoder::Vocabulary::get(version));
}

}  // namespace test
