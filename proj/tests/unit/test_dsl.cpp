#include <map>
#include <set>

#include "gridcoder/error.hpp"
#include "support.hpp"

using namespace gridcoder;
using test::G;

TEST_CASE("registry sizes and ordering") {
    CHECK(registry(1).size() == 74);
    CHECK(registry(2).size() == 89);
    CHECK(registry(3).size() == 98);
    std::set<std::string> names;
    for (const auto& s : registry(3)) names.insert(s.name);
    CHECK(names.size() == 98);
    CHECK(registry(1)[0].name == "set_fg_color1");
    CHECK(registry(1)[73].name == "upscale_by_three");
    CHECK(registry(2)[74].name == "get_objects1");
    CHECK(registry(3)[89].name == "filter_largest");
    CHECK(registry(3)[97].name == "filter_boolean");
    for (std::size_t i = 0; i < 74; ++i) CHECK(registry(1)[i].name == registry(3)[i].name);
    CHECK_THROWS_AS(Registry::get(4), InvalidConfig);
}

TEST_CASE("unary transform subset") {
    const auto ids = Registry::get(1).unary_grid_transforms();
    CHECK(ids.size() == 66);
    for (auto id : ids) CHECK(Registry::get(1).spec(id).name != "color_change");
}

namespace {

struct Golden {
    const char* name;
    Rows in;
    Rows out;
};

const std::vector<Golden>& unary_goldens() {
    static const Rows B = {{1, 2, 0}, {0, 3, 0}};
    static const Rows T = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    static const std::vector<Golden> table = {
        {"set_fg_color1", B, {{1, 1, 0}, {0, 1, 0}}},
        {"set_fg_color2", B, {{2, 2, 0}, {0, 2, 0}}},
        {"set_fg_color3", B, {{3, 3, 0}, {0, 3, 0}}},
        {"set_fg_color4", B, {{4, 4, 0}, {0, 4, 0}}},
        {"set_fg_color5", B, {{5, 5, 0}, {0, 5, 0}}},
        {"set_fg_color6", B, {{6, 6, 0}, {0, 6, 0}}},
        {"set_fg_color7", B, {{7, 7, 0}, {0, 7, 0}}},
        {"set_fg_color8", B, {{8, 8, 0}, {0, 8, 0}}},
        {"set_fg_color9", B, {{9, 9, 0}, {0, 9, 0}}},
        {"shift_left", B, {{2, 0, 0}, {3, 0, 0}}},
        {"shift_right", B, {{0, 1, 2}, {0, 0, 3}}},
        {"shift_up", B, {{0, 3, 0}, {0, 0, 0}}},
        {"shift_down", B, {{0, 0, 0}, {1, 2, 0}}},
        {"vmirror", B, {{0, 3, 0}, {1, 2, 0}}},
        {"hmirror", B, {{0, 2, 1}, {0, 3, 0}}},
        {"rot90", B, {{0, 1}, {3, 2}, {0, 0}}},
        {"rot180", {{1, 2}, {3, 4}}, {{4, 3}, {2, 1}}},
        {"rot270", B, {{0, 0}, {2, 3}, {1, 0}}},
        {"tophalf", {{1, 2}, {3, 4}, {5, 6}}, {{1, 2}}},
        {"bottomhalf", {{1, 2}, {3, 4}, {5, 6}}, {{5, 6}}},
        {"lefthalf", {{1, 2, 3, 4}}, {{1, 2}}},
        {"righthalf", {{1, 2, 3, 4, 5}}, {{4, 5}}},
        {"symmetrize_left_around_vertical", {{1, 2, 3, 4}}, {{1, 2, 2, 1}}},
        {"symmetrize_right_around_vertical", {{1, 2, 3, 4}}, {{4, 3, 3, 4}}},
        {"symmetrize_top_around_horizontal", {{1}, {2}, {3}, {4}}, {{1}, {2}, {2}, {1}}},
        {"symmetrize_bottom_around_horizontal", {{1}, {2}, {3}, {4}}, {{4}, {3}, {3}, {4}}},
        {"upscale_horizontal_by_two", {{1, 2}}, {{1, 1, 2, 2}}},
        {"upscale_vertical_by_two", {{1, 2}}, {{1, 2}, {1, 2}}},
        {"upscale_by_two", {{1, 2}}, {{1, 1, 2, 2}, {1, 1, 2, 2}}},
        {"gravitate_right", {{0, 3, 0, 5}}, {{0, 0, 3, 5}}},
        {"gravitate_left", {{0, 3, 0, 5}}, {{3, 5, 0, 0}}},
        {"gravitate_up", {{0}, {3}, {0}, {5}}, {{3}, {5}, {0}, {0}}},
        {"gravitate_down", {{0}, {3}, {0}, {5}}, {{0}, {0}, {3}, {5}}},
        {"gravitate_left_right", {{0, 3, 5, 0}}, {{3, 0, 0, 5}}},
        {"gravitate_top_down", {{0}, {3}, {5}, {0}}, {{3}, {0}, {0}, {5}}},
        {"topthird", T, {{1, 2, 3}}},
        {"vcenterthird", T, {{2}, {5}, {8}}},
        {"bottomthird", T, {{7, 8, 9}}},
        {"leftthird", T, {{1}, {4}, {7}}},
        {"hcenterthird", T, {{4, 5, 6}}},
        {"rightthird", T, {{3}, {6}, {9}}},
        {"invert_colors", {{1, 1, 2, 0}}, {{2, 2, 1, 0}}},
        {"first_quadrant", {{1, 2}, {3, 4}}, {{1}}},
        {"second_quadrant", {{1, 2}, {3, 4}}, {{2}}},
        {"third_quadrant", {{1, 2}, {3, 4}}, {{3}}},
        {"fourth_quadrant", {{1, 2}, {3, 4}}, {{4}}},
        {"hfirstfourth", {{1, 2, 3, 4}}, {{1}}},
        {"hsecondfourth", {{1, 2, 3, 4}}, {{2}}},
        {"hthirdfourth", {{1, 2, 3, 4}}, {{3}}},
        {"hlastfourth", {{1, 2, 3, 4}}, {{4}}},
        {"vfirstfourth", {{1}, {2}, {3}, {4}}, {{1}}},
        {"vsecondfourth", {{1}, {2}, {3}, {4}}, {{2}}},
        {"vthirdfourth", {{1}, {2}, {3}, {4}}, {{3}}},
        {"vlastfourth", {{1}, {2}, {3}, {4}}, {{4}}},
        {"duplicate_top_row", {{1}, {2}}, {{1}, {1}, {2}}},
        {"duplicate_bottom_row", {{1}, {2}}, {{1}, {2}, {2}}},
        {"duplicate_left_column", {{1, 2}}, {{1, 1, 2}}},
        {"duplicate_right_column", {{1, 2}}, {{1, 2, 2}}},
        {"remove_outline", T, {{5}}},
        {"shear_grid_left", {{0, 1, 0}, {0, 1, 0}}, {{1, 0, 0}, {0, 1, 0}}},
        {"shear_grid_right", {{0, 1, 0}, {0, 1, 0}}, {{0, 0, 1}, {0, 1, 0}}},
        {"shear_grid_zigzag", {{0, 1, 0}, {0, 1, 0}, {0, 1, 0}}, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}},
        {"insert_outline", {{5}}, {{0, 0, 0}, {0, 5, 0}, {0, 0, 0}}},
        {"get_major_pixel", {{1, 1, 2, 0, 0, 0}}, {{1}}},
        {"get_minor_pixel", {{1, 1, 2, 0, 0, 0}}, {{2}}},
        {"upscale_by_three", {{1, 0}}, {{1, 1, 1, 0, 0, 0}, {1, 1, 1, 0, 0, 0}, {1, 1, 1, 0, 0, 0}}},
    };
    return table;
}

}  // namespace

TEST_CASE("unary grid primitive goldens") {
    for (const auto& g : unary_goldens()) {
        CAPTURE(g.name);
        CHECK(grid_to_rows(test::apply1(g.name, G(g.in))) == g.out);
    }
}

TEST_CASE("binary grid primitive goldens") {
    const Grid a = G({{1, 0}, {2, 0}});
    const Grid b = G({{3, 3}, {0, 0}});
    auto bin = [&](const char* n) { return grid_to_rows(std::get<Grid>(test::applyv(n, {a, b}))); };
    CHECK(bin("cellwiseOR") == Rows{{1, 3}, {2, 0}});
    CHECK(bin("cellwiseAND") == Rows{{1, 0}, {0, 0}});
    CHECK(bin("cellwiseXOR") == Rows{{0, 3}, {2, 0}});
    CHECK(bin("cellwiseDifference") == Rows{{0, 0}, {2, 0}});
    CHECK(bin("cellwiseNOR") == Rows{{0, 0}, {0, 1}});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("cellwiseOR", {G({{1, 0}, {0, 0}}), G({{2, 0}, {0, 2}})}))) ==
          Rows{{1, 0}, {0, 2}});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("vconcat", {G({{1}}), G({{2}})}))) == Rows{{1}, {2}});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("hconcat", {G({{1}}), G({{2}})}))) == Rows{{1, 2}});
    CHECK_THROWS_AS(test::applyv("cellwiseOR", {G({{1}}), G({{1, 2}})}), EvalError);
    CHECK_THROWS_AS(test::applyv("hconcat", {G({{1}}), G({{1}, {2}})}), EvalError);
}

TEST_CASE("NOR falls back to the second argument, then to 5") {
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("cellwiseNOR", {G({{0, 0}}), G({{0, 4}})}))) == Rows{{4, 0}});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("cellwiseNOR", {G({{0, 0}}), G({{0, 0}})}))) == Rows{{5, 5}});
}

TEST_CASE("color_change uses the latent binding") {
    const EvalContext ctx{ColorBinding{3, 7}};
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("color_change", {G({{3, 1}})}, ctx))) == Rows{{7, 1}});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("color_change", {G({{2, 1}})}, ctx))) == Rows{{2, 1}});
    CHECK_THROWS_AS(test::applyv("color_change", {G({{3}})}), EvalError);
    CHECK(resolve_color_change().size() == 90);
}

TEST_CASE("kind mismatch is a TypeError") {
    CHECK_THROWS_AS(test::applyv("rot90", {Value{3}}), TypeError);
    CHECK_THROWS_AS(test::applyv("cellwiseOR", {G({{1}})}), TypeError);
}

TEST_CASE("evaluation size cap") {
    Grid g(30, 30, 1);
    g = test::apply1("upscale_by_three", g);
    CHECK(g.width() == 90);
    CHECK_THROWS_AS(test::apply1("upscale_by_two", g), EvalError);
}

TEST_CASE("get_objects variants") {
    auto objs = get_objects(G({{1, 0, 2}}), 2);
    REQUIRE(objs.size() == 2);
    CHECK(objs[0].origin() == Point{0, 0});
    CHECK(objs[1].origin() == Point{2, 0});
    CHECK(get_objects(G({{1, 1}, {1, 0}}), 2).size() == 1);
    CHECK(get_objects(G({{1, 1}, {1, 0}}), 2)[0].foreground_count() == 3);
    CHECK(get_objects(G({{1, 0}, {0, 1}}), 2).size() == 2);
    CHECK(get_objects(G({{1, 0}, {0, 1}}), 3).size() == 1);
    CHECK(get_objects(G({{1, 2}, {0, 0}}), 2).size() == 1);
    CHECK(get_objects(G({{1, 2}, {0, 0}}), 4).size() == 2);
    CHECK(get_objects(G({{1, 0}, {0, 1}}), 4).size() == 2);
    CHECK(get_objects(G({{1, 0}, {0, 1}}), 5).size() == 1);
    // Uniform-color variants on a non-black background.
    auto on_blue = get_objects(G({{1, 1, 1, 1}, {1, 3, 1, 4}, {1, 3, 1, 1}}), 4);
    REQUIRE(on_blue.size() == 2);
    CHECK(on_blue[0].foreground_count() == 2);
    // Rectangles: a filled block, a frame with content, a lone pixel (ignored).
    auto rects = get_objects(G({{2, 2, 0, 5, 5, 5}, {2, 2, 0, 5, 7, 5}, {0, 0, 0, 5, 5, 5}, {1, 0, 0, 0, 0, 0}}), 1);
    REQUIRE(rects.size() == 2);
    CHECK(grid_to_rows(rects[0]) == Rows{{2, 2}, {2, 2}});
    CHECK(grid_to_rows(rects[1]) == Rows{{5, 5, 5}, {5, 7, 5}, {5, 5, 5}});
    CHECK(rects[1].origin() == Point{3, 0});
    auto lattice = get_objects(G({{1, 0, 1}, {0, 0, 0}, {1, 0, 1}}), 6);
    CHECK(lattice.size() == 4);
    CHECK(get_objects(G({{0, 0}}), 2).empty());
    CHECK_THROWS_AS(get_objects(G({{1}}), 7), EvalError);
}

TEST_CASE("object-level primitive goldens") {
    const Grid row = G({{1, 0, 2}});
    const GridList objs = get_objects(row, 2);
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("compress_objects_linear", {objs}))) == Rows{{1, 2}});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("compress_objects_linear", {get_objects(G({{1}, {0}, {2}}), 2)}))) ==
          Rows{{1}, {2}});
    const GridList four = get_objects(G({{1, 0, 2}, {0, 0, 0}, {3, 0, 4}}), 2);
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("compress_objects_quad", {four}))) == Rows{{1, 2}, {3, 4}});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("compress_objects_quad_pad", {four}))) ==
          Rows{{1, 0, 2}, {0, 0, 0}, {3, 0, 4}});

    const PrimitiveId recolor = Registry::get(3).id("set_fg_color5");
    auto mapped = std::get<GridList>(test::applyv("for_each", {objs, FunctionRef{recolor}}));
    REQUIRE(mapped.size() == 2);
    CHECK(mapped[1].origin() == Point{2, 0});
    CHECK(grid_to_rows(std::get<Grid>(test::applyv("apply_to_grid", {row, mapped}))) == Rows{{5, 0, 5}});
    auto sizes = std::get<IntList>(test::applyv("for_each", {objs, FunctionRef{Registry::get(3).id("get_object_size")}}));
    CHECK(sizes == IntList{1, 1});
    CHECK_THROWS_AS(test::applyv("for_each", {objs, FunctionRef{Registry::get(3).id("cellwiseOR")}}), TypeError);

    CHECK(grid_to_rows(std::get<Grid>(test::applyv("cellwise_OR_list", {GridList{G({{1, 0}}), G({{0, 2}})}}))) ==
          Rows{{1, 2}});
    CHECK_THROWS_AS(test::applyv("cellwise_OR_list", {GridList{}}), EvalError);
    CHECK(std::get<IntList>(test::applyv("get_pixels", {row})) == IntList{1, 2});
    CHECK(std::get<int>(test::applyv("get_object_size", {G({{1, 1, 0}})})) == 2);
    CHECK(std::get<int>(test::applyv("count", {objs})) == 2);
    CHECK(std::get<int>(test::applyv("count", {IntList{4, 5, 6}})) == 3);
}

TEST_CASE("selection primitive goldens") {
    const GridList objs = get_objects(G({{1, 1, 0, 2, 0, 3}, {0, 0, 0, 2, 0, 0}, {0, 0, 0, 2, 0, 0}}), 2);
    REQUIRE(objs.size() == 3);
    const IntList sizes{2, 3, 1};
    CHECK(std::get<Grid>(test::applyv("keep_largest", {objs, sizes})) == objs[1]);
    CHECK(std::get<Grid>(test::applyv("keep_smallest", {objs, sizes})) == objs[2]);
    CHECK(std::get<GridList>(test::applyv("filter_largest", {objs, sizes})) == GridList{objs[0], objs[2]});
    CHECK(std::get<GridList>(test::applyv("filter_smallest", {objs, sizes})) == GridList{objs[0], objs[1]});
    // Ties go to the leftmost origin.
    CHECK(std::get<GridList>(test::applyv("filter_largest", {objs, IntList{4, 4, 1}})) == GridList{objs[1], objs[2]});

    CHECK(std::get<bool>(test::applyv("is_h_symmetrical", {G({{1, 0, 1}})})));
    CHECK_FALSE(std::get<bool>(test::applyv("is_h_symmetrical", {G({{1, 2}})})));
    CHECK(std::get<bool>(test::applyv("is_v_symmetrical", {G({{1}, {1}})})));
    CHECK_FALSE(std::get<bool>(test::applyv("is_v_symmetrical", {G({{1}, {2}})})));
    CHECK_FALSE(std::get<bool>(test::applyv("logical_not", {Value{true}})));
    CHECK(std::get<BoolList>(test::applyv("logical_not", {BoolList{true, false}})) == BoolList{false, true});
    CHECK(std::get<Grid>(test::applyv("keep_boolean", {objs, BoolList{false, true, true}})) == objs[1]);
    CHECK_THROWS_AS(test::applyv("keep_boolean", {objs, BoolList{false, false, false}}), EvalError);
    CHECK(std::get<GridList>(test::applyv("filter_boolean", {objs, BoolList{false, true, false}})) ==
          GridList{objs[0], objs[2]});
    CHECK_THROWS_AS(test::applyv("keep_largest", {objs, IntList{1}}), EvalError);
}

TEST_CASE("every primitive has a golden") {
    std::set<std::string> covered;
    for (const auto& g : unary_goldens()) covered.insert(g.name);
    for (const char* n : {"cellwiseOR", "cellwiseAND", "cellwiseXOR", "cellwiseDifference", "cellwiseNOR", "vconcat",
                          "hconcat", "color_change", "get_objects1", "get_objects2", "get_objects3", "get_objects4",
                          "get_objects5", "get_objects6", "compress_objects_linear", "compress_objects_quad",
                          "compress_objects_quad_pad", "for_each", "apply_to_grid", "cellwise_OR_list", "get_pixels",
                          "get_object_size", "count", "filter_largest", "filter_smallest", "keep_largest",
                          "keep_smallest", "is_h_symmetrical", "is_v_symmetrical", "logical_not", "keep_boolean",
                          "filter_boolean"})
        covered.insert(n);
    for (const auto& s : registry(3)) CHECK_MESSAGE(covered.count(s.name), s.name);
}
