#include "gridcoder/error.hpp"
#include "support.hpp"

using namespace gridcoder;
using test::G;
using test::seq;

TEST_CASE("vocabulary layout") {
    const auto& v1 = Vocabulary::get(1);
    CHECK(v1.size() == 77);
    CHECK(v1.name(v1.identity()) == "<Identity>");
    CHECK(v1.name(v1.new_level()) == "<NewLevel>");
    CHECK(v1.name(v1.eos()) == "<EOS>");
    CHECK(Vocabulary::get(3).size() == 101);
    CHECK_THROWS_AS(v1.id("get_objects1"), VocabError);
    CHECK(v1.id("rot90") == Vocabulary::get(3).id("rot90"));
}

TEST_CASE("two-half merge program parses into three levels") {
    const auto& v = Vocabulary::get(1);
    const auto s = seq({"lefthalf", "righthalf", "<NewLevel>", "cellwiseOR", "<NewLevel>", "set_fg_color3", "<EOS>"}, 1);
    const ProgramTree t = parse(s, v);
    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels[0].size() == 2);
    CHECK(t.levels[1][0].child_count == 2);
    CHECK(t.levels[2][0].first_child == 0);
    CHECK(encode(t, v) == s);
    // Hand execution: halves [[1,0],[0,3]] and [[0,2],[4,0]] merge to [[1,2],[4,3]], recolor to 3.
    CHECK(grid_to_rows(evaluate(t, G({{1, 0, 0, 2}, {0, 3, 4, 0}}))) == Rows{{3, 3}, {3, 3}});
    CHECK(grid_to_rows(evaluate(t, G({{1, 0, 0, 0}, {0, 0, 0, 0}}))) == Rows{{3, 0}, {0, 0}});
    auto trace = intermediate_outputs(t, G({{1, 0, 0, 2}, {0, 3, 4, 0}}));
    CHECK(trace.size() == 4);
}

TEST_CASE("three-thirds merge routes topthird through Identity") {
    const auto& v = Vocabulary::get(1);
    const auto s = seq({"topthird", "hcenterthird", "bottomthird", "<NewLevel>", "<Identity>", "cellwiseOR",
                        "<NewLevel>", "cellwiseOR", "<EOS>"},
                       1);
    const ProgramTree t = parse(s, v);
    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels[1][0].op == v.identity());
    CHECK(t.levels[1][0].first_child == 0);
    CHECK(t.levels[1][1].first_child == 1);
    CHECK(t.levels[1][1].child_count == 2);
    CHECK(encode(t, v) == s);
    const Grid in = G({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    CHECK(grid_to_rows(evaluate(t, in)) == Rows{{1, 2, 3}});
}

TEST_CASE("syntax and type errors") {
    const auto& v = Vocabulary::get(3);
    CHECK_THROWS_AS(parse(seq({"lefthalf", "<NewLevel>", "cellwiseOR", "<EOS>"}), v), SyntaxError);
    CHECK_THROWS_AS(parse(seq({"<EOS>"}), v), SyntaxError);
    CHECK_THROWS_AS(parse(seq({"rot90", "<NewLevel>", "<NewLevel>", "rot90"}), v), SyntaxError);
    CHECK_THROWS_AS(parse(seq({"rot90", "rot90", "<EOS>"}), v), SyntaxError);
    CHECK_THROWS_AS(parse(seq({"count", "<EOS>"}), v), TypeError);
    CHECK_THROWS_AS(parse(seq({"get_objects2", "<EOS>"}), v), TypeError);
    CHECK_THROWS_AS(parse(seq({"cellwiseOR", "<EOS>"}), v), TypeError);
    // A lambda must be a level-0 leaf.
    CHECK_THROWS_AS(parse(seq({"get_objects2", "rot90", "<NewLevel>", "<Identity>", "rot90", "<NewLevel>",
                               "for_each", "<NewLevel>", "compress_objects_linear", "<EOS>"}),
                          v),
                    TypeError);
    CHECK_THROWS_AS(parse(seq({"get_objects2", "<Identity>", "<NewLevel>", "for_each", "<NewLevel>",
                               "compress_objects_linear", "<EOS>"}),
                          v),
                    TypeError);
}

TEST_CASE("tokens after EOS are ignored") {
    const auto& v = Vocabulary::get(1);
    const auto a = parse(seq({"rot90", "<EOS>", "hconcat", "<NewLevel>"}, 1), v);
    const auto b = parse(seq({"rot90", "<EOS>"}, 1), v);
    CHECK(a == b);
    CHECK(parse(seq({"rot90"}, 1), v) == b);
}

TEST_CASE("object program with duplicated selection sub-tree") {
    const auto& v = Vocabulary::get(3);
    const auto s = seq({"get_objects1", "get_objects1", "get_object_size", "get_objects1", "get_objects1",
                        "get_object_size", "<NewLevel>", "<Identity>", "for_each", "<Identity>", "for_each",
                        "<NewLevel>", "keep_largest", "keep_largest", "<NewLevel>", "lefthalf", "righthalf",
                        "<NewLevel>", "cellwiseOR", "<EOS>"});
    CHECK(s.size() == 20);
    const ProgramTree t = parse(s, v);
    REQUIRE(t.levels.size() == 5);
    CHECK(t.levels[0][2].kind == ValueKind::FunctionRef);
    CHECK(t.levels[1][1].kind == ValueKind::IntList);
    CHECK(t.levels[2][0].kind == ValueKind::Grid);
    CHECK(encode(t, v) == s);
    // The 2x2 block of 4s is the largest rectangle; its halves OR together.
    const Grid in = G({{3, 3, 0, 4, 4, 0}, {0, 0, 0, 4, 4, 0}, {0, 0, 0, 0, 0, 0}, {1, 1, 1, 2, 0, 0}});
    CHECK(grid_to_rows(evaluate(t, in)) == Rows{{4}, {4}});
}

TEST_CASE("lambda may pass through an Identity chain") {
    const auto& v = Vocabulary::get(2);
    const auto s = seq({"get_objects2", "set_fg_color5", "<NewLevel>", "<Identity>", "<Identity>", "<NewLevel>",
                        "for_each", "<NewLevel>", "compress_objects_linear", "<EOS>"},
                       2);
    const ProgramTree t = parse(s, v);
    CHECK(grid_to_rows(evaluate(t, G({{1, 0, 2}}))) == Rows{{5, 5}});
}

TEST_CASE("identity and inverse rotations") {
    const auto& v = Vocabulary::get(1);
    const Grid g = random_grid(7, {});
    CHECK(evaluate(parse(seq({"<Identity>", "<EOS>"}, 1), v), g) == g);
    CHECK(evaluate(parse(seq({"rot90", "<NewLevel>", "rot270", "<EOS>"}, 1), v), g) == g);
    auto trace = intermediate_outputs(parse(seq({"<Identity>", "<EOS>"}, 1), v), g);
    REQUIRE(trace.size() == 1);
    CHECK(std::get<Grid>(trace[0].value) == g);
}

TEST_CASE("failing program yields a partial trace") {
    const auto& v = Vocabulary::get(1);
    const auto t = parse(seq({"rot90", "<NewLevel>", "remove_outline", "<EOS>"}, 1), v);
    auto trace = intermediate_outputs(t, G({{1, 2}}));
    CHECK(trace.size() == 1);
    CHECK_THROWS_AS(evaluate(t, G({{1, 2}})), EvalError);
}

TEST_CASE("token JSON round trip") {
    const auto& v = Vocabulary::get(1);
    const auto s = seq({"lefthalf", "righthalf", "<NewLevel>", "cellwiseOR", "<EOS>"}, 1);
    const std::string json = tokens_to_json(s, v);
    CHECK(json == R"(["lefthalf","righthalf","<NewLevel>","cellwiseOR","<EOS>"])");
    CHECK(tokens_from_json(json, v) == s);
    CHECK_THROWS_AS(tokens_from_json(R"(["nope"])", v), VocabError);
    CHECK_THROWS_AS(tokens_from_json(R"({"a":1})", v), FormatError);
}

TEST_CASE("expression layout pads with Identity") {
    const auto& v = Vocabulary::get(1);
    const Expr hm = leaf_expr("hmirror", v);
    const Expr x = input_expr(v);
    const Expr four = call_expr("hconcat", {call_expr("hconcat", {hm, x}, v), call_expr("hconcat", {hm, x}, v)}, v);
    CHECK(encode_expr(four, v) == seq({"hmirror", "<Identity>", "hmirror", "<Identity>", "<NewLevel>", "hconcat",
                                       "hconcat", "<NewLevel>", "hconcat", "<EOS>"},
                                      1));
    const Expr five = call_expr("hconcat", {call_expr("hconcat", {call_expr("hconcat", {hm, x}, v),
                                                                  call_expr("hconcat", {hm, x}, v)}, v),
                                            hm},
                                v);
    const auto five_seq = seq({"hmirror", "<Identity>", "hmirror", "<Identity>", "hmirror", "<NewLevel>", "hconcat",
                               "hconcat", "<Identity>", "<NewLevel>", "hconcat", "<Identity>", "<NewLevel>", "hconcat",
                               "<EOS>"},
                              1);
    CHECK(encode_expr(five, v) == five_seq);
    CHECK(tree_to_expr(parse(five_seq, v), v) == five);
}

TEST_CASE("graft composes programs") {
    const auto& v = Vocabulary::get(1);
    const Expr first = leaf_expr("rot90", v);
    const Expr second = call_expr("hconcat", {leaf_expr("hmirror", v), input_expr(v)}, v);
    const Expr composed = graft(second, first, v);
    const Grid g = G({{1, 2, 0}, {0, 3, 0}});
    const Grid expected = evaluate(expr_to_tree(second, v), evaluate(expr_to_tree(first, v), g));
    CHECK(evaluate(expr_to_tree(composed, v), g) == expected);
    CHECK(graft(second, input_expr(v), v) == second);
}

TEST_CASE("check_program outcomes") {
    const auto& v = Vocabulary::get(1);
    Task task;
    task.support = {{G({{1, 2}}), G({{2, 1}})}, {G({{3, 0, 4}}), G({{4, 0, 3}})}};
    task.query = {{G({{5, 6}}), G({{6, 5}})}};
    CHECK(check_program(seq({"hmirror", "<EOS>"}, 1), task, v).status == CheckStatus::Solved);
    CHECK(check_program(seq({"<Identity>", "<EOS>"}, 1), task, v).status == CheckStatus::Failed);
    CHECK(check_program(seq({"rot90", "<EOS>"}, 1), task, v).status == CheckStatus::Failed);
    CHECK(check_program(seq({"hconcat", "<EOS>"}, 1), task, v).status == CheckStatus::Error);
    CHECK(check_program(seq({"remove_outline", "<EOS>"}, 1), task, v).status == CheckStatus::Error);
    CHECK(solves_query(parse(seq({"hmirror", "<EOS>"}, 1), v), task, std::nullopt));
}

TEST_CASE("color_change binding found by enumeration") {
    const auto& v = Vocabulary::get(1);
    Task task;
    task.support = {{G({{3, 1}}), G({{7, 1}})}, {G({{3, 3, 0}}), G({{7, 7, 0}})}};
    auto r = check_program(seq({"color_change", "<EOS>"}, 1), task, v);
    REQUIRE(r.status == CheckStatus::Solved);
    REQUIRE(r.binding.has_value());
    CHECK(*r.binding == ColorBinding{3, 7});
    // Brute-force oracle: exactly one of the 90 bindings fits both pairs.
    int fits = 0;
    const auto tree = parse(seq({"color_change", "<EOS>"}, 1), v);
    for (const auto& b : resolve_color_change()) {
        bool ok = true;
        for (const auto& ex : task.support) ok = ok && evaluate(tree, ex.input, EvalContext{b}) == ex.output;
        fits += ok;
    }
    CHECK(fits == 1);
}
