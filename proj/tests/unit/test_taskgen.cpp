#include <algorithm>
#include <set>

#include "gridcoder/error.hpp"
#include "gridcoder/search.hpp"
#include "gridcoder/task_io.hpp"
#include "gridcoder/taskgen.hpp"
#include "support.hpp"

using namespace gridcoder;
using test::seq;

namespace {

bool contains_in_order(const std::vector<std::string>& names, const std::vector<std::string>& wanted) {
    std::size_t i = 0;
    for (const auto& n : names)
        if (i < wanted.size() && n == wanted[i]) ++i;
    return i == wanted.size();
}

GeneratorConfig config(int version, std::uint64_t seed) {
    GeneratorConfig c;
    c.dsl_version = version;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("every generator honours its contract") {
    for (const auto& id : generator_ids()) {
        CAPTURE(id);
        std::set<std::string> distinct;
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const auto s = generate(id, config(3, seed));
            CHECK(contract_violation(s).empty());
            CHECK(s.truth.size() <= 40);
            CHECK(s.task.support.size() >= 2);
            CHECK(s.task.support.size() <= 4);
            CHECK(s.task.query.size() == 1);
            CHECK(s.generator_id == id);
            distinct.insert(format_tokens(s.truth, Vocabulary::get(3)));
        }
        CHECK(distinct.size() > 5);
    }
}

TEST_CASE("generators are deterministic per seed") {
    for (const auto& id : generator_ids()) {
        const auto a = generate(id, config(3, 77));
        const auto b = generate(id, config(3, 77));
        CHECK(a.truth == b.truth);
        CHECK(task_to_json(a.task) == task_to_json(b.task));
    }
}

TEST_CASE("generator availability follows the DSL version") {
    CHECK(generator_ids(1) == std::vector<std::string>{"trivial", "split_merge", "tiling"});
    CHECK(generator_ids(2).size() == 4);
    CHECK(generator_ids(3).size() == 7);
    CHECK_THROWS_AS(generate("objects_v2", config(1, 0)), InvalidConfig);
    CHECK_THROWS_AS(generate("selector_v3", config(2, 0)), InvalidConfig);
    CHECK_THROWS_AS(generate("nope", config(3, 0)), ConfigError);
    GeneratorConfig bad = config(1, 0);
    bad.min_support = 1;
    CHECK_THROWS_AS(generate("trivial", bad), InvalidConfig);
    // v1 samples only use v1 tokens.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = generate("tiling", config(1, seed));
        CHECK(s.dsl_version == 1);
        for (TokenId t : s.truth) CHECK(t < static_cast<TokenId>(Vocabulary::get(1).size()));
    }
}

TEST_CASE("trivial generator pools") {
    // Independent count of single-primitive tasks: unary Grid->Grid specs
    // without latent parameters.
    std::size_t expected = 0;
    for (const auto& spec : Registry::get(1).specs())
        if (spec.param_kinds.size() == 1 && spec.param_kinds[0] == ValueKind::Grid &&
            spec.return_kind == ValueKind::Grid && spec.latent_params == 0)
            ++expected;
    CHECK(Registry::get(1).unary_grid_transforms().size() == expected);
    CHECK(expected == 66);

    const auto& reg = Registry::get(1);
    const auto& pairs = curated_pairs(1);
    auto has = [&](const char* a, const char* b) {
        return std::find(pairs.begin(), pairs.end(), std::make_pair(reg.id(a), reg.id(b))) != pairs.end();
    };
    CHECK_FALSE(has("rot90", "rot270"));
    CHECK_FALSE(has("hmirror", "hmirror"));
    CHECK_FALSE(has("set_fg_color2", "set_fg_color5"));
    CHECK_FALSE(has("rot90", "rot90"));
    CHECK(has("rot90", "set_fg_color2") != has("set_fg_color2", "rot90"));
    MESSAGE("curated two-primitive compositions: " << pairs.size() << " (+" << expected << " single)");
    CHECK(pairs.size() > 300);
}

TEST_CASE("split-merge template matches hand-written sequences") {
    const auto& v1 = Vocabulary::get(1);
    const auto two = encode_expr(split_merge_expr({"lefthalf", "righthalf"}, "cellwiseOR", v1), v1);
    CHECK(two == seq({"lefthalf", "righthalf", "<NewLevel>", "cellwiseOR", "<EOS>"}, 1));
    const auto three = encode_expr(split_merge_expr({"topthird", "hcenterthird", "bottomthird"}, "cellwiseOR", v1), v1);
    CHECK(three == seq({"topthird", "hcenterthird", "bottomthird", "<NewLevel>", "<Identity>", "cellwiseOR",
                        "<NewLevel>", "cellwiseOR", "<EOS>"},
                       1));
    const auto quad = encode_expr(
        split_merge_expr({"first_quadrant", "second_quadrant", "third_quadrant", "fourth_quadrant"}, "cellwiseXOR", v1),
        v1);
    const auto tree = parse(quad, v1);
    CHECK(tree.levels.size() == 3);
    CHECK(tree.levels[0].size() == 4);
    CHECK(tree.levels[1].size() == 2);
}

TEST_CASE("tiling template") {
    const auto& v1 = Vocabulary::get(1);
    const auto four = encode_expr(tiling_expr(4, 1, {"hmirror", "<Identity>", "hmirror", "<Identity>"}, v1), v1);
    CHECK(four == seq({"hmirror", "<Identity>", "hmirror", "<Identity>", "<NewLevel>", "hconcat", "hconcat",
                       "<NewLevel>", "hconcat", "<EOS>"},
                      1));
    const auto five = encode_expr(tiling_expr(5, 1, {"hmirror", "<Identity>", "hmirror", "<Identity>", "hmirror"}, v1), v1);
    CHECK(five.size() == 15);
    const Expr two = tiling_expr(2, 2, {"<Identity>", "rot180", "hmirror", "<Identity>"}, v1);
    const Grid g = test::G({{1, 2, 0}, {0, 3, 4}});
    const Grid out = evaluate(expr_to_tree(two, v1), g);
    CHECK(out.width() == 2 * g.width());
    CHECK(out.height() == 2 * g.height());
}

TEST_CASE("object generators emit their templates") {
    const auto& v = Vocabulary::get(3);
    bool in_place = false, linear = false;
    for (std::uint64_t seed = 0; seed < 200 && !(in_place && linear); ++seed) {
        const auto names = token_names(generate("objects_v2", config(3, seed)).truth, v);
        const bool recolor = std::any_of(names.begin(), names.end(), [](const auto& n) {
            return n.rfind("set_fg_color", 0) == 0;
        });
        if (recolor && contains_in_order(names, {"<Identity>", "for_each", "apply_to_grid"})) in_place = true;
        if (names[names.size() - 2] == "compress_objects_linear") linear = true;
    }
    CHECK(in_place);
    CHECK(linear);

    bool keep_largest = false, filter_sym = false;
    for (std::uint64_t seed = 0; seed < 300 && !(keep_largest && filter_sym); ++seed) {
        const auto names = token_names(generate("selector_v3", config(3, seed)).truth, v);
        if (names.size() >= 3 && names[0] == names[1] && names[0].rfind("get_objects", 0) == 0 &&
            names[2] == "get_object_size" && contains_in_order(names, {"keep_largest"}))
            keep_largest = true;
        if (contains_in_order(names, {"is_h_symmetrical", "logical_not", "filter_boolean"})) filter_sym = true;
    }
    CHECK(keep_largest);
    CHECK(filter_sym);

    bool single_crop = false;
    for (std::uint64_t seed = 0; seed < 100 && !single_crop; ++seed) {
        const auto s = generate("windowing_v3", config(3, seed));
        const auto names = token_names(s.truth, v);
        if (contains_in_order(names, {"get_objects1", "cellwise_OR_list"})) {
            single_crop = true;
            const auto objs = std::get<GridList>(test::applyv("get_objects1", {s.task.support[0].input}));
            CHECK(objs.size() == 1);
        }
    }
    CHECK(single_crop);
}

TEST_CASE("dataset lines round trip") {
    const auto s = generate("recombiner_v3", config(3, 5));
    const auto j = sample_to_json(s);
    CHECK(j["generator"] == "recombiner_v3");
    CHECK(j["truth"].is_array());
    CHECK(j["task"].contains("train"));
    const auto back = sample_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.truth == s.truth);
    CHECK(back.seed == 5);
    CHECK(task_to_json(back.task) == task_to_json(s.task));
    CHECK_THROWS_AS(sample_from_json(nlohmann::json::parse(R"({"task":{}})")), FormatError);
}

TEST_CASE("coverage patterns describe what the generators emit") {
    const auto& v = Vocabulary::get(3);
    for (const auto& id : generator_ids()) {
        CAPTURE(id);
        for (std::uint64_t seed = 100; seed < 160; ++seed) {
            const auto s = generate(id, config(3, seed));
            const auto sig = structure_signature(tree_to_expr(parse(s.truth, v), v), v);
            CAPTURE(sig);
            CHECK_FALSE(covered_by(sig).empty());
        }
    }
    CHECK(covered_by("X") == "trivial");
    CHECK(covered_by("U(R(U(X)))").empty());
}

TEST_CASE("out-of-distribution suite") {
    const auto& v = Vocabulary::get(3);
    const auto suite = gen_ood_suite(0);
    REQUIRE(suite.size() == 10);
    int composable = 0;
    for (const auto& t : suite) {
        CAPTURE(t.description);
        CAPTURE(t.signature);
        CHECK(contract_violation(t.sample).empty());
        CHECK(covered_by(t.signature).empty());
        CHECK_FALSE(t.coverage_gap.empty());
        composable += t.composable;
        for (const auto& stage : t.guidance_stages) {
            const auto sig = structure_signature(stage, v);
            CAPTURE(sig);
            CHECK_FALSE(covered_by(sig).empty());
        }
    }
    CHECK(composable == 8);
    CHECK(format_tokens(suite[1].sample.truth, v) ==
          format_tokens(seq({"gravitate_left", "<NewLevel>", "gravitate_up", "<NewLevel>", "set_fg_color8", "<EOS>"}), v));
    CHECK(gen_ood_suite(0)[3].sample.truth == suite[3].sample.truth);
}

TEST_CASE("out-of-distribution guidance keys on intermediate grids") {
    const auto suite = gen_ood_suite(1);
    const auto& t = suite[1];
    auto guidance = ood_guidance(t);
    const auto& v = Vocabulary::get(3);
    Task mid = t.sample.task;
    for (auto& ex : mid.support)
        ex.input = evaluate(parse(seq({"gravitate_left", "<NewLevel>", "gravitate_up", "<EOS>"}), v), ex.input);
    CHECK(guidance->select(mid).truth() == seq({"set_fg_color8", "<EOS>"}));
    CHECK(guidance->select(t.sample.task).truth() ==
          seq({"gravitate_left", "<NewLevel>", "gravitate_up", "<EOS>"}));
}
