#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <json.hpp>
#include <numeric>

#include "gridcoder/error.hpp"
#include "gridcoder/guidance.hpp"
#include "support.hpp"

using namespace gridcoder;
using test::G;
using test::seq;

namespace {

// Distribution keyed on the exact prefix; anything unlisted predicts <EOS>.
class PrefixStub : public GuidanceSource {
public:
    explicit PrefixStub(const Vocabulary& vocab) : vocab_(&vocab) {}
    void set(const TokenSequence& prefix, std::map<std::string, double> dist) { table_[prefix] = dist; }

    std::vector<double> predict(const Task&, std::size_t, const TokenSequence& prefix) const override {
        std::vector<double> out(vocab_->size(), 0.0);
        auto it = table_.find(prefix);
        if (it == table_.end()) {
            out[static_cast<std::size_t>(vocab_->eos())] = 1.0;
            return out;
        }
        for (const auto& [name, p] : it->second) out[static_cast<std::size_t>(vocab_->id(name))] = p;
        return out;
    }
    const Vocabulary& vocab() const override { return *vocab_; }
    std::string describe() const override { return "stub"; }

private:
    const Vocabulary* vocab_;
    std::map<TokenSequence, std::map<std::string, double>> table_;
};

Task one_pair_task() {
    Task t;
    t.id = "t";
    t.support.push_back({G({{1, 2}, {3, 4}}), G({{3, 1}, {4, 2}})});
    return t;
}

double row_sum(const std::vector<double>& r) { return std::accumulate(r.begin(), r.end(), 0.0); }

}  // namespace

TEST_CASE("argmax prefers the lowest index on ties") {
    CHECK(argmax({0.2, 0.5, 0.5}) == 1);
    CHECK(argmax({1.0}) == 0);
}

TEST_CASE("uniform guidance") {
    const auto& v = Vocabulary::get(1);
    UniformGuidance u(v);
    const auto p = u.predict(one_pair_task(), 0, {});
    CHECK(p.size() == 77);
    CHECK(row_sum(p) == doctest::Approx(1.0));
}

TEST_CASE("oracle without noise is one-hot on the truth then EOS") {
    const auto& v = Vocabulary::get(3);
    const auto truth = seq({"rot90", "<NewLevel>", "hmirror", "<EOS>"});
    OracleGuidance o(truth, v);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto r = o.row(i);
        CHECK(r[static_cast<std::size_t>(truth[i])] == 1.0);
        CHECK(row_sum(r) == doctest::Approx(1.0));
    }
    CHECK(o.row(9)[static_cast<std::size_t>(v.eos())] == 1.0);
}

TEST_CASE("oracle noise keeps the truth at 1-eps") {
    const auto& v = Vocabulary::get(3);
    const auto truth = seq({"rot90", "<EOS>"});
    OracleGuidance o(truth, v, {.epsilon = 0.3, .distractors = 5, .seed = 11});
    const auto r = o.row(0);
    CHECK(r[static_cast<std::size_t>(truth[0])] == doctest::Approx(0.7));
    CHECK(std::count_if(r.begin(), r.end(), [](double x) { return x > 0.0; }) == 6);
    CHECK(row_sum(r) == doctest::Approx(1.0));
    CHECK(o.row(0) == OracleGuidance(truth, v, {.epsilon = 0.3, .distractors = 5, .seed = 11}).row(0));
}

TEST_CASE("entropy profile flattens transform positions only") {
    const auto& v = Vocabulary::get(3);
    const auto truth = seq({"rot90", "<NewLevel>", "hmirror", "<EOS>"});
    OracleGuidance o(truth, v, {.entropy_profile = true, .seed = 4});
    CHECK(o.high_entropy(0));
    CHECK_FALSE(o.high_entropy(1));
    CHECK(o.high_entropy(2));
    const auto r0 = o.row(0);
    CHECK(r0[static_cast<std::size_t>(truth[0])] >= 0.15);
    CHECK(row_sum(r0) == doctest::Approx(1.0));
    CHECK(o.row(1)[static_cast<std::size_t>(v.new_level())] == doctest::Approx(0.99));
}

TEST_CASE("prob space continues past EOS when a second class clears tau") {
    const auto& v = Vocabulary::get(3);
    PrefixStub stub(v);
    stub.set({}, {{"<EOS>", 0.6}, {"hconcat", 0.3}, {"rot90", 0.1}});
    stub.set(seq({"hconcat"}), {{"<EOS>", 1.0}});
    const auto ps = get_prob_space(stub, one_pair_task(), 0, {}, 0.1, 40);
    REQUIRE(ps.positions() == 2);
    CHECK(ps.rows[0][static_cast<std::size_t>(v.id("hconcat"))] == doctest::Approx(0.3));

    // At a higher tau the runner-up no longer qualifies.
    const auto stop = get_prob_space(stub, one_pair_task(), 0, {}, 0.35, 40);
    CHECK(stop.positions() == 1);
}

TEST_CASE("prob space respects the length cap") {
    const auto& v = Vocabulary::get(3);
    PrefixStub stub(v);
    stub.set({}, {{"rot90", 1.0}});
    stub.set(seq({"rot90"}), {{"<NewLevel>", 1.0}});
    stub.set(seq({"rot90", "<NewLevel>"}), {{"rot90", 1.0}});
    CHECK(get_prob_space(stub, one_pair_task(), 0, {}, 0.02, 2).positions() == 2);
}

TEST_CASE("bootstrap averages rows per position") {
    const auto& v = Vocabulary::get(3);
    PrefixStub stub(v);
    stub.set({}, {{"rot90", 0.6}, {"hmirror", 0.4}});
    stub.set(seq({"rot90"}), {{"<EOS>", 1.0}});
    stub.set(seq({"hmirror"}), {{"<NewLevel>", 1.0}});
    stub.set(seq({"hmirror", "<NewLevel>"}), {{"vmirror", 1.0}});
    const auto base = bootstrap_prob_space(stub, one_pair_task(), 0, 0.02, 40, 1);
    CHECK(base.positions() == 2);
    const auto boot = bootstrap_prob_space(stub, one_pair_task(), 8, 0.02, 40, 1);
    CHECK(boot.positions() >= 2);
    for (const auto& r : boot.rows) CHECK(row_sum(r) == doctest::Approx(1.0));
    // Position 0 is never re-decoded, so it keeps the base row.
    CHECK(boot.rows[0] == base.rows[0]);
    CHECK_THROWS_AS(bootstrap_prob_space(stub, one_pair_task(), -1, 0.02, 40, 1), InvalidConfig);
}

TEST_CASE("probability table round trip and errors") {
    const auto& v = Vocabulary::get(1);
    ProbSpace ps;
    ps.eos = v.eos();
    std::vector<double> row(v.size(), 0.0);
    row[0] = 0.75;
    row[static_cast<std::size_t>(v.eos())] = 0.25;
    ps.rows = {row, row};
    const auto path = (std::filesystem::temp_directory_path() / "gc_table_test.json").string();
    save_prob_table(path, ps, v, "abc");
    const TableGuidance t = load_prob_table(path, v);
    CHECK(t.task_id() == "abc");
    CHECK(t.space().rows == ps.rows);
    CHECK_FALSE(t.conditions_on_prefix());
    CHECK(t.predict(one_pair_task(), 0, seq({"<EOS>", "<EOS>", "<EOS>"}, 1))[static_cast<std::size_t>(v.eos())] == 1.0);
    std::remove(path.c_str());

    const std::string good = prob_table_to_json(ps, v, "abc");
    CHECK_THROWS_AS(prob_table_from_json(good, Vocabulary::get(3)), VocabError);
    CHECK_THROWS_AS(prob_table_from_json("{", v), FormatError);
    CHECK_THROWS_AS(prob_table_from_json("[]", v), FormatError);
    auto j = nlohmann::json::parse(good);
    j["rows"][0][0] = 0.5;
    CHECK_THROWS_AS(prob_table_from_json(j.dump(), v), FormatError);
    j = nlohmann::json::parse(good);
    j["rows"][1].erase(0);
    CHECK_THROWS_AS(prob_table_from_json(j.dump(), v), FormatError);
    CHECK_THROWS_AS(load_prob_table("/nonexistent/table.json", v), FormatError);
}

TEST_CASE("staged guidance picks the oracle matching the shown grids") {
    const auto& v = Vocabulary::get(3);
    const Task task = one_pair_task();
    auto fallback = std::make_shared<OracleGuidance>(seq({"rot90", "<EOS>"}), v);
    auto stage = std::make_shared<OracleGuidance>(seq({"hmirror", "<EOS>"}), v);
    StagedGuidance staged({{{G({{9}})}, stage}}, fallback);
    CHECK(&staged.select(task) == fallback.get());
    Task other = task;
    other.support[0].input = G({{9}});
    CHECK(&staged.select(other) == stage.get());
    CHECK(staged.predict(other, 0, {})[static_cast<std::size_t>(v.id("hmirror"))] == 1.0);
}

TEST_CASE("entropy profile spreads cellwise merges over the other merges") {
    const auto& v = Vocabulary::get(1);
    const auto truth = seq({"lefthalf", "righthalf", "<NewLevel>", "cellwiseXOR", "<EOS>"});
    OracleGuidance o(truth, v, {.entropy_profile = true, .seed = 9});
    CHECK_FALSE(o.high_entropy(0));
    CHECK(o.high_entropy(3));
    const auto r = o.row(3);
    CHECK(row_sum(r) == doctest::Approx(1.0));
    CHECK(r[static_cast<std::size_t>(truth[3])] >= 0.15);
    for (std::size_t t = 0; t < r.size(); ++t)
        if (r[t] > 0.0) CHECK(v.name(static_cast<TokenId>(t)).rfind("cellwise", 0) == 0);
}
