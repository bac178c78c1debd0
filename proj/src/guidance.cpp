#include "gridcoder/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gridcoder/error.hpp"
#include "gridcoder/hash.hpp"

namespace gridcoder {

std::size_t argmax(const std::vector<double>& row) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
        if (row[i] > row[best]) best = i;
    return best;
}

std::vector<double> UniformGuidance::predict(const Task&, std::size_t, const TokenSequence&) const {
    return std::vector<double>(vocab_->size(), 1.0 / static_cast<double>(vocab_->size()));
}

// ---- oracle ----

namespace {

bool split_family(std::string_view name) {
    for (std::string_view part : {"half", "third", "fourth", "quadrant"})
        if (name.find(part) != std::string_view::npos) return true;
    return false;
}

bool is_cellwise_merge(const PrimitiveSpec& spec) {
    return spec.arity() == 2 && spec.return_kind == ValueKind::Grid && spec.name.rfind("cellwise", 0) == 0;
}

constexpr double kProfileMasses[] = {0.40, 0.25, 0.15, 0.10, 0.06, 0.04};

// `n` distinct picks from `pool` other than `exclude`, fixed by `key`.
std::vector<TokenId> pick_distinct(const std::vector<TokenId>& pool, TokenId exclude, int n, std::uint64_t key) {
    std::vector<TokenId> candidates;
    candidates.reserve(pool.size());
    for (TokenId t : pool)
        if (t != exclude) candidates.push_back(t);
    std::mt19937_64 rng(key);
    const std::size_t take = std::min(candidates.size(), static_cast<std::size_t>(std::max(n, 0)));
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (candidates.size() - i));
        std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(take);
    return candidates;
}

// Truth through its first <EOS>, with <EOS> appended when missing.
TokenSequence truth_at_most_eos(const TokenSequence& truth, const Vocabulary& vocab) {
    TokenSequence out = truncate_at_eos(truth, vocab);
    if (out.empty() || out.back() != vocab.eos()) out.push_back(vocab.eos());
    return out;
}

}  // namespace

OracleGuidance::OracleGuidance(TokenSequence truth, const Vocabulary& vocab, OracleConfig config)
    : truth_(truth_at_most_eos(truth, vocab)), vocab_(&vocab), config_(config) {
    if (config_.epsilon < 0.0 || config_.epsilon >= 1.0) throw InvalidConfig("oracle epsilon must lie in [0, 1)");
    const Registry& reg = vocab.registry();
    for (PrimitiveId id : reg.unary_grid_transforms())
        if (!split_family(reg.spec(id).name)) transform_pool_.push_back(static_cast<TokenId>(id));
    transform_pool_.push_back(vocab.identity());
    for (std::size_t id = 0; id < reg.size(); ++id)
        if (is_cellwise_merge(reg.spec(static_cast<PrimitiveId>(id))))
            merge_pool_.push_back(static_cast<TokenId>(id));

    high_entropy_.assign(truth_.size(), 0);
    int level = 0;
    for (std::size_t i = 0; i < truth_.size(); ++i) {
        const TokenId t = truth_[i];
        if (t == vocab.new_level()) {
            ++level;
        } else if (t == vocab.identity()) {
            high_entropy_[i] = level == 0 ? 1 : 0;
        } else if (vocab.is_primitive(t)) {
            const auto& spec = reg.spec(static_cast<PrimitiveId>(t));
            if (spec.grid_to_grid() && !split_family(spec.name))
                high_entropy_[i] = 1;
            else if (is_cellwise_merge(spec))
                high_entropy_[i] = 2;
        }
    }
}

bool OracleGuidance::high_entropy(std::size_t position) const {
    return config_.entropy_profile && position < high_entropy_.size() && high_entropy_[position];
}

std::vector<double> OracleGuidance::row(std::size_t position) const {
    const TokenId truth = position < truth_.size() ? truth_[position] : vocab_->eos();
    std::vector<double> out(vocab_->size(), 0.0);
    const std::uint64_t key = mix64(config_.seed, position);
    if (high_entropy(position)) {
        const auto& pool = high_entropy_[position] == 2 ? merge_pool_ : transform_pool_;
        const auto others = pick_distinct(pool, truth, 5, key);
        const int slots = static_cast<int>(others.size()) + 1;
        const int rank = static_cast<int>(mix64(key, 0x7a11) % static_cast<std::uint64_t>(std::min(slots, 3)));
        std::size_t d = 0;
        double total = 0.0;
        for (int slot = 0; slot < slots; ++slot) {
            const TokenId t = slot == rank ? truth : others[d++];
            out[static_cast<std::size_t>(t)] += kProfileMasses[slot];
            total += kProfileMasses[slot];
        }
        for (double& v : out) v /= total;
        return out;
    }
    const double eps = config_.entropy_profile ? config_.structure_epsilon : config_.epsilon;
    std::vector<TokenId> all(vocab_->size());
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<TokenId>(t);
    const auto others = eps > 0.0 ? pick_distinct(all, truth, config_.distractors, key) : std::vector<TokenId>{};
    if (others.empty()) {
        out[static_cast<std::size_t>(truth)] = 1.0;
        return out;
    }
    out[static_cast<std::size_t>(truth)] = 1.0 - eps;
    for (TokenId t : others) out[static_cast<std::size_t>(t)] += eps / static_cast<double>(others.size());
    return out;
}

std::vector<double> OracleGuidance::predict(const Task&, std::size_t, const TokenSequence& prefix) const {
    return row(prefix.size());
}

std::string OracleGuidance::describe() const {
    std::ostringstream os;
    os << "oracle(eps=" << config_.epsilon << (config_.entropy_profile ? ",profile" : "") << ")";
    return os.str();
}

// ---- table ----

TableGuidance::TableGuidance(ProbSpace space, const Vocabulary& vocab, std::string task_id)
    : space_(std::move(space)), vocab_(&vocab), task_id_(std::move(task_id)) {
    space_.eos = vocab.eos();
}

std::vector<double> TableGuidance::predict(const Task&, std::size_t, const TokenSequence& prefix) const {
    if (prefix.size() < space_.rows.size()) return space_.rows[prefix.size()];
    std::vector<double> out(vocab_->size(), 0.0);
    out[static_cast<std::size_t>(vocab_->eos())] = 1.0;
    return out;
}

// ---- staged ----

StagedGuidance::StagedGuidance(std::vector<Stage> stages, std::shared_ptr<const OracleGuidance> fallback)
    : stages_(std::move(stages)), fallback_(std::move(fallback)) {}

const OracleGuidance& StagedGuidance::select(const Task& task) const {
    for (const auto& s : stages_) {
        if (s.inputs.size() != task.support.size()) continue;
        bool match = true;
        for (std::size_t i = 0; i < s.inputs.size() && match; ++i) match = s.inputs[i] == task.support[i].input;
        if (match) return *s.oracle;
    }
    return *fallback_;
}

std::vector<double> StagedGuidance::predict(const Task& task, std::size_t idx, const TokenSequence& prefix) const {
    return select(task).predict(task, idx, prefix);
}

// ---- decoding ----

ProbSpace get_prob_space(const GuidanceSource& source, const Task& task, std::size_t idx,
                         const TokenSequence& prefix, double tau, int max_len) {
    const TokenId eos = source.vocab().eos();
    ProbSpace ps;
    ps.eos = eos;
    TokenSequence seq = prefix;
    while (static_cast<int>(seq.size()) < max_len) {
        std::vector<double> p = source.predict(task, idx, seq);
        std::size_t best = argmax(p);
        if (static_cast<TokenId>(best) == eos) {
            std::size_t second = best == 0 ? 1 : 0;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (i != best && p[i] > p[second]) second = i;
            if (second < p.size() && second != best && p[second] > tau) {
                best = second;
            } else {
                ps.rows.push_back(std::move(p));
                break;
            }
        }
        ps.rows.push_back(std::move(p));
        seq.push_back(static_cast<TokenId>(best));
    }
    return ps;
}

ProbSpace bootstrap_prob_space(const GuidanceSource& source, const Task& task, int k, double tau, int max_len,
                               std::uint64_t seed) {
    if (k < 0) throw InvalidConfig("bootstrap K must be non-negative");
    ProbSpace base = get_prob_space(source, task, 0, {}, tau, max_len);
    if (k == 0 || base.rows.empty()) return base;
    const TokenId eos = base.eos;
    std::vector<std::vector<double>> sum = base.rows;
    std::vector<int> count(sum.size(), 1);
    std::mt19937_64 rng(seed);
    const std::size_t n_examples = std::max<std::size_t>(1, task.support.size());
    for (int run = 0; run < k; ++run) {
        const std::size_t idx = static_cast<std::size_t>(rng() % n_examples);
        const std::size_t want = 1 + static_cast<std::size_t>(rng() % 2);
        TokenSequence prefix;
        for (std::size_t pos = 0; pos < want && pos < base.rows.size(); ++pos) {
            std::vector<TokenId> options;
            for (std::size_t c = 0; c < base.rows[pos].size(); ++c)
                if (base.rows[pos][c] > tau && static_cast<TokenId>(c) != eos) options.push_back(static_cast<TokenId>(c));
            if (options.empty()) break;
            prefix.push_back(options[static_cast<std::size_t>(rng() % options.size())]);
        }
        if (static_cast<int>(prefix.size()) >= max_len) continue;
        const ProbSpace part = get_prob_space(source, task, idx, prefix, tau, max_len);
        for (std::size_t i = 0; i < part.rows.size(); ++i) {
            const std::size_t pos = prefix.size() + i;
            if (pos >= sum.size()) {
                sum.resize(pos + 1, std::vector<double>(part.rows[i].size(), 0.0));
                count.resize(pos + 1, 0);
            }
            for (std::size_t c = 0; c < part.rows[i].size(); ++c) sum[pos][c] += part.rows[i][c];
            ++count[pos];
        }
    }
    ProbSpace out;
    out.eos = eos;
    for (std::size_t pos = 0; pos < sum.size(); ++pos) {
        if (count[pos] == 0) break;
        for (double& v : sum[pos]) v /= count[pos];
        out.rows.push_back(std::move(sum[pos]));
    }
    return out;
}

// ---- table files ----

std::string prob_table_to_json(const ProbSpace& space, const Vocabulary& vocab, const std::string& task_id) {
    nlohmann::json j;
    j["task_id"] = task_id;
    j["vocab"] = vocab.names();
    j["rows"] = space.rows;
    return j.dump();
}

void save_prob_table(const std::string& path, const ProbSpace& space, const Vocabulary& vocab,
                     const std::string& task_id) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << prob_table_to_json(space, vocab, task_id) << '\n';
}

TableGuidance prob_table_from_json(const std::string& text, const Vocabulary& vocab) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("probability table: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("probability table: top level must be an object");
    for (const char* key : {"task_id", "vocab", "rows"})
        if (!j.contains(key)) throw FormatError(std::string("probability table: missing $.") + key);
    if (!j["task_id"].is_string()) throw FormatError("probability table: $.task_id must be a string");
    const auto& jv = j["vocab"];
    if (!jv.is_array()) throw FormatError("probability table: $.vocab must be an array");
    const auto names = vocab.names();
    for (std::size_t i = 0; i < jv.size(); ++i) {
        if (!jv[i].is_string()) throw FormatError("probability table: $.vocab[" + std::to_string(i) + "] is not a string");
        const auto name = jv[i].get<std::string>();
        if (i >= names.size() || name != names[i])
            throw VocabError("probability table: $.vocab[" + std::to_string(i) + "] is '" + name + "', expected '" +
                             (i < names.size() ? names[i] : std::string("<end>")) + "'");
    }
    if (jv.size() != names.size())
        throw VocabError("probability table: vocabulary has " + std::to_string(jv.size()) + " entries, expected " +
                         std::to_string(names.size()));
    const auto& jr = j["rows"];
    if (!jr.is_array()) throw FormatError("probability table: $.rows must be an array");
    ProbSpace ps;
    ps.eos = vocab.eos();
    for (std::size_t r = 0; r < jr.size(); ++r) {
        const std::string at = "$.rows[" + std::to_string(r) + "]";
        if (!jr[r].is_array() || jr[r].size() != names.size())
            throw FormatError("probability table: " + at + " must hold " + std::to_string(names.size()) + " numbers");
        std::vector<double> row;
        row.reserve(names.size());
        double total = 0.0;
        for (std::size_t c = 0; c < jr[r].size(); ++c) {
            if (!jr[r][c].is_number()) throw FormatError("probability table: " + at + "[" + std::to_string(c) + "] is not a number");
            const double v = jr[r][c].get<double>();
            if (v < 0.0 || v > 1.0) throw FormatError("probability table: " + at + "[" + std::to_string(c) + "] outside [0, 1]");
            row.push_back(v);
            total += v;
        }
        if (std::abs(total - 1.0) > 1e-6)
            throw FormatError("probability table: " + at + " sums to " + std::to_string(total));
        ps.rows.push_back(std::move(row));
    }
    return TableGuidance(std::move(ps), vocab, j["task_id"].get<std::string>());
}

TableGuidance load_prob_table(const std::string& path, const Vocabulary& vocab) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return prob_table_from_json(buf.str(), vocab);
}

}  // namespace gridcoder
