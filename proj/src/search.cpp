#include "gridcoder/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "gridcoder/error.hpp"
#include "gridcoder/hash.hpp"

namespace gridcoder {

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Found: return "found";
        case Outcome::Timeout: return "timeout";
        case Outcome::Exhausted: return "exhausted";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
public:
    explicit Stopwatch(double limit_s) : start_(Clock::now()), limit_s_(limit_s) {}
    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
    bool expired() const { return elapsed() > limit_s_; }
    double remaining() const { return std::max(0.0, limit_s_ - elapsed()); }

private:
    Clock::time_point start_;
    double limit_s_;
};

std::vector<std::size_t> kept_classes(const std::vector<double>& row, double tau) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] > tau) out.push_back(c);
    if (out.empty() && !row.empty()) out.push_back(argmax(row));
    return out;
}

std::vector<Grid> support_inputs(const Task& task) {
    std::vector<Grid> out;
    for (const auto& ex : task.support) out.push_back(ex.input);
    return out;
}

std::uint64_t grids_hash(const std::vector<Grid>& grids) {
    Fnv1a h;
    for (const auto& g : grids) h.add(g.content_hash());
    return h.value();
}

bool same_grids(const std::vector<Grid>& a, const std::vector<Grid>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

// Grid-valued node outputs of one program across all support inputs.
void record_intermediates(const ProgramTree& tree, const Vocabulary& vocab, const Task& task, double joint_prob,
                          std::size_t rank, std::vector<Intermediate>& out) {
    if (tree.uses_color_change) return;
    std::map<std::pair<int, int>, std::vector<Grid>> by_node;
    for (const auto& ex : task.support) {
        for (auto& entry : intermediate_outputs(tree, ex.input)) {
            if (const Grid* g = std::get_if<Grid>(&entry.value))
                by_node[{entry.pos.level, entry.pos.index}].push_back(*g);
        }
    }
    for (auto& [pos, grids] : by_node) {
        if (grids.size() != task.support.size()) continue;
        const NodePos np{pos.first, pos.second};
        const ProgramNode& n = tree.levels[static_cast<std::size_t>(np.level)][static_cast<std::size_t>(np.index)];
        if (n.op == vocab.identity()) continue;  // duplicates its child
        out.push_back({node_expr(tree, vocab, np), std::move(grids), joint_prob, rank});
    }
}

SearchResult finish(SearchResult r, const Stopwatch& sw) {
    r.wall_time_s = sw.elapsed();
    return r;
}

}  // namespace

double support_similarity(const std::vector<Grid>& outputs, const Task& task) {
    if (outputs.size() != task.support.size() || outputs.empty()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) s += pixelwise_similarity(outputs[i], task.support[i].output);
    return s / static_cast<double>(outputs.size());
}

// ---- enumeration ----

double count_candidates(const ProbSpace& ps, double tau) {
    double tail = 1.0;  // sequences continuing past the last row terminate there
    for (std::size_t p = ps.rows.size(); p-- > 0;) {
        const auto kept = kept_classes(ps.rows[p], tau);
        double n = 0.0;
        for (std::size_t c : kept) n += static_cast<TokenId>(c) == ps.eos || p + 1 == ps.rows.size() ? 1.0 : tail;
        tail = n;
    }
    return ps.rows.empty() ? 0.0 : tail;
}

Enumeration enumerate_candidates(const ProbSpace& ps, double tau, std::size_t cap, const Vocabulary* vocab) {
    if (cap < 1) throw InvalidConfig("enumeration cap must be at least 1");
    Enumeration out;
    if (ps.rows.empty()) {
        out.tau_used = tau;
        return out;
    }
    while (count_candidates(ps, tau) > static_cast<double>(cap)) tau = tau > 0.0 ? tau * kTauEscalation : 1e-9;
    out.tau_used = tau;

    std::vector<std::vector<std::size_t>> kept;
    for (const auto& row : ps.rows) kept.push_back(kept_classes(row, tau));
    TokenSequence prefix;
    auto walk = [&](auto&& self, std::size_t pos, double prob) -> void {
        for (std::size_t c : kept[pos]) {
            const double p = prob * ps.rows[pos][c];
            prefix.push_back(static_cast<TokenId>(c));
            if (static_cast<TokenId>(c) == ps.eos || pos + 1 == ps.rows.size())
                out.candidates.push_back({prefix, p, std::nullopt});
            else
                self(self, pos + 1, p);
            prefix.pop_back();
        }
    };
    walk(walk, 0, 1.0);
    std::sort(out.candidates.begin(), out.candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.joint_prob != b.joint_prob) return a.joint_prob > b.joint_prob;
        return a.tokens < b.tokens;
    });
    if (vocab) {
        for (auto& c : out.candidates) {
            try {
                parse(c.tokens, *vocab);
                c.valid = true;
            } catch (const Error&) {
                c.valid = false;
            }
        }
    }
    return out;
}

// ---- GridCoder ----

namespace {

SearchResult evaluate_ranked(const Task& task, const Vocabulary& vocab, const Enumeration& en,
                             const SearchConfig& config, const Stopwatch& sw, SearchResult r) {
    r.tau_used = en.tau_used;
    for (std::size_t i = 0; i < en.candidates.size(); ++i) {
        if (sw.expired()) {
            r.outcome = Outcome::Timeout;
            return r;
        }
        const Candidate& cand = en.candidates[i];
        ProgramTree tree;
        try {
            tree = parse(cand.tokens, vocab);
        } catch (const Error&) {
            continue;
        }
        ++r.programs_evaluated;
        const CheckResult check = check_tree(tree, task);
        if (config.record_traces && r.programs_evaluated <= config.trace_limit)
            record_intermediates(tree, vocab, task, cand.joint_prob, r.programs_evaluated, r.traces);
        if (check.status == CheckStatus::Solved) {
            r.outcome = Outcome::Found;
            r.program = truncate_at_eos(cand.tokens, vocab);
            r.binding = check.binding;
            r.joint_prob = cand.joint_prob;
            r.rank = r.programs_evaluated;
            return r;
        }
    }
    r.outcome = Outcome::Exhausted;
    return r;
}

}  // namespace

SearchResult gridcoder_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config) {
    Stopwatch sw(config.timeout_s);
    const ProbSpace ps =
        bootstrap_prob_space(source, task, config.bootstrap_k, config.tau, config.max_len, config.seed);
    SearchResult r;
    r.model_queries = 0;
    const Enumeration en = enumerate_candidates(ps, config.tau, config.max_programs);
    return finish(evaluate_ranked(task, source.vocab(), en, config, sw, std::move(r)), sw);
}

// ---- conditional best-first ----

SearchResult gridcoder_cond_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config) {
    if (!source.conditions_on_prefix())
        throw ConfigError("gridcoder_cond needs a prefix-conditioned guidance source, not " + source.describe());
    Stopwatch sw(config.timeout_s);
    const Vocabulary& vocab = source.vocab();
    struct Entry {
        double prob;
        TokenSequence prefix;
    };
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.prob != b.prob) return a.prob < b.prob;
        return a.prefix > b.prefix;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> frontier(worse);
    frontier.push({1.0, {}});
    SearchResult r;
    r.tau_used = config.tau;
    std::size_t leaves = 0;
    while (!frontier.empty()) {
        if (sw.expired()) {
            r.outcome = Outcome::Timeout;
            return finish(std::move(r), sw);
        }
        Entry e = frontier.top();
        frontier.pop();
        const bool complete = !e.prefix.empty() && e.prefix.back() == vocab.eos();
        if (complete || static_cast<int>(e.prefix.size()) >= config.max_len) {
            if (++leaves > config.max_programs) break;
            ProgramTree tree;
            try {
                tree = parse(e.prefix, vocab);
            } catch (const Error&) {
                continue;
            }
            ++r.programs_evaluated;
            const CheckResult check = check_tree(tree, task);
            if (check.status == CheckStatus::Solved) {
                r.outcome = Outcome::Found;
                r.program = e.prefix;
                r.binding = check.binding;
                r.joint_prob = e.prob;
                r.rank = r.programs_evaluated;
                return finish(std::move(r), sw);
            }
            continue;
        }
        ++r.nodes_expanded;
        ++r.model_queries;
        const std::vector<double> p = source.predict(task, 0, e.prefix);
        for (std::size_t c : kept_classes(p, config.tau)) {
            TokenSequence next = e.prefix;
            next.push_back(static_cast<TokenId>(c));
            frontier.push({e.prob * p[c], std::move(next)});
        }
    }
    r.outcome = Outcome::Exhausted;
    return finish(std::move(r), sw);
}

// ---- greedy decode ----

SearchResult greedy_decode_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config) {
    Stopwatch sw(config.timeout_s);
    const Vocabulary& vocab = source.vocab();
    SearchResult r;
    r.tau_used = config.tau;
    TokenSequence seq;
    double prob = 1.0;
    while (static_cast<int>(seq.size()) < config.max_len) {
        const auto p = source.predict(task, 0, seq);
        ++r.model_queries;
        const std::size_t best = argmax(p);
        prob *= p[best];
        seq.push_back(static_cast<TokenId>(best));
        if (static_cast<TokenId>(best) == vocab.eos()) break;
    }
    r.programs_evaluated = 1;
    const CheckResult check = check_program(seq, task, vocab);
    if (check.status == CheckStatus::Solved) {
        r.outcome = Outcome::Found;
        r.program = seq;
        r.binding = check.binding;
        r.joint_prob = prob;
        r.rank = 1;
    } else {
        r.outcome = Outcome::Exhausted;
    }
    return finish(std::move(r), sw);
}

// ---- MCTS ----

namespace {

struct MctsNode {
    TokenId token = -1;
    double prior = 0.0;
    int visits = 0;
    double value_sum = 0.0;
    bool expanded = false;
    bool terminal = false;
    std::vector<std::size_t> children;
};

class Mcts {
public:
    Mcts(const Task& task, const GuidanceSource& source, const SearchConfig& config, const Stopwatch& sw,
         SearchResult& r)
        : task_(task), source_(source), vocab_(source.vocab()), config_(config), sw_(sw), r_(r) {
        nodes_.push_back({});
    }

    void run() {
        while (r_.nodes_expanded < config_.max_nodes) {
            if (sw_.expired()) {
                r_.outcome = Outcome::Timeout;
                return;
            }
            if (!simulate()) return;
            if (r_.outcome == Outcome::Found) return;
        }
        r_.outcome = Outcome::Exhausted;
    }

private:
    // One selection-expansion-backup pass. False when the tree is exhausted.
    bool simulate() {
        std::vector<std::size_t> path{0};
        TokenSequence prefix;
        while (nodes_[path.back()].expanded && !nodes_[path.back()].terminal) {
            const std::size_t next = select(path.back());
            if (next == kNone) {
                mark_dead(path);
                return nodes_[0].visits < kDeadVisits;
            }
            path.push_back(next);
            prefix.push_back(nodes_[next].token);
        }
        MctsNode& leaf = nodes_[path.back()];
        double value = 0.0;
        if (leaf.terminal) {
            value = score(prefix);
        } else {
            expand(path.back(), prefix);
            ++r_.nodes_expanded;
            value = nodes_[path.back()].terminal ? score(prefix) : rollout(prefix);
        }
        for (std::size_t id : path) {
            nodes_[id].visits += 1;
            nodes_[id].value_sum += value;
        }
        return true;
    }

    std::size_t select(std::size_t id) const {
        const MctsNode& n = nodes_[id];
        std::size_t best = kNone;
        double best_score = -1e300;
        const double sqrt_n = std::sqrt(static_cast<double>(std::max(n.visits, 1)));
        for (std::size_t c : n.children) {
            const MctsNode& ch = nodes_[c];
            if (ch.visits >= kDeadVisits) continue;
            const double q = ch.visits ? ch.value_sum / ch.visits : 0.0;
            const double u = config_.puct_c * ch.prior * sqrt_n / (1.0 + ch.visits);
            if (q + u > best_score) {
                best_score = q + u;
                best = c;
            }
        }
        return best;
    }

    void mark_dead(const std::vector<std::size_t>& path) { nodes_[path.back()].visits = kDeadVisits; }

    void expand(std::size_t id, const TokenSequence& prefix) {
        nodes_[id].expanded = true;
        if (!prefix.empty() && prefix.back() == vocab_.eos()) {
            nodes_[id].terminal = true;
            return;
        }
        if (static_cast<int>(prefix.size()) >= config_.max_len) {
            nodes_[id].terminal = true;
            return;
        }
        ++r_.model_queries;
        const auto p = source_.predict(task_, 0, prefix);
        const auto kept = kept_classes(p, config_.tau);
        double total = 0.0;
        for (std::size_t c : kept) total += p[c];
        for (std::size_t c : kept) {
            MctsNode child;
            child.token = static_cast<TokenId>(c);
            child.prior = total > 0.0 ? p[c] / total : 1.0 / static_cast<double>(kept.size());
            child.terminal = child.token == vocab_.eos();
            child.expanded = child.terminal;
            nodes_.push_back(child);
            nodes_[id].children.push_back(nodes_.size() - 1);
        }
    }

    // Greedy completion of the prefix, scored by similarity.
    double rollout(TokenSequence seq) {
        while (static_cast<int>(seq.size()) < config_.max_len && (seq.empty() || seq.back() != vocab_.eos())) {
            ++r_.model_queries;
            seq.push_back(static_cast<TokenId>(argmax(source_.predict(task_, 0, seq))));
        }
        return score(seq);
    }

    double score(const TokenSequence& seq) {
        const TokenSequence key = truncate_at_eos(seq, vocab_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        double value = 0.0;
        try {
            const ProgramTree tree = parse(key, vocab_);
            ++r_.programs_evaluated;
            std::optional<std::vector<Grid>> outs;
            if (!tree.uses_color_change) outs = run_on(tree, support_inputs(task_));
            value = outs ? support_similarity(*outs, task_) : 0.0;
            if (tree.uses_color_change || value >= 1.0) {
                const CheckResult check = check_tree(tree, task_);
                if (check.status == CheckStatus::Solved) {
                    value = 1.0;
                    if (r_.outcome != Outcome::Found) {
                        r_.outcome = Outcome::Found;
                        r_.program = key;
                        r_.binding = check.binding;
                        r_.rank = r_.programs_evaluated;
                        r_.joint_prob = 0.0;
                    }
                }
            }
        } catch (const Error&) {
            value = 0.0;
        }
        cache_.emplace(key, value);
        return value;
    }

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    static constexpr int kDeadVisits = 1 << 30;

    const Task& task_;
    const GuidanceSource& source_;
    const Vocabulary& vocab_;
    const SearchConfig& config_;
    const Stopwatch& sw_;
    SearchResult& r_;
    std::vector<MctsNode> nodes_;
    std::map<TokenSequence, double> cache_;
};

}  // namespace

SearchResult mcts_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config) {
    Stopwatch sw(config.timeout_s);
    SearchResult r;
    r.tau_used = config.tau;
    Mcts(task, source, config, sw, r).run();
    return finish(std::move(r), sw);
}

// ---- similarity-guided greedy ----

double grid_space_similarity(const Grid& a, const Grid& b) {
    if (a.same_shape(b)) return 0.5 + 0.5 * pixelwise_similarity(a, b);
    const double dims = static_cast<double>(std::min(a.width(), b.width()) * std::min(a.height(), b.height())) /
                        static_cast<double>(std::max(a.width(), b.width()) * std::max(a.height(), b.height()));
    const auto ha = a.histogram(), hb = b.histogram();
    double overlap = 0.0;
    for (int c = 0; c < kNumColors; ++c)
        overlap += std::min(static_cast<double>(ha[c]) / static_cast<double>(a.area()),
                            static_cast<double>(hb[c]) / static_cast<double>(b.area()));
    return 0.5 * dims * overlap;
}

namespace {

struct LgsState {
    std::vector<Grid> grids;
    std::vector<PrimitiveId> chain;
    double similarity = 0.0;
    int shape_distance = 0;
};

double lgs_similarity(const std::vector<Grid>& grids, const Task& task) {
    double s = 0.0;
    for (std::size_t i = 0; i < grids.size(); ++i) s += grid_space_similarity(grids[i], task.support[i].output);
    return s / static_cast<double>(grids.size());
}

int shape_distance(const std::vector<Grid>& grids, const Task& task) {
    int d = 0;
    for (std::size_t i = 0; i < grids.size(); ++i)
        d += std::abs(grids[i].width() - task.support[i].output.width()) +
             std::abs(grids[i].height() - task.support[i].output.height());
    return d;
}

bool reaches_targets(const std::vector<Grid>& grids, const Task& task) {
    for (std::size_t i = 0; i < grids.size(); ++i)
        if (!(grids[i] == task.support[i].output)) return false;
    return true;
}

TokenSequence chain_tokens(const std::vector<PrimitiveId>& chain, const Vocabulary& vocab) {
    TokenSequence out;
    if (chain.empty()) out.push_back(vocab.identity());
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out.push_back(vocab.new_level());
        out.push_back(static_cast<TokenId>(chain[i]));
    }
    out.push_back(vocab.eos());
    return out;
}

}  // namespace

SearchResult lgs_greedy_solve(const Task& task, const Vocabulary& vocab, const SearchConfig& config) {
    Stopwatch sw(config.timeout_s);
    SearchResult r;
    const Registry& reg = vocab.registry();
    const std::vector<PrimitiveId> moves = reg.unary_grid_transforms();

    const double step_cost = config.lgs_step_cost;
    auto better = [step_cost](const LgsState& a, const LgsState& b) {
        const double pa = a.similarity - step_cost * static_cast<double>(a.chain.size());
        const double pb = b.similarity - step_cost * static_cast<double>(b.chain.size());
        if (pa != pb) return pa > pb;
        if (a.shape_distance != b.shape_distance) return a.shape_distance < b.shape_distance;
        if (a.chain.size() != b.chain.size()) return a.chain.size() < b.chain.size();
        return a.chain < b.chain;
    };
    auto finish_found = [&](const LgsState& s) {
        r.outcome = Outcome::Found;
        r.program = chain_tokens(s.chain, vocab);
        r.rank = r.programs_evaluated;
        r.joint_prob = 0.0;
    };

    LgsState root;
    root.grids = support_inputs(task);
    root.similarity = lgs_similarity(root.grids, task);
    root.shape_distance = shape_distance(root.grids, task);
    ++r.programs_evaluated;
    if (reaches_targets(root.grids, task)) {
        finish_found(root);
        return finish(std::move(r), sw);
    }
    // Ordered open list; the best state is at begin().
    std::vector<LgsState> open{root};
    std::unordered_set<std::uint64_t> seen{grids_hash(root.grids)};
    while (!open.empty()) {
        if (sw.expired()) {
            r.outcome = Outcome::Timeout;
            return finish(std::move(r), sw);
        }
        if (r.nodes_expanded >= config.max_nodes) break;
        LgsState cur = std::move(open.front());
        open.erase(open.begin());
        if (static_cast<int>(cur.chain.size()) >= config.lgs_max_depth) continue;
        ++r.nodes_expanded;
        for (PrimitiveId m : moves) {
            LgsState next;
            next.grids.reserve(cur.grids.size());
            bool ok = true;
            for (const auto& g : cur.grids) {
                try {
                    Value arg = g;
                    Value out = reg.apply(m, std::span<const Value>(&arg, 1));
                    const Grid& og = std::get<Grid>(out);
                    if (og.width() > kTaskGridLimit || og.height() > kTaskGridLimit) {
                        ok = false;
                        break;
                    }
                    next.grids.push_back(og);
                } catch (const Error&) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            if (!seen.insert(grids_hash(next.grids)).second) continue;
            ++r.programs_evaluated;
            next.chain = cur.chain;
            next.chain.push_back(m);
            if (reaches_targets(next.grids, task)) {
                finish_found(next);
                return finish(std::move(r), sw);
            }
            next.similarity = lgs_similarity(next.grids, task);
            next.shape_distance = shape_distance(next.grids, task);
            open.insert(std::upper_bound(open.begin(), open.end(), next, better), std::move(next));
        }
        if (open.size() > config.lgs_beam) open.resize(config.lgs_beam);
    }
    r.outcome = Outcome::Exhausted;
    return finish(std::move(r), sw);
}

// ---- execution-guided re-launch ----

namespace {

SearchResult execution_guided(const Task& task, const GuidanceSource& source, SearchConfig config, int stages,
                              const Stopwatch& sw) {
    const Vocabulary& vocab = source.vocab();
    config.timeout_s = sw.remaining();
    config.record_traces = stages > 1;
    SearchResult first = gridcoder_solve(task, source, config);
    if (first.found() || stages <= 1) {
        first.traces.clear();
        return first;
    }

    // Distinct intermediate grid sets, best producing program first.
    const std::vector<Grid> inputs = support_inputs(task);
    std::vector<std::pair<double, Intermediate*>> ranked;
    std::unordered_set<std::uint64_t> seen;
    std::vector<Intermediate> traces = std::move(first.traces);
    for (auto& t : traces) {
        if (same_grids(t.grids, inputs)) continue;
        if (!seen.insert(grids_hash(t.grids)).second) continue;
        ranked.push_back({support_similarity(t.grids, task), &t});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second->joint_prob != b.second->joint_prob) return a.second->joint_prob > b.second->joint_prob;
        return a.first > b.first;
    });
    if (ranked.size() > config.fan_out) ranked.resize(config.fan_out);

    SearchResult r;
    r.programs_evaluated = first.programs_evaluated;
    r.model_queries = first.model_queries;
    r.tau_used = first.tau_used;
    r.outcome = first.outcome;
    for (const auto& [sim, inter] : ranked) {
        if (sw.expired()) {
            r.outcome = Outcome::Timeout;
            return r;
        }
        Task derived;
        derived.id = task.id;
        for (std::size_t i = 0; i < task.support.size(); ++i)
            derived.support.push_back({inter->grids[i], task.support[i].output});
        SearchResult inner = execution_guided(derived, source, config, stages - 1, sw);
        r.programs_evaluated += inner.programs_evaluated;
        r.model_queries += inner.model_queries;
        if (!inner.found()) continue;
        try {
            const Expr composed = graft(tree_to_expr(parse(inner.program, vocab), vocab), inter->producer, vocab);
            const TokenSequence tokens = encode_expr(composed, vocab);
            if (static_cast<int>(tokens.size()) > config.max_len) continue;
            const CheckResult check = check_program(tokens, task, vocab);
            if (check.status != CheckStatus::Solved) continue;
            r.outcome = Outcome::Found;
            r.program = tokens;
            r.binding = check.binding;
            r.joint_prob = inter->joint_prob * inner.joint_prob;
            r.rank = r.programs_evaluated;
            return r;
        } catch (const Error&) {
            continue;
        }
    }
    if (r.outcome != Outcome::Timeout) r.outcome = Outcome::Exhausted;
    return r;
}

}  // namespace

SearchResult execution_guided_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config) {
    if (config.stages < 1) throw InvalidConfig("execution_guided needs stages >= 1");
    Stopwatch sw(config.timeout_s);
    return finish(execution_guided(task, source, config, config.stages, sw), sw);
}

// ---- dispatch ----

const std::vector<std::string>& engine_names() {
    static const std::vector<std::string> names = {"gridcoder", "gridcoder_cond", "mcts",
                                                   "lgs_greedy", "greedy_decode", "execution_guided"};
    return names;
}

SearchResult run_engine(std::string_view engine, const Task& task, const GuidanceSource& source,
                        const SearchConfig& config) {
    if (task.support.empty()) throw InvalidConfig("task '" + task.id + "' has no support pairs");
    if (engine == "gridcoder") return gridcoder_solve(task, source, config);
    if (engine == "gridcoder_cond") return gridcoder_cond_solve(task, source, config);
    if (engine == "greedy_decode") return greedy_decode_solve(task, source, config);
    if (engine == "mcts") return mcts_solve(task, source, config);
    if (engine == "lgs_greedy") return lgs_greedy_solve(task, source.vocab(), config);
    if (engine == "execution_guided") return execution_guided_solve(task, source, config);
    throw ConfigError("unknown engine '" + std::string(engine) + "'");
}

}  // namespace gridcoder
