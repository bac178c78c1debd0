#include "gridcoder/program.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "gridcoder/error.hpp"

namespace gridcoder {

// ---- vocabulary ----

const Vocabulary& Vocabulary::get(int dsl_version) {
    static const Vocabulary v1(Registry::get(1));
    static const Vocabulary v2(Registry::get(2));
    static const Vocabulary v3(Registry::get(3));
    switch (dsl_version) {
        case 1: return v1;
        case 2: return v2;
        case 3: return v3;
        default: throw InvalidConfig("DSL version must be 1, 2 or 3");
    }
}

std::string Vocabulary::name(TokenId t) const {
    if (is_primitive(t)) return registry_->spec(static_cast<PrimitiveId>(t)).name;
    if (t == identity()) return std::string(kIdentityName);
    if (t == new_level()) return std::string(kNewLevelName);
    if (t == eos()) return std::string(kEosName);
    if (t == kSosToken) return std::string(kSosName);
    throw VocabError("token id " + std::to_string(t) + " outside the vocabulary");
}

std::optional<TokenId> Vocabulary::find(std::string_view n) const {
    if (n == kIdentityName) return identity();
    if (n == kNewLevelName) return new_level();
    if (n == kEosName) return eos();
    if (auto id = registry_->find(n)) return static_cast<TokenId>(*id);
    return std::nullopt;
}

TokenId Vocabulary::id(std::string_view n) const {
    if (auto t = find(n)) return *t;
    throw VocabError("unknown token '" + std::string(n) + "'");
}

std::vector<std::string> Vocabulary::names() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t t = 0; t < size(); ++t) out.push_back(name(static_cast<TokenId>(t)));
    return out;
}

TokenSequence tokens_from_names(const std::vector<std::string>& names, const Vocabulary& vocab) {
    TokenSequence out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(vocab.id(n));
    return out;
}

std::vector<std::string> token_names(const TokenSequence& tokens, const Vocabulary& vocab) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (TokenId t : tokens) out.push_back(vocab.name(t));
    return out;
}

std::string format_tokens(const TokenSequence& tokens, const Vocabulary& vocab) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < tokens.size(); ++i) os << (i ? ", " : "") << vocab.name(tokens[i]);
    os << ']';
    return os.str();
}

std::string tokens_to_json(const TokenSequence& tokens, const Vocabulary& vocab) {
    return nlohmann::json(token_names(tokens, vocab)).dump();
}

TokenSequence tokens_from_json(std::string_view text, const Vocabulary& vocab) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("token sequence: ") + e.what());
    }
    if (!j.is_array()) throw FormatError("token sequence must be a JSON array");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw FormatError("token sequence[" + std::to_string(i) + "] is not a string");
        names.push_back(j[i].get<std::string>());
    }
    return tokens_from_names(names, vocab);
}

TokenSequence truncate_at_eos(const TokenSequence& tokens, const Vocabulary& vocab) {
    auto it = std::find(tokens.begin(), tokens.end(), vocab.eos());
    return it == tokens.end() ? tokens : TokenSequence(tokens.begin(), it + 1);
}

std::size_t ProgramTree::node_count() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.size();
    return n;
}

// ---- parse / encode ----

namespace {

std::string where(std::size_t level, std::size_t index) {
    return "level " + std::to_string(level) + " node " + std::to_string(index);
}

}  // namespace

ProgramTree parse(const TokenSequence& tokens, const Vocabulary& vocab) {
    const Registry& reg = vocab.registry();
    std::vector<std::vector<TokenId>> raw(1);
    for (TokenId t : tokens) {
        if (t == vocab.eos()) break;
        if (t == vocab.new_level()) {
            raw.emplace_back();
            continue;
        }
        if (t != vocab.identity() && !vocab.is_primitive(t))
            throw SyntaxError("token " + std::to_string(t) + " cannot appear in a program");
        raw.back().push_back(t);
    }
    for (std::size_t k = 0; k < raw.size(); ++k)
        if (raw[k].empty()) throw SyntaxError("level " + std::to_string(k) + " is empty");

    ProgramTree tree;
    tree.dsl_version = vocab.dsl_version();
    tree.levels.resize(raw.size());
    auto arity = [&](TokenId t) -> int {
        return t == vocab.identity() ? 1 : static_cast<int>(reg.spec(static_cast<PrimitiveId>(t)).arity());
    };

    // Structure: greedy left-to-right child assignment.
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const int available = k == 0 ? 0 : static_cast<int>(raw[k - 1].size());
        int cursor = 0;
        for (TokenId t : raw[k]) {
            ProgramNode n;
            n.op = t;
            if (k > 0) {
                n.first_child = cursor;
                n.child_count = arity(t);
                cursor += n.child_count;
                if (cursor > available)
                    throw SyntaxError("level " + std::to_string(k) + " needs more than the " +
                                      std::to_string(available) + " outputs of the level below");
            }
            tree.levels[k].push_back(n);
        }
        if (k > 0 && cursor != available)
            throw SyntaxError("level " + std::to_string(k) + " consumes " + std::to_string(cursor) + " of " +
                              std::to_string(available) + " outputs of the level below");
    }

    // Lambda slots, top-down: mark the node feeding each FunctionRef parameter
    // and follow <Identity> chains down to the primitive leaf.
    std::vector<std::vector<char>> is_fn(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) is_fn[k].assign(raw[k].size(), 0);
    for (std::size_t k = raw.size(); k-- > 1;) {
        for (std::size_t i = 0; i < tree.levels[k].size(); ++i) {
            const ProgramNode& n = tree.levels[k][i];
            if (n.op == vocab.identity()) {
                if (is_fn[k][i]) is_fn[k - 1][static_cast<std::size_t>(n.first_child)] = 1;
                continue;
            }
            if (is_fn[k][i]) throw TypeError(where(k, i) + ": a lambda must be a level-0 primitive");
            const auto& spec = reg.spec(static_cast<PrimitiveId>(n.op));
            for (std::size_t p = 0; p < spec.arity(); ++p)
                if (spec.param_kinds[p] == ValueKind::FunctionRef)
                    is_fn[k - 1][static_cast<std::size_t>(n.first_child) + p] = 1;
        }
    }

    const std::optional<PrimitiveId> color_change = reg.find("color_change");
    for (std::size_t k = 0; k < raw.size(); ++k) {
        for (std::size_t i = 0; i < tree.levels[k].size(); ++i) {
            ProgramNode& n = tree.levels[k][i];
            if (color_change && n.op == *color_change) tree.uses_color_change = true;
            if (k == 0) {
                if (n.op == vocab.identity()) {
                    if (is_fn[k][i]) throw TypeError(where(k, i) + ": the task input is not a function");
                    n.kind = ValueKind::Grid;
                    continue;
                }
                const auto id = static_cast<PrimitiveId>(n.op);
                const auto& spec = reg.spec(id);
                if (!spec.unary_on_grid())
                    throw TypeError(where(k, i) + ": " + spec.name + " cannot start a program from the task input");
                if (is_fn[k][i]) {
                    n.kind = ValueKind::FunctionRef;
                    n.function = id;
                } else {
                    const ValueKind in = ValueKind::Grid;
                    n.kind = *reg.result_kind(id, std::span<const ValueKind>(&in, 1));
                }
                continue;
            }
            const auto& below = tree.levels[k - 1];
            if (n.op == vocab.identity()) {
                const ProgramNode& c = below[static_cast<std::size_t>(n.first_child)];
                n.kind = c.kind;
                n.function = c.function;
                continue;
            }
            const auto id = static_cast<PrimitiveId>(n.op);
            std::vector<ValueKind> kinds;
            std::optional<ValueKind> lambda_return;
            for (int c = 0; c < n.child_count; ++c) {
                const ProgramNode& child = below[static_cast<std::size_t>(n.first_child + c)];
                kinds.push_back(child.kind);
                if (child.function) lambda_return = reg.spec(*child.function).return_kind;
            }
            auto kind = reg.result_kind(id, kinds, lambda_return);
            if (!kind) {
                std::string args;
                for (auto kk : kinds) args += (args.empty() ? "" : ", ") + std::string(kind_name(kk));
                throw TypeError(where(k, i) + ": " + reg.spec(id).name + " does not accept (" + args + ")");
            }
            n.kind = *kind;
        }
    }
    if (tree.levels.back().size() != 1)
        throw SyntaxError("the final level must hold exactly one node, found " +
                          std::to_string(tree.levels.back().size()));
    if (tree.levels.back()[0].kind != ValueKind::Grid)
        throw TypeError("program returns " + std::string(kind_name(tree.levels.back()[0].kind)) + ", not Grid");
    return tree;
}

TokenSequence encode(const ProgramTree& tree, const Vocabulary& vocab) {
    if (tree.levels.empty()) throw SyntaxError("cannot encode an empty tree");
    TokenSequence out;
    for (std::size_t k = 0; k < tree.levels.size(); ++k) {
        const auto& level = tree.levels[k];
        if (level.empty()) throw SyntaxError("cannot encode an empty level");
        if (k > 0) {
            out.push_back(vocab.new_level());
            int expected = 0;
            for (const auto& n : level) {
                if (n.first_child != expected) throw SyntaxError("children are not assigned left to right");
                expected += n.child_count;
            }
            if (expected != static_cast<int>(tree.levels[k - 1].size()))
                throw SyntaxError("arity sum does not match the level below");
        }
        for (const auto& n : level) out.push_back(n.op);
    }
    if (tree.levels.back().size() != 1) throw SyntaxError("the final level must hold exactly one node");
    out.push_back(vocab.eos());
    return out;
}

// ---- evaluation ----

namespace {

template <typename OnValue>
Grid run_tree(const ProgramTree& tree, const Grid& input, const EvalContext& ctx, OnValue on_value) {
    const Vocabulary& vocab = Vocabulary::get(tree.dsl_version);
    const Registry& reg = vocab.registry();
    std::vector<Value> below;
    std::vector<Value> current;
    for (std::size_t k = 0; k < tree.levels.size(); ++k) {
        current.clear();
        current.reserve(tree.levels[k].size());
        for (std::size_t i = 0; i < tree.levels[k].size(); ++i) {
            const ProgramNode& n = tree.levels[k][i];
            try {
                if (k == 0) {
                    if (n.op == vocab.identity())
                        current.emplace_back(input);
                    else if (n.function)
                        current.emplace_back(FunctionRef{*n.function});
                    else {
                        const Value arg = input;
                        current.push_back(reg.apply(static_cast<PrimitiveId>(n.op), std::span<const Value>(&arg, 1), ctx));
                    }
                } else if (n.op == vocab.identity()) {
                    current.push_back(below[static_cast<std::size_t>(n.first_child)]);
                } else {
                    current.push_back(reg.apply(
                        static_cast<PrimitiveId>(n.op),
                        std::span<const Value>(below.data() + n.first_child, static_cast<std::size_t>(n.child_count)),
                        ctx));
                }
            } catch (const EvalError& e) {
                throw EvalError(where(k, i) + " (" + vocab.name(n.op) + "): " + e.what());
            }
            on_value(NodePos{static_cast<int>(k), static_cast<int>(i)}, current.back());
        }
        std::swap(below, current);
    }
    return std::get<Grid>(below.front());
}

}  // namespace

Grid evaluate(const ProgramTree& tree, const Grid& input, const EvalContext& ctx) {
    return run_tree(tree, input, ctx, [](NodePos, const Value&) {});
}

std::vector<TraceEntry> intermediate_outputs(const ProgramTree& tree, const Grid& input, const EvalContext& ctx) {
    std::vector<TraceEntry> trace;
    try {
        run_tree(tree, input, ctx, [&](NodePos p, const Value& v) { trace.push_back({p, v}); });
    } catch (const Error&) {
    }
    return trace;
}

// ---- expressions ----

Expr input_expr(const Vocabulary& vocab) { return Expr{vocab.identity(), {}, false}; }

Expr leaf_expr(std::string_view name, const Vocabulary& vocab, bool as_function) {
    return Expr{vocab.id(name), {}, as_function};
}

Expr call_expr(std::string_view name, std::vector<Expr> args, const Vocabulary& vocab) {
    return Expr{vocab.id(name), std::move(args), false};
}

namespace {

bool is_input(const Expr& e, const Vocabulary& vocab) { return e.op == vocab.identity() && e.args.empty(); }

// A unary call on the bare input is the same program as the leaf.
Expr canonical(const Expr& e, const Vocabulary& vocab) {
    if (e.args.size() == 1 && is_input(e.args[0], vocab) && vocab.is_primitive(e.op) &&
        vocab.registry().spec(static_cast<PrimitiveId>(e.op)).unary_on_grid())
        return Expr{e.op, {}, false};
    if (e.op == vocab.identity() && e.args.size() == 1) return canonical(e.args[0], vocab);
    Expr out{e.op, {}, e.as_function};
    for (const auto& a : e.args) out.args.push_back(canonical(a, vocab));
    return out;
}

int height(const Expr& e) {
    int h = 0;
    for (const auto& a : e.args) h = std::max(h, height(a) + 1);
    return h;
}

void emit(const Expr& e, int level, const Vocabulary& vocab, std::vector<std::vector<TokenId>>& levels) {
    if (height(e) < level) {
        emit(e, level - 1, vocab, levels);
        levels[static_cast<std::size_t>(level)].push_back(vocab.identity());
        return;
    }
    for (const auto& a : e.args) emit(a, level - 1, vocab, levels);
    levels[static_cast<std::size_t>(level)].push_back(e.op);
}

}  // namespace

TokenSequence encode_expr(const Expr& expr, const Vocabulary& vocab) {
    const Expr e = canonical(expr, vocab);
    const int h = height(e);
    std::vector<std::vector<TokenId>> levels(static_cast<std::size_t>(h) + 1);
    emit(e, h, vocab, levels);
    TokenSequence out;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (k > 0) out.push_back(vocab.new_level());
        out.insert(out.end(), levels[k].begin(), levels[k].end());
    }
    out.push_back(vocab.eos());
    return out;
}

ProgramTree expr_to_tree(const Expr& expr, const Vocabulary& vocab) { return parse(encode_expr(expr, vocab), vocab); }

Expr node_expr(const ProgramTree& tree, const Vocabulary& vocab, NodePos pos) {
    auto build = [&](auto&& self, std::size_t k, std::size_t i) -> Expr {
        const ProgramNode& n = tree.levels[k][i];
        if (k == 0) return Expr{n.op, {}, n.function.has_value()};
        if (n.op == vocab.identity()) return self(self, k - 1, static_cast<std::size_t>(n.first_child));
        Expr e{n.op, {}, false};
        for (int c = 0; c < n.child_count; ++c) e.args.push_back(self(self, k - 1, static_cast<std::size_t>(n.first_child + c)));
        return e;
    };
    return build(build, static_cast<std::size_t>(pos.level), static_cast<std::size_t>(pos.index));
}

Expr tree_to_expr(const ProgramTree& tree, const Vocabulary& vocab) {
    return node_expr(tree, vocab, NodePos{static_cast<int>(tree.levels.size()) - 1, 0});
}

Expr graft(const Expr& outer, const Expr& inner, const Vocabulary& vocab) {
    if (outer.as_function) return outer;
    if (outer.args.empty()) {
        if (outer.op == vocab.identity()) return inner;
        return canonical(Expr{outer.op, {inner}, false}, vocab);
    }
    Expr out{outer.op, {}, false};
    for (const auto& a : outer.args) out.args.push_back(graft(a, inner, vocab));
    return out;
}

// ---- checking ----

std::string_view status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Solved: return "solved";
        case CheckStatus::Failed: return "failed";
        case CheckStatus::Error: return "error";
    }
    return "?";
}

namespace {

CheckResult check_pairs(const ProgramTree& tree, const std::vector<Example>& pairs, const EvalContext& ctx) {
    try {
        for (const auto& ex : pairs)
            if (!(evaluate(tree, ex.input, ctx) == ex.output)) return {CheckStatus::Failed, ctx.binding, {}};
    } catch (const std::exception& e) {
        return {CheckStatus::Error, ctx.binding, e.what()};
    }
    return {CheckStatus::Solved, ctx.binding, {}};
}

}  // namespace

CheckResult check_tree(const ProgramTree& tree, const Task& task) {
    if (!tree.uses_color_change) return check_pairs(tree, task.support, {});
    CheckResult last{CheckStatus::Error, std::nullopt, "no color binding evaluated"};
    bool any_ran = false;
    for (const auto& b : resolve_color_change()) {
        CheckResult r = check_pairs(tree, task.support, EvalContext{b});
        if (r.status == CheckStatus::Solved) return r;
        if (r.status == CheckStatus::Failed) any_ran = true;
        last = r;
    }
    if (any_ran) return {CheckStatus::Failed, std::nullopt, {}};
    return last;
}

CheckResult check_program(const TokenSequence& tokens, const Task& task, const Vocabulary& vocab) {
    ProgramTree tree;
    try {
        tree = parse(tokens, vocab);
    } catch (const std::exception& e) {
        return {CheckStatus::Error, std::nullopt, e.what()};
    }
    return check_tree(tree, task);
}

std::optional<std::vector<Grid>> run_on(const ProgramTree& tree, const std::vector<Grid>& inputs,
                                        const EvalContext& ctx) {
    std::vector<Grid> out;
    out.reserve(inputs.size());
    try {
        for (const auto& g : inputs) out.push_back(evaluate(tree, g, ctx));
    } catch (const Error&) {
        return std::nullopt;
    }
    return out;
}

bool solves_query(const ProgramTree& tree, const Task& task, const std::optional<ColorBinding>& binding) {
    return check_pairs(tree, task.query, EvalContext{binding}).status == CheckStatus::Solved;
}

}  // namespace gridcoder
