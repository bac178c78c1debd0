#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridcoder/dsl.hpp"
#include "gridcoder/grid.hpp"

namespace gridcoder {

/// Index into a Vocabulary: primitives first in registry order, then
/// <Identity>, <NewLevel>, <EOS>.
using TokenId = int;

using TokenSequence = std::vector<TokenId>;

inline constexpr int kDefaultMaxLength = 40;

inline constexpr std::string_view kIdentityName = "<Identity>";
inline constexpr std::string_view kNewLevelName = "<NewLevel>";
inline constexpr std::string_view kEosName = "<EOS>";
inline constexpr std::string_view kSosName = "<SOS>";

/// Decoder-prefix marker. Never part of a vocabulary or a stored program.
inline constexpr TokenId kSosToken = -1;

class Vocabulary {
public:
    static const Vocabulary& get(int dsl_version);

    const Registry& registry() const { return *registry_; }
    int dsl_version() const { return registry_->version(); }
    std::size_t size() const { return registry_->size() + 3; }

    TokenId identity() const { return static_cast<TokenId>(registry_->size()); }
    TokenId new_level() const { return identity() + 1; }
    TokenId eos() const { return identity() + 2; }
    bool is_primitive(TokenId t) const { return t >= 0 && t < identity(); }

    std::string name(TokenId t) const;
    std::optional<TokenId> find(std::string_view name) const;
    /// Throws VocabError for unknown names.
    TokenId id(std::string_view name) const;
    std::vector<std::string> names() const;

private:
    explicit Vocabulary(const Registry& registry) : registry_(&registry) {}
    const Registry* registry_;
};

TokenSequence tokens_from_names(const std::vector<std::string>& names, const Vocabulary& vocab);
std::vector<std::string> token_names(const TokenSequence& tokens, const Vocabulary& vocab);
std::string format_tokens(const TokenSequence& tokens, const Vocabulary& vocab);

/// JSON array of token-name strings.
std::string tokens_to_json(const TokenSequence& tokens, const Vocabulary& vocab);
TokenSequence tokens_from_json(std::string_view json, const Vocabulary& vocab);

/// Tokens up to and including the first <EOS>.
TokenSequence truncate_at_eos(const TokenSequence& tokens, const Vocabulary& vocab);

struct ProgramNode {
    TokenId op = 0;
    int first_child = 0;  // index into the previous level
    int child_count = 0;
    ValueKind kind = ValueKind::Grid;
    // Set on nodes that carry an unapplied primitive toward a FunctionRef slot.
    std::optional<PrimitiveId> function;

    bool operator==(const ProgramNode&) const = default;
};

struct ProgramTree {
    int dsl_version = 1;
    std::vector<std::vector<ProgramNode>> levels;
    bool uses_color_change = false;

    std::size_t node_count() const;
    bool operator==(const ProgramTree& other) const { return levels == other.levels; }
};

struct NodePos {
    int level = 0;
    int index = 0;
    bool operator==(const NodePos&) const = default;
};

/// Throws SyntaxError (empty level, arity mismatch, several final outputs) or
/// TypeError (kind mismatch, illegal level-0 node, bad lambda). Tokens after
/// the first <EOS> are ignored.
ProgramTree parse(const TokenSequence& tokens, const Vocabulary& vocab);

/// Inverse of parse; always ends with <EOS>.
TokenSequence encode(const ProgramTree& tree, const Vocabulary& vocab);

Grid evaluate(const ProgramTree& tree, const Grid& input, const EvalContext& ctx = {});

struct TraceEntry {
    NodePos pos;
    Value value;
};

/// Every node's value in execution order. Stops at the first failing node.
std::vector<TraceEntry> intermediate_outputs(const ProgramTree& tree, const Grid& input,
                                             const EvalContext& ctx = {});

/// Expression form of a program. A leaf <Identity> is the task input; a leaf
/// primitive applies to the task input unless `as_function` is set.
struct Expr {
    TokenId op = 0;
    std::vector<Expr> args;
    bool as_function = false;

    bool operator==(const Expr&) const = default;
};

Expr input_expr(const Vocabulary& vocab);
Expr leaf_expr(std::string_view name, const Vocabulary& vocab, bool as_function = false);
Expr call_expr(std::string_view name, std::vector<Expr> args, const Vocabulary& vocab);

/// Lays an expression out in levels, padding short branches with <Identity>.
ProgramTree expr_to_tree(const Expr& expr, const Vocabulary& vocab);
/// Drops the <Identity> padding above level 0.
Expr tree_to_expr(const ProgramTree& tree, const Vocabulary& vocab);
/// The sub-program computing one node.
Expr node_expr(const ProgramTree& tree, const Vocabulary& vocab, NodePos pos);
TokenSequence encode_expr(const Expr& expr, const Vocabulary& vocab);

/// Composition: `outer(inner(X))`. Every input-consuming leaf of `outer` is
/// rewritten to consume `inner` instead.
Expr graft(const Expr& outer, const Expr& inner, const Vocabulary& vocab);

struct Example {
    Grid input;
    Grid output;
};

struct Task {
    std::string id;
    std::vector<Example> support;
    std::vector<Example> query;
};

enum class CheckStatus { Solved, Failed, Error };

std::string_view status_name(CheckStatus s);

struct CheckResult {
    CheckStatus status = CheckStatus::Error;
    std::optional<ColorBinding> binding;
    std::string message;
};

/// Runs the program on every support pair. Never throws.
CheckResult check_program(const TokenSequence& tokens, const Task& task, const Vocabulary& vocab);
CheckResult check_tree(const ProgramTree& tree, const Task& task);

/// Outputs of the program on the given inputs, or nullopt if any fails.
std::optional<std::vector<Grid>> run_on(const ProgramTree& tree, const std::vector<Grid>& inputs,
                                        const EvalContext& ctx = {});

/// True iff the program, under `binding`, maps every query input to its output.
bool solves_query(const ProgramTree& tree, const Task& task, const std::optional<ColorBinding>& binding);

}  // namespace gridcoder
