#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gridcoder/program.hpp"

namespace gridcoder {

inline constexpr double kDefaultTau = 0.02;
inline constexpr int kDefaultBootstrapK = 6;

/// Per-position next-token distributions. Column `eos` terminates a program;
/// eos < 0 means the space has no terminal class.
struct ProbSpace {
    std::vector<std::vector<double>> rows;
    TokenId eos = -1;

    std::size_t positions() const { return rows.size(); }
    std::size_t classes() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// Index of the largest entry; the lowest index wins ties.
std::size_t argmax(const std::vector<double>& row);

class GuidanceSource {
public:
    virtual ~GuidanceSource() = default;

    /// Next-token distribution after `prefix` (which excludes <SOS>), given
    /// support example `idx` of `task`.
    virtual std::vector<double> predict(const Task& task, std::size_t idx, const TokenSequence& prefix) const = 0;

    virtual const Vocabulary& vocab() const = 0;
    virtual bool conditions_on_prefix() const { return true; }
    virtual bool concurrent_safe() const { return true; }
    virtual std::string describe() const = 0;
};

class UniformGuidance : public GuidanceSource {
public:
    explicit UniformGuidance(const Vocabulary& vocab) : vocab_(&vocab) {}
    std::vector<double> predict(const Task&, std::size_t, const TokenSequence& prefix) const override;
    const Vocabulary& vocab() const override { return *vocab_; }
    std::string describe() const override { return "uniform"; }

private:
    const Vocabulary* vocab_;
};

struct OracleConfig {
    double epsilon = 0.0;
    int distractors = 5;
    // Model-like profile: sharp structure tokens, flat choices among grid
    // transforms and among cellwise merges, with the truth in the top three.
    bool entropy_profile = false;
    double structure_epsilon = 0.01;
    std::uint64_t seed = 0;
};

/// Knows the planted program. The distribution depends only on the prefix
/// length; past the end of the truth it predicts <EOS>.
class OracleGuidance : public GuidanceSource {
public:
    OracleGuidance(TokenSequence truth, const Vocabulary& vocab, OracleConfig config = {});

    std::vector<double> predict(const Task&, std::size_t, const TokenSequence& prefix) const override;
    std::vector<double> row(std::size_t position) const;
    const Vocabulary& vocab() const override { return *vocab_; }
    std::string describe() const override;

    const TokenSequence& truth() const { return truth_; }
    bool high_entropy(std::size_t position) const;

private:
    TokenSequence truth_;
    const Vocabulary* vocab_;
    OracleConfig config_;
    std::vector<TokenId> transform_pool_;
    std::vector<TokenId> merge_pool_;
    // 0 sharp, 1 transform choice, 2 merge choice.
    std::vector<char> high_entropy_;
};

/// Replays a stored ProbSpace; ignores the example index and the prefix
/// contents.
class TableGuidance : public GuidanceSource {
public:
    TableGuidance(ProbSpace space, const Vocabulary& vocab, std::string task_id = {});

    std::vector<double> predict(const Task&, std::size_t, const TokenSequence& prefix) const override;
    const Vocabulary& vocab() const override { return *vocab_; }
    bool conditions_on_prefix() const override { return false; }
    std::string describe() const override { return "table:" + task_id_; }

    const ProbSpace& space() const { return space_; }
    const std::string& task_id() const { return task_id_; }

private:
    ProbSpace space_;
    const Vocabulary* vocab_;
    std::string task_id_;
};

/// Guidance whose competence is keyed on the grids it is shown: each stage
/// oracle answers when the task's support inputs match its recorded inputs,
/// and `fallback` answers everything else.
class StagedGuidance : public GuidanceSource {
public:
    struct Stage {
        std::vector<Grid> inputs;
        std::shared_ptr<const OracleGuidance> oracle;
    };

    StagedGuidance(std::vector<Stage> stages, std::shared_ptr<const OracleGuidance> fallback);

    std::vector<double> predict(const Task& task, std::size_t idx, const TokenSequence& prefix) const override;
    const Vocabulary& vocab() const override { return fallback_->vocab(); }
    std::string describe() const override { return "staged"; }

    const OracleGuidance& select(const Task& task) const;

private:
    std::vector<Stage> stages_;
    std::shared_ptr<const OracleGuidance> fallback_;
};

/// Greedy decode from `prefix`. When <EOS> is the argmax but another
/// class also exceeds tau, decoding continues with the second-best class.
ProbSpace get_prob_space(const GuidanceSource& source, const Task& task, std::size_t idx,
                         const TokenSequence& prefix, double tau, int max_len);

/// Base decode plus K decodes from random examples and forced 1-2 token
/// prefixes, averaged per position.
ProbSpace bootstrap_prob_space(const GuidanceSource& source, const Task& task, int k, double tau, int max_len,
                               std::uint64_t seed);

void save_prob_table(const std::string& path, const ProbSpace& space, const Vocabulary& vocab,
                     const std::string& task_id);
std::string prob_table_to_json(const ProbSpace& space, const Vocabulary& vocab, const std::string& task_id);

/// Throws FormatError on schema problems and VocabError when the vocabulary
/// differs from `vocab`.
TableGuidance load_prob_table(const std::string& path, const Vocabulary& vocab);
TableGuidance prob_table_from_json(const std::string& text, const Vocabulary& vocab);

}  // namespace gridcoder
