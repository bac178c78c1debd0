#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridcoder/guidance.hpp"
#include "gridcoder/program.hpp"

namespace gridcoder {

inline constexpr std::size_t kDefaultMaxPrograms = 100000;
inline constexpr double kTauEscalation = 1.5;

struct SearchConfig {
    double tau = kDefaultTau;
    double timeout_s = 300.0;
    int bootstrap_k = kDefaultBootstrapK;
    int max_len = kDefaultMaxLength;
    std::size_t max_programs = kDefaultMaxPrograms;
    std::uint64_t seed = 0;

    // Tree searches.
    std::size_t max_nodes = 2000;
    double puct_c = 1.25;

    // Similarity-guided greedy search.
    int lgs_max_depth = 8;
    std::size_t lgs_beam = 4096;
    // Priority is similarity minus this much per primitive in the chain.
    double lgs_step_cost = 0.3;

    // Re-launch composer.
    int stages = 2;
    std::size_t fan_out = 8;
    bool record_traces = false;
    std::size_t trace_limit = 256;
};

struct Candidate {
    TokenSequence tokens;
    double joint_prob = 0.0;
    // Filled only when enumerate_candidates is given a vocabulary.
    std::optional<bool> valid;
};

struct Enumeration {
    std::vector<Candidate> candidates;
    double tau_used = 0.0;
};

/// Number of candidates enumerate_candidates would emit at `tau`.
double count_candidates(const ProbSpace& ps, double tau);

/// All sequences choosing, per position, a class above tau (the argmax when
/// none is), ending at the first <EOS> or the last row. tau is multiplied by
/// 1.5 until the count fits `cap`. Sorted by joint probability descending,
/// then by token ids.
Enumeration enumerate_candidates(const ProbSpace& ps, double tau, std::size_t cap,
                                 const Vocabulary* vocab = nullptr);

enum class Outcome { Found, Timeout, Exhausted };

std::string_view outcome_name(Outcome o);

/// A Grid-valued node output recorded across every support input, with the
/// sub-program that produced it.
struct Intermediate {
    Expr producer;
    std::vector<Grid> grids;
    double joint_prob = 0.0;
    std::size_t rank = 0;
};

struct SearchResult {
    Outcome outcome = Outcome::Exhausted;
    TokenSequence program;
    std::optional<ColorBinding> binding;
    double joint_prob = 0.0;
    std::size_t rank = 0;  // 1-based position among evaluated programs
    std::size_t programs_evaluated = 0;
    std::size_t model_queries = 0;
    std::size_t nodes_expanded = 0;
    double wall_time_s = 0.0;
    double tau_used = 0.0;
    std::vector<Intermediate> traces;

    bool found() const { return outcome == Outcome::Found; }
};

SearchResult gridcoder_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config);
SearchResult gridcoder_cond_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config);
SearchResult greedy_decode_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config);
SearchResult mcts_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config);
SearchResult lgs_greedy_solve(const Task& task, const Vocabulary& vocab, const SearchConfig& config);
SearchResult execution_guided_solve(const Task& task, const GuidanceSource& source, const SearchConfig& config);

const std::vector<std::string>& engine_names();

/// Uniform entry point. Throws ConfigError on an unknown engine name.
SearchResult run_engine(std::string_view engine, const Task& task, const GuidanceSource& source,
                        const SearchConfig& config);

/// Similarity driving lgs_greedy: same-shape pairs score 0.5 plus half their
/// pixelwise similarity; other pairs score below 0.5 by dimension overlap
/// times color-histogram overlap.
double grid_space_similarity(const Grid& a, const Grid& b);

/// Mean pixelwise similarity of `outputs` to the support targets.
double support_similarity(const std::vector<Grid>& outputs, const Task& task);

}  // namespace gridcoder
