#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gridcoder/guidance.hpp"
#include "gridcoder/program.hpp"

namespace gridcoder {

struct GeneratorConfig {
    int dsl_version = 3;
    int min_support = 2;
    int max_support = 4;
    int n_query = 1;
    int min_size = 3;
    int max_size = 10;
    std::uint64_t seed = 0;
};

struct GeneratedSample {
    Task task;
    TokenSequence truth;
    std::string generator_id;
    std::uint64_t seed = 0;
    int dsl_version = 1;
};

GeneratedSample gen_trivial(const GeneratorConfig& config);
GeneratedSample gen_split_merge(const GeneratorConfig& config);
GeneratedSample gen_tiling(const GeneratorConfig& config);
GeneratedSample gen_objects_v2(const GeneratorConfig& config);
GeneratedSample gen_selector_v3(const GeneratorConfig& config);
GeneratedSample gen_windowing_v3(const GeneratorConfig& config);
GeneratedSample gen_recombiner_v3(const GeneratorConfig& config);

/// Tiling template: `tiles` holds cols*rows transform names in row-major
/// order, "<Identity>" for an untransformed tile. Rows and tiles are paired
/// left to right, one level at a time.
Expr tiling_expr(int cols, int rows, const std::vector<std::string>& tiles, const Vocabulary& vocab);

/// Split-merge template over 2, 3 or 4 piece primitives and one cellwise merge.
Expr split_merge_expr(const std::vector<std::string>& pieces, const std::string& merge, const Vocabulary& vocab);

/// Generator ids usable at `dsl_version` (all of them when 0).
std::vector<std::string> generator_ids(int dsl_version = 0);
int generator_min_version(std::string_view id);

/// Throws ConfigError for an unknown id and InvalidConfig when the id needs a
/// newer DSL than config.dsl_version.
GeneratedSample generate(std::string_view id, const GeneratorConfig& config);

/// Round-robin over the generators available at config.dsl_version, seeds
/// config.seed, config.seed + 1, ...
std::vector<GeneratedSample> generate_mixed(const GeneratorConfig& config, std::size_t count);

/// Empty when the truth reproduces every support and query output; otherwise
/// a description of the first violation.
std::string contract_violation(const GeneratedSample& sample);

/// Ordered pairs (first, second) of unary grid transforms kept for the
/// trivial generator, after dropping compositions equivalent on probe grids
/// to the identity, to either factor alone or to an earlier pair.
const std::vector<std::pair<PrimitiveId, PrimitiveId>>& curated_pairs(int dsl_version);

/// Dataset line: {"task", "truth", "generator", "seed", "dsl_version"}.
nlohmann::json sample_to_json(const GeneratedSample& sample);
GeneratedSample sample_from_json(const nlohmann::json& j);

// ---- out-of-distribution suite ----

/// Structural shape of an expression: rotations print as R, other unary grid
/// transforms as U, the task input as X, everything else by name.
std::string structure_signature(const Expr& expr, const Vocabulary& vocab);

struct CoveragePattern {
    std::string family;
    std::string regex;
};

/// Signature patterns of everything the generators emit.
const std::vector<CoveragePattern>& training_coverage();

/// Family whose pattern matches the signature, or empty.
std::string covered_by(const std::string& signature);

struct OodTask {
    GeneratedSample sample;
    std::string description;
    std::string coverage_gap;
    std::string signature;
    // Programs the restricted guidance proposes, one per re-launch: stage 0 on
    // the task input, stage k on the output of stages 0..k-1.
    std::vector<Expr> guidance_stages;
    bool composable = true;
};

std::vector<OodTask> gen_ood_suite(std::uint64_t seed);

/// Oracle guidance that knows only the OOD task's stage programs.
std::shared_ptr<StagedGuidance> ood_guidance(const OodTask& task, const OracleConfig& config = {});

}  // namespace gridcoder
