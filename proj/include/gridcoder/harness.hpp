#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridcoder/guidance.hpp"
#include "gridcoder/search.hpp"

namespace gridcoder {

struct GuidanceSpec {
    std::string kind = "uniform";  // uniform | oracle | file
    OracleConfig oracle;
    // file: a table JSON, or a directory holding <task_id>.json tables.
    std::string table_path;
};

struct RunConfig {
    std::string engine = "gridcoder";
    int dsl_version = 3;
    SearchConfig search;
    GuidanceSpec guidance;
};

struct SuiteTask {
    Task task;
    std::optional<TokenSequence> truth;
    // Takes precedence over RunConfig::guidance when set.
    std::shared_ptr<const GuidanceSource> guidance;
};

/// A directory of ARC task files, or a JSON-lines dataset whose lines also
/// carry the ground truth. Throws FormatError on unreadable input and
/// InvalidConfig on an empty suite.
std::vector<SuiteTask> load_suite(const std::string& path);

/// Throws ConfigError when `spec` cannot serve this task (oracle without a
/// truth, unknown kind). Oracle noise is seeded per task id.
std::shared_ptr<const GuidanceSource> make_guidance(const GuidanceSpec& spec, const SuiteTask& task,
                                                    const Vocabulary& vocab);

struct SolveOutcome {
    SearchResult result;
    bool query_correct = false;
};

/// Runs the engine on the support pairs, then checks the found program on the
/// query pairs.
SolveOutcome solve_task(const SuiteTask& task, const RunConfig& config);
nlohmann::json solve_to_json(const Task& task, const SolveOutcome& outcome, const Vocabulary& vocab);

struct BenchmarkRow {
    std::string task_id;
    std::string engine;
    std::string outcome;  // found | timeout | exhausted | error
    std::size_t rank = 0;
    std::size_t programs_evaluated = 0;
    double wall_time_s = 0.0;
    double tau_used = 0.0;
    bool query_correct = false;
    std::string error;
};

struct Aggregate {
    std::size_t tasks = 0;
    std::size_t solved = 0;
    double solve_rate = 0.0;
    // Over solved tasks.
    double mean_time = 0.0;
    double stddev_time = 0.0;
    double mean_time_per_primitive = 0.0;
};

struct BenchmarkReport {
    int dsl_version = 3;
    std::size_t registry_size = 0;
    std::uint64_t seed = 0;
    std::vector<BenchmarkRow> rows;
    std::map<std::string, Aggregate> by_engine;
};

Aggregate aggregate(const std::vector<BenchmarkRow>& rows, std::size_t registry_size);

/// Every task under every engine with the same config and seed. Rows are
/// ordered by task, then engine, whatever `jobs` is.
BenchmarkReport run_benchmark(const std::vector<SuiteTask>& suite, const std::vector<std::string>& engines,
                              const RunConfig& config, int jobs = 1);

inline constexpr const char* kReportCsvHeader = "task_id,engine,outcome,rank,programs_evaluated,wall_time_s,tau_used";

std::string report_to_csv(const BenchmarkReport& report);
nlohmann::json report_to_json(const BenchmarkReport& report);

/// FNV-1a over every row field except wall time.
std::uint64_t determinism_hash(const BenchmarkReport& report);

/// {name, params, returns, version} per primitive.
nlohmann::json dsl_dump(int dsl_version);

}  // namespace gridcoder
