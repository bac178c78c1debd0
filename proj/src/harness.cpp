#include "gridcoder/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "gridcoder/error.hpp"
#include "gridcoder/hash.hpp"
#include "gridcoder/task_io.hpp"
#include "gridcoder/taskgen.hpp"

namespace gridcoder {

namespace fs = std::filesystem;

std::vector<SuiteTask> load_suite(const std::string& path) {
    std::vector<SuiteTask> out;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(path))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) out.push_back({load_task(f.string()), std::nullopt, nullptr});
    } else {
        std::ifstream in(path);
        if (!in) throw FormatError("cannot read " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                const GeneratedSample s = sample_from_json(nlohmann::json::parse(line));
                out.push_back({s.task, s.truth, nullptr});
            } catch (const nlohmann::json::parse_error& e) {
                throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
            } catch (const FormatError& e) {
                throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
        }
    }
    if (out.empty()) throw InvalidConfig("suite " + path + " holds no tasks");
    return out;
}

std::shared_ptr<const GuidanceSource> make_guidance(const GuidanceSpec& spec, const SuiteTask& task,
                                                    const Vocabulary& vocab) {
    if (task.guidance) return task.guidance;
    if (spec.kind == "uniform") return std::make_shared<UniformGuidance>(vocab);
    if (spec.kind == "oracle") {
        if (!task.truth) throw ConfigError("oracle guidance needs a ground truth for task " + task.task.id);
        OracleConfig oc = spec.oracle;
        Fnv1a h;
        h.add(task.task.id);
        oc.seed = mix64(oc.seed, h.value());
        return std::make_shared<OracleGuidance>(*task.truth, vocab, oc);
    }
    if (spec.kind == "file") {
        if (spec.table_path.empty()) throw ConfigError("file guidance needs a table path");
        std::string path = spec.table_path;
        if (fs::is_directory(path)) path = (fs::path(path) / (task.task.id + ".json")).string();
        return std::make_shared<TableGuidance>(load_prob_table(path, vocab));
    }
    throw ConfigError("unknown guidance kind '" + spec.kind + "'");
}

SolveOutcome solve_task(const SuiteTask& task, const RunConfig& config) {
    const Vocabulary& vocab = Vocabulary::get(config.dsl_version);
    const auto guidance = make_guidance(config.guidance, task, vocab);
    SolveOutcome out;
    out.result = run_engine(config.engine, task.task, *guidance, config.search);
    if (out.result.found()) {
        try {
            out.query_correct = solves_query(parse(out.result.program, vocab), task.task, out.result.binding);
        } catch (const Error&) {
            out.query_correct = false;
        }
    }
    return out;
}

nlohmann::json solve_to_json(const Task& task, const SolveOutcome& o, const Vocabulary& vocab) {
    const SearchResult& r = o.result;
    nlohmann::json j;
    j["task_id"] = task.id;
    j["outcome"] = std::string(outcome_name(r.outcome));
    j["program"] = token_names(r.program, vocab);
    j["joint_prob"] = r.joint_prob;
    j["rank"] = r.rank;
    j["query_correct"] = o.query_correct;
    if (r.binding) j["color_binding"] = {r.binding->from, r.binding->to};
    j["stats"] = {{"programs_evaluated", r.programs_evaluated},
                  {"model_queries", r.model_queries},
                  {"nodes_expanded", r.nodes_expanded},
                  {"wall_time_s", r.wall_time_s},
                  {"tau_used", r.tau_used}};
    return j;
}

Aggregate aggregate(const std::vector<BenchmarkRow>& rows, std::size_t registry_size) {
    Aggregate a;
    a.tasks = rows.size();
    double sum = 0.0, sq = 0.0;
    for (const auto& r : rows) {
        if (!r.query_correct) continue;
        ++a.solved;
        sum += r.wall_time_s;
        sq += r.wall_time_s * r.wall_time_s;
    }
    a.solve_rate = a.tasks ? static_cast<double>(a.solved) / static_cast<double>(a.tasks) : 0.0;
    if (a.solved) {
        a.mean_time = sum / static_cast<double>(a.solved);
        a.stddev_time = std::sqrt(std::max(0.0, sq / static_cast<double>(a.solved) - a.mean_time * a.mean_time));
    }
    a.mean_time_per_primitive = registry_size ? a.mean_time / static_cast<double>(registry_size) : 0.0;
    return a;
}

BenchmarkReport run_benchmark(const std::vector<SuiteTask>& suite, const std::vector<std::string>& engines,
                              const RunConfig& config, int jobs) {
    if (engines.empty()) throw InvalidConfig("benchmark needs at least one engine");
    if (suite.empty()) throw InvalidConfig("benchmark needs at least one task");
    for (const auto& e : engines)
        if (std::find(engine_names().begin(), engine_names().end(), e) == engine_names().end())
            throw ConfigError("unknown engine '" + e + "'");
    BenchmarkReport report;
    report.dsl_version = config.dsl_version;
    report.registry_size = Registry::get(config.dsl_version).size();
    report.seed = config.search.seed;
    const std::size_t n = suite.size() * engines.size();
    report.rows.resize(n);

    auto run_one = [&](std::size_t i) {
        const SuiteTask& task = suite[i / engines.size()];
        BenchmarkRow& row = report.rows[i];
        row.task_id = task.task.id;
        row.engine = engines[i % engines.size()];
        RunConfig rc = config;
        rc.engine = row.engine;
        try {
            const SolveOutcome o = solve_task(task, rc);
            row.outcome = std::string(outcome_name(o.result.outcome));
            row.rank = o.result.rank;
            row.programs_evaluated = o.result.programs_evaluated;
            row.wall_time_s = o.result.wall_time_s;
            row.tau_used = o.result.tau_used;
            row.query_correct = o.query_correct;
        } catch (const Error& e) {
            row.outcome = "error";
            row.error = e.what();
        }
    };
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) run_one(i);
            });
        for (auto& t : pool) t.join();
    }
    for (const auto& e : engines) {
        std::vector<BenchmarkRow> mine;
        for (const auto& r : report.rows)
            if (r.engine == e) mine.push_back(r);
        report.by_engine[e] = aggregate(mine, report.registry_size);
    }
    return report;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_to_csv(const BenchmarkReport& report) {
    std::ostringstream out;
    out << kReportCsvHeader << '\n';
    for (const auto& r : report.rows)
        out << csv_field(r.task_id) << ',' << r.engine << ',' << r.outcome << ',' << r.rank << ','
            << r.programs_evaluated << ',' << fmt(r.wall_time_s) << ',' << fmt(r.tau_used) << '\n';
    return out.str();
}

nlohmann::json report_to_json(const BenchmarkReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json j = {{"task_id", r.task_id},
                            {"engine", r.engine},
                            {"outcome", r.outcome},
                            {"rank", r.rank},
                            {"programs_evaluated", r.programs_evaluated},
                            {"wall_time_s", r.wall_time_s},
                            {"tau_used", r.tau_used},
                            {"query_correct", r.query_correct}};
        if (!r.error.empty()) j["error"] = r.error;
        rows.push_back(std::move(j));
    }
    nlohmann::json agg = nlohmann::json::object();
    for (const auto& [engine, a] : report.by_engine)
        agg[engine] = {{"tasks", a.tasks},
                       {"solved", a.solved},
                       {"solve_rate", a.solve_rate},
                       {"mean_time", a.mean_time},
                       {"stddev_time", a.stddev_time},
                       {"mean_time_per_primitive", a.mean_time_per_primitive}};
    return {{"dsl_version", report.dsl_version},
            {"registry_size", report.registry_size},
            {"seed", report.seed},
            {"rows", std::move(rows)},
            {"aggregates", std::move(agg)},
            {"determinism_hash", determinism_hash(report)}};
}

std::uint64_t determinism_hash(const BenchmarkReport& report) {
    Fnv1a h;
    h.add(static_cast<std::uint64_t>(report.dsl_version));
    h.add(report.seed);
    for (const auto& r : report.rows) {
        h.add(r.task_id);
        h.add(r.engine);
        h.add(r.outcome);
        h.add(static_cast<std::uint64_t>(r.rank));
        h.add(static_cast<std::uint64_t>(r.programs_evaluated));
        h.add(fmt(r.tau_used));
        h.add(static_cast<std::uint64_t>(r.query_correct));
    }
    return h.value();
}

nlohmann::json dsl_dump(int dsl_version) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& spec : Registry::get(dsl_version).specs()) {
        nlohmann::json params = nlohmann::json::array();
        for (ValueKind k : spec.param_kinds) params.push_back(std::string(kind_name(k)));
        out.push_back({{"name", spec.name},
                       {"params", std::move(params)},
                       {"returns", std::string(kind_name(spec.return_kind))},
                       {"version", spec.dsl_version}});
    }
    return out;
}

}  // namespace gridcoder
