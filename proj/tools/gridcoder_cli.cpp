#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridcoder/error.hpp"
#include "gridcoder/harness.hpp"
#include "gridcoder/task_io.hpp"
#include "gridcoder/taskgen.hpp"

using namespace gridcoder;

namespace {

// 0 success, 1 unsolved or wrong on the query pairs, 2 usage, 3 input or
// runtime failure.
constexpr int kExitUnsolved = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct Flags {
    std::string engine = "gridcoder";
    int dsl_version = 3;
    double tau = kDefaultTau;
    double timeout = 300.0;
    int bootstrap_k = kDefaultBootstrapK;
    int max_len = kDefaultMaxLength;
    std::size_t max_programs = kDefaultMaxPrograms;
    std::string guidance = "uniform";
    double oracle_epsilon = 0.0;
    bool entropy_profile = false;
    std::string table;
    std::uint64_t seed = 0;
    std::string out;
    int stages = 2;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--dsl-version", f.dsl_version)->check(CLI::IsMember({1, 2, 3}));
    cmd->add_option("--tau", f.tau)->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--timeout", f.timeout, "seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--bootstrap-k", f.bootstrap_k)->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-len", f.max_len)->check(CLI::PositiveNumber);
    cmd->add_option("--max-programs", f.max_programs);
    cmd->add_option("--guidance", f.guidance)->check(CLI::IsMember({"uniform", "oracle", "file"}));
    cmd->add_option("--oracle-epsilon", f.oracle_epsilon)->check(CLI::Range(0.0, 1.0));
    cmd->add_flag("--entropy-profile", f.entropy_profile, "model-like oracle noise");
    cmd->add_option("--table", f.table, "probability table, or a directory of <task_id>.json tables");
    cmd->add_option("--seed", f.seed);
    cmd->add_option("--stages", f.stages, "re-launch depth of execution_guided")->check(CLI::PositiveNumber);
}

RunConfig run_config(const Flags& f) {
    RunConfig rc;
    rc.engine = f.engine;
    rc.dsl_version = f.dsl_version;
    rc.search.tau = f.tau;
    rc.search.timeout_s = f.timeout;
    rc.search.bootstrap_k = f.bootstrap_k;
    rc.search.max_len = f.max_len;
    rc.search.max_programs = f.max_programs;
    rc.search.seed = f.seed;
    rc.search.stages = f.stages;
    rc.guidance.kind = f.guidance;
    rc.guidance.oracle.epsilon = f.oracle_epsilon;
    rc.guidance.oracle.entropy_profile = f.entropy_profile;
    rc.guidance.oracle.seed = f.seed;
    rc.guidance.table_path = f.table;
    if (f.guidance == "file" && f.table.empty()) throw CLI::ValidationError("--table", "required with --guidance file");
    return rc;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
}

// "a b c" or "a,b,c" or a JSON array of names.
TokenSequence parse_truth(const std::string& text, const Vocabulary& vocab) {
    if (!text.empty() && text.front() == '[') return tokens_from_json(text, vocab);
    std::string s = text;
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream in(s);
    std::vector<std::string> names;
    for (std::string n; in >> n;) names.push_back(n);
    return tokens_from_names(names, vocab);
}

int cmd_solve(const std::string& path, const std::string& truth, const Flags& f) {
    const RunConfig rc = run_config(f);
    const Vocabulary& vocab = Vocabulary::get(rc.dsl_version);
    SuiteTask task;
    if (path.size() > 6 && path.substr(path.size() - 6) == ".jsonl") {
        task = load_suite(path).front();
    } else {
        task.task = load_task(path);
    }
    if (!truth.empty()) task.truth = parse_truth(truth, vocab);
    const SolveOutcome o = solve_task(task, rc);
    std::cout << solve_to_json(task.task, o, vocab).dump(2) << '\n';
    return o.query_correct ? 0 : kExitUnsolved;
}

int cmd_benchmark(const std::string& suite_path, const std::vector<std::string>& engines, int jobs,
                  const Flags& f) {
    const RunConfig rc = run_config(f);
    const auto suite = load_suite(suite_path);
    const BenchmarkReport report = run_benchmark(suite, engines, rc, jobs);
    if (f.out.empty()) {
        std::cout << report_to_csv(report);
    } else {
        std::string stem = f.out;
        if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json") stem.resize(stem.size() - 5);
        write_text(stem + ".csv", report_to_csv(report));
        write_text(stem + ".json", report_to_json(report).dump(2) + "\n");
    }
    for (const auto& [engine, a] : report.by_engine)
        std::fprintf(stderr, "%-18s solved %zu/%zu  mean %.4fs  per-primitive %.6fs\n", engine.c_str(), a.solved,
                     a.tasks, a.mean_time, a.mean_time_per_primitive);
    return 0;
}

int cmd_generate(const std::string& id, std::size_t count, const Flags& f) {
    GeneratorConfig gc;
    gc.dsl_version = f.dsl_version;
    gc.seed = f.seed;
    std::vector<GeneratedSample> mixed;
    if (id == "mixed") mixed = generate_mixed(gc, count);
    std::ostringstream out;
    for (std::size_t i = 0; i < count; ++i) {
        gc.seed = f.seed + i;
        const GeneratedSample s = id == "mixed" ? mixed[i] : generate(id, gc);
        const std::string violation = contract_violation(s);
        if (!violation.empty()) {
            std::fprintf(stderr, "generator %s broke its contract at seed %llu: %s\n", s.generator_id.c_str(),
                         static_cast<unsigned long long>(s.seed), violation.c_str());
            return kExitFailure;
        }
        out << sample_to_json(s).dump() << '\n';
    }
    write_text(f.out, out.str());
    return 0;
}

int cmd_enumerate(const std::string& table_path, const Flags& f) {
    const Vocabulary& vocab = Vocabulary::get(f.dsl_version);
    const TableGuidance table = load_prob_table(table_path, vocab);
    const Enumeration e = enumerate_candidates(table.space(), f.tau, f.max_programs, &vocab);
    nlohmann::json cands = nlohmann::json::array();
    std::size_t rank = 0;
    for (const auto& c : e.candidates)
        cands.push_back({{"rank", ++rank},
                         {"tokens", token_names(c.tokens, vocab)},
                         {"joint_prob", c.joint_prob},
                         {"valid", c.valid.value_or(false)}});
    const nlohmann::json j = {{"task_id", table.task_id()},
                              {"tau_used", e.tau_used},
                              {"count", e.candidates.size()},
                              {"candidates", std::move(cands)}};
    write_text(f.out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridcoder: guided program search over a grid DSL"};
    app.require_subcommand(1);
    Flags f;

    std::string task_path, truth;
    auto* solve = app.add_subcommand("solve", "search for a program solving an ARC task");
    solve->add_option("task", task_path, "ARC task JSON (or a dataset .jsonl; its first line)")->required();
    solve->add_option("--engine", f.engine)->check(CLI::IsMember(engine_names()));
    solve->add_option("--truth", truth, "ground-truth tokens for oracle guidance");
    add_run_flags(solve, f);

    std::string suite_path;
    std::vector<std::string> engines;
    int jobs = 1;
    auto* bench = app.add_subcommand("benchmark", "run engines over a task suite");
    bench->add_option("suite", suite_path, "directory of ARC task files or a dataset .jsonl")->required();
    bench->add_option("--engines", engines, "engines to compare")->delimiter(',')->required()->expected(1, -1);
    bench->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    bench->add_option("--out", f.out, "report path stem; writes .csv and .json");
    add_run_flags(bench, f);

    std::string gen_id;
    std::size_t count = 0;
    auto* gen = app.add_subcommand("generate", "write a JSON-lines dataset");
    gen->add_option("generator", gen_id, "generator id or 'mixed'")->required();
    gen->add_option("count", count)->required();
    gen->add_option("--dsl-version", f.dsl_version)->check(CLI::IsMember({1, 2, 3}));
    gen->add_option("--seed", f.seed);
    gen->add_option("--out", f.out);

    std::string table_path;
    auto* en = app.add_subcommand("enumerate", "list the candidates of a probability table");
    en->add_option("table", table_path)->required();
    en->add_option("--tau", f.tau)->check(CLI::Range(0.0, 1.0));
    en->add_option("--max-programs", f.max_programs, "candidate cap");
    en->add_option("--dsl-version", f.dsl_version)->check(CLI::IsMember({1, 2, 3}));
    en->add_option("--out", f.out);

    auto* dsl = app.add_subcommand("dsl", "registry inspection");
    dsl->require_subcommand(1);
    auto* dump = dsl->add_subcommand("dump", "print the primitive list as JSON");
    dump->add_option("--dsl-version,--version", f.dsl_version)->check(CLI::IsMember({1, 2, 3}));
    dump->add_option("--out", f.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(task_path, truth, f);
        if (*bench) return cmd_benchmark(suite_path, engines, jobs, f);
        if (*gen) {
            if (gen_id != "mixed") {
                const auto ids = generator_ids();
                if (std::find(ids.begin(), ids.end(), gen_id) == ids.end()) {
                    std::cerr << "unknown generator '" << gen_id << "'\n";
                    return kExitUsage;
                }
            }
            return cmd_generate(gen_id, count, f);
        }
        if (*en) return cmd_enumerate(table_path, f);
        if (*dump) {
            write_text(f.out, dsl_dump(f.dsl_version).dump(2) + "\n");
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidConfig& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
