#include "fondps/bench.h"
#include "fondps/compressor.h"
#include "fondps/errors.h"
#include "fondps/explicit_graph.h"
#include "fondps/heuristics.h"
#include "fondps/partial.h"
#include "fondps/pddl.h"
#include "fondps/policy_io.h"
#include "fondps/search.h"
#include "fondps/symmetry.h"
#include "fondps/validator.h"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace fondps;

namespace {

TaskPtr load_task(const std::string &task_path, const std::string &domain_path) {
    if (task_path.size() >= 5 &&
        task_path.substr(task_path.size() - 5) == ".pddl") {
        if (domain_path.empty())
            throw InvalidInput("PDDL problems need --domain");
        return parse_pddl_files(domain_path, task_path);
    }
    return parse_explicit_file(task_path);
}

struct SolveFlags {
    std::string pruning = "frontier";
    std::string heuristic = "hmax";
    std::string algorithm = "astar";
    std::string deadlock = "off";
    std::string concretizer = "on";
    std::string goal_merging = "on";
    std::string symmetry = "none";
    double symmetry_time_budget = 5.0;
    std::uint64_t orbit_budget = 1 << 16;
    std::uint64_t max_policies = 0;
    double time_limit = 0.0;
    std::string expansion_order;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--pruning", pruning,
                        "identity|lanes|domain-frontier|frontier|frontier-sym");
        cmd->add_option("--heuristic", heuristic, "blind|hmax|hadd");
        cmd->add_option("--algorithm", algorithm, "astar|wastar:<k>|gbfs");
        cmd->add_option("--deadlock-detection", deadlock, "on|off");
        cmd->add_option("--concretizer", concretizer, "on|off");
        cmd->add_option("--goal-merging", goal_merging, "on|off");
        cmd->add_option("--symmetry", symmetry, "none|greedy|canonical");
        cmd->add_option("--symmetry-time-budget", symmetry_time_budget,
                        "seconds for generator discovery");
        cmd->add_option("--orbit-budget", orbit_budget,
                        "cap on enumerated orbit size");
        cmd->add_option("--max-policies", max_policies,
                        "cap on generated policies (0 = unlimited)");
        cmd->add_option("--time-limit", time_limit,
                        "seconds per search (0 = unlimited)");
        cmd->add_option("--expansion-order", expansion_order,
                        "file scripting which state to map per expansion");
    }

    SearchConfig config() const {
        SearchConfig c;
        c.pruning = parse_pruning(pruning);
        c.mode = SearchMode::parse(algorithm);
        c.deadlock_detection = deadlock == "on";
        c.use_concretizer = concretizer == "on";
        c.goal_merging = goal_merging == "on";
        c.state_sign = parse_state_sign(symmetry);
        c.symmetry_time_budget_s = symmetry_time_budget;
        c.orbit_budget = orbit_budget;
        c.max_policies = max_policies;
        c.time_limit_s = time_limit;
        return c;
    }
};

int cmd_solve(const std::string &task_path, const std::string &domain_path,
              const SolveFlags &flags, bool do_compress,
              std::uint64_t solver_node_budget, const std::string &output,
              const std::string &compressed_output, const std::string &stats_path) {
    TaskPtr task = load_task(task_path, domain_path);
    std::unique_ptr<ClassicalHeuristic> heuristic =
        make_heuristic(task, flags.heuristic);
    ExpansionOrderScript script;
    ExpansionOrderScript *script_ptr = nullptr;
    if (!flags.expansion_order.empty()) {
        script = ExpansionOrderScript::from_file(flags.expansion_order);
        script_ptr = &script;
    }

    SearchResult result =
        run_planner(task, flags.config(), *heuristic, script_ptr);
    const SearchStats &stats = result.stats;
    std::cerr << "outcome=" << outcome_name(result.outcome)
              << " generated=" << stats.generated
              << " expanded=" << stats.expanded
              << " pruned_equivalence=" << stats.pruned_by_equivalence
              << " pruned_deadlock=" << stats.pruned_by_deadlock
              << " solutions_from_concretizer=" << stats.solutions_from_concretizer
              << " time_s=" << stats.wall_s << "\n";

    int compressed_size = -1;
    std::optional<PartialPolicy> tau;
    if (result.outcome == Outcome::solved) {
        Verdict verdict = verify_strong_cyclic(task, *result.solution);
        if (!verdict.ok) {
            std::cerr << "internal error: returned policy failed verification\n";
            return 1;
        }
        if (do_compress) {
            CompressOptions options;
            options.solver_node_budget = solver_node_budget;
            tau = compress(*result.solution, options);
            compressed_size = tau->size();
            std::cerr << "compressed_size=" << compressed_size << "\n";
        }
    }

    if (!stats_path.empty()) {
        std::string domain =
            fs::path(task_path).parent_path().filename().string();
        std::ostringstream row;
        row << "task,domain,config,outcome,time_s,generated,solution_size,"
               "compressed_size\n";
        row << task_path << "," << domain << ","
            << flags.pruning << "+" << flags.heuristic << "+" << flags.algorithm
            << "," << outcome_name(result.outcome) << "," << stats.wall_s << ","
            << stats.generated << ","
            << (result.solution ? std::to_string(result.solution->size()) : "-1")
            << "," << compressed_size << "\n";
        write_text_file(stats_path, row.str());
    }

    if (result.outcome == Outcome::bottom)
        return 2;
    if (result.outcome == Outcome::resource_limit)
        return 3;

    std::string policy_doc = write_policy(*result.solution);
    if (output.empty() || output == "-")
        std::cout << policy_doc;
    else
        write_text_file(output, policy_doc);

    if (tau) {
        std::string tau_doc = write_policy(task, *tau);
        if (compressed_output.empty() || compressed_output == "-")
            std::cout << tau_doc;
        else
            write_text_file(compressed_output, tau_doc);
    }
    return 0;
}

int cmd_validate(const std::string &task_path, const std::string &domain_path,
                 const std::string &policy_path) {
    TaskPtr task = load_task(task_path, domain_path);
    AnyPolicy policy = read_policy_file(task, policy_path);
    if (std::holds_alternative<Policy>(policy)) {
        Verdict verdict = verify_strong_cyclic(task, std::get<Policy>(policy));
        for (const auto &[rule, witness] : verdict.violations)
            std::cerr << "violation: " << rule << " at " << witness << "\n";
        std::cout << (verdict.ok ? "valid" : "invalid") << "\n";
        return verdict.ok ? 0 : 1;
    }
    bool ok = validate_partial_solution(task, std::get<PartialPolicy>(policy));
    if (!ok)
        std::cerr << "violation: decompressed policy is not a solution\n";
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? 0 : 1;
}

int cmd_compress(const std::string &task_path, const std::string &domain_path,
                 const std::string &policy_path,
                 std::uint64_t solver_node_budget, const std::string &output) {
    TaskPtr task = load_task(task_path, domain_path);
    AnyPolicy policy = read_policy_file(task, policy_path);
    if (!std::holds_alternative<Policy>(policy))
        throw InvalidInput("compress expects a state policy document");
    CompressOptions options;
    options.solver_node_budget = solver_node_budget;
    PartialPolicy tau = compress(std::get<Policy>(policy), options);
    std::cerr << "compressed_size=" << tau.size() << "\n";
    std::string doc = write_policy(task, tau);
    if (output.empty() || output == "-")
        std::cout << doc;
    else
        write_text_file(output, doc);
    return 0;
}

int cmd_symmetries(const std::string &task_path, const std::string &domain_path,
                   double time_budget) {
    TaskPtr task = load_task(task_path, domain_path);
    GeneratorSearchOptions options;
    options.time_budget_s = time_budget;
    PermutationGroup group = find_generators(task, options);
    std::cout << "generators: " << group.generators().size() << "\n";
    auto print_orbits = [](const char *label,
                           const std::vector<std::vector<int>> &orbits) {
        std::size_t nontrivial = 0;
        std::size_t largest = 0;
        for (const auto &orbit : orbits) {
            if (orbit.size() > 1)
                ++nontrivial;
            largest = std::max(largest, orbit.size());
        }
        std::cout << label << ": " << orbits.size() << " orbits, " << nontrivial
                  << " nontrivial, largest " << largest << "\n";
    };
    if (!group.trivial()) {
        print_orbits("facts", group.fact_orbits());
        print_orbits("actions", group.action_orbits());
        std::cout << "init orbit size: " << group.orbit(task->init()).size()
                  << "\n";
    } else {
        std::cout << "facts: " << task->num_facts() << " orbits, 0 nontrivial\n";
        std::cout << "actions: " << task->num_actions()
                  << " orbits, 0 nontrivial\n";
        std::cout << "init orbit size: 1\n";
    }
    return 0;
}

int cmd_bench(const std::string &dir, std::vector<std::string> preset_specs,
              const std::string &records_path, const std::string &summary_path,
              bool zero_time) {
    if (preset_specs.empty())
        preset_specs = {"default:pruning=frontier,heuristic=hmax"};
    std::vector<BenchPreset> presets;
    for (const std::string &spec : preset_specs)
        presets.push_back(BenchPreset::parse(spec));

    std::vector<std::pair<std::string, std::string>> tasks;
    std::vector<fs::path> files;
    for (const auto &entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path &file : files) {
        fs::path parent = file.parent_path();
        std::string domain = parent == fs::path(dir)
                                 ? fs::path(dir).filename().string()
                                 : parent.filename().string();
        tasks.emplace_back(file.string(), domain);
    }
    if (tasks.empty())
        throw InvalidInput("no .json tasks under " + dir);

    BenchReport report = run_bench(tasks, presets, zero_time);
    if (!records_path.empty())
        write_text_file(records_path, report.records_csv);
    if (summary_path.empty() || summary_path == "-")
        std::cout << report.summary_csv;
    else
        write_text_file(summary_path, report.summary_csv);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"FOND planner: explicit best-first policy-space search"};
    app.require_subcommand(1);

    std::string task_path, domain_path, policy_path, output, compressed_output;
    std::string stats_path, records_path, summary_path, expansion_order;
    std::vector<std::string> preset_specs;
    std::string compress_flag = "off";
    std::uint64_t solver_node_budget = 5'000'000;
    double symmetry_time_budget = 5.0;
    bool zero_time = false;
    SolveFlags flags;

    CLI::App *solve = app.add_subcommand("solve", "solve a task");
    solve->add_option("task", task_path, "task file (.json or .pddl)")
        ->required();
    solve->add_option("--domain", domain_path, "PDDL domain file");
    flags.add_to(solve);
    solve->add_option("--compress", compress_flag,
                      "also emit a compressed policy (on|off)");
    solve->add_option("--solver-node-budget", solver_node_budget,
                      "cap for the compression solver");
    solve->add_option("-o,--output", output, "policy output file (default stdout)");
    solve->add_option("--compressed-output", compressed_output,
                      "compressed policy output file");
    solve->add_option("--stats", stats_path, "write a one-row stats CSV");

    CLI::App *validate = app.add_subcommand("validate", "check a policy document");
    validate->add_option("task", task_path, "task file")->required();
    validate->add_option("policy", policy_path, "policy document")->required();
    validate->add_option("--domain", domain_path, "PDDL domain file");

    CLI::App *compress_cmd =
        app.add_subcommand("compress", "compress a state policy document");
    compress_cmd->add_option("task", task_path, "task file")->required();
    compress_cmd->add_option("policy", policy_path, "policy document")->required();
    compress_cmd->add_option("--domain", domain_path, "PDDL domain file");
    compress_cmd->add_option("--solver-node-budget", solver_node_budget,
                             "cap for the compression solver");
    compress_cmd->add_option("-o,--output", output, "output file (default stdout)");

    CLI::App *symmetries =
        app.add_subcommand("symmetries", "print symmetry generators and orbits");
    symmetries->add_option("task", task_path, "task file")->required();
    symmetries->add_option("--domain", domain_path, "PDDL domain file");
    symmetries->add_option("--symmetry-time-budget", symmetry_time_budget,
                           "seconds for generator discovery");

    CLI::App *bench = app.add_subcommand("bench", "run presets over a directory");
    bench->add_option("dir", task_path, "directory of .json tasks")->required();
    bench->add_option("--preset", preset_specs,
                      "config preset, name:key=value,... (repeatable)");
    bench->add_option("--records", records_path, "per-task records CSV");
    bench->add_option("-o,--output", summary_path, "summary CSV (default stdout)");
    bench->add_flag("--zero-time", zero_time,
                    "write zeros to the time column for byte-stable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(task_path, domain_path, flags, compress_flag == "on",
                             solver_node_budget, output, compressed_output,
                             stats_path);
        if (validate->parsed())
            return cmd_validate(task_path, domain_path, policy_path);
        if (compress_cmd->parsed())
            return cmd_compress(task_path, domain_path, policy_path,
                                solver_node_budget, output);
        if (symmetries->parsed())
            return cmd_symmetries(task_path, domain_path, symmetry_time_budget);
        if (bench->parsed())
            return cmd_bench(task_path, preset_specs, records_path, summary_path,
                             zero_time);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
