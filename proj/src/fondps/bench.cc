#include "bench.h"

#include "compressor.h"
#include "errors.h"
#include "explicit_graph.h"
#include "validator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace fondps {

namespace {

bool parse_bool(const std::string &value, const std::string &key) {
    if (value == "on" || value == "true" || value == "1")
        return true;
    if (value == "off" || value == "false" || value == "0")
        return false;
    throw InvalidInput("expected on/off for " + key);
}

} // namespace

BenchPreset BenchPreset::parse(const std::string &text) {
    BenchPreset preset;
    std::string rest = text;
    auto colon = rest.find(':');
    if (colon == std::string::npos) {
        preset.name = rest;
        rest.clear();
    } else {
        preset.name = rest.substr(0, colon);
        rest = rest.substr(colon + 1);
    }
    if (preset.name.empty())
        throw InvalidInput("preset needs a name");

    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("preset entries look like key=value: " + item);
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (key == "pruning")
            preset.config.pruning = parse_pruning(value);
        else if (key == "heuristic")
            preset.heuristic = value;
        else if (key == "algorithm")
            preset.config.mode = SearchMode::parse(value);
        else if (key == "deadlock-detection")
            preset.config.deadlock_detection = parse_bool(value, key);
        else if (key == "concretizer")
            preset.config.use_concretizer = parse_bool(value, key);
        else if (key == "goal-merging")
            preset.config.goal_merging = parse_bool(value, key);
        else if (key == "symmetry")
            preset.config.state_sign = parse_state_sign(value);
        else if (key == "max-policies")
            preset.config.max_policies = std::stoull(value);
        else if (key == "time-limit")
            preset.config.time_limit_s = std::stod(value);
        else if (key == "compress")
            preset.compress = parse_bool(value, key);
        else
            throw InvalidInput("unknown preset key: " + key);
    }
    return preset;
}

RunRecord bench_run_one(const std::string &task_path, const std::string &domain,
                        const BenchPreset &preset) {
    RunRecord record;
    record.task_file = task_path;
    record.domain = domain;
    record.config = preset.name;

    TaskPtr task = parse_explicit_file(task_path);
    std::unique_ptr<ClassicalHeuristic> heuristic =
        make_heuristic(task, preset.heuristic);
    SearchResult result = run_planner(task, preset.config, *heuristic);
    record.time_s = result.stats.wall_s;
    record.generated = result.stats.generated;

    switch (result.outcome) {
    case Outcome::solved: {
        Verdict verdict = verify_strong_cyclic(task, *result.solution);
        if (!verdict.ok)
            throw Error("internal: planner returned an invalid policy for " +
                        task_path);
        record.outcome = "solved";
        record.solution_size = result.solution->size();
        if (preset.compress) {
            PartialPolicy tau = compress(*result.solution);
            if (!validate_partial_solution(task, tau))
                throw Error("internal: compressed policy failed validation for " +
                            task_path);
            record.compressed_size = tau.size();
        }
        break;
    }
    case Outcome::bottom:
        record.outcome = "bottom";
        break;
    case Outcome::resource_limit:
        record.outcome = (preset.config.max_policies &&
                          result.stats.generated > preset.config.max_policies)
                             ? "policy-limit"
                             : "time-limit";
        break;
    }
    return record;
}

double geometric_mean(const std::vector<double> &values) {
    if (values.empty())
        return 0.0;
    double log_sum = 0.0;
    for (double v : values) {
        if (v <= 0.0)
            return 0.0;
        log_sum += std::log(v);
    }
    return std::exp(log_sum / static_cast<double>(values.size()));
}

namespace {

std::string format(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    return buffer;
}

double arithmetic_mean(const std::vector<double> &values) {
    if (values.empty())
        return 0.0;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    return sum / static_cast<double>(values.size());
}

} // namespace

BenchReport run_bench(
    const std::vector<std::pair<std::string, std::string>> &tasks,
    const std::vector<BenchPreset> &presets, bool zero_time) {
    BenchReport report;
    for (const auto &[path, domain] : tasks)
        for (const BenchPreset &preset : presets) {
            RunRecord record;
            try {
                record = bench_run_one(path, domain, preset);
            } catch (const Error &e) {
                record.task_file = path;
                record.domain = domain;
                record.config = preset.name;
                record.outcome = std::string("error:") + e.what();
            }
            if (zero_time)
                record.time_s = 0.0;
            report.records.push_back(std::move(record));
        }

    std::ostringstream records_csv;
    records_csv << "task,domain,config,outcome,time_s,generated,solution_size,"
                   "compressed_size\n";
    for (const RunRecord &r : report.records) {
        records_csv << r.task_file << "," << r.domain << "," << r.config << ","
                    << r.outcome << "," << format(r.time_s, 3) << ","
                    << r.generated << "," << r.solution_size << ","
                    << r.compressed_size << "\n";
    }
    report.records_csv = records_csv.str();

    // intersection of solved tasks across presets
    std::map<std::string, std::set<std::string>> solved_by_config;
    for (const RunRecord &r : report.records)
        if (r.outcome == "solved")
            solved_by_config[r.config].insert(r.task_file);
    std::set<std::string> intersection;
    bool first_config = true;
    for (const BenchPreset &preset : presets) {
        const std::set<std::string> &solved = solved_by_config[preset.name];
        if (first_config) {
            intersection = solved;
            first_config = false;
        } else {
            std::set<std::string> next;
            std::set_intersection(intersection.begin(), intersection.end(),
                                  solved.begin(), solved.end(),
                                  std::inserter(next, next.begin()));
            intersection = std::move(next);
        }
    }

    std::vector<std::string> domains;
    for (const auto &[path, domain] : tasks)
        if (std::find(domains.begin(), domains.end(), domain) == domains.end())
            domains.push_back(domain);

    std::ostringstream summary;
    summary << "domain,config,tasks,solved_ratio,time_limit_ratio,"
               "policy_limit_ratio,mean_time_s,mean_generated,"
               "mean_solution_size,mean_compressed_size\n";

    struct DomainRow {
        double solved = 0, time_limited = 0, policy_limited = 0;
        double mean_time = 0, mean_generated = 0, mean_size = 0, mean_tau = 0;
    };
    std::map<std::string, std::vector<DomainRow>> rows_per_config;

    for (const BenchPreset &preset : presets) {
        for (const std::string &domain : domains) {
            std::vector<double> times, generated, sizes, taus;
            int total = 0, solved = 0, time_limited = 0, policy_limited = 0;
            for (const RunRecord &r : report.records) {
                if (r.config != preset.name || r.domain != domain)
                    continue;
                ++total;
                if (r.outcome == "solved")
                    ++solved;
                else if (r.outcome == "time-limit")
                    ++time_limited;
                else if (r.outcome == "policy-limit")
                    ++policy_limited;
                if (r.outcome == "solved" && intersection.count(r.task_file)) {
                    times.push_back(r.time_s);
                    generated.push_back(static_cast<double>(r.generated));
                    sizes.push_back(static_cast<double>(r.solution_size));
                    if (r.compressed_size >= 0)
                        taus.push_back(static_cast<double>(r.compressed_size));
                }
            }
            DomainRow row;
            row.solved = total ? static_cast<double>(solved) / total : 0;
            row.time_limited = total ? static_cast<double>(time_limited) / total : 0;
            row.policy_limited =
                total ? static_cast<double>(policy_limited) / total : 0;
            row.mean_time = arithmetic_mean(times);
            row.mean_generated = arithmetic_mean(generated);
            row.mean_size = arithmetic_mean(sizes);
            row.mean_tau = arithmetic_mean(taus);
            rows_per_config[preset.name].push_back(row);

            summary << domain << "," << preset.name << "," << total << ","
                    << format(row.solved, 2) << "," << format(row.time_limited, 2)
                    << "," << format(row.policy_limited, 2) << ","
                    << format(row.mean_time, 3) << ","
                    << format(row.mean_generated, 2) << ","
                    << format(row.mean_size, 2) << "," << format(row.mean_tau, 2)
                    << "\n";
        }
    }

    for (const BenchPreset &preset : presets) {
        const std::vector<DomainRow> &rows = rows_per_config[preset.name];
        std::vector<double> solved, time_limited, policy_limited;
        std::vector<double> times, generated, sizes, taus;
        for (const DomainRow &row : rows) {
            solved.push_back(row.solved);
            time_limited.push_back(row.time_limited);
            policy_limited.push_back(row.policy_limited);
            times.push_back(row.mean_time);
            generated.push_back(row.mean_generated);
            sizes.push_back(row.mean_size);
            taus.push_back(row.mean_tau);
        }
        summary << "TOTAL," << preset.name << "," << tasks.size() << ","
                << format(arithmetic_mean(solved), 2) << ","
                << format(arithmetic_mean(time_limited), 2) << ","
                << format(arithmetic_mean(policy_limited), 2) << ","
                << format(geometric_mean(times), 3) << ","
                << format(geometric_mean(generated), 2) << ","
                << format(geometric_mean(sizes), 2) << ","
                << format(geometric_mean(taus), 2) << "\n";
    }
    report.summary_csv = summary.str();
    return report;
}

} // namespace fondps
