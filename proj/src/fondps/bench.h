#ifndef FONDPS_BENCH_H
#define FONDPS_BENCH_H

#include "search.h"

#include <string>
#include <vector>

namespace fondps {

/*
  Benchmark harness: run one or more configuration presets over a
  directory of explicit-graph tasks and report per-task records plus a
  per-domain summary. Averages are taken over the intersection of tasks
  solved by every preset; the total row aggregates ratios arithmetically
  and everything else geometrically, each domain weighing the same.
*/
struct BenchPreset {
    std::string name;
    SearchConfig config;
    std::string heuristic = "hmax";
    bool compress = false;

    // "name:key=value,..." with keys pruning, heuristic, algorithm,
    // deadlock-detection, concretizer, goal-merging, symmetry,
    // max-policies, time-limit, compress
    static BenchPreset parse(const std::string &text);
};

struct RunRecord {
    std::string task_file;
    std::string domain;
    std::string config;
    std::string outcome; // solved | bottom | time-limit | policy-limit
    double time_s = 0.0;
    std::uint64_t generated = 0;
    int solution_size = -1;
    int compressed_size = -1;
};

RunRecord bench_run_one(const std::string &task_path, const std::string &domain,
                        const BenchPreset &preset);

struct BenchReport {
    std::vector<RunRecord> records;
    std::string records_csv;
    std::string summary_csv;
};

// task files are (path, domain) pairs, processed in the given order
BenchReport run_bench(
    const std::vector<std::pair<std::string, std::string>> &tasks,
    const std::vector<BenchPreset> &presets, bool zero_time);

double geometric_mean(const std::vector<double> &values);

} // namespace fondps

#endif
