#ifndef FONDPS_SEARCH_H
#define FONDPS_SEARCH_H

#include "heuristics.h"
#include "policy.h"
#include "signature.h"
#include "task.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fondps {

struct SearchConfig {
    PruningKind pruning = PruningKind::domain_frontier;
    SearchMode mode = SearchMode::astar();
    bool deadlock_detection = false;
    bool use_concretizer = true;
    bool goal_merging = true;
    StateSignMode state_sign = StateSignMode::none;
    std::size_t orbit_budget = 1 << 16;
    double symmetry_time_budget_s = 5.0;
    std::uint64_t max_policies = 0; // 0 = unlimited
    double time_limit_s = 0.0;      // 0 = unlimited
    // test support: record identity keys of generated policies and the
    // signatures of expanded ones
    bool debug_trace = false;
};

struct SearchStats {
    std::uint64_t generated = 0;
    std::uint64_t expanded = 0;
    std::uint64_t pruned_by_equivalence = 0;
    std::uint64_t pruned_by_deadlock = 0;
    std::uint64_t pruned_by_heuristic = 0;
    std::uint64_t solutions_from_concretizer = 0;
    double wall_s = 0.0;
    std::vector<Policy> expanded_policies; // debug_trace only

    void accumulate(const SearchStats &other);
};

enum class Outcome { solved, bottom, resource_limit };

std::string outcome_name(Outcome outcome);

struct SearchResult {
    Outcome outcome = Outcome::bottom;
    std::optional<Policy> solution;
    SearchStats stats;
};

/*
  Expansion order: by default the most recently added remain state is
  mapped and its applicable actions are generated in ascending id
  order. A script overrides both per expansion; each line is a state
  name optionally followed by action labels fixing the generation
  order. Lines are consumed one per expansion; past the end the default
  rule resumes. State names require an explicit-graph task.
*/
class ExpansionOrderScript {
    struct Line {
        std::string state_name;
        std::vector<std::string> action_names;
    };
    std::vector<Line> lines_;
    std::size_t next_ = 0;

public:
    ExpansionOrderScript() = default;
    static ExpansionOrderScript from_text(const std::string &text);
    static ExpansionOrderScript from_file(const std::string &path);

    bool empty() const {
        return lines_.empty();
    }
    void reset() {
        next_ = 0;
    }

    // consumes one line; nullopt once exhausted
    struct Choice {
        State state;
        std::vector<int> action_order; // empty = ascending ids
    };
    std::optional<Choice> next(const Policy &policy);
};

// one successor per applicable action at the selected remain state
std::vector<Policy> expand(const Policy &policy,
                           ExpansionOrderScript *script = nullptr);

/*
  Best-first policy-space search with equivalence pruning. Pops the
  least f-value (ties: greater domain size, then generation order).
  Popped solutions are returned directly; with the concretizer enabled
  a popped policy with an empty remain set yields a solution whenever
  its domain/frontier pair admits one. Expanded signatures go into a
  done-set; successors with deadlocks are discarded at generation when
  deadlock detection is on, as are successors with infinite f.
*/
SearchResult and_star(const TaskPtr &task, const SearchConfig &config,
                      const ClassicalHeuristic &heuristic,
                      ExpansionOrderScript *script = nullptr,
                      std::shared_ptr<const PermutationGroup> group = nullptr);

/*
  Full planner: a single run for the sound pruning kinds; for frontier
  and frontier-sym pruning a proven-empty first search is rerun from
  scratch under domain-frontier pruning (resource-limit outcomes
  propagate without a rerun).
*/
SearchResult run_planner(const TaskPtr &task, const SearchConfig &config,
                         const ClassicalHeuristic &heuristic,
                         ExpansionOrderScript *script = nullptr);

} // namespace fondps

#endif
