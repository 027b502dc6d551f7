#ifndef FONDPS_VALIDATOR_H
#define FONDPS_VALIDATOR_H

#include "policy.h"
#include "state.h"
#include "task.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fondps {

/*
  Independent solution checking and brute-force ground truth. Nothing
  here reuses the policy module's cached sets; everything is recomputed
  from the raw mappings so these functions can serve as oracles for the
  rest of the system.
*/

struct Verdict {
    bool ok = true;
    // (rule, human-readable witness)
    std::vector<std::pair<std::string, std::string>> violations;

    void report(const std::string &rule, const std::string &witness) {
        ok = false;
        violations.emplace_back(rule, witness);
    }
};

Verdict verify_strong_cyclic(const TaskPtr &task,
                             const std::vector<std::pair<State, int>> &mappings);

inline Verdict verify_strong_cyclic(const TaskPtr &task, const Policy &policy) {
    return verify_strong_cyclic(task, policy.mappings());
}

/*
  Minimum number of mapped states over all solutions, by exhaustive
  enumeration of action assignments over the reachable non-goal states;
  nullopt when the task is unsolvable. Throws OracleTooLarge past the
  reachable-state cap.
*/
std::optional<int> brute_force_optimum(const TaskPtr &task,
                                       int max_reachable_states = 10);

// all proper policies with the exact domain and frontier inside the
// given set, by enumeration (concretizer completeness oracle)
bool exists_proper_policy(const TaskPtr &task,
                          const std::vector<State> &domain,
                          const std::unordered_set<State, StateHash> &frontier);

struct MicroTaskCaps {
    int max_states = 5;
    int max_actions_per_state = 2;
    int max_outcomes = 2;
};

/*
  Deterministic pseudo-random explicit-graph micro tasks. The first
  indices are forced archetypes: a deadlock pair, a mirror-symmetric
  task, and a dead-end branch; the remainder are seeded samples.
*/
TaskPtr micro_task(std::uint64_t seed, std::uint64_t index,
                   const MicroTaskCaps &caps = {});

/*
  Exhaustive family of explicit graphs with the given state count:
  init s0, goal the last state, every non-goal state carrying up to two
  actions with up to two outcomes each. Tasks are indexed densely.
*/
std::uint64_t exhaustive_family_size(int num_states);
TaskPtr exhaustive_task(int num_states, std::uint64_t index);

// seed for randomized suites; honors PLANNER_SEED when set
std::uint64_t default_seed();

} // namespace fondps

#endif
