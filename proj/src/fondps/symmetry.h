#ifndef FONDPS_SYMMETRY_H
#define FONDPS_SYMMETRY_H

#include "state.h"
#include "task.h"

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace fondps {

/*
  A structural symmetry: a pair of permutations over fact ids and
  action ids that preserves goal membership, precondition sets, effect
  multisets, and the fact/action partitions. Applied to a state it
  permutes the true facts.
*/
struct Permutation {
    std::vector<int> fact_perm;
    std::vector<int> action_perm;

    bool is_identity() const;
    State apply(const State &state) const {
        return state.permute(fact_perm);
    }
};

// all five structural-symmetry conditions, checked directly
bool check_symmetry(const FondTask &task, const Permutation &perm);

/*
  Generator set with orbit machinery. Orbits are computed by closure
  under generator application (finite permutation groups are closed
  under inverses through repetition). Canonical signatures memoize per
  state; the memo tolerates concurrent readers.
*/
class PermutationGroup {
    std::vector<Permutation> generators_;
    std::size_t orbit_budget_;
    mutable std::unordered_map<State, State, StateHash> canonical_memo_;
    mutable std::mutex memo_mutex_;

public:
    explicit PermutationGroup(std::vector<Permutation> generators = {},
                              std::size_t orbit_budget = 1 << 16);

    const std::vector<Permutation> &generators() const {
        return generators_;
    }
    bool trivial() const {
        return generators_.empty();
    }
    std::size_t orbit_budget() const {
        return orbit_budget_;
    }

    // full orbit of a state; throws OrbitBudgetExceeded past the budget
    std::vector<State> orbit(const State &state) const;

    // local minimum of repeated single generator applications
    State greedy_signature(const State &state) const;

    // exact minimum of the orbit under the state order; throws
    // OrbitBudgetExceeded (callers fall back to greedy_signature)
    State canonical_signature(const State &state) const;

    // orbits of the fact set under the generators, sorted
    std::vector<std::vector<int>> fact_orbits() const;
    std::vector<std::vector<int>> action_orbits() const;
};

struct GeneratorSearchOptions {
    double time_budget_s = 5.0;
    std::uint64_t node_budget = 2'000'000;
};

/*
  Discover a generator set for the structural symmetries of the task
  via a colored problem-description graph: color refinement followed by
  a backtracking leaf-versus-first-leaf automorphism search. On budget
  exhaustion the group degrades to empty (symmetries disabled). Every
  returned generator passes check_symmetry.
*/
PermutationGroup find_generators(const TaskPtr &task,
                                 const GeneratorSearchOptions &options = {});

} // namespace fondps

#endif
