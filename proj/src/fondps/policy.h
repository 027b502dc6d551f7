#ifndef FONDPS_POLICY_H
#define FONDPS_POLICY_H

#include "state.h"
#include "task.h"

#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fondps {

/*
  A policy is a partial function from non-goal states to applicable
  actions. Policies are immutable values: extend() returns a new policy
  and never touches the parent, so the search queue can hold many
  siblings. The mapping chain is shared between parent and child; the
  per-policy caches (reachability, frontier, remain, properness) are
  carried forward incrementally at construction.

  front and remain keep insertion order; the most recently added remain
  state is the default expansion target.
*/
class Policy {
    struct Node {
        State state;
        int action;
        std::shared_ptr<const Node> parent;
    };

    TaskPtr task_;
    std::shared_ptr<const Node> chain_;
    std::vector<std::pair<State, int>> mappings_; // insertion order
    std::unordered_map<State, int, StateHash> map_;
    std::unordered_set<State, StateHash> reach_;
    std::vector<State> front_;                    // insertion order
    std::unordered_set<State, StateHash> front_set_;
    std::vector<State> remain_;                   // insertion order
    bool proper_ = true;

    void add_mapping(const State &state, int action, bool check_applicable);
    void recompute_proper();

public:
    explicit Policy(TaskPtr task);

    // mappings added in order; throws like extend on invalid entries
    static Policy build(TaskPtr task,
                        const std::vector<std::pair<State, int>> &mappings);

    const FondTask &task() const {
        return *task_;
    }
    TaskPtr task_ptr() const {
        return task_;
    }

    int size() const {
        return static_cast<int>(mappings_.size());
    }
    bool empty() const {
        return mappings_.empty();
    }

    const std::vector<std::pair<State, int>> &mappings() const {
        return mappings_;
    }
    std::optional<int> action_for(const State &state) const;
    bool maps(const State &state) const {
        return map_.count(state) > 0;
    }

    const std::unordered_set<State, StateHash> &reach() const {
        return reach_;
    }
    const std::vector<State> &front() const {
        return front_;
    }
    bool in_front(const State &state) const {
        return front_set_.count(state) > 0;
    }
    const std::vector<State> &remain() const {
        return remain_;
    }

    bool proper() const {
        return proper_;
    }
    bool is_solution() const {
        return proper_ && remain_.empty();
    }

    // new policy with state -> action added
    Policy extend(const State &state, int action) const;

    // true iff extend(state, action) would break properness
    bool deadlock_on_extend(const State &state, int action) const;

    // frontier states reachable from a domain state via policy trajectories
    std::vector<State> escape_set(const State &state) const;

    // escape_set for every domain state, in domain insertion order
    std::vector<std::pair<State, std::vector<State>>> lanes() const;

    // restriction of the policy to the given states
    Policy slice(const std::unordered_set<State, StateHash> &keep) const;

    bool same_mappings(const Policy &other) const;
};

} // namespace fondps

#endif
