#ifndef FONDPS_PARTIAL_H
#define FONDPS_PARTIAL_H

#include "policy.h"
#include "state.h"
#include "task.h"

#include <optional>
#include <utility>
#include <vector>

namespace fondps {

/*
  A partial state assigns a truth value to some facts and leaves the
  rest open. A state holds the partial state iff it agrees on every
  assigned fact.
*/
class PartialState {
    std::vector<std::pair<int, bool>> literals_; // sorted by fact id, unique

public:
    PartialState() = default;
    explicit PartialState(std::vector<std::pair<int, bool>> literals);

    const std::vector<std::pair<int, bool>> &literals() const {
        return literals_;
    }
    std::size_t literal_count() const {
        return literals_.size();
    }
    bool matches(const State &state) const;

    bool operator==(const PartialState &other) const {
        return literals_ == other.literals_;
    }
    // canonical order for stable serialization
    bool operator<(const PartialState &other) const {
        return literals_ < other.literals_;
    }
};

/*
  A partial policy maps partial states to actions. For a state s,
  rules(s) collects the actions of all matching partial states; s is
  mapped by the decompressed policy iff exactly one action matches, and
  buggy iff two or more distinct actions match. Both are decided per
  queried state, never by enumerating the state space.
*/
class PartialPolicy {
    std::vector<std::pair<PartialState, int>> entries_;

public:
    PartialPolicy() = default;
    explicit PartialPolicy(std::vector<std::pair<PartialState, int>> entries);

    const std::vector<std::pair<PartialState, int>> &entries() const {
        return entries_;
    }
    int size() const {
        return static_cast<int>(entries_.size());
    }

    // distinct actions of matching partial states
    std::vector<int> rules(const State &state) const;
    std::optional<int> decompressed_action(const State &state) const;
    bool buggy(const State &state) const;
};

/*
  Forward walk from the initial state under the decompressed policy:
  true iff the induced state policy restricted to the reachable states
  is a solution and no reachable state matches conflicting rules.
*/
bool validate_partial_solution(const TaskPtr &task, const PartialPolicy &tau);

} // namespace fondps

#endif
