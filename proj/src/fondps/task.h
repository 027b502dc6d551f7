#ifndef FONDPS_TASK_H
#define FONDPS_TASK_H

#include "state.h"

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace fondps {

struct Fact {
    int id;
    std::string name;
    // fact partition: predicate index for grounded tasks, 0 for explicit graphs
    int partition_id;
};

struct Effect {
    std::vector<int> del;
    std::vector<int> add;
};

struct Action {
    int id;
    std::string name;
    std::vector<int> pre;
    std::vector<Effect> effects;
    // action partition: the lifted schema (or shared label group) this
    // action was grounded from
    int partition_id;
};

/*
  A grounded FOND task: facts, actions with one or more effects each,
  an initial state, and a conjunctive goal. Immutable after
  construction and safe to share across concurrent searches.
*/
class FondTask {
    std::vector<Fact> facts_;
    std::vector<Action> actions_;
    State init_;
    std::vector<int> goal_;
    std::vector<bool> goal_mask_;
    std::unordered_map<std::string, int> fact_by_name_;
    std::unordered_map<std::string, int> action_by_name_;
    std::uint64_t structure_hash_;
    bool explicit_encoding_ = false;
    std::vector<std::string> explicit_state_names_;
    std::vector<State> explicit_states_;

    void validate() const;
    void compute_hash();

public:
    FondTask(std::vector<Fact> facts, std::vector<Action> actions,
             State init, std::vector<int> goal);

    const std::vector<Fact> &facts() const {
        return facts_;
    }
    const std::vector<Action> &actions() const {
        return actions_;
    }
    int num_facts() const {
        return static_cast<int>(facts_.size());
    }
    int num_actions() const {
        return static_cast<int>(actions_.size());
    }
    const State &init() const {
        return init_;
    }
    const std::vector<int> &goal() const {
        return goal_;
    }

    bool applicable(const State &state, int action) const;
    std::vector<State> successors(const State &state, int action) const;
    bool is_goal(const State &state) const;

    std::vector<int> applicable_actions(const State &state) const;

    int fact_id(const std::string &name) const;       // -1 if unknown
    int action_id(const std::string &name) const;     // -1 if unknown

    std::uint64_t structure_hash() const {
        return structure_hash_;
    }
    std::string structure_hash_hex() const;

    // set by the explicit-graph encoder: states are (near) one-hot and
    // named; used for compact policy documents and scripted orders
    void mark_explicit(std::vector<std::string> state_names,
                       std::vector<State> named_states);
    bool is_explicit_encoding() const {
        return explicit_encoding_;
    }
    const std::vector<std::string> &explicit_state_names() const {
        return explicit_state_names_;
    }
    // one-hot state for a named state of an explicit encoding
    State explicit_state(const std::string &name) const;
    // display name of a state of an explicit encoding
    std::string explicit_state_name(const State &state) const;
};

using TaskPtr = std::shared_ptr<const FondTask>;

} // namespace fondps

#endif
