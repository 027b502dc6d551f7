#include "policy.h"

#include "errors.h"

#include <algorithm>
#include <cassert>
#include <deque>

namespace fondps {

Policy::Policy(TaskPtr task) : task_(std::move(task)) {
    const State &init = task_->init();
    if (!task_->is_goal(init))
        remain_.push_back(init);
}

Policy Policy::build(TaskPtr task,
                     const std::vector<std::pair<State, int>> &mappings) {
    Policy p(std::move(task));
    for (const auto &[state, action] : mappings)
        p.add_mapping(state, action, true);
    p.recompute_proper();
    return p;
}

std::optional<int> Policy::action_for(const State &state) const {
    auto it = map_.find(state);
    if (it == map_.end())
        return std::nullopt;
    return it->second;
}

void Policy::add_mapping(const State &state, int action, bool check_applicable) {
    if (map_.count(state))
        throw AlreadyMapped("state is already mapped");
    if (task_->is_goal(state))
        throw GoalStateMapped("goal states are never mapped");
    if (check_applicable && !task_->applicable(state, action))
        throw NotApplicable("mapped action is not applicable at its state");

    chain_ = std::make_shared<const Node>(Node{state, action, chain_});
    mappings_.emplace_back(state, action);
    map_.emplace(state, action);

    // state joins the domain: drop it from front/remain
    if (front_set_.erase(state)) {
        front_.erase(std::find(front_.begin(), front_.end(), state));
    }
    auto rit = std::find(remain_.begin(), remain_.end(), state);
    if (rit != remain_.end())
        remain_.erase(rit);

    reach_.insert(state);
    for (const State &succ : task_->successors(state, action)) {
        if (!reach_.insert(succ).second)
            continue;
        // reach always contains the whole domain, so a new reach state
        // is a new frontier state
        front_.push_back(succ);
        front_set_.insert(succ);
        // the initial state may already sit in remain from construction
        if (!task_->is_goal(succ) &&
            std::find(remain_.begin(), remain_.end(), succ) == remain_.end())
            remain_.push_back(succ);
    }
}

void Policy::recompute_proper() {
    /*
      Backward propagation from the frontier over the policy transition
      graph: a domain state can escape iff one of its successors is a
      frontier state or an escape-capable domain state. Proper iff all
      domain states can escape.
    */
    if (mappings_.empty()) {
        proper_ = true;
        return;
    }
    std::unordered_map<State, std::vector<State>, StateHash> preds;
    std::unordered_set<State, StateHash> can_escape;
    std::deque<State> queue;
    for (const auto &[state, action] : mappings_) {
        for (const State &succ : task_->successors(state, action)) {
            if (succ == state)
                continue;
            if (front_set_.count(succ)) {
                if (can_escape.insert(state).second)
                    queue.push_back(state);
            } else {
                preds[succ].push_back(state);
            }
        }
    }
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        auto it = preds.find(s);
        if (it == preds.end())
            continue;
        for (const State &p : it->second)
            if (can_escape.insert(p).second)
                queue.push_back(p);
    }
    proper_ = can_escape.size() == mappings_.size();
}

Policy Policy::extend(const State &state, int action) const {
    Policy child(*this);
    child.add_mapping(state, action, true);
    child.recompute_proper();
    return child;
}

bool Policy::deadlock_on_extend(const State &state, int action) const {
    return !extend(state, action).proper();
}

std::vector<State> Policy::escape_set(const State &state) const {
    if (!map_.count(state))
        throw NotInDomain("escape set is defined for domain states only");
    std::unordered_set<State, StateHash> visited{state};
    std::deque<State> queue{state};
    std::vector<State> escape;
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        auto it = map_.find(s);
        if (it == map_.end()) {
            escape.push_back(s); // reachable and unmapped: frontier state
            continue;
        }
        for (const State &succ : task_->successors(s, it->second))
            if (visited.insert(succ).second)
                queue.push_back(succ);
    }
    std::sort(escape.begin(), escape.end());
    return escape;
}

std::vector<std::pair<State, std::vector<State>>> Policy::lanes() const {
    std::vector<std::pair<State, std::vector<State>>> result;
    result.reserve(mappings_.size());
    for (const auto &[state, action] : mappings_)
        result.emplace_back(state, escape_set(state));
    return result;
}

Policy Policy::slice(const std::unordered_set<State, StateHash> &keep) const {
    std::vector<std::pair<State, int>> kept;
    for (const auto &m : mappings_)
        if (keep.count(m.first))
            kept.push_back(m);
    return build(task_, kept);
}

bool Policy::same_mappings(const Policy &other) const {
    if (size() != other.size())
        return false;
    for (const auto &[state, action] : mappings_) {
        auto a = other.action_for(state);
        if (!a || *a != action)
            return false;
    }
    return true;
}

} // namespace fondps
