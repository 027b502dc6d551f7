#include "partial.h"

#include "errors.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace fondps {

PartialState::PartialState(std::vector<std::pair<int, bool>> literals)
    : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    for (std::size_t i = 1; i < literals_.size(); ++i)
        if (literals_[i - 1].first == literals_[i].first)
            throw InvalidInput("partial state assigns a fact twice");
}

bool PartialState::matches(const State &state) const {
    for (const auto &[fact, value] : literals_)
        if (state.test(fact) != value)
            return false;
    return true;
}

PartialPolicy::PartialPolicy(std::vector<std::pair<PartialState, int>> entries)
    : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        for (std::size_t j = i + 1; j < entries_.size(); ++j)
            if (entries_[i].first == entries_[j].first)
                throw InvalidInput("partial state appears twice");
}

std::vector<int> PartialPolicy::rules(const State &state) const {
    std::vector<int> actions;
    for (const auto &[partial, action] : entries_)
        if (partial.matches(state) &&
            std::find(actions.begin(), actions.end(), action) == actions.end())
            actions.push_back(action);
    return actions;
}

std::optional<int> PartialPolicy::decompressed_action(const State &state) const {
    std::vector<int> actions = rules(state);
    if (actions.size() == 1)
        return actions.front();
    return std::nullopt;
}

bool PartialPolicy::buggy(const State &state) const {
    return rules(state).size() >= 2;
}

bool validate_partial_solution(const TaskPtr &task, const PartialPolicy &tau) {
    std::vector<std::pair<State, int>> collected;
    std::unordered_set<State, StateHash> visited;
    std::deque<State> queue;
    visited.insert(task->init());
    queue.push_back(task->init());
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        if (tau.buggy(s))
            return false;
        if (task->is_goal(s))
            continue;
        std::optional<int> action = tau.decompressed_action(s);
        if (!action)
            return false; // reachable non-goal state left unmapped
        if (!task->applicable(s, *action))
            return false;
        collected.emplace_back(s, *action);
        for (const State &succ : task->successors(s, *action))
            if (visited.insert(succ).second)
                queue.push_back(succ);
    }
    try {
        Policy induced = Policy::build(task, collected);
        return induced.is_solution();
    } catch (const Error &) {
        return false;
    }
}

} // namespace fondps
