#include "heuristics.h"

#include "errors.h"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fondps {

ExtInt ClassicalHeuristic::value(const State &state) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(state);
        if (it != memo_.end())
            return it->second;
    }
    ExtInt v = compute(state);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(state, v);
    return v;
}

ExtInt BlindHeuristic::compute(const State &state) const {
    return task_->is_goal(state) ? 0 : 1;
}

RelaxationHeuristic::RelaxationHeuristic(TaskPtr task, bool additive)
    : ClassicalHeuristic(std::move(task)), additive_(additive) {
    for (const Action &a : task_->actions())
        for (const Effect &e : a.effects)
            det_actions_.push_back({a.pre, e.add});
}

ExtInt RelaxationHeuristic::compute(const State &state) const {
    int n = task_->num_facts();
    std::vector<ExtInt> cost(static_cast<std::size_t>(n), INFTY);
    for (int f : state.true_facts())
        cost[f] = 0;

    auto combine = [&](const std::vector<int> &facts) -> ExtInt {
        ExtInt acc = 0;
        for (int f : facts) {
            if (cost[f] == INFTY)
                return INFTY;
            acc = additive_ ? ext_add(acc, cost[f]) : std::max(acc, cost[f]);
        }
        return acc;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const DetAction &a : det_actions_) {
            ExtInt pre_cost = combine(a.pre);
            if (pre_cost == INFTY)
                continue;
            ExtInt new_cost = ext_add(pre_cost, 1);
            for (int f : a.add)
                if (new_cost < cost[f]) {
                    cost[f] = new_cost;
                    changed = true;
                }
        }
    }
    return combine(task_->goal());
}

FixedTableHeuristic::FixedTableHeuristic(
    TaskPtr task, std::unordered_map<State, ExtInt, StateHash> table,
    ExtInt default_value)
    : ClassicalHeuristic(std::move(task)),
      table_(std::move(table)),
      default_value_(default_value) {}

ExtInt FixedTableHeuristic::compute(const State &state) const {
    auto it = table_.find(state);
    if (it != table_.end())
        return it->second;
    return task_->is_goal(state) ? 0 : default_value_;
}

std::unique_ptr<ClassicalHeuristic> make_heuristic(const TaskPtr &task,
                                                   const std::string &kind) {
    if (kind == "blind")
        return std::make_unique<BlindHeuristic>(task);
    if (kind == "hmax")
        return std::make_unique<HMaxHeuristic>(task);
    if (kind == "hadd")
        return std::make_unique<HAddHeuristic>(task);
    throw InvalidInput("unknown heuristic: " + kind);
}

ExtInt delta_value(const std::vector<ExtInt> &estimates) {
    if (estimates.empty())
        return 0;
    std::vector<ExtInt> sorted(estimates);
    std::sort(sorted.begin(), sorted.end(), std::greater<ExtInt>());
    ExtInt best = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j)
        best = std::max(best, ext_add(static_cast<ExtInt>(j), sorted[j]));
    return best;
}

ExtInt delta_nearest(const Policy &policy, const ClassicalHeuristic &h) {
    ExtInt n = static_cast<ExtInt>(policy.size()) +
               static_cast<ExtInt>(policy.remain().size());
    ExtInt result = n;

    if (!policy.empty() && !policy.front().empty()) {
        ExtInt nearest = INFTY;
        for (const State &s : policy.front())
            nearest = std::min(nearest, h.value(s));
        result = std::max(result, ext_add(n - 1, nearest));
    }

    std::vector<ExtInt> estimates;
    estimates.reserve(static_cast<std::size_t>(n));
    for (const auto &[state, action] : policy.mappings())
        estimates.push_back(h.value(state));
    for (const State &s : policy.remain())
        estimates.push_back(h.value(s));
    result = std::max(result, delta_value(estimates));
    return result;
}

SearchMode SearchMode::astar() {
    return {Algorithm::astar, 1.0};
}

SearchMode SearchMode::wastar(double k) {
    if (k <= 1.0)
        throw InvalidWeight("wastar weight must be greater than 1");
    return {Algorithm::wastar, k};
}

SearchMode SearchMode::gbfs() {
    return {Algorithm::gbfs, 1.0};
}

SearchMode SearchMode::parse(const std::string &text) {
    if (text == "astar")
        return astar();
    if (text == "gbfs")
        return gbfs();
    if (text.rfind("wastar:", 0) == 0) {
        double k;
        try {
            k = std::stod(text.substr(7));
        } catch (const std::exception &) {
            throw InvalidInput("cannot parse wastar weight in '" + text + "'");
        }
        return wastar(k);
    }
    throw InvalidInput("unknown algorithm: " + text);
}

std::string SearchMode::to_string() const {
    switch (algorithm) {
    case Algorithm::astar:
        return "astar";
    case Algorithm::gbfs:
        return "gbfs";
    case Algorithm::wastar:
        break;
    }
    std::string w = std::to_string(weight);
    while (w.size() > 1 && w.back() == '0')
        w.pop_back();
    if (!w.empty() && w.back() == '.')
        w.pop_back();
    return "wastar:" + w;
}

ExtInt f_value(const Policy &policy, const ClassicalHeuristic &h,
               const SearchMode &mode) {
    ExtInt f = delta_nearest(policy, h);
    if (mode.algorithm == Algorithm::astar)
        return f;
    if (f == INFTY)
        return INFTY;
    ExtInt g = policy.size();
    ExtInt hv = f - g;
    if (mode.algorithm == Algorithm::gbfs)
        return hv;
    double weighted = static_cast<double>(g) + mode.weight * static_cast<double>(hv);
    return static_cast<ExtInt>(std::llround(weighted));
}

} // namespace fondps
