#include "validator.h"

#include "errors.h"
#include "explicit_graph.h"
#include "rng.h"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace fondps {

namespace {

std::string describe(const TaskPtr &task, const State &state) {
    if (task->is_explicit_encoding()) {
        try {
            return task->explicit_state_name(state);
        } catch (const Error &) {
        }
    }
    std::string out = "{";
    for (int f : state.true_facts()) {
        if (out.size() > 1)
            out += ",";
        out += task->facts()[f].name;
    }
    return out + "}";
}

} // namespace

Verdict verify_strong_cyclic(
    const TaskPtr &task, const std::vector<std::pair<State, int>> &mappings) {
    Verdict verdict;

    std::unordered_map<State, int, StateHash> map;
    for (const auto &[state, action] : mappings) {
        if (!map.emplace(state, action).second)
            verdict.report("single-mapping", describe(task, state));
        if (task->is_goal(state))
            verdict.report("goal-state-mapped", describe(task, state));
        else if (!task->applicable(state, action))
            verdict.report("applicability", describe(task, state));
    }
    if (!verdict.ok)
        return verdict;

    // reach and frontier from scratch: reach is the domain plus the
    // one-step successors of its mappings
    std::unordered_set<State, StateHash> reach;
    for (const auto &[state, action] : mappings)
        reach.insert(state);
    for (const auto &[state, action] : mappings)
        for (const State &succ : task->successors(state, action))
            reach.insert(succ);
    std::vector<State> frontier;
    for (const State &s : reach)
        if (!map.count(s))
            frontier.push_back(s);

    for (const State &s : frontier)
        if (!task->is_goal(s))
            verdict.report("goal-closedness", describe(task, s));

    // per-state escape via forward exploration
    for (const auto &[state, action] : mappings) {
        std::unordered_set<State, StateHash> visited{state};
        std::deque<State> queue{state};
        bool escapes = false;
        while (!queue.empty() && !escapes) {
            State s = queue.front();
            queue.pop_front();
            auto it = map.find(s);
            if (it == map.end()) {
                escapes = true;
                break;
            }
            for (const State &succ : task->successors(s, it->second))
                if (visited.insert(succ).second)
                    queue.push_back(succ);
        }
        if (!escapes)
            verdict.report("properness", describe(task, state));
    }

    if (!task->is_goal(task->init()) && !map.count(task->init()))
        verdict.report("init-coverage", describe(task, task->init()));
    return verdict;
}

namespace {

std::vector<State> reachable_states(const TaskPtr &task, int cap) {
    std::vector<State> order{task->init()};
    std::unordered_set<State, StateHash> seen{task->init()};
    for (std::size_t i = 0; i < order.size(); ++i) {
        State s = order[i];
        for (int a : task->applicable_actions(s))
            for (const State &succ : task->successors(s, a))
                if (seen.insert(succ).second) {
                    order.push_back(succ);
                    if (static_cast<int>(order.size()) > cap)
                        throw OracleTooLarge(
                            "reachable state count exceeds the oracle cap");
                }
    }
    return order;
}

} // namespace

std::optional<int> brute_force_optimum(const TaskPtr &task,
                                       int max_reachable_states) {
    std::vector<State> reachable = reachable_states(task, max_reachable_states);
    std::vector<State> candidates;
    for (const State &s : reachable)
        if (!task->is_goal(s))
            candidates.push_back(s);
    int n = static_cast<int>(candidates.size());
    if (n > 20)
        throw OracleTooLarge("too many non-goal states to enumerate");

    std::vector<std::vector<int>> actions(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        actions[i] = task->applicable_actions(candidates[i]);

    std::vector<std::vector<std::uint32_t>> masks_by_size(
        static_cast<std::size_t>(n + 1));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        masks_by_size[std::popcount(mask)].push_back(mask);

    for (int size = 0; size <= n; ++size) {
        for (std::uint32_t mask : masks_by_size[size]) {
            std::vector<int> chosen;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1)
                    chosen.push_back(i);
            bool feasible = true;
            for (int i : chosen)
                if (actions[i].empty()) {
                    feasible = false;
                    break;
                }
            if (!feasible)
                continue;
            // enumerate action assignments over the chosen states
            std::vector<std::size_t> pick(chosen.size(), 0);
            for (;;) {
                std::vector<std::pair<State, int>> mappings;
                for (std::size_t j = 0; j < chosen.size(); ++j)
                    mappings.emplace_back(candidates[chosen[j]],
                                          actions[chosen[j]][pick[j]]);
                if (Policy::build(task, mappings).is_solution())
                    return size;
                std::size_t j = 0;
                while (j < pick.size()) {
                    if (++pick[j] < actions[chosen[j]].size())
                        break;
                    pick[j] = 0;
                    ++j;
                }
                if (j == pick.size())
                    break;
            }
        }
    }
    return std::nullopt;
}

bool exists_proper_policy(const TaskPtr &task, const std::vector<State> &domain,
                          const std::unordered_set<State, StateHash> &frontier) {
    std::vector<std::vector<int>> actions;
    for (const State &s : domain) {
        if (task->is_goal(s))
            return false;
        std::vector<int> applicable = task->applicable_actions(s);
        if (applicable.empty())
            return false;
        actions.push_back(std::move(applicable));
    }
    if (domain.empty())
        return true; // the empty policy
    std::vector<std::size_t> pick(domain.size(), 0);
    for (;;) {
        std::vector<std::pair<State, int>> mappings;
        for (std::size_t i = 0; i < domain.size(); ++i)
            mappings.emplace_back(domain[i], actions[i][pick[i]]);
        Policy policy = Policy::build(task, mappings);
        bool front_ok = true;
        for (const State &s : policy.front())
            if (!frontier.count(s)) {
                front_ok = false;
                break;
            }
        if (front_ok && policy.proper())
            return true;
        std::size_t j = 0;
        while (j < pick.size()) {
            if (++pick[j] < actions[j].size())
                break;
            pick[j] = 0;
            ++j;
        }
        if (j == pick.size())
            return false;
    }
}

namespace {

ExplicitGraphTask deadlock_pair_archetype() {
    ExplicitGraphTask g;
    g.states = {"s0", "s1", "s2", "g"};
    g.init = "s0";
    g.goals = {"g"};
    g.actions = {{"go", "s0", {"s1"}},
                 {"left", "s1", {"s2"}},
                 {"left", "s2", {"s1"}},
                 {"right", "s2", {"g"}}};
    return g;
}

ExplicitGraphTask mirror_archetype() {
    ExplicitGraphTask g;
    g.states = {"s0", "l", "r", "g"};
    g.init = "s0";
    g.goals = {"g"};
    g.actions = {{"fork", "s0", {"l", "r"}},
                 {"go", "l", {"g"}},
                 {"go", "r", {"g"}}};
    return g;
}

ExplicitGraphTask dead_branch_archetype() {
    ExplicitGraphTask g;
    g.states = {"s0", "s1", "x", "g"};
    g.init = "s0";
    g.goals = {"g"};
    g.actions = {{"safe", "s0", {"s1"}},
                 {"risky", "s0", {"s1", "x"}},
                 {"finish", "s1", {"g"}}};
    return g;
}

} // namespace

TaskPtr micro_task(std::uint64_t seed, std::uint64_t index,
                   const MicroTaskCaps &caps) {
    if (index == 0)
        return encode_explicit(deadlock_pair_archetype());
    if (index == 1)
        return encode_explicit(mirror_archetype());
    if (index == 2)
        return encode_explicit(dead_branch_archetype());

    Rng rng(seed * 0x9e3779b97f4a7c15ULL + index);
    int n = rng.range(2, caps.max_states);
    ExplicitGraphTask g;
    for (int i = 0; i < n; ++i)
        g.states.push_back("s" + std::to_string(i));
    g.init = "s0";
    int num_goals = (n >= 3 && rng.below(4) == 0) ? 2 : 1;
    for (int i = 0; i < num_goals; ++i)
        g.goals.push_back(g.states[static_cast<std::size_t>(n - 1 - i)]);

    for (int i = 0; i < n - num_goals; ++i) {
        int num_actions = rng.range(1, caps.max_actions_per_state);
        for (int a = 0; a < num_actions; ++a) {
            int num_outcomes = std::min(rng.range(1, caps.max_outcomes), n);
            std::vector<int> outcomes;
            while (static_cast<int>(outcomes.size()) < num_outcomes) {
                int target = static_cast<int>(rng.below(n));
                if (std::find(outcomes.begin(), outcomes.end(), target) ==
                    outcomes.end())
                    outcomes.push_back(target);
            }
            ExplicitGraphTask::GraphAction action;
            action.label = "a" + std::to_string(a);
            action.from = g.states[i];
            for (int t : outcomes)
                action.outcomes.push_back(g.states[t]);
            g.actions.push_back(std::move(action));
        }
    }
    return encode_explicit(g);
}

namespace {

// outcome sets of size 1 or 2 over num_states states
std::uint64_t outcome_set_count(int num_states) {
    return static_cast<std::uint64_t>(num_states) +
           static_cast<std::uint64_t>(num_states) * (num_states - 1) / 2;
}

std::vector<int> outcome_set(int num_states, std::uint64_t rank) {
    if (rank < static_cast<std::uint64_t>(num_states))
        return {static_cast<int>(rank)};
    rank -= num_states;
    for (int i = 0; i < num_states; ++i) {
        std::uint64_t here = static_cast<std::uint64_t>(num_states - i - 1);
        if (rank < here)
            return {i, i + 1 + static_cast<int>(rank)};
        rank -= here;
    }
    throw InvalidInput("outcome set rank out of range");
}

// per-state action configurations: none, one set, or two distinct sets
std::uint64_t state_config_count(int num_states) {
    std::uint64_t m = outcome_set_count(num_states);
    return 1 + m + m * (m - 1) / 2;
}

std::vector<std::vector<int>> state_config(int num_states, std::uint64_t rank) {
    std::uint64_t m = outcome_set_count(num_states);
    if (rank == 0)
        return {};
    --rank;
    if (rank < m)
        return {outcome_set(num_states, rank)};
    rank -= m;
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t here = m - i - 1;
        if (rank < here)
            return {outcome_set(num_states, i),
                    outcome_set(num_states, i + 1 + rank)};
        rank -= here;
    }
    throw InvalidInput("state configuration rank out of range");
}

} // namespace

std::uint64_t exhaustive_family_size(int num_states) {
    std::uint64_t c = state_config_count(num_states);
    std::uint64_t total = 1;
    for (int i = 0; i < num_states - 1; ++i)
        total *= c;
    return total;
}

TaskPtr exhaustive_task(int num_states, std::uint64_t index) {
    std::uint64_t c = state_config_count(num_states);
    ExplicitGraphTask g;
    for (int i = 0; i < num_states; ++i)
        g.states.push_back("s" + std::to_string(i));
    g.init = "s0";
    g.goals = {g.states.back()};
    for (int i = 0; i < num_states - 1; ++i) {
        std::uint64_t digit = index % c;
        index /= c;
        int a = 0;
        for (const std::vector<int> &outcomes : state_config(num_states, digit)) {
            ExplicitGraphTask::GraphAction action;
            action.label = "a" + std::to_string(a++);
            action.from = g.states[i];
            for (int t : outcomes)
                action.outcomes.push_back(g.states[t]);
            g.actions.push_back(std::move(action));
        }
    }
    return encode_explicit(g);
}

std::uint64_t default_seed() {
    if (const char *env = std::getenv("PLANNER_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
        }
    }
    return 0x5eed2024ULL;
}

} // namespace fondps
