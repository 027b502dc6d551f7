#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.h"

#include "fondps/errors.h"
#include "fondps/policy.h"
#include "fondps/rng.h"
#include "fondps/validator.h"

#include <algorithm>
#include <deque>
#include <unordered_set>

using namespace fondps;
using namespace fondps::test;

namespace {

std::vector<std::string> sorted_names(const TaskPtr &task,
                                      const std::vector<State> &states) {
    return names_of(task, states);
}

// from-scratch recomputation of the cached sets, policy module unused
struct Recomputed {
    std::unordered_set<State, StateHash> reach;
    std::vector<State> front;
    std::vector<State> remain;
    bool proper;
};

Recomputed recompute(const TaskPtr &task, const Policy &policy) {
    Recomputed r;
    std::unordered_map<State, int, StateHash> map;
    for (const auto &[state, action] : policy.mappings())
        map.emplace(state, action);
    for (const auto &[state, action] : policy.mappings())
        r.reach.insert(state);
    for (const auto &[state, action] : policy.mappings())
        for (const State &succ : task->successors(state, action))
            r.reach.insert(succ);
    for (const State &s : r.reach)
        if (!map.count(s))
            r.front.push_back(s);
    for (const State &s : r.front)
        if (!task->is_goal(s))
            r.remain.push_back(s);
    if (!task->is_goal(task->init()) && !map.count(task->init()) &&
        std::find_if(r.remain.begin(), r.remain.end(), [&](const State &s) {
            return s == task->init();
        }) == r.remain.end())
        r.remain.push_back(task->init());
    r.proper = true;
    for (const auto &[state, action] : policy.mappings()) {
        std::unordered_set<State, StateHash> visited{state};
        std::deque<State> queue{state};
        bool escapes = false;
        while (!queue.empty() && !escapes) {
            State s = queue.front();
            queue.pop_front();
            auto it = map.find(s);
            if (it == map.end()) {
                escapes = true;
            } else {
                for (const State &succ : task->successors(s, it->second))
                    if (visited.insert(succ).second)
                        queue.push_back(succ);
            }
        }
        if (!escapes)
            r.proper = false;
    }
    return r;
}

void check_caches_against_recomputation(const TaskPtr &task,
                                        const Policy &policy) {
    Recomputed r = recompute(task, policy);
    CHECK(policy.reach() == r.reach);
    std::vector<State> front = policy.front();
    std::sort(front.begin(), front.end());
    std::sort(r.front.begin(), r.front.end());
    CHECK(front == r.front);
    std::vector<State> remain = policy.remain();
    std::sort(remain.begin(), remain.end());
    std::sort(r.remain.begin(), r.remain.end());
    CHECK(remain == r.remain);
    CHECK(policy.proper() == r.proper);
}

// random policy over the reachable non-goal states of a task
std::optional<Policy> random_policy(const TaskPtr &task, Rng &rng) {
    std::vector<State> pool{task->init()};
    std::unordered_set<State, StateHash> seen{task->init()};
    for (std::size_t i = 0; i < pool.size() && pool.size() < 40; ++i)
        for (int a : task->applicable_actions(pool[i]))
            for (const State &succ : task->successors(pool[i], a))
                if (seen.insert(succ).second)
                    pool.push_back(succ);
    std::vector<std::pair<State, int>> mappings;
    for (const State &s : pool) {
        if (task->is_goal(s) || rng.coin())
            continue;
        std::vector<int> actions = task->applicable_actions(s);
        if (actions.empty())
            continue;
        mappings.emplace_back(s, actions[rng.below(actions.size())]);
    }
    if (mappings.empty())
        return std::nullopt;
    return Policy::build(task, mappings);
}

} // namespace

TEST_CASE("fig1 named policies") {
    TaskPtr task = fig1();
    Policy pi1 = make_policy(task, {{"s_D", "d"}, {"s_E", "e"}});
    CHECK(pi1.proper());
    CHECK(sorted_names(task, pi1.front()) == std::vector<std::string>{"s_F"});
    CHECK(!pi1.is_solution()); // the initial state is not covered
    CHECK(sorted_names(task, pi1.remain()) == std::vector<std::string>{"s_A"});

    Policy pi2 = make_policy(task, {{"s_A", "a"},
                                    {"s_B", "b"},
                                    {"s_C", "c_L"},
                                    {"s_D", "d"},
                                    {"s_E", "e"}});
    CHECK(pi2.is_solution());
    CHECK(pi2.size() == 5);

    Policy pi3 = make_policy(task, {{"s_A", "a"},
                                    {"s_B", "b"},
                                    {"s_C", "c_R"},
                                    {"s_D", "d"},
                                    {"s_E", "e"}});
    CHECK(!pi3.proper());
    CHECK(!pi3.is_solution());
    CHECK(pi3.escape_set(s(task, "s_B")).empty());
    CHECK(pi3.escape_set(s(task, "s_C")).empty());
    // s_D still escapes to s_F
    CHECK(sorted_names(task, pi3.escape_set(s(task, "s_D"))) ==
          std::vector<std::string>{"s_F"});
}

TEST_CASE("extend reaches the fig1 solution") {
    TaskPtr task = fig1();
    Policy p = Policy(task);
    CHECK(p.empty());
    CHECK(p.proper());
    CHECK(sorted_names(task, p.remain()) == std::vector<std::string>{"s_A"});

    p = p.extend(s(task, "s_A"), act(task, "a"));
    CHECK(p.size() == 1);
    CHECK(sorted_names(task, p.front()) ==
          std::vector<std::string>{"s_B", "s_D"});
    p = p.extend(s(task, "s_B"), act(task, "b"));
    p = p.extend(s(task, "s_C"), act(task, "c_L"));
    p = p.extend(s(task, "s_D"), act(task, "d"));
    CHECK(!p.is_solution());
    Policy solution = p.extend(s(task, "s_E"), act(task, "e"));
    CHECK(solution.remain().empty());
    CHECK(solution.is_solution());
    // the parent is untouched
    CHECK(p.size() == 4);
    CHECK(!p.remain().empty());
}

TEST_CASE("extend error cases") {
    TaskPtr task = fig1();
    Policy p = Policy(task).extend(s(task, "s_A"), act(task, "a"));
    CHECK_THROWS_AS(p.extend(s(task, "s_A"), act(task, "a")), AlreadyMapped);
    CHECK_THROWS_AS(p.extend(s(task, "s_B"), act(task, "e")), NotApplicable);
    CHECK_THROWS_AS(p.extend(s(task, "s_F"), act(task, "e")), GoalStateMapped);
}

TEST_CASE("fig2 extension example") {
    TaskPtr task = fig2();
    Policy base = make_policy(task, {{"s_A", "a"}, {"s_B", "b"}});
    Policy pi_r = base.extend(s(task, "s_D"), act(task, "d_R"));
    CHECK(sorted_names(task, pi_r.front()) ==
          std::vector<std::string>{"s_C", "s_E"});
}

TEST_CASE("escape sets on fig2") {
    TaskPtr task = fig2();
    Policy pi_l = make_policy(task, {{"s_A", "a"}, {"s_B", "b"}, {"s_D", "d_L"}});
    Policy pi_r = make_policy(task, {{"s_A", "a"}, {"s_B", "b"}, {"s_D", "d_R"}});
    CHECK(sorted_names(task, pi_l.escape_set(s(task, "s_D"))) ==
          std::vector<std::string>{"s_E"});
    CHECK(sorted_names(task, pi_r.escape_set(s(task, "s_D"))) ==
          std::vector<std::string>{"s_C"});

    // a singleton policy escapes to its successors (minus itself)
    Policy singleton = make_policy(task, {{"s_B", "b"}});
    CHECK(sorted_names(task, singleton.escape_set(s(task, "s_B"))) ==
          std::vector<std::string>{"s_C", "s_D", "s_E"});

    Policy stuck = pi_r.extend(s(task, "s_C"), act(task, "c"));
    CHECK(stuck.escape_set(s(task, "s_C")).empty());
    CHECK(stuck.escape_set(s(task, "s_D")).empty());
    CHECK(!stuck.proper());

    CHECK_THROWS_AS(pi_l.escape_set(s(task, "s_X")), NotInDomain);
}

TEST_CASE("lanes on fig2") {
    TaskPtr task = fig2();
    Policy pi_l = make_policy(task, {{"s_A", "a"}, {"s_B", "b"}, {"s_D", "d_L"}});
    Policy pi_r = make_policy(task, {{"s_A", "a"}, {"s_B", "b"}, {"s_D", "d_R"}});

    auto lane_names = [&](const Policy &p) {
        std::vector<std::pair<std::string, std::vector<std::string>>> result;
        for (const auto &[state, escape] : p.lanes())
            result.emplace_back(task->explicit_state_name(state),
                                sorted_names(task, escape));
        std::sort(result.begin(), result.end());
        return result;
    };
    std::vector<std::pair<std::string, std::vector<std::string>>> expected_l{
        {"s_A", {"s_C", "s_E"}}, {"s_B", {"s_C", "s_E"}}, {"s_D", {"s_E"}}};
    std::vector<std::pair<std::string, std::vector<std::string>>> expected_r{
        {"s_A", {"s_C", "s_E"}}, {"s_B", {"s_C", "s_E"}}, {"s_D", {"s_C"}}};
    CHECK(lane_names(pi_l) == expected_l);
    CHECK(lane_names(pi_r) == expected_r);
    CHECK(Policy(task).lanes().empty());
}

TEST_CASE("deadlock detection on extension") {
    TaskPtr task = fig1();
    Policy base = make_policy(task, {{"s_A", "a"}, {"s_B", "b"}});
    CHECK(base.deadlock_on_extend(s(task, "s_C"), act(task, "c_R")));
    CHECK(!base.deadlock_on_extend(s(task, "s_C"), act(task, "c_L")));
    // a goal successor keeps the extension proper
    CHECK(!make_policy(task, {{"s_A", "a"}})
               .deadlock_on_extend(s(task, "s_D"), act(task, "d")));

    TaskPtr task2 = fig2();
    Policy pi_r =
        make_policy(task2, {{"s_A", "a"}, {"s_B", "b"}, {"s_D", "d_R"}});
    CHECK(pi_r.deadlock_on_extend(s(task2, "s_C"), act(task2, "c")));
}

TEST_CASE("empty policy properties") {
    TaskPtr task = fig1();
    Policy empty(task);
    CHECK(empty.proper());
    CHECK(!empty.is_solution()); // init is not a goal

    TaskPtr trivial = parse_explicit(
        R"({"states":["s"],"init":"s","goals":["s"],"actions":[]})");
    CHECK(Policy(trivial).is_solution());
}

TEST_CASE("slice keeps a restriction of the mappings") {
    TaskPtr task = fig1();
    Policy pi2 = make_policy(task, {{"s_A", "a"},
                                    {"s_B", "b"},
                                    {"s_C", "c_L"},
                                    {"s_D", "d"},
                                    {"s_E", "e"}});
    std::unordered_set<State, StateHash> keep{s(task, "s_D"), s(task, "s_E")};
    Policy sliced = pi2.slice(keep);
    CHECK(sliced.size() == 2);
    CHECK(sliced.proper()); // subsets of proper policies stay proper
    CHECK(*sliced.action_for(s(task, "s_D")) == act(task, "d"));
}

TEST_CASE("caches agree with recomputation on random micro policies") {
    std::uint64_t seed = default_seed();
    int checked = 0;
    for (std::uint64_t i = 0; i < 60; ++i) {
        TaskPtr task = micro_task(seed, i);
        Rng rng(seed ^ (i * 7919));
        std::optional<Policy> policy = random_policy(task, rng);
        if (!policy)
            continue;
        ++checked;
        check_caches_against_recomputation(task, *policy);

        // subset properness: slices of proper policies stay proper
        if (policy->proper()) {
            std::unordered_set<State, StateHash> keep;
            for (const auto &[state, action] : policy->mappings())
                if (rng.coin())
                    keep.insert(state);
            CHECK(policy->slice(keep).proper());
        }

        // escape sets live inside the frontier
        for (const auto &[state, escape] : policy->lanes())
            for (const State &e : escape)
                CHECK(policy->in_front(e));
    }
    CHECK(checked > 20);
}

TEST_CASE("deadlock_on_extend agrees with full properness recomputation") {
    std::uint64_t seed = default_seed() + 1;
    for (std::uint64_t i = 0; i < 40; ++i) {
        TaskPtr task = micro_task(seed, i);
        Rng rng(seed ^ (i * 104729));
        std::optional<Policy> policy = random_policy(task, rng);
        if (!policy || !policy->proper())
            continue;
        for (const State &state : std::vector<State>(policy->remain())) {
            for (int a : task->applicable_actions(state)) {
                Policy extended = policy->extend(state, a);
                Recomputed r = recompute(task, extended);
                CHECK(policy->deadlock_on_extend(state, a) == !r.proper);
            }
        }
    }
}

TEST_CASE("extend records insertion order for remain") {
    TaskPtr task = fig2();
    Policy p = Policy(task).extend(s(task, "s_A"), act(task, "a_bad"));
    // outcomes of a_bad are declared s_B then s_X
    REQUIRE(p.remain().size() == 2);
    CHECK(task->explicit_state_name(p.remain()[0]) == "s_B");
    CHECK(task->explicit_state_name(p.remain()[1]) == "s_X");
}

TEST_CASE("goal-closed but improper policies are not solutions") {
    TaskPtr task = fig2();
    Policy pi8 = make_policy(task, {{"s_A", "a"},
                                    {"s_B", "b"},
                                    {"s_C", "c"},
                                    {"s_D", "d_R"},
                                    {"s_E", "e"}});
    CHECK(pi8.remain().empty()); // goal-closed and the init is covered
    CHECK(!pi8.proper());        // the c/d_R loop cannot escape
    CHECK(!pi8.is_solution());
}
