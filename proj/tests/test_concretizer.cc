#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.h"

#include "fondps/concretizer.h"
#include "fondps/errors.h"
#include "fondps/rng.h"
#include "fondps/validator.h"

#include <algorithm>

using namespace fondps;
using namespace fondps::test;

namespace {

StateSet set_of(const TaskPtr &task, const std::vector<std::string> &names) {
    StateSet result;
    for (const std::string &name : names)
        result.insert(s(task, name));
    return result;
}

void check_postconditions(const TaskPtr &task, const Policy &policy,
                          const StateSet &domain, const StateSet &frontier) {
    CHECK(policy.proper());
    CHECK(policy.size() == static_cast<int>(domain.size()));
    for (const auto &[state, action] : policy.mappings())
        CHECK(domain.count(state));
    for (const State &f : policy.front())
        CHECK(frontier.count(f));
}

// every (domain, frontier) pair over the named states of a small task
template <typename Callback>
void for_all_hollow_pairs(const TaskPtr &task, const Callback &callback) {
    std::vector<State> non_goal, all;
    for (const std::string &name : task->explicit_state_names()) {
        State state = task->explicit_state(name);
        all.push_back(state);
        if (!task->is_goal(state))
            non_goal.push_back(state);
    }
    int n = static_cast<int>(non_goal.size());
    int m = static_cast<int>(all.size());
    for (std::uint32_t dmask = 0; dmask < (1u << n); ++dmask) {
        StateSet domain;
        std::vector<State> domain_order;
        for (int i = 0; i < n; ++i)
            if (dmask >> i & 1) {
                domain.insert(non_goal[i]);
                domain_order.push_back(non_goal[i]);
            }
        std::vector<State> rest;
        for (const State &state : all)
            if (!domain.count(state))
                rest.push_back(state);
        int r = static_cast<int>(rest.size());
        for (std::uint32_t fmask = 0; fmask < (1u << r); ++fmask) {
            StateSet frontier;
            for (int i = 0; i < r; ++i)
                if (fmask >> i & 1)
                    frontier.insert(rest[i]);
            callback(domain, domain_order, frontier);
        }
    }
}

} // namespace

TEST_CASE("fig2 walkthrough input concretizes without the bad mappings") {
    TaskPtr task = fig2();
    StateSet domain = set_of(task, {"s_A", "s_B", "s_C", "s_D", "s_E"});
    StateSet frontier = set_of(task, {"s_F"});
    auto result = concretize(task, domain, frontier);
    REQUIRE(result.has_value());
    check_postconditions(task, *result, domain, frontier);
    CHECK(*result->action_for(s(task, "s_D")) == act(task, "d_L"));
    CHECK(*result->action_for(s(task, "s_A")) == act(task, "a"));
}

TEST_CASE("empty domain concretizes to the empty policy") {
    TaskPtr task = fig2();
    auto result = concretize(task, {}, set_of(task, {"s_F"}));
    REQUIRE(result.has_value());
    CHECK(result->empty());
}

TEST_CASE("impossible hollow pair returns nothing") {
    TaskPtr task = fig2();
    auto result = concretize(task, set_of(task, {"s_B", "s_C"}), {});
    CHECK(!result.has_value());
}

TEST_CASE("invalid inputs are rejected") {
    TaskPtr task = fig2();
    CHECK_THROWS_AS(
        concretize(task, set_of(task, {"s_B"}), set_of(task, {"s_B"})),
        InvalidInput);
    CHECK_THROWS_AS(concretize(task, set_of(task, {"s_F"}), {}), InvalidInput);
}

TEST_CASE("worklist and reference agree exactly on the figures") {
    for (const TaskPtr &task : {fig1(), fig2(), fig3()}) {
        for_all_hollow_pairs(task, [&](const StateSet &domain,
                                       const std::vector<State> &domain_order,
                                       const StateSet &frontier) {
            auto fast = concretize(task, domain, frontier);
            auto slow = concretize_reference(task, domain, frontier);
            REQUIRE(fast.has_value() == slow.has_value());
            if (fast) {
                CHECK(fast->same_mappings(*slow));
                check_postconditions(task, *fast, domain, frontier);
                // completeness against exhaustive assignment enumeration
                CHECK(exists_proper_policy(task, domain_order, frontier));
            } else {
                CHECK(!exists_proper_policy(task, domain_order, frontier));
            }
        });
    }
}

TEST_CASE("selection order never changes feasibility") {
    // randomized greedy variant: picks any valid candidate each round
    auto randomized = [](const TaskPtr &task, const StateSet &domain,
                         const StateSet &frontier, Rng &rng) -> bool {
        StateSet handled;
        std::vector<State> remaining(domain.begin(), domain.end());
        std::sort(remaining.begin(), remaining.end());
        while (!remaining.empty()) {
            std::vector<std::pair<State, int>> candidates;
            for (const State &state : remaining)
                for (int a : task->applicable_actions(state)) {
                    bool inside = true, meets = false;
                    for (const State &succ : task->successors(state, a)) {
                        if (!domain.count(succ) && !frontier.count(succ))
                            inside = false;
                        if (frontier.count(succ) || handled.count(succ))
                            meets = true;
                    }
                    if (inside && meets)
                        candidates.emplace_back(state, a);
                }
            if (candidates.empty())
                return false;
            const auto &[state, action] =
                candidates[rng.below(candidates.size())];
            handled.insert(state);
            remaining.erase(
                std::find(remaining.begin(), remaining.end(), state));
        }
        return true;
    };

    Rng rng(default_seed() ^ 0x517e);
    for (std::uint64_t i = 0; i < 25; ++i) {
        TaskPtr task = micro_task(default_seed(), i);
        for_all_hollow_pairs(task, [&](const StateSet &domain,
                                       const std::vector<State> &,
                                       const StateSet &frontier) {
            bool deterministic = concretize(task, domain, frontier).has_value();
            for (int round = 0; round < 3; ++round)
                CHECK(randomized(task, domain, frontier, rng) == deterministic);
        });
    }
}

TEST_CASE("accepted mappings satisfy the regression filter") {
    TaskPtr task = fig2();
    StateSet domain = set_of(task, {"s_A", "s_B", "s_C", "s_D", "s_E"});
    StateSet frontier = set_of(task, {"s_F"});
    auto result = concretize(task, domain, frontier);
    REQUIRE(result.has_value());
    // replay the additions in order and check both conditions
    StateSet handled;
    for (const auto &[state, action] : result->mappings()) {
        bool meets = false;
        for (const State &succ : task->successors(state, action)) {
            CHECK((domain.count(succ) || frontier.count(succ)));
            if (frontier.count(succ) || handled.count(succ))
                meets = true;
        }
        CHECK(meets);
        handled.insert(state);
    }
}

TEST_CASE("goal states in the frontier are the normal case") {
    TaskPtr task = fig1();
    StateSet domain = set_of(task, {"s_A", "s_B", "s_C", "s_D", "s_E"});
    StateSet frontier = set_of(task, {"s_F"});
    auto result = concretize(task, domain, frontier);
    REQUIRE(result.has_value());
    CHECK(result->is_solution());
    CHECK(*result->action_for(s(task, "s_C")) == act(task, "c_L"));
}

TEST_CASE("goal states can stand in for the frontier wholesale") {
    TaskPtr task = fig1();
    StateSet domain = set_of(task, {"s_A", "s_B", "s_C", "s_D", "s_E"});
    // without the flag an empty frontier is hopeless; with it the goal
    // state s_F carries the regression
    CHECK(!concretize(task, domain, {}).has_value());
    auto result = concretize(task, domain, {}, true);
    REQUIRE(result.has_value());
    CHECK(result->is_solution());
    auto reference = concretize_reference(task, domain, {}, true);
    REQUIRE(reference.has_value());
    CHECK(result->same_mappings(*reference));
}
