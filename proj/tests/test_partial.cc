#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.h"

#include "fondps/errors.h"
#include "fondps/partial.h"
#include "fondps/rng.h"
#include "fondps/validator.h"

#include <algorithm>

using namespace fondps;
using namespace fondps::test;

namespace {

std::vector<State> all_states(int num_facts) {
    std::vector<State> states;
    for (std::uint32_t bits = 0; bits < (1u << num_facts); ++bits) {
        std::vector<int> trues;
        for (int f = 0; f < num_facts; ++f)
            if (bits >> f & 1)
                trues.push_back(f);
        states.emplace_back(static_cast<std::uint32_t>(num_facts), trues);
    }
    return states;
}

} // namespace

TEST_CASE("partial state matching") {
    PartialState p({{0, true}, {2, false}});
    CHECK(p.literal_count() == 2);
    CHECK(p.matches(State(3, {0})));
    CHECK(p.matches(State(3, {0, 1})));
    CHECK(!p.matches(State(3, {0, 2})));
    CHECK(!p.matches(State(3, {1})));

    PartialState everything;
    CHECK(everything.matches(State(3, {})));
    CHECK(everything.matches(State(3, {0, 1, 2})));

    CHECK_THROWS_AS(PartialState({{0, true}, {0, false}}), InvalidInput);
    CHECK_THROWS_AS(PartialState({{1, true}, {1, true}}), InvalidInput);
}

TEST_CASE("a universal rule maps every state to its action") {
    TaskPtr task = fig1();
    PartialPolicy tau({{PartialState{}, act(task, "a")}});
    for (const std::string &name : task->explicit_state_names()) {
        State state = s(task, name);
        CHECK(tau.rules(state) == std::vector<int>{act(task, "a")});
        CHECK(*tau.decompressed_action(state) == act(task, "a"));
        CHECK(!tau.buggy(state));
    }
}

TEST_CASE("overlapping rules with distinct actions are buggy") {
    PartialPolicy tau({
        {PartialState({{0, true}}), 0},
        {PartialState({{1, true}}), 1},
    });
    State overlap(2, {0, 1});
    CHECK(tau.buggy(overlap));
    CHECK(!tau.decompressed_action(overlap));
    State only_first(2, {0});
    CHECK(!tau.buggy(only_first));
    CHECK(*tau.decompressed_action(only_first) == 0);
    State neither(2, {});
    CHECK(!tau.buggy(neither));
    CHECK(!tau.decompressed_action(neither));

    // two rules agreeing on the action never conflict
    PartialPolicy agreeing({
        {PartialState({{0, true}}), 3},
        {PartialState({{1, true}}), 3},
    });
    CHECK(!agreeing.buggy(overlap));
    CHECK(*agreeing.decompressed_action(overlap) == 3);
}

TEST_CASE("duplicate partial states are rejected") {
    CHECK_THROWS_AS(PartialPolicy({
                        {PartialState({{0, true}}), 0},
                        {PartialState({{0, true}}), 1},
                    }),
                    InvalidInput);
}

TEST_CASE("lazy evaluation agrees with full enumeration") {
    Rng rng(default_seed() ^ 0xabcdef);
    for (int round = 0; round < 30; ++round) {
        int num_facts = rng.range(1, 5);
        int num_rules = rng.range(1, 4);
        std::vector<std::pair<PartialState, int>> entries;
        for (int r = 0; r < num_rules; ++r) {
            std::vector<std::pair<int, bool>> literals;
            for (int f = 0; f < num_facts; ++f) {
                int trit = rng.range(0, 2);
                if (trit)
                    literals.emplace_back(f, trit == 2);
            }
            PartialState p(std::move(literals));
            bool duplicate = false;
            for (const auto &[existing, action] : entries)
                if (existing == p)
                    duplicate = true;
            if (!duplicate)
                entries.emplace_back(std::move(p), rng.range(0, 2));
        }
        PartialPolicy tau(std::move(entries));
        for (const State &state : all_states(num_facts)) {
            // reference evaluation straight from the definition
            std::vector<int> actions;
            for (const auto &[partial, action] : tau.entries()) {
                bool matches = true;
                for (const auto &[f, v] : partial.literals())
                    if (state.test(f) != v)
                        matches = false;
                if (matches && std::find(actions.begin(), actions.end(),
                                         action) == actions.end())
                    actions.push_back(action);
            }
            CHECK(tau.buggy(state) == (actions.size() >= 2));
            if (actions.size() == 1)
                CHECK(*tau.decompressed_action(state) == actions.front());
            else
                CHECK(!tau.decompressed_action(state));
        }
    }
}

TEST_CASE("validate_partial_solution") {
    TaskPtr trivial = parse_explicit(
        R"({"states":["s"],"init":"s","goals":["s"],"actions":[]})");
    CHECK(validate_partial_solution(trivial, PartialPolicy{}));

    TaskPtr task = fig1();
    // mapping the initial state to an inapplicable action fails
    PartialPolicy bad({{PartialState{}, act(task, "e")}});
    CHECK(!validate_partial_solution(task, bad));

    // hand-built compression of the fig1 solution: one positive literal
    // per state
    auto lit = [&](const std::string &name) {
        return PartialState({{task->fact_id(name), true}});
    };
    PartialPolicy good({
        {lit("s_A"), act(task, "a")},
        {lit("s_B"), act(task, "b")},
        {lit("s_C"), act(task, "c_L")},
        {lit("s_D"), act(task, "d")},
        {lit("s_E"), act(task, "e")},
    });
    CHECK(validate_partial_solution(task, good));

    // the wrong branch at s_C is not a solution
    PartialPolicy wrong({
        {lit("s_A"), act(task, "a")},
        {lit("s_B"), act(task, "b")},
        {lit("s_C"), act(task, "c_R")},
        {lit("s_D"), act(task, "d")},
        {lit("s_E"), act(task, "e")},
    });
    CHECK(!validate_partial_solution(task, wrong));

    // a reachable conflict is rejected even when one rule is right
    PartialPolicy conflicted({
        {lit("s_A"), act(task, "a")},
        {PartialState{}, act(task, "b")},
    });
    CHECK(!validate_partial_solution(task, conflicted));
}
