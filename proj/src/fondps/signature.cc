#include "signature.h"

#include "errors.h"

#include <algorithm>

namespace fondps {

PruningKind parse_pruning(const std::string &text) {
    if (text == "identity")
        return PruningKind::identity;
    if (text == "lanes")
        return PruningKind::lanes;
    if (text == "domain-frontier")
        return PruningKind::domain_frontier;
    if (text == "frontier")
        return PruningKind::frontier;
    if (text == "frontier-sym")
        return PruningKind::frontier_symmetric;
    throw InvalidInput("unknown pruning kind: " + text);
}

std::string pruning_name(PruningKind kind) {
    switch (kind) {
    case PruningKind::identity:
        return "identity";
    case PruningKind::lanes:
        return "lanes";
    case PruningKind::domain_frontier:
        return "domain-frontier";
    case PruningKind::frontier:
        return "frontier";
    case PruningKind::frontier_symmetric:
        return "frontier-sym";
    }
    return "?";
}

StateSignMode parse_state_sign(const std::string &text) {
    if (text == "none")
        return StateSignMode::none;
    if (text == "greedy")
        return StateSignMode::greedy;
    if (text == "canonical")
        return StateSignMode::canonical;
    throw InvalidInput("unknown symmetry mode: " + text);
}

namespace {

constexpr std::uint64_t VIRTUAL_GOAL = 0xf0f0f0f0f0f0f0f0ULL;

void push_state(std::vector<std::uint64_t> &words, const State &s) {
    words.push_back(s.blocks().size());
    for (std::uint64_t b : s.blocks())
        words.push_back(b);
}

/*
  Frontier states in a canonical serialization order. With goal merging
  every goal state collapses into one virtual goal entry; with a state
  signature every non-goal state is first replaced by its class
  representative.
*/
void push_front_states(std::vector<std::uint64_t> &words, const Policy &policy,
                       const SignatureContext &ctx, bool use_state_sign) {
    const FondTask &task = policy.task();
    bool any_goal = false;
    std::vector<State> plain;
    for (const State &s : policy.front()) {
        if (ctx.goal_merging && task.is_goal(s)) {
            any_goal = true;
            continue;
        }
        if (use_state_sign && ctx.state_sign != StateSignMode::none &&
            ctx.group && !ctx.group->trivial()) {
            if (ctx.state_sign == StateSignMode::greedy) {
                plain.push_back(ctx.group->greedy_signature(s));
            } else {
                try {
                    plain.push_back(ctx.group->canonical_signature(s));
                } catch (const OrbitBudgetExceeded &) {
                    plain.push_back(ctx.group->greedy_signature(s));
                }
            }
        } else {
            plain.push_back(s);
        }
    }
    std::sort(plain.begin(), plain.end());
    words.push_back(plain.size() + (any_goal ? 1 : 0));
    if (any_goal)
        words.push_back(VIRTUAL_GOAL);
    for (const State &s : plain)
        push_state(words, s);
}

void push_state_set(std::vector<std::uint64_t> &words, std::vector<State> states,
                    const Policy &policy, const SignatureContext &ctx) {
    const FondTask &task = policy.task();
    bool any_goal = false;
    std::vector<State> plain;
    for (const State &s : states) {
        if (ctx.goal_merging && task.is_goal(s)) {
            any_goal = true;
            continue;
        }
        plain.push_back(s);
    }
    std::sort(plain.begin(), plain.end());
    words.push_back(plain.size() + (any_goal ? 1 : 0));
    if (any_goal)
        words.push_back(VIRTUAL_GOAL);
    for (const State &s : plain)
        push_state(words, s);
}

} // namespace

void SignatureKey::seal() {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (std::uint64_t w : words_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
    }
    hash_ = h;
}

SignatureKey make_signature(const Policy &policy, PruningKind kind,
                            const SignatureContext &ctx) {
    SignatureKey key;
    std::vector<std::uint64_t> &words = key.words_;
    words.push_back(static_cast<std::uint64_t>(kind));

    switch (kind) {
    case PruningKind::identity: {
        std::vector<std::pair<State, int>> sorted(policy.mappings());
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        words.push_back(sorted.size());
        for (const auto &[state, action] : sorted) {
            push_state(words, state);
            words.push_back(static_cast<std::uint64_t>(action));
        }
        break;
    }
    case PruningKind::lanes: {
        std::vector<std::pair<State, std::vector<State>>> all = policy.lanes();
        std::sort(all.begin(), all.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        words.push_back(all.size());
        for (const auto &[state, escape] : all) {
            push_state(words, state);
            push_state_set(words, escape, policy, ctx);
        }
        break;
    }
    case PruningKind::domain_frontier: {
        std::vector<State> domain;
        domain.reserve(policy.mappings().size());
        for (const auto &[state, action] : policy.mappings())
            domain.push_back(state);
        std::sort(domain.begin(), domain.end());
        words.push_back(domain.size());
        for (const State &s : domain)
            push_state(words, s);
        push_front_states(words, policy, ctx, false);
        break;
    }
    case PruningKind::frontier:
        push_front_states(words, policy, ctx, false);
        break;
    case PruningKind::frontier_symmetric:
        push_front_states(words, policy, ctx, true);
        break;
    }
    key.seal();
    return key;
}

} // namespace fondps
