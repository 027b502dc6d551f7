#include "concretizer.h"

#include "errors.h"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace fondps {

namespace {

void check_input(const TaskPtr &task, const StateSet &domain,
                 const StateSet &frontier) {
    for (const State &s : domain) {
        if (frontier.count(s))
            throw InvalidInput("domain and frontier sets intersect");
        if (task->is_goal(s))
            throw InvalidInput("domain contains a goal state");
    }
}

struct Candidate {
    State state;
    int action;
    std::vector<State> succs;
};

bool candidate_order(const Candidate *a, const Candidate *b) {
    if (a->state != b->state)
        return a->state < b->state;
    return a->action < b->action;
}

} // namespace

std::optional<Policy> concretize(const TaskPtr &task, const StateSet &domain,
                                 const StateSet &frontier,
                                 bool goals_are_frontier) {
    check_input(task, domain, frontier);

    auto in_frontier = [&](const State &s) {
        return frontier.count(s) ||
               (goals_are_frontier && task->is_goal(s));
    };
    auto in_reach_sets = [&](const State &s) {
        return domain.count(s) || in_frontier(s);
    };

    // candidates passing the static filter succs(s, a) ⊆ D ∪ F
    std::vector<Candidate> candidates;
    for (const State &s : domain) {
        for (int a : task->applicable_actions(s)) {
            std::vector<State> succs = task->successors(s, a);
            bool inside = true;
            for (const State &succ : succs)
                if (!in_reach_sets(succ)) {
                    inside = false;
                    break;
                }
            if (inside)
                candidates.push_back({s, a, std::move(succs)});
        }
    }

    // watchers: candidate becomes enabled when one of its successors
    // enters F or the handled part of D
    std::unordered_map<State, std::vector<Candidate *>, StateHash> watchers;
    std::vector<Candidate *> enabled;
    auto enable = [&](Candidate *c) {
        enabled.push_back(c);
        std::push_heap(enabled.begin(), enabled.end(),
                       [](Candidate *a, Candidate *b) {
                           return candidate_order(b, a); // min-heap
                       });
    };
    std::unordered_set<const Candidate *> enabled_once;
    for (Candidate &c : candidates) {
        bool meets_frontier = false;
        for (const State &succ : c.succs)
            if (in_frontier(succ)) {
                meets_frontier = true;
                break;
            }
        if (meets_frontier) {
            enabled_once.insert(&c);
            enable(&c);
        } else {
            for (const State &succ : c.succs)
                if (domain.count(succ) && !(succ == c.state))
                    watchers[succ].push_back(&c);
        }
    }

    std::vector<std::pair<State, int>> mappings;
    StateSet handled;
    while (handled.size() < domain.size()) {
        Candidate *chosen = nullptr;
        while (!enabled.empty()) {
            std::pop_heap(enabled.begin(), enabled.end(),
                          [](Candidate *a, Candidate *b) {
                              return candidate_order(b, a);
                          });
            Candidate *top = enabled.back();
            enabled.pop_back();
            if (!handled.count(top->state)) {
                chosen = top;
                break;
            }
        }
        if (!chosen)
            return std::nullopt; // unconcretizable hollow policy
        mappings.emplace_back(chosen->state, chosen->action);
        handled.insert(chosen->state);
        auto it = watchers.find(chosen->state);
        if (it != watchers.end()) {
            for (Candidate *c : it->second)
                if (enabled_once.insert(c).second)
                    enable(c);
            watchers.erase(it);
        }
    }
    return Policy::build(task, mappings);
}

std::optional<Policy> concretize_reference(const TaskPtr &task,
                                           const StateSet &domain,
                                           const StateSet &frontier,
                                           bool goals_are_frontier) {
    check_input(task, domain, frontier);

    auto in_frontier = [&](const State &s) {
        return frontier.count(s) ||
               (goals_are_frontier && task->is_goal(s));
    };

    std::vector<State> remaining(domain.begin(), domain.end());
    std::sort(remaining.begin(), remaining.end());
    StateSet handled;
    std::vector<std::pair<State, int>> mappings;

    while (!remaining.empty()) {
        bool found = false;
        State chosen_state;
        int chosen_action = -1;
        for (const State &s : remaining) {
            for (int a : task->applicable_actions(s)) {
                bool inside = true;
                bool meets = false;
                for (const State &succ : task->successors(s, a)) {
                    if (!domain.count(succ) && !in_frontier(succ))
                        inside = false;
                    if (in_frontier(succ) || handled.count(succ))
                        meets = true;
                }
                if (inside && meets) {
                    chosen_state = s;
                    chosen_action = a;
                    found = true;
                    break;
                }
            }
            if (found)
                break; // remaining is kept sorted, so this is the lowest state
        }
        if (!found)
            return std::nullopt;
        mappings.emplace_back(chosen_state, chosen_action);
        handled.insert(chosen_state);
        remaining.erase(
            std::find(remaining.begin(), remaining.end(), chosen_state));
    }
    return Policy::build(task, mappings);
}

} // namespace fondps
