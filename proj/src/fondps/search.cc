#include "search.h"

#include "concretizer.h"
#include "errors.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace fondps {

void SearchStats::accumulate(const SearchStats &other) {
    generated += other.generated;
    expanded += other.expanded;
    pruned_by_equivalence += other.pruned_by_equivalence;
    pruned_by_deadlock += other.pruned_by_deadlock;
    pruned_by_heuristic += other.pruned_by_heuristic;
    solutions_from_concretizer += other.solutions_from_concretizer;
    wall_s += other.wall_s;
}

std::string outcome_name(Outcome outcome) {
    switch (outcome) {
    case Outcome::solved:
        return "solved";
    case Outcome::bottom:
        return "bottom";
    case Outcome::resource_limit:
        return "resource-limit";
    }
    return "?";
}

ExpansionOrderScript ExpansionOrderScript::from_text(const std::string &text) {
    ExpansionOrderScript script;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        Line entry;
        if (!(fields >> entry.state_name))
            continue; // blank line
        if (entry.state_name[0] == '#')
            continue;
        std::string action;
        while (fields >> action)
            entry.action_names.push_back(action);
        script.lines_.push_back(std::move(entry));
    }
    return script;
}

ExpansionOrderScript ExpansionOrderScript::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

std::optional<ExpansionOrderScript::Choice>
ExpansionOrderScript::next(const Policy &policy) {
    if (next_ >= lines_.size())
        return std::nullopt;
    const FondTask &task = policy.task();
    if (!task.is_explicit_encoding())
        throw InvalidInput("scripted expansion orders need named states");
    const Line &line = lines_[next_++];
    Choice choice;
    choice.state = task.explicit_state(line.state_name);
    if (std::find(policy.remain().begin(), policy.remain().end(),
                  choice.state) == policy.remain().end())
        throw InvalidInput("scripted state '" + line.state_name +
                           "' is not awaiting a mapping at this expansion");
    for (const std::string &name : line.action_names) {
        int id = task.action_id(name);
        if (id < 0)
            throw InvalidInput("scripted action '" + name + "' is unknown");
        choice.action_order.push_back(id);
    }
    return choice;
}

std::vector<Policy> expand(const Policy &policy, ExpansionOrderScript *script) {
    if (policy.remain().empty())
        return {};

    State selected = policy.remain().back(); // most recently added
    std::vector<int> action_order;
    if (script) {
        if (auto choice = script->next(policy)) {
            selected = choice->state;
            action_order = std::move(choice->action_order);
        }
    }
    std::vector<int> applicable = policy.task().applicable_actions(selected);
    if (!action_order.empty()) {
        // scripted actions first, remaining applicable ones after
        std::vector<int> merged;
        for (int a : action_order)
            if (std::find(applicable.begin(), applicable.end(), a) !=
                applicable.end())
                merged.push_back(a);
        for (int a : applicable)
            if (std::find(merged.begin(), merged.end(), a) == merged.end())
                merged.push_back(a);
        applicable = std::move(merged);
    }

    std::vector<Policy> successors;
    successors.reserve(applicable.size());
    for (int a : applicable)
        successors.push_back(policy.extend(selected, a));
    return successors;
}

namespace {

struct QueueEntry {
    ExtInt f;
    int g;
    std::uint64_t index;
    std::shared_ptr<const Policy> policy;
};

struct QueueOrder {
    // priority_queue keeps the *largest*; invert so the best entry is
    // least f, then greatest g, then first generated
    bool operator()(const QueueEntry &a, const QueueEntry &b) const {
        if (a.f != b.f)
            return a.f > b.f;
        if (a.g != b.g)
            return a.g < b.g;
        return a.index > b.index;
    }
};

} // namespace

SearchResult and_star(const TaskPtr &task, const SearchConfig &config,
                      const ClassicalHeuristic &heuristic,
                      ExpansionOrderScript *script,
                      std::shared_ptr<const PermutationGroup> group) {
    auto start = std::chrono::steady_clock::now();
    SearchResult result;
    SearchStats &stats = result.stats;

    SignatureContext ctx;
    ctx.goal_merging = config.goal_merging;
    ctx.state_sign = config.state_sign;
    if (config.pruning == PruningKind::frontier_symmetric &&
        ctx.state_sign == StateSignMode::none)
        ctx.state_sign = StateSignMode::canonical;
    if (config.pruning == PruningKind::frontier_symmetric && !group) {
        GeneratorSearchOptions opts;
        opts.time_budget_s = config.symmetry_time_budget_s;
        group = std::make_shared<PermutationGroup>(
            find_generators(task, opts).generators(), config.orbit_budget);
    }
    ctx.group = group;

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue;
    std::unordered_set<SignatureKey, SignatureKeyHash> done;
    std::unordered_set<SignatureKey, SignatureKeyHash> generated_identities;
    std::uint64_t next_index = 0;

    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    };
    auto finish = [&](Outcome outcome, std::optional<Policy> solution) {
        result.outcome = outcome;
        result.solution = std::move(solution);
        stats.wall_s = elapsed();
        return result;
    };

    auto enqueue = [&](Policy &&policy) -> bool /* over budget */ {
        ++stats.generated;
        if (config.debug_trace) {
            SignatureKey id_key =
                make_signature(policy, PruningKind::identity, ctx);
            if (!generated_identities.insert(id_key).second)
                throw Error("internal: a policy was generated twice");
        }
        if (config.max_policies && stats.generated > config.max_policies)
            return true;
        ExtInt f = f_value(policy, heuristic, config.mode);
        if (f == INFTY) {
            ++stats.pruned_by_heuristic;
            return false;
        }
        int g = policy.size();
        queue.push({f, g, next_index++,
                    std::make_shared<const Policy>(std::move(policy))});
        return false;
    };

    if (enqueue(Policy(task)))
        return finish(Outcome::resource_limit, std::nullopt);

    while (!queue.empty()) {
        if (config.time_limit_s > 0 && elapsed() > config.time_limit_s)
            return finish(Outcome::resource_limit, std::nullopt);

        std::shared_ptr<const Policy> policy = queue.top().policy;
        queue.pop();

        if (policy->is_solution())
            return finish(Outcome::solved, *policy);
        if (config.use_concretizer && policy->remain().empty()) {
            StateSet domain, frontier;
            for (const auto &[state, action] : policy->mappings())
                domain.insert(state);
            for (const State &s : policy->front())
                frontier.insert(s);
            // under goal merging the done-set identifies fronts that
            // differ only in goal identity, so the deduction must admit
            // every goal state as a frontier member
            if (auto deduced =
                    concretize(task, domain, frontier, config.goal_merging)) {
                ++stats.solutions_from_concretizer;
                return finish(Outcome::solved, std::move(*deduced));
            }
        }

        SignatureKey key = make_signature(*policy, config.pruning, ctx);
        if (!done.insert(key).second) {
            ++stats.pruned_by_equivalence;
            continue;
        }
        ++stats.expanded;
        if (config.debug_trace)
            stats.expanded_policies.push_back(*policy);

        for (Policy &succ : expand(*policy, script)) {
            if (config.deadlock_detection && !succ.proper()) {
                ++stats.generated;
                ++stats.pruned_by_deadlock;
                continue;
            }
            if (enqueue(std::move(succ)))
                return finish(Outcome::resource_limit, std::nullopt);
        }
    }
    return finish(Outcome::bottom, std::nullopt);
}

SearchResult run_planner(const TaskPtr &task, const SearchConfig &config,
                         const ClassicalHeuristic &heuristic,
                         ExpansionOrderScript *script) {
    std::shared_ptr<const PermutationGroup> group;
    if (config.pruning == PruningKind::frontier_symmetric) {
        GeneratorSearchOptions opts;
        opts.time_budget_s = config.symmetry_time_budget_s;
        group = std::make_shared<PermutationGroup>(
            find_generators(task, opts).generators(), config.orbit_budget);
    }

    if (script)
        script->reset();
    SearchResult first = and_star(task, config, heuristic, script, group);
    bool needs_backup = (config.pruning == PruningKind::frontier ||
                         config.pruning == PruningKind::frontier_symmetric) &&
                        first.outcome == Outcome::bottom;
    if (!needs_backup)
        return first;

    SearchConfig backup_config = config;
    backup_config.pruning = PruningKind::domain_frontier;
    if (script)
        script->reset();
    SearchResult second = and_star(task, backup_config, heuristic, script);
    second.stats.accumulate(first.stats);
    return second;
}

} // namespace fondps
