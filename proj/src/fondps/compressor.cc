#include "compressor.h"

#include "errors.h"

namespace fondps {

CoverInstance cover_instance_for_action(const Policy &policy, int action) {
    CoverInstance instance;
    instance.num_facts = policy.task().num_facts();
    for (const auto &[state, mapped] : policy.mappings()) {
        if (mapped == action)
            instance.cover.push_back(state);
        else
            instance.exclude.push_back(state);
    }
    for (const State &s : policy.front())
        instance.exclude.push_back(s);
    return instance;
}

PartialPolicy compress(const Policy &policy, const CompressOptions &options) {
    std::vector<std::pair<PartialState, int>> entries;
    for (int action = 0; action < policy.task().num_actions(); ++action) {
        CoverInstance instance = cover_instance_for_action(policy, action);
        if (instance.cover.empty())
            continue;
        CoverSolveOptions solve_options;
        solve_options.node_budget = options.solver_node_budget;
        int max_k = static_cast<int>(instance.cover.size());
        for (int k = 1; k <= max_k; ++k) {
            std::optional<CoverSolution> solution =
                solve_cover(instance, k, solve_options);
            if (solution) {
                for (PartialState &p : solution->parts)
                    entries.emplace_back(std::move(p), action);
                break;
            }
        }
    }
    PartialPolicy tau(std::move(entries));
    if (policy.is_solution() && !validate_partial_solution(policy.task_ptr(), tau))
        throw Error("internal: compressed policy failed validation");
    return tau;
}

} // namespace fondps
