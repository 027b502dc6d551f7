#include "fondps/compressor.h"
#include "fondps/errors.h"
#include "fondps/explicit_graph.h"
#include "fondps/heuristics.h"
#include "fondps/partial.h"
#include "fondps/pddl.h"
#include "fondps/policy_io.h"
#include "fondps/search.h"
#include "fondps/symmetry.h"
#include "fondps/validator.h"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace fondps;

namespace {

// python-visible handle to an immutable task
struct PyTask {
    TaskPtr ptr;
    const FondTask &get() const {
        return *ptr;
    }
};

// conditions as python values: a state name for explicit tasks, a
// fact->bool dict otherwise
py::object condition_of(const TaskPtr &task, const State &state) {
    if (task->is_explicit_encoding())
        return py::str(task->explicit_state_name(state));
    py::dict d;
    for (const Fact &f : task->facts())
        d[py::str(f.name)] = state.test(f.id);
    return d;
}

State state_from_object(const TaskPtr &task, const py::object &condition) {
    if (py::isinstance<py::str>(condition))
        return task->explicit_state(condition.cast<std::string>());
    std::vector<int> trues;
    for (auto item : condition.cast<py::dict>()) {
        int f = task->fact_id(item.first.cast<std::string>());
        if (f < 0)
            throw InvalidInput("unknown fact name");
        if (item.second.cast<bool>())
            trues.push_back(f);
    }
    return State(static_cast<std::uint32_t>(task->num_facts()), trues);
}

Policy policy_from_mappings(const TaskPtr &task, const py::list &mappings) {
    std::vector<std::pair<State, int>> resolved;
    for (auto item : mappings) {
        py::tuple pair = item.cast<py::tuple>();
        int action = task->action_id(pair[1].cast<std::string>());
        if (action < 0)
            throw InvalidInput("unknown action name");
        resolved.emplace_back(state_from_object(task, pair[0]), action);
    }
    return Policy::build(task, resolved);
}

py::list mappings_of(const TaskPtr &task, const Policy &policy) {
    py::list out;
    for (const auto &[state, action] : policy.mappings())
        out.append(py::make_tuple(condition_of(task, state),
                                  task->actions()[action].name));
    return out;
}

SearchConfig config_from_kwargs(const py::kwargs &kwargs) {
    SearchConfig config;
    config.pruning = PruningKind::frontier;
    for (auto item : kwargs) {
        std::string key = item.first.cast<std::string>();
        if (key == "pruning")
            config.pruning = parse_pruning(item.second.cast<std::string>());
        else if (key == "algorithm")
            config.mode = SearchMode::parse(item.second.cast<std::string>());
        else if (key == "deadlock_detection")
            config.deadlock_detection = item.second.cast<bool>();
        else if (key == "concretizer")
            config.use_concretizer = item.second.cast<bool>();
        else if (key == "goal_merging")
            config.goal_merging = item.second.cast<bool>();
        else if (key == "symmetry")
            config.state_sign = parse_state_sign(item.second.cast<std::string>());
        else if (key == "max_policies")
            config.max_policies = item.second.cast<std::uint64_t>();
        else if (key == "time_limit")
            config.time_limit_s = item.second.cast<double>();
        else if (key != "heuristic" && key != "expansion_order")
            throw InvalidInput("unknown solve option: " + key);
    }
    return config;
}

} // namespace

PYBIND11_MODULE(_fondps, m) {
    m.doc() = "Explicit policy-space search for fully observable "
              "non-deterministic planning";

    py::register_exception<Error>(m, "PlannerError");

    py::class_<PyTask>(m, "FondTask")
        .def_property_readonly(
            "num_facts", [](const PyTask &t) { return t.get().num_facts(); })
        .def_property_readonly(
            "num_actions",
            [](const PyTask &t) { return t.get().num_actions(); })
        .def_property_readonly(
            "task_hash",
            [](const PyTask &t) { return t.get().structure_hash_hex(); })
        .def_property_readonly(
            "is_explicit",
            [](const PyTask &t) { return t.get().is_explicit_encoding(); })
        .def_property_readonly(
            "state_names",
            [](const PyTask &t) { return t.get().explicit_state_names(); })
        .def_property_readonly("fact_names",
                               [](const PyTask &t) {
                                   std::vector<std::string> names;
                                   for (const Fact &f : t.get().facts())
                                       names.push_back(f.name);
                                   return names;
                               })
        .def_property_readonly("action_names", [](const PyTask &t) {
            std::vector<std::string> names;
            for (const Action &a : t.get().actions())
                names.push_back(a.name);
            return names;
        });

    m.def(
        "parse_explicit",
        [](const std::string &text) { return PyTask{parse_explicit(text)}; },
        py::arg("json_text"),
        "Read a task from an explicit-graph JSON document.");
    m.def(
        "parse_explicit_file",
        [](const std::string &path) { return PyTask{parse_explicit_file(path)}; },
        py::arg("path"));
    m.def(
        "parse_pddl",
        [](const std::string &domain, const std::string &problem) {
            return PyTask{parse_pddl(domain, problem)};
        },
        py::arg("domain_text"), py::arg("problem_text"),
        "Ground a FOND-PDDL domain/problem pair.");
    m.def("parse_pddl_files",
          [](const std::string &domain, const std::string &problem) {
              return PyTask{parse_pddl_files(domain, problem)};
          });

    m.def(
        "solve",
        [](const PyTask &handle, const py::kwargs &kwargs) {
            const TaskPtr &task = handle.ptr;
            SearchConfig config = config_from_kwargs(kwargs);
            std::string heuristic_kind = "hmax";
            if (kwargs.contains("heuristic"))
                heuristic_kind = kwargs["heuristic"].cast<std::string>();
            std::unique_ptr<ClassicalHeuristic> heuristic =
                make_heuristic(task, heuristic_kind);
            ExpansionOrderScript script;
            ExpansionOrderScript *script_ptr = nullptr;
            if (kwargs.contains("expansion_order")) {
                script = ExpansionOrderScript::from_text(
                    kwargs["expansion_order"].cast<std::string>());
                script_ptr = &script;
            }
            SearchResult result =
                run_planner(task, config, *heuristic, script_ptr);
            py::dict out;
            out["outcome"] = outcome_name(result.outcome);
            out["generated"] = result.stats.generated;
            out["expanded"] = result.stats.expanded;
            out["pruned_by_equivalence"] = result.stats.pruned_by_equivalence;
            out["pruned_by_deadlock"] = result.stats.pruned_by_deadlock;
            out["solutions_from_concretizer"] =
                result.stats.solutions_from_concretizer;
            out["time_s"] = result.stats.wall_s;
            if (result.solution) {
                out["solution_size"] = result.solution->size();
                out["mappings"] = mappings_of(task, *result.solution);
                out["policy_json"] = write_policy(*result.solution);
            }
            return out;
        },
        py::arg("task"),
        "Solve a task; keyword options mirror the command-line flags.");

    m.def(
        "validate",
        [](const PyTask &handle, const py::list &mappings) {
            const TaskPtr &task = handle.ptr;
            Verdict verdict =
                verify_strong_cyclic(task, policy_from_mappings(task, mappings));
            py::list violations;
            for (const auto &[rule, witness] : verdict.violations)
                violations.append(py::make_tuple(rule, witness));
            return py::make_tuple(verdict.ok, violations);
        },
        py::arg("task"), py::arg("mappings"),
        "Check a list of (condition, action) pairs for strong cyclicity.");

    m.def(
        "compress",
        [](const PyTask &handle, const py::list &mappings) {
            const TaskPtr &task = handle.ptr;
            Policy policy = policy_from_mappings(task, mappings);
            PartialPolicy tau = compress(policy);
            py::list rules;
            for (const auto &[partial, action] : tau.entries()) {
                py::dict condition;
                for (const auto &[fact, value] : partial.literals())
                    condition[py::str(task->facts()[fact].name)] = value;
                rules.append(
                    py::make_tuple(condition, task->actions()[action].name));
            }
            return rules;
        },
        py::arg("task"), py::arg("mappings"),
        "Compress a state policy into a minimal partial-state policy.");

    m.def(
        "symmetry_generators",
        [](const PyTask &handle, double time_budget_s) {
            const TaskPtr &task = handle.ptr;
            GeneratorSearchOptions options;
            options.time_budget_s = time_budget_s;
            PermutationGroup group = find_generators(task, options);
            py::list out;
            for (const Permutation &g : group.generators())
                out.append(py::make_tuple(g.fact_perm, g.action_perm));
            return out;
        },
        py::arg("task"), py::arg("time_budget_s") = 5.0,
        "Structural symmetry generators as (fact_perm, action_perm) pairs.");
}
