#include "explicit_graph.h"

#include "errors.h"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

using nlohmann::json;

namespace fondps {

TaskPtr encode_explicit(const ExplicitGraphTask &graph) {
    int n = static_cast<int>(graph.states.size());
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < n; ++i) {
        if (!index.emplace(graph.states[i], i).second)
            throw SchemaError("duplicate state name: " + graph.states[i]);
    }
    auto state_index = [&](const std::string &name) {
        auto it = index.find(name);
        if (it == index.end())
            throw DanglingStateReference(name);
        return it->second;
    };

    int init_index = state_index(graph.init);
    std::set<int> goal_indices;
    for (const std::string &g : graph.goals)
        goal_indices.insert(state_index(g));

    bool multi_goal = goal_indices.size() > 1;
    int num_facts = n + (multi_goal ? 1 : 0);
    int goal_fact = multi_goal ? n : (goal_indices.empty() ? -1 : *goal_indices.begin());

    std::vector<Fact> facts;
    facts.reserve(num_facts);
    for (int i = 0; i < n; ++i)
        facts.push_back({i, graph.states[i], 0});
    if (multi_goal)
        facts.push_back({n, "<goal>", 1});

    auto make_state = [&](int i) {
        std::vector<int> trues = {i};
        if (multi_goal && goal_indices.count(i))
            trues.push_back(goal_fact);
        return State(static_cast<std::uint32_t>(num_facts), trues);
    };

    // label partitions and name disambiguation
    std::map<std::string, int> label_partition;
    std::map<std::string, int> label_uses;
    std::set<std::pair<std::string, std::string>> seen_label_from;
    for (const auto &ga : graph.actions) {
        if (!seen_label_from.emplace(ga.label, ga.from).second)
            throw SchemaError("two actions share label '" + ga.label +
                              "' and from-state '" + ga.from + "'");
        if (!label_partition.count(ga.label))
            label_partition.emplace(ga.label, static_cast<int>(label_partition.size()));
        ++label_uses[ga.label];
    }

    std::vector<Action> actions;
    actions.reserve(graph.actions.size());
    for (const auto &ga : graph.actions) {
        int from = state_index(ga.from);
        if (ga.outcomes.empty())
            throw SchemaError("action '" + ga.label + "' has no outcomes");
        Action a;
        a.id = static_cast<int>(actions.size());
        a.name = label_uses[ga.label] > 1 ? ga.label + "@" + ga.from : ga.label;
        a.pre = {from};
        a.partition_id = label_partition[ga.label];
        std::set<int> seen_outcomes;
        for (const std::string &out_name : ga.outcomes) {
            int out = state_index(out_name);
            if (!seen_outcomes.insert(out).second)
                continue;
            Effect e;
            if (out != from) {
                e.del.push_back(from);
                e.add.push_back(out);
            }
            if (multi_goal) {
                bool from_goal = goal_indices.count(from) > 0;
                bool out_goal = goal_indices.count(out) > 0;
                if (from_goal && !out_goal)
                    e.del.push_back(goal_fact);
                else if (!from_goal && out_goal)
                    e.add.push_back(goal_fact);
            }
            a.effects.push_back(std::move(e));
        }
        actions.push_back(std::move(a));
    }

    std::vector<int> goal_condition;
    if (goal_indices.empty()) {
        // empty goal: every state is accepting
    } else {
        goal_condition.push_back(goal_fact);
    }

    auto task = std::make_shared<FondTask>(
        std::move(facts), std::move(actions), make_state(init_index),
        std::move(goal_condition));

    std::vector<State> named_states;
    named_states.reserve(n);
    for (int i = 0; i < n; ++i)
        named_states.push_back(make_state(i));
    task->mark_explicit(graph.states, std::move(named_states));
    return task;
}

ExplicitGraphTask explicit_from_json(const std::string &json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    auto require = [&](const char *key) -> const json & {
        if (!doc.contains(key))
            throw SchemaError(std::string("missing key '") + key + "'");
        return doc[key];
    };

    ExplicitGraphTask graph;
    const json &states = require("states");
    if (!states.is_array())
        throw SchemaError("'states' must be an array of names");
    for (const auto &s : states) {
        if (!s.is_string())
            throw SchemaError("'states' entries must be strings");
        graph.states.push_back(s.get<std::string>());
    }
    const json &init = require("init");
    if (!init.is_string())
        throw SchemaError("'init' must be a state name");
    graph.init = init.get<std::string>();
    const json &goals = require("goals");
    if (!goals.is_array())
        throw SchemaError("'goals' must be an array of names");
    for (const auto &g : goals) {
        if (!g.is_string())
            throw SchemaError("'goals' entries must be strings");
        graph.goals.push_back(g.get<std::string>());
    }
    const json &actions = require("actions");
    if (!actions.is_array())
        throw SchemaError("'actions' must be an array");
    for (const auto &a : actions) {
        if (!a.is_object() || !a.contains("label") || !a.contains("from") ||
            !a.contains("outcomes"))
            throw SchemaError("each action needs 'label', 'from' and 'outcomes'");
        ExplicitGraphTask::GraphAction ga;
        ga.label = a["label"].get<std::string>();
        ga.from = a["from"].get<std::string>();
        if (!a["outcomes"].is_array() || a["outcomes"].empty())
            throw SchemaError("'outcomes' must be a non-empty array");
        for (const auto &o : a["outcomes"])
            ga.outcomes.push_back(o.get<std::string>());
        graph.actions.push_back(std::move(ga));
    }
    return graph;
}

TaskPtr parse_explicit(const std::string &json_text) {
    return encode_explicit(explicit_from_json(json_text));
}

TaskPtr parse_explicit_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_explicit(buffer.str());
}

std::string write_explicit(const FondTask &task) {
    if (!task.is_explicit_encoding())
        throw InvalidInput("task is not an explicit-graph encoding");
    json doc;
    doc["states"] = task.explicit_state_names();
    doc["init"] = task.explicit_state_name(task.init());
    std::vector<std::string> goals;
    for (const std::string &name : task.explicit_state_names())
        if (task.is_goal(task.explicit_state(name)))
            goals.push_back(name);
    doc["goals"] = goals;
    json actions = json::array();
    for (const Action &a : task.actions()) {
        json entry;
        std::string label = a.name;
        auto at = label.find('@');
        if (at != std::string::npos)
            label = label.substr(0, at);
        entry["label"] = label;
        State from = task.explicit_state(
            task.explicit_state_names().at(static_cast<std::size_t>(a.pre.at(0))));
        entry["from"] = task.explicit_state_name(from);
        json outcomes = json::array();
        for (const State &succ : task.successors(from, a.id))
            outcomes.push_back(task.explicit_state_name(succ));
        entry["outcomes"] = outcomes;
        actions.push_back(std::move(entry));
    }
    doc["actions"] = std::move(actions);
    return doc.dump(2) + "\n";
}

} // namespace fondps
