#include "policy_io.h"

#include "errors.h"

#include <json.hpp>

#include <algorithm>
#include <fstream>

using nlohmann::json;

namespace fondps {

namespace {

json condition_for_state(const FondTask &task, const State &state) {
    if (task.is_explicit_encoding()) {
        json c;
        c["state"] = task.explicit_state_name(state);
        return c;
    }
    json c;
    for (const Fact &f : task.facts())
        c[f.name] = state.test(f.id);
    return c;
}

State state_from_condition(const TaskPtr &task, const json &condition) {
    if (condition.contains("state")) {
        if (!task->is_explicit_encoding())
            throw SchemaError("named-state conditions need an explicit-graph task");
        return task->explicit_state(condition["state"].get<std::string>());
    }
    std::vector<int> trues;
    std::size_t assigned = 0;
    for (auto it = condition.begin(); it != condition.end(); ++it) {
        int f = task->fact_id(it.key());
        if (f < 0)
            throw SchemaError("unknown fact name: " + it.key());
        ++assigned;
        if (it.value().get<bool>())
            trues.push_back(f);
    }
    if (assigned != static_cast<std::size_t>(task->num_facts()))
        throw SchemaError("state condition must assign every fact");
    return State(static_cast<std::uint32_t>(task->num_facts()), trues);
}

int action_from_name(const TaskPtr &task, const std::string &name) {
    int id = task->action_id(name);
    if (id < 0)
        throw SchemaError("unknown action name: " + name);
    return id;
}

} // namespace

std::string write_policy(const Policy &policy) {
    const FondTask &task = policy.task();
    json doc;
    doc["task_hash"] = task.structure_hash_hex();
    doc["kind"] = "state";
    std::vector<std::pair<State, int>> sorted(policy.mappings());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    json mappings = json::array();
    for (const auto &[state, action] : sorted) {
        json record;
        record["condition"] = condition_for_state(task, state);
        record["action"] = task.actions()[action].name;
        mappings.push_back(std::move(record));
    }
    doc["mappings"] = std::move(mappings);
    return doc.dump(2) + "\n";
}

std::string write_policy(const TaskPtr &task, const PartialPolicy &policy) {
    json doc;
    doc["task_hash"] = task->structure_hash_hex();
    doc["kind"] = "partial";
    std::vector<std::pair<PartialState, int>> sorted(policy.entries());
    std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
        if (!(a.first == b.first))
            return a.first < b.first;
        return a.second < b.second;
    });
    json mappings = json::array();
    for (const auto &[partial, action] : sorted) {
        json condition;
        for (const auto &[fact, value] : partial.literals())
            condition[task->facts()[fact].name] = value;
        json record;
        record["condition"] = std::move(condition);
        record["action"] = task->actions()[action].name;
        mappings.push_back(std::move(record));
    }
    doc["mappings"] = std::move(mappings);
    return doc.dump(2) + "\n";
}

AnyPolicy read_policy(const TaskPtr &task, const std::string &json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.contains("kind") || !doc.contains("mappings"))
        throw SchemaError("policy document needs 'kind' and 'mappings'");
    if (doc.contains("task_hash") &&
        doc["task_hash"].get<std::string>() != task->structure_hash_hex())
        throw SchemaError("policy was produced for a different task");

    std::string kind = doc["kind"].get<std::string>();
    if (kind == "state") {
        std::vector<std::pair<State, int>> mappings;
        for (const json &record : doc["mappings"])
            mappings.emplace_back(
                state_from_condition(task, record.at("condition")),
                action_from_name(task, record.at("action").get<std::string>()));
        return Policy::build(task, mappings);
    }
    if (kind == "partial") {
        std::vector<std::pair<PartialState, int>> entries;
        for (const json &record : doc["mappings"]) {
            const json &condition = record.at("condition");
            std::vector<std::pair<int, bool>> literals;
            for (auto it = condition.begin(); it != condition.end(); ++it) {
                int f = task->fact_id(it.key());
                if (f < 0)
                    throw SchemaError("unknown fact name: " + it.key());
                literals.emplace_back(f, it.value().get<bool>());
            }
            entries.emplace_back(
                PartialState(std::move(literals)),
                action_from_name(task, record.at("action").get<std::string>()));
        }
        return PartialPolicy(std::move(entries));
    }
    throw SchemaError("unknown policy kind: " + kind);
}

AnyPolicy read_policy_file(const TaskPtr &task, const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return read_policy(task, text);
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out)
        throw IoError("failed writing " + path);
}

} // namespace fondps
