#ifndef FONDPS_EXPLICIT_GRAPH_H
#define FONDPS_EXPLICIT_GRAPH_H

#include "task.h"

#include <string>
#include <vector>

namespace fondps {

/*
  Drawn-state-space task description: named states, one initial state,
  goal states, and transitions grouped by (state, action label) into
  outcome sets. Non-determinism is an outcome list longer than one.
*/
struct ExplicitGraphTask {
    struct GraphAction {
        std::string label;
        std::string from;
        std::vector<std::string> outcomes;
    };

    std::vector<std::string> states;
    std::string init;
    std::vector<std::string> goals;
    std::vector<GraphAction> actions;
};

/*
  Encode a graph task as STRIPS: one fact per named state, actions with
  one effect per outcome. With several goal states an extra indicator
  fact is appended so the conjunctive goal stays expressible; with a
  single goal state the encoding is purely one-hot.

  Action names are the labels, disambiguated as "label@from" when a
  label is used from several states. Actions sharing a label share an
  action partition; all state facts share one fact partition.
*/
TaskPtr encode_explicit(const ExplicitGraphTask &graph);

// JSON document: {"states":[...], "init":name, "goals":[...],
//                 "actions":[{"label":..,"from":..,"outcomes":[..]}]}
ExplicitGraphTask explicit_from_json(const std::string &json_text);
TaskPtr parse_explicit(const std::string &json_text);
TaskPtr parse_explicit_file(const std::string &path);

// regenerates the document of an explicit-encoded task (stable field
// and entry order)
std::string write_explicit(const FondTask &task);

} // namespace fondps

#endif
