#ifndef FONDPS_PDDL_H
#define FONDPS_PDDL_H

#include "task.h"

#include <cstdint>
#include <string>

namespace fondps {

struct GroundingOptions {
    // cap on grounded actions before giving up
    std::uint64_t max_grounded_actions = 200'000;
};

/*
  Reader for a FOND-PDDL subset: :strips, :typing and
  :non-deterministic requirements, positive preconditions and goals,
  and oneof branching at the top level of effects (optionally combined
  with deterministic literals inside one and-clause).

  Grounding enumerates typed parameter bindings. Facts of predicates no
  action ever changes are folded into applicability: bindings whose
  static preconditions fail are dropped, satisfied static atoms
  disappear. Fact partitions are predicate indices; action partitions
  are schema indices.
*/
TaskPtr parse_pddl(const std::string &domain_text,
                   const std::string &problem_text,
                   const GroundingOptions &options = {});

TaskPtr parse_pddl_files(const std::string &domain_path,
                         const std::string &problem_path,
                         const GroundingOptions &options = {});

/*
  Render a grounded task as a parameterless domain/problem pair (every
  fact a 0-ary predicate, every action a schema without parameters).
  Re-parsing the output reproduces the task structure; names are
  sanitized to identifiers.
*/
struct PddlDocument {
    std::string domain;
    std::string problem;
};

PddlDocument write_task_pddl(const FondTask &task,
                             const std::string &name = "task");

} // namespace fondps

#endif
