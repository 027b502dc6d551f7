#ifndef FONDPS_CONCRETIZER_H
#define FONDPS_CONCRETIZER_H

#include "policy.h"
#include "state.h"
#include "task.h"

#include <optional>
#include <unordered_set>

namespace fondps {

using StateSet = std::unordered_set<State, StateHash>;

/*
  Given a domain set D and a frontier set F with D ∩ F = ∅, construct a
  proper policy with domain exactly D and frontier inside F, or return
  nullopt iff no such policy exists. Runs in time polynomial in |D|,
  |D ∪ F| and the task size.

  The construction regresses from F: a mapping s -> a is admissible
  once succs(s, a) stays inside D ∪ F and meets F or an already handled
  domain state. Admissible candidates are kept in a priority structure
  and taken lowest-state-first (then lowest action id), so the returned
  witness is deterministic; which witness is returned is the only thing
  the choice affects.

  With goals_are_frontier every goal state counts as a member of F
  without being enumerated. Searches that fold all goal states into one
  virtual state must deduce with this flag, or fronts that differ only
  in goal identity would stop being interchangeable.
*/
std::optional<Policy> concretize(const TaskPtr &task, const StateSet &domain,
                                 const StateSet &frontier,
                                 bool goals_are_frontier = false);

// straightforward rescan loop; concretize must agree with it exactly
std::optional<Policy> concretize_reference(const TaskPtr &task,
                                           const StateSet &domain,
                                           const StateSet &frontier,
                                           bool goals_are_frontier = false);

} // namespace fondps

#endif
