#ifndef FONDPS_HEURISTICS_H
#define FONDPS_HEURISTICS_H

#include "ext_int.h"
#include "policy.h"
#include "state.h"
#include "task.h"

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace fondps {

/*
  Classical estimate on the all-outcomes determinization (every effect
  of every action becomes one deterministic action). Values are
  memoized per state; the memo is guarded so concurrent searches over
  the same task may share one instance.
*/
class ClassicalHeuristic {
    mutable std::unordered_map<State, ExtInt, StateHash> memo_;
    mutable std::mutex memo_mutex_;

protected:
    TaskPtr task_;
    virtual ExtInt compute(const State &state) const = 0;

public:
    explicit ClassicalHeuristic(TaskPtr task) : task_(std::move(task)) {}
    virtual ~ClassicalHeuristic() = default;

    ExtInt value(const State &state) const;
};

// 0 on goal states, 1 elsewhere
class BlindHeuristic : public ClassicalHeuristic {
protected:
    ExtInt compute(const State &state) const override;

public:
    using ClassicalHeuristic::ClassicalHeuristic;
};

/*
  Delete-relaxation fact costs over the determinization. hmax combines
  preconditions and the goal by maximum (admissible); hadd combines by
  sum (inadmissible, for satisficing configurations). Infinity iff the
  goal is unreachable in the relaxation.
*/
class RelaxationHeuristic : public ClassicalHeuristic {
    struct DetAction {
        std::vector<int> pre;
        std::vector<int> add;
    };
    std::vector<DetAction> det_actions_;
    bool additive_;

protected:
    ExtInt compute(const State &state) const override;

public:
    RelaxationHeuristic(TaskPtr task, bool additive);
};

class HMaxHeuristic : public RelaxationHeuristic {
public:
    explicit HMaxHeuristic(TaskPtr task)
        : RelaxationHeuristic(std::move(task), false) {}
};

class HAddHeuristic : public RelaxationHeuristic {
public:
    explicit HAddHeuristic(TaskPtr task)
        : RelaxationHeuristic(std::move(task), true) {}
};

// fixed per-state values; unlisted states fall back to 0 on goals and
// the given default elsewhere
class FixedTableHeuristic : public ClassicalHeuristic {
    std::unordered_map<State, ExtInt, StateHash> table_;
    ExtInt default_value_;

protected:
    ExtInt compute(const State &state) const override;

public:
    FixedTableHeuristic(TaskPtr task,
                        std::unordered_map<State, ExtInt, StateHash> table,
                        ExtInt default_value = 0);
};

std::unique_ptr<ClassicalHeuristic> make_heuristic(const TaskPtr &task,
                                                   const std::string &kind);

/*
  Policy evaluation. delta_value is the row maximum
      max_j (j + (j+1)-th largest estimate over domain ∪ remain),
  zero on the empty set. delta_nearest combines it with
      |domain| + |remain|
  and, for non-empty policies with a non-empty frontier,
      |domain| + |remain| - 1 + min over the frontier.
  Infinity propagates; an infinite value means no extension of the
  policy can become a solution.
*/
ExtInt delta_value(const std::vector<ExtInt> &estimates);
ExtInt delta_nearest(const Policy &policy, const ClassicalHeuristic &h);

enum class Algorithm { astar, wastar, gbfs };

struct SearchMode {
    Algorithm algorithm = Algorithm::astar;
    double weight = 1.0; // wastar only, must be > 1

    static SearchMode astar();
    static SearchMode wastar(double k);
    static SearchMode gbfs();
    static SearchMode parse(const std::string &text);
    std::string to_string() const;
};

// queue priority: astar uses delta_nearest directly; wastar uses
// g + k * (delta_nearest - g); gbfs uses delta_nearest - g
ExtInt f_value(const Policy &policy, const ClassicalHeuristic &h,
               const SearchMode &mode);

} // namespace fondps

#endif
