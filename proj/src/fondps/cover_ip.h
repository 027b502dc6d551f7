#ifndef FONDPS_COVER_IP_H
#define FONDPS_COVER_IP_H

#include "ext_int.h"
#include "partial.h"
#include "state.h"

#include <cstdint>
#include <optional>
#include <vector>

namespace fondps {

/*
  Set cover with exclusion: find k partial states such that every
  member of the cover set holds at least one of them and no member of
  the exclusion set holds any, minimizing the total number of assigned
  fact literals. Solved exactly by branch and bound over a 0-1 model.
*/
struct CoverInstance {
    std::vector<State> cover;   // X: must be represented
    std::vector<State> exclude; // Y: must not be represented
    int num_facts = 0;
};

/*
  0-1 model with unit-coefficient rows lo <= sum of vars <= hi. The
  full variant keeps one variable per (slot, fact, value) and per
  (slot, state of X or Y) with the textbook five constraint groups; the
  simplified variant drops the exclusion-state variables, restricts
  literal variables to values occurring in the cover set, and keeps
  only the cover, consistency and exclusion rows. Both minimize the
  total of the literal variables.
*/
struct IpModel {
    struct Row {
        std::vector<int> vars;
        int lo;
        int hi;
    };
    struct LiteralVar {
        int slot;
        int fact;
        bool value;
    };

    int num_vars = 0;
    std::vector<Row> rows;
    std::vector<int> literal_var_ids;
    std::vector<LiteralVar> literal_vars; // aligned with literal_var_ids
    int num_slots = 0;
};

IpModel build_cover_model(const CoverInstance &instance, int k, bool simplified);

struct IpSolution {
    ExtInt objective = 0;
    std::vector<bool> assignment;
};

// exact optimum or nullopt when infeasible; throws SolverBudgetExceeded
std::optional<IpSolution> solve_ip(const IpModel &model,
                                   std::uint64_t node_budget);

struct CoverSolveOptions {
    bool simplified = true;
    std::uint64_t node_budget = 5'000'000;
};

struct CoverSolution {
    std::vector<PartialState> parts;
    ExtInt literal_total = 0;
};

std::optional<CoverSolution> solve_cover(const CoverInstance &instance, int k,
                                         const CoverSolveOptions &options = {});

/*
  Exact minimum number of partial states by enumerating every partial
  state over the fact universe and covering the cover set with a subset
  DP. Capped at 6 facts and 12 states total.
*/
int minimality_oracle(const CoverInstance &instance);

} // namespace fondps

#endif
