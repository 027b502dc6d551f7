#include "cover_ip.h"

#include "errors.h"

#include <algorithm>
#include <map>
#include <set>

namespace fondps {

IpModel build_cover_model(const CoverInstance &instance, int k,
                          bool simplified) {
    if (k < 1)
        throw InvalidInput("slot count must be at least 1");
    const int nf = instance.num_facts;
    IpModel model;
    model.num_slots = k;

    // which (fact, value) literals get a variable per slot
    std::vector<std::pair<int, bool>> literal_kinds;
    if (simplified) {
        std::set<std::pair<int, bool>> support;
        for (const State &s : instance.cover)
            for (int f = 0; f < nf; ++f)
                support.emplace(f, s.test(f));
        literal_kinds.assign(support.begin(), support.end());
    } else {
        for (int f = 0; f < nf; ++f) {
            literal_kinds.emplace_back(f, false);
            literal_kinds.emplace_back(f, true);
        }
    }

    std::map<std::tuple<int, int, bool>, int> literal_id;
    for (int slot = 0; slot < k; ++slot) {
        for (const auto &[fact, value] : literal_kinds) {
            literal_id[{slot, fact, value}] = model.num_vars;
            model.literal_var_ids.push_back(model.num_vars);
            model.literal_vars.push_back({slot, fact, value});
            ++model.num_vars;
        }
    }
    auto literal = [&](int slot, int fact, bool value) -> int {
        auto it = literal_id.find({slot, fact, value});
        return it == literal_id.end() ? -1 : it->second;
    };

    // holds-variables p_i[s]
    std::map<std::pair<int, int>, int> holds_id; // (slot, state index in X then Y)
    int num_cover = static_cast<int>(instance.cover.size());
    int num_exclude = static_cast<int>(instance.exclude.size());
    for (int slot = 0; slot < k; ++slot) {
        for (int s = 0; s < num_cover; ++s)
            holds_id[{slot, s}] = model.num_vars++;
        if (!simplified)
            for (int s = 0; s < num_exclude; ++s)
                holds_id[{slot, num_cover + s}] = model.num_vars++;
    }

    auto add_row = [&](std::vector<int> vars, int lo, int hi) {
        model.rows.push_back({std::move(vars), lo, hi});
    };

    // cover rows: each X state held by some slot
    for (int s = 0; s < num_cover; ++s) {
        std::vector<int> vars;
        for (int slot = 0; slot < k; ++slot)
            vars.push_back(holds_id[{slot, s}]);
        add_row(std::move(vars), 1, k);
    }

    if (!simplified) {
        // exclusion-state rows: no slot holds a Y state
        for (int s = 0; s < num_exclude; ++s)
            for (int slot = 0; slot < k; ++slot)
                add_row({holds_id[{slot, num_cover + s}]}, 0, 0);
    }

    // consistency rows: p_i[f -> !s[f]] + p_i[s] <= 1
    auto add_consistency = [&](int slot, const State &state, int holds_var) {
        for (int f = 0; f < nf; ++f) {
            int lit = literal(slot, f, !state.test(f));
            if (lit >= 0)
                add_row({lit, holds_var}, 0, 1);
        }
    };
    for (int slot = 0; slot < k; ++slot) {
        for (int s = 0; s < num_cover; ++s)
            add_consistency(slot, instance.cover[s], holds_id[{slot, s}]);
        if (!simplified)
            for (int s = 0; s < num_exclude; ++s)
                add_consistency(slot, instance.exclude[s],
                                holds_id[{slot, num_cover + s}]);
    }

    // semantic rows: sum_f p_i[f -> !s[f]] >= 1 - p_i[s]; the simplified
    // variant keeps them for Y only, where p_i[s] is the constant zero
    for (int slot = 0; slot < k; ++slot) {
        if (!simplified) {
            for (int s = 0; s < num_cover + num_exclude; ++s) {
                const State &state = s < num_cover
                                         ? instance.cover[s]
                                         : instance.exclude[s - num_cover];
                std::vector<int> vars;
                for (int f = 0; f < nf; ++f) {
                    int lit = literal(slot, f, !state.test(f));
                    if (lit >= 0)
                        vars.push_back(lit);
                }
                vars.push_back(holds_id[{slot, s}]);
                add_row(std::move(vars), 1, static_cast<int>(vars.size()));
            }
        } else {
            for (int s = 0; s < num_exclude; ++s) {
                std::vector<int> vars;
                for (int f = 0; f < nf; ++f) {
                    int lit = literal(slot, f, !instance.exclude[s].test(f));
                    if (lit >= 0)
                        vars.push_back(lit);
                }
                int hi = static_cast<int>(vars.size());
                add_row(std::move(vars), 1, hi); // infeasible row when empty
            }
        }
    }

    if (!simplified) {
        // at most one truth value per fact and slot
        for (int slot = 0; slot < k; ++slot)
            for (int f = 0; f < nf; ++f) {
                int lo_var = literal(slot, f, false);
                int hi_var = literal(slot, f, true);
                add_row({lo_var, hi_var}, 0, 1);
            }
    }
    return model;
}

namespace {

struct Solver {
    const IpModel &model;
    std::uint64_t node_budget;
    std::uint64_t nodes = 0;

    std::vector<signed char> value;           // -1 unassigned
    std::vector<std::vector<int>> var_rows;   // rows touching each var
    std::vector<int> row_ones;                // assigned true count
    std::vector<int> row_unassigned;
    std::vector<bool> is_objective;

    ExtInt current_cost = 0;
    ExtInt best_cost = INFTY;
    std::vector<bool> best_assignment;
    std::vector<int> trail;

    explicit Solver(const IpModel &m, std::uint64_t budget)
        : model(m), node_budget(budget) {
        value.assign(static_cast<std::size_t>(m.num_vars), -1);
        var_rows.resize(static_cast<std::size_t>(m.num_vars));
        row_ones.assign(m.rows.size(), 0);
        row_unassigned.resize(m.rows.size());
        for (std::size_t r = 0; r < m.rows.size(); ++r) {
            row_unassigned[r] = static_cast<int>(m.rows[r].vars.size());
            for (int v : m.rows[r].vars)
                var_rows[static_cast<std::size_t>(v)].push_back(
                    static_cast<int>(r));
        }
        is_objective.assign(static_cast<std::size_t>(m.num_vars), false);
        for (int v : m.literal_var_ids)
            is_objective[static_cast<std::size_t>(v)] = true;
    }

    bool row_violated(int r) const {
        const IpModel::Row &row = model.rows[static_cast<std::size_t>(r)];
        if (row_ones[r] > row.hi)
            return true;
        if (row_ones[r] + row_unassigned[r] < row.lo)
            return true;
        return false;
    }

    // returns false on conflict; appends to the trail. All row counters
    // are updated before reporting the conflict so the undo stays exact.
    bool assign(int var, bool val) {
        value[static_cast<std::size_t>(var)] = val ? 1 : 0;
        trail.push_back(var);
        if (val && is_objective[static_cast<std::size_t>(var)])
            ++current_cost;
        bool ok = true;
        for (int r : var_rows[static_cast<std::size_t>(var)]) {
            --row_unassigned[r];
            if (val)
                ++row_ones[r];
            if (row_violated(r))
                ok = false;
        }
        return ok;
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            int var = trail.back();
            trail.pop_back();
            bool val = value[static_cast<std::size_t>(var)] == 1;
            if (val && is_objective[static_cast<std::size_t>(var)])
                --current_cost;
            for (int r : var_rows[static_cast<std::size_t>(var)]) {
                ++row_unassigned[r];
                if (val)
                    --row_ones[r];
            }
            value[static_cast<std::size_t>(var)] = -1;
        }
    }

    // forces values implied by saturated rows; false on conflict
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t r = 0; r < model.rows.size(); ++r) {
                const IpModel::Row &row = model.rows[r];
                if (row_violated(static_cast<int>(r)))
                    return false;
                if (row_unassigned[r] == 0)
                    continue;
                if (row_ones[r] == row.hi) {
                    for (int v : row.vars)
                        if (value[static_cast<std::size_t>(v)] < 0) {
                            if (!assign(v, false))
                                return false;
                            changed = true;
                        }
                } else if (row_ones[r] + row_unassigned[r] == row.lo) {
                    for (int v : row.vars)
                        if (value[static_cast<std::size_t>(v)] < 0) {
                            if (!assign(v, true))
                                return false;
                            changed = true;
                        }
                }
            }
        }
        return true;
    }

    void dfs() {
        if (++nodes > node_budget)
            throw SolverBudgetExceeded("cover solver exceeded its node budget");
        std::size_t mark = trail.size();
        if (!propagate()) {
            undo_to(mark);
            return;
        }
        if (current_cost >= best_cost) {
            undo_to(mark);
            return;
        }
        int branch_var = -1;
        for (int v = 0; v < model.num_vars; ++v)
            if (value[static_cast<std::size_t>(v)] < 0) {
                branch_var = v;
                break;
            }
        if (branch_var < 0) {
            best_cost = current_cost;
            best_assignment.assign(value.size(), false);
            for (std::size_t v = 0; v < value.size(); ++v)
                best_assignment[v] = value[v] == 1;
            undo_to(mark);
            return;
        }
        bool first = is_objective[static_cast<std::size_t>(branch_var)] ? false
                                                                        : true;
        for (bool val : {first, !first}) {
            std::size_t inner = trail.size();
            if (assign(branch_var, val))
                dfs();
            undo_to(inner);
        }
        undo_to(mark);
    }
};

} // namespace

std::optional<IpSolution> solve_ip(const IpModel &model,
                                   std::uint64_t node_budget) {
    for (const IpModel::Row &row : model.rows)
        if (row.vars.empty() && row.lo > 0)
            return std::nullopt;
    Solver solver(model, node_budget);
    solver.dfs();
    if (solver.best_cost == INFTY)
        return std::nullopt;
    return IpSolution{solver.best_cost, std::move(solver.best_assignment)};
}

std::optional<CoverSolution> solve_cover(const CoverInstance &instance, int k,
                                         const CoverSolveOptions &options) {
    IpModel model = build_cover_model(instance, k, options.simplified);
    std::optional<IpSolution> solution = solve_ip(model, options.node_budget);
    if (!solution)
        return std::nullopt;
    CoverSolution result;
    std::vector<std::vector<std::pair<int, bool>>> literals(
        static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < model.literal_var_ids.size(); ++i) {
        if (!solution->assignment[static_cast<std::size_t>(
                model.literal_var_ids[i])])
            continue;
        const IpModel::LiteralVar &lv = model.literal_vars[i];
        literals[static_cast<std::size_t>(lv.slot)].emplace_back(lv.fact,
                                                                 lv.value);
    }
    for (auto &lits : literals) {
        /*
          Past the minimal feasible k the simplified program may fill a
          redundant slot with both values of one fact; the slot then
          represents no state at all and is dropped (the result is a
          set of at most k partial states either way). At the minimal k
          no feasible assignment has such a slot.
        */
        std::sort(lits.begin(), lits.end());
        bool degenerate = false;
        for (std::size_t i = 1; i < lits.size(); ++i)
            if (lits[i - 1].first == lits[i].first)
                degenerate = true;
        if (degenerate)
            continue;
        result.literal_total += static_cast<ExtInt>(lits.size());
        result.parts.emplace_back(std::move(lits));
    }
    return result;
}

int minimality_oracle(const CoverInstance &instance) {
    if (instance.num_facts > 6)
        throw OracleTooLarge("oracle capped at 6 facts");
    if (instance.cover.size() + instance.exclude.size() > 12)
        throw OracleTooLarge("oracle capped at 12 states");
    if (instance.cover.empty())
        return 0;

    int nf = instance.num_facts;
    int nx = static_cast<int>(instance.cover.size());

    // enumerate all partial states as base-3 vectors (unset/false/true)
    std::uint64_t total = 1;
    for (int f = 0; f < nf; ++f)
        total *= 3;
    std::set<std::uint32_t> coverage_masks;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<std::pair<int, bool>> literals;
        for (int f = 0; f < nf; ++f) {
            int trit = static_cast<int>(c % 3);
            c /= 3;
            if (trit == 1)
                literals.emplace_back(f, false);
            else if (trit == 2)
                literals.emplace_back(f, true);
        }
        PartialState p(std::move(literals));
        bool excludes_all = true;
        for (const State &y : instance.exclude)
            if (p.matches(y)) {
                excludes_all = false;
                break;
            }
        if (!excludes_all)
            continue;
        std::uint32_t mask = 0;
        for (int i = 0; i < nx; ++i)
            if (p.matches(instance.cover[i]))
                mask |= 1u << i;
        if (mask)
            coverage_masks.insert(mask);
    }

    std::vector<int> dp(static_cast<std::size_t>(1) << nx, -1);
    dp[0] = 0;
    for (std::uint32_t mask = 0; mask < (1u << nx); ++mask) {
        if (dp[mask] < 0)
            continue;
        for (std::uint32_t add : coverage_masks) {
            std::uint32_t next = mask | add;
            if (dp[next] < 0 || dp[next] > dp[mask] + 1)
                dp[next] = dp[mask] + 1;
        }
    }
    int best = dp[(1u << nx) - 1];
    if (best < 0)
        throw Error("internal: cover oracle found no cover"); // unreachable
    return best;
}

} // namespace fondps
