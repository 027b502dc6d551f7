#include "symmetry.h"

#include "errors.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace fondps {

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < fact_perm.size(); ++i)
        if (fact_perm[i] != static_cast<int>(i))
            return false;
    for (std::size_t i = 0; i < action_perm.size(); ++i)
        if (action_perm[i] != static_cast<int>(i))
            return false;
    return true;
}

namespace {

bool is_bijection(const std::vector<int> &perm, int n) {
    if (static_cast<int>(perm.size()) != n)
        return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

std::vector<int> map_sorted(const std::vector<int> &facts,
                            const std::vector<int> &perm) {
    std::vector<int> out;
    out.reserve(facts.size());
    for (int f : facts)
        out.push_back(perm[f]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool check_symmetry(const FondTask &task, const Permutation &perm) {
    int nf = task.num_facts();
    int na = task.num_actions();
    // condition 1: separate bijections over facts and actions
    if (!is_bijection(perm.fact_perm, nf) || !is_bijection(perm.action_perm, na))
        return false;

    // condition 2: goal membership preserved
    std::vector<bool> goal_mask(static_cast<std::size_t>(nf), false);
    for (int g : task.goal())
        goal_mask[g] = true;
    for (int f = 0; f < nf; ++f)
        if (goal_mask[perm.fact_perm[f]] != goal_mask[f])
            return false;

    // condition 4: fact partition preserved
    for (int f = 0; f < nf; ++f)
        if (task.facts()[perm.fact_perm[f]].partition_id !=
            task.facts()[f].partition_id)
            return false;

    // condition 5: action partition preserved
    for (int a = 0; a < na; ++a)
        if (task.actions()[perm.action_perm[a]].partition_id !=
            task.actions()[a].partition_id)
            return false;

    // condition 3: preconditions map to preconditions, effect multisets
    // map to effect multisets
    for (int a = 0; a < na; ++a) {
        const Action &src = task.actions()[a];
        const Action &dst = task.actions()[perm.action_perm[a]];
        std::vector<int> dst_pre = dst.pre;
        std::sort(dst_pre.begin(), dst_pre.end());
        if (map_sorted(src.pre, perm.fact_perm) != dst_pre)
            return false;
        if (src.effects.size() != dst.effects.size())
            return false;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> lhs, rhs;
        for (const Effect &e : src.effects)
            lhs.emplace_back(map_sorted(e.del, perm.fact_perm),
                             map_sorted(e.add, perm.fact_perm));
        for (const Effect &e : dst.effects) {
            std::vector<int> del = e.del, add = e.add;
            std::sort(del.begin(), del.end());
            std::sort(add.begin(), add.end());
            rhs.emplace_back(std::move(del), std::move(add));
        }
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        if (lhs != rhs)
            return false;
    }
    return true;
}

PermutationGroup::PermutationGroup(std::vector<Permutation> generators,
                                   std::size_t orbit_budget)
    : generators_(std::move(generators)), orbit_budget_(orbit_budget) {}

std::vector<State> PermutationGroup::orbit(const State &state) const {
    std::vector<State> result{state};
    std::unordered_map<State, bool, StateHash> seen;
    seen.emplace(state, true);
    std::deque<State> queue{state};
    while (!queue.empty()) {
        State s = queue.front();
        queue.pop_front();
        for (const Permutation &g : generators_) {
            State image = g.apply(s);
            if (seen.emplace(image, true).second) {
                if (result.size() >= orbit_budget_)
                    throw OrbitBudgetExceeded("orbit exceeds the configured cap");
                result.push_back(image);
                queue.push_back(image);
            }
        }
    }
    return result;
}

State PermutationGroup::greedy_signature(const State &state) const {
    State current = state;
    for (;;) {
        State best = current;
        for (const Permutation &g : generators_) {
            State image = g.apply(current);
            if (image < best)
                best = image;
        }
        if (best == current)
            return current;
        current = best;
    }
}

State PermutationGroup::canonical_signature(const State &state) const {
    if (generators_.empty())
        return state;
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = canonical_memo_.find(state);
        if (it != canonical_memo_.end())
            return it->second;
    }
    std::vector<State> orb = orbit(state);
    State best = orb.front();
    for (const State &s : orb)
        if (s < best)
            best = s;
    std::lock_guard<std::mutex> lock(memo_mutex_);
    for (const State &s : orb)
        canonical_memo_.emplace(s, best);
    return best;
}

namespace {

std::vector<std::vector<int>> element_orbits(
    int n, const std::vector<const std::vector<int> *> &perms) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto *perm : perms)
        for (int i = 0; i < n; ++i) {
            int a = find(i), b = find((*perm)[i]);
            if (a != b)
                parent[a] = b;
        }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i)
        groups[find(i)].push_back(i);
    std::vector<std::vector<int>> result;
    for (auto &[root, members] : groups)
        result.push_back(std::move(members));
    return result;
}

} // namespace

std::vector<std::vector<int>> PermutationGroup::fact_orbits() const {
    if (generators_.empty())
        return {};
    std::vector<const std::vector<int> *> perms;
    for (const Permutation &g : generators_)
        perms.push_back(&g.fact_perm);
    return element_orbits(static_cast<int>(generators_.front().fact_perm.size()),
                          perms);
}

std::vector<std::vector<int>> PermutationGroup::action_orbits() const {
    if (generators_.empty())
        return {};
    std::vector<const std::vector<int> *> perms;
    for (const Permutation &g : generators_)
        perms.push_back(&g.action_perm);
    return element_orbits(
        static_cast<int>(generators_.front().action_perm.size()), perms);
}

/*
  Problem-description graph. Vertices: one per fact, one per action,
  one per action effect. Vertex colors encode the vertex kind, the
  fact/action partition, and goal membership; effect vertices of one
  action share a color so reordering effects is a symmetry. Edge colors
  distinguish precondition, effect-ownership, delete and add edges.
*/
namespace {

struct Pdg {
    int num_facts = 0;
    int num_actions = 0;
    std::vector<int> color;                                // initial colors
    std::vector<std::vector<std::pair<int, int>>> adj;     // (edge color, vertex)

    int size() const {
        return static_cast<int>(color.size());
    }
};

Pdg build_pdg(const FondTask &task) {
    Pdg g;
    g.num_facts = task.num_facts();
    g.num_actions = task.num_actions();

    std::map<std::tuple<int, int, int>, int> color_ids;
    auto color_of = [&](int kind, int partition, int extra) {
        auto key = std::make_tuple(kind, partition, extra);
        auto it = color_ids.find(key);
        if (it != color_ids.end())
            return it->second;
        int id = static_cast<int>(color_ids.size());
        color_ids.emplace(key, id);
        return id;
    };

    std::vector<bool> goal_mask(static_cast<std::size_t>(g.num_facts), false);
    for (int f : task.goal())
        goal_mask[f] = true;

    for (int f = 0; f < g.num_facts; ++f)
        g.color.push_back(
            color_of(0, task.facts()[f].partition_id, goal_mask[f] ? 1 : 0));
    for (int a = 0; a < g.num_actions; ++a)
        g.color.push_back(color_of(1, task.actions()[a].partition_id, 0));
    int next = g.num_facts + g.num_actions;
    std::vector<int> effect_base(static_cast<std::size_t>(g.num_actions));
    for (int a = 0; a < g.num_actions; ++a) {
        effect_base[a] = next;
        for (std::size_t i = 0; i < task.actions()[a].effects.size(); ++i)
            g.color.push_back(color_of(2, task.actions()[a].partition_id, 0));
        next += static_cast<int>(task.actions()[a].effects.size());
    }

    g.adj.assign(static_cast<std::size_t>(g.size()), {});
    auto connect = [&](int u, int v, int edge_color) {
        g.adj[u].emplace_back(edge_color, v);
        g.adj[v].emplace_back(edge_color, u);
    };
    for (int a = 0; a < g.num_actions; ++a) {
        int av = g.num_facts + a;
        const Action &action = task.actions()[a];
        for (int f : action.pre)
            connect(av, f, 0);
        for (std::size_t i = 0; i < action.effects.size(); ++i) {
            int ev = effect_base[a] + static_cast<int>(i);
            connect(av, ev, 1);
            for (int f : action.effects[i].del)
                connect(ev, f, 2);
            for (int f : action.effects[i].add)
                connect(ev, f, 3);
        }
    }
    for (auto &neighbors : g.adj)
        std::sort(neighbors.begin(), neighbors.end());
    return g;
}

/*
  Iterated 1-dimensional refinement over colored edges. New color ids
  are assigned by sorted signature content, so corresponding vertices
  of isomorphic branches receive identical ids; the branch-compatible
  cell shapes the search prunes on rely on that.
*/
std::vector<int> refine_colors(const Pdg &g, std::vector<int> color) {
    int n = g.size();
    auto distinct = [](const std::vector<int> &c) {
        std::vector<int> copy(c);
        std::sort(copy.begin(), copy.end());
        copy.erase(std::unique(copy.begin(), copy.end()), copy.end());
        return copy.size();
    };
    for (;;) {
        std::vector<std::vector<int>> signatures(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig;
            sig.push_back(color[v]);
            std::vector<std::pair<int, int>> neighborhood;
            neighborhood.reserve(g.adj[v].size());
            for (const auto &[ec, u] : g.adj[v])
                neighborhood.emplace_back(ec, color[u]);
            std::sort(neighborhood.begin(), neighborhood.end());
            for (const auto &[ec, c] : neighborhood) {
                sig.push_back(ec);
                sig.push_back(c);
            }
            signatures[v] = std::move(sig);
        }
        std::map<std::vector<int>, int> ids;
        for (int v = 0; v < n; ++v)
            ids.emplace(signatures[v], 0);
        int next_id = 0;
        for (auto &[sig, id] : ids)
            id = next_id++;
        std::vector<int> next_color(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            next_color[v] = ids[signatures[v]];
        if (ids.size() == distinct(color))
            return next_color; // no cell split: stable, canonically numbered
        color = std::move(next_color);
    }
}

// cells of a coloring, each sorted, ordered by color id
std::vector<std::vector<int>> cells_of(const std::vector<int> &color) {
    std::map<int, std::vector<int>> by_color;
    for (int v = 0; v < static_cast<int>(color.size()); ++v)
        by_color[color[v]].push_back(v);
    std::vector<std::vector<int>> cells;
    for (auto &[c, members] : by_color)
        cells.push_back(std::move(members));
    return cells;
}

std::vector<int> cell_shape(const std::vector<int> &color) {
    std::map<int, int> sizes;
    for (int c : color)
        ++sizes[c];
    std::vector<int> shape;
    for (auto &[c, n] : sizes) {
        shape.push_back(c);
        shape.push_back(n);
    }
    return shape;
}

struct AutomorphismSearch {
    const Pdg &g;
    std::uint64_t node_budget;
    std::chrono::steady_clock::time_point deadline;
    bool budget_exceeded = false;
    std::uint64_t nodes = 0;

    std::vector<std::vector<int>> base_path_shapes;
    std::vector<int> base_leaf_order; // vertex order of the first leaf
    std::vector<std::vector<int>> generators; // vertex permutations
    std::vector<int> orbit_parent;    // union-find for root-level pruning

    AutomorphismSearch(const Pdg &graph, const GeneratorSearchOptions &opts)
        : g(graph),
          node_budget(opts.node_budget),
          deadline(std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(opts.time_budget_s))) {
        orbit_parent.resize(static_cast<std::size_t>(g.size()));
        std::iota(orbit_parent.begin(), orbit_parent.end(), 0);
    }

    int orbit_find(int x) {
        while (orbit_parent[x] != x) {
            orbit_parent[x] = orbit_parent[orbit_parent[x]];
            x = orbit_parent[x];
        }
        return x;
    }

    void orbit_union(int a, int b) {
        a = orbit_find(a);
        b = orbit_find(b);
        if (a != b)
            orbit_parent[a] = b;
    }

    bool out_of_budget() {
        if (budget_exceeded)
            return true;
        if (++nodes % 256 == 0 &&
            std::chrono::steady_clock::now() > deadline)
            budget_exceeded = true;
        if (nodes > node_budget)
            budget_exceeded = true;
        return budget_exceeded;
    }

    static int pick_cell(const std::vector<std::vector<int>> &cells) {
        for (int i = 0; i < static_cast<int>(cells.size()); ++i)
            if (cells[i].size() > 1)
                return i;
        return -1;
    }

    std::vector<int> individualize(const std::vector<int> &color, int vertex) {
        std::vector<int> next(color);
        int fresh = *std::max_element(color.begin(), color.end()) + 1;
        next[vertex] = fresh;
        return refine_colors(g, next);
    }

    // first (canonical) descent: individualize the least vertex of the
    // first non-singleton cell, recording shapes for compatibility pruning
    void build_base(std::vector<int> color) {
        for (;;) {
            base_path_shapes.push_back(cell_shape(color));
            auto cells = cells_of(color);
            int cell = pick_cell(cells);
            if (cell < 0) {
                base_leaf_order.clear();
                for (const auto &c : cells)
                    base_leaf_order.push_back(c.front());
                return;
            }
            color = individualize(color, cells[cell].front());
        }
    }

    bool try_leaf(const std::vector<int> &color) {
        auto cells = cells_of(color);
        std::vector<int> leaf_order;
        leaf_order.reserve(cells.size());
        for (const auto &c : cells)
            leaf_order.push_back(c.front());
        if (leaf_order.size() != base_leaf_order.size())
            return false;
        int n = g.size();
        std::vector<int> perm(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < leaf_order.size(); ++i)
            perm[base_leaf_order[i]] = leaf_order[i];
        // verify colored adjacency
        for (int v = 0; v < n; ++v) {
            std::vector<std::pair<int, int>> mapped;
            mapped.reserve(g.adj[v].size());
            for (const auto &[ec, u] : g.adj[v])
                mapped.emplace_back(ec, perm[u]);
            std::sort(mapped.begin(), mapped.end());
            if (mapped != g.adj[perm[v]])
                return false;
        }
        bool identity = true;
        for (int v = 0; v < n; ++v)
            if (perm[v] != v) {
                identity = false;
                break;
            }
        if (!identity) {
            generators.push_back(perm);
            for (int v = 0; v < n; ++v)
                orbit_union(v, perm[v]);
        }
        return !identity;
    }

    void search(const std::vector<int> &color, int depth) {
        if (out_of_budget())
            return;
        if (depth >= static_cast<int>(base_path_shapes.size()) ||
            cell_shape(color) != base_path_shapes[depth])
            return;
        auto cells = cells_of(color);
        int cell = pick_cell(cells);
        if (cell < 0) {
            try_leaf(color);
            return;
        }
        std::vector<int> visited_roots;
        for (int vertex : cells[cell]) {
            if (out_of_budget())
                return;
            if (depth == 0) {
                // root-level orbit pruning: one representative per orbit
                int root = orbit_find(vertex);
                if (std::find(visited_roots.begin(), visited_roots.end(),
                              root) != visited_roots.end())
                    continue;
            }
            search(individualize(color, vertex), depth + 1);
            if (depth == 0)
                visited_roots.push_back(orbit_find(vertex));
        }
    }
};

} // namespace

PermutationGroup find_generators(const TaskPtr &task,
                                 const GeneratorSearchOptions &options) {
    Pdg g = build_pdg(*task);
    std::vector<int> color = refine_colors(g, g.color);

    AutomorphismSearch search(g, options);
    search.build_base(color);
    search.search(color, 0);
    if (search.budget_exceeded)
        return PermutationGroup(std::vector<Permutation>{});

    std::vector<Permutation> generators;
    for (const std::vector<int> &vperm : search.generators) {
        Permutation p;
        p.fact_perm.assign(vperm.begin(), vperm.begin() + g.num_facts);
        p.action_perm.reserve(static_cast<std::size_t>(g.num_actions));
        for (int a = 0; a < g.num_actions; ++a)
            p.action_perm.push_back(vperm[g.num_facts + a] - g.num_facts);
        if (!p.is_identity() && check_symmetry(*task, p))
            generators.push_back(std::move(p));
    }
    return PermutationGroup(std::move(generators));
}

} // namespace fondps
