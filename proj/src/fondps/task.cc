#include "task.h"

#include "errors.h"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace fondps {

FondTask::FondTask(std::vector<Fact> facts, std::vector<Action> actions,
                   State init, std::vector<int> goal)
    : facts_(std::move(facts)),
      actions_(std::move(actions)),
      init_(std::move(init)),
      goal_(std::move(goal)) {
    std::sort(goal_.begin(), goal_.end());
    goal_.erase(std::unique(goal_.begin(), goal_.end()), goal_.end());
    validate();
    goal_mask_.assign(facts_.size(), false);
    for (int g : goal_)
        goal_mask_[g] = true;
    for (const Fact &f : facts_)
        fact_by_name_.emplace(f.name, f.id);
    for (const Action &a : actions_)
        action_by_name_.emplace(a.name, a.id);
    compute_hash();
}

void FondTask::validate() const {
    int n = static_cast<int>(facts_.size());
    for (int i = 0; i < n; ++i)
        if (facts_[i].id != i)
            throw InvalidInput("fact ids must be contiguous from 0");
    if (init_.num_facts() != static_cast<std::uint32_t>(n))
        throw InvalidInput("initial state width does not match fact count");
    auto check_fact = [&](int f) {
        if (f < 0 || f >= n)
            throw InvalidInput("fact id out of range: " + std::to_string(f));
    };
    for (int g : goal_)
        check_fact(g);
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        const Action &a = actions_[i];
        if (a.id != static_cast<int>(i))
            throw InvalidInput("action ids must be contiguous from 0");
        if (a.effects.empty())
            throw InvalidInput("action " + a.name + " has no effects");
        for (int f : a.pre)
            check_fact(f);
        for (const Effect &e : a.effects) {
            for (int f : e.del)
                check_fact(f);
            for (int f : e.add)
                check_fact(f);
            for (int f : e.del)
                if (std::find(e.add.begin(), e.add.end(), f) != e.add.end())
                    throw InvalidInput(
                        "action " + a.name + ": del and add sets intersect");
        }
    }
}

void FondTask::compute_hash() {
    // FNV-1a over a canonical rendering of the structure
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_byte = [&](unsigned char c) {
        h ^= c;
        h *= 1099511628211ULL;
    };
    auto mix_str = [&](const std::string &s) {
        for (char c : s)
            mix_byte(static_cast<unsigned char>(c));
        mix_byte(0);
    };
    auto mix_int = [&](int v) {
        for (int i = 0; i < 4; ++i)
            mix_byte(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
    };
    mix_int(num_facts());
    for (const Fact &f : facts_) {
        mix_str(f.name);
        mix_int(f.partition_id);
    }
    for (const Action &a : actions_) {
        mix_str(a.name);
        mix_int(a.partition_id);
        for (int f : a.pre)
            mix_int(f);
        mix_int(-1);
        for (const Effect &e : a.effects) {
            for (int f : e.del)
                mix_int(f);
            mix_int(-2);
            for (int f : e.add)
                mix_int(f);
            mix_int(-3);
        }
        mix_int(-4);
    }
    for (int f : init_.true_facts())
        mix_int(f);
    mix_int(-5);
    for (int g : goal_)
        mix_int(g);
    structure_hash_ = h;
}

std::string FondTask::structure_hash_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t h = structure_hash_;
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

bool FondTask::applicable(const State &state, int action) const {
    const Action &a = actions_.at(action);
    for (int f : a.pre)
        if (!state.test(f))
            return false;
    return true;
}

std::vector<State> FondTask::successors(const State &state, int action) const {
    if (!applicable(state, action))
        throw NotApplicable(
            "action " + actions_.at(action).name + " is not applicable");
    const Action &a = actions_[action];
    std::vector<State> result;
    result.reserve(a.effects.size());
    for (const Effect &e : a.effects) {
        State succ = state.apply(e.del, e.add);
        bool seen = false;
        for (const State &s : result)
            if (s == succ) {
                seen = true;
                break;
            }
        if (!seen)
            result.push_back(std::move(succ));
    }
    return result;
}

bool FondTask::is_goal(const State &state) const {
    for (int g : goal_)
        if (!state.test(g))
            return false;
    return true;
}

std::vector<int> FondTask::applicable_actions(const State &state) const {
    std::vector<int> result;
    for (const Action &a : actions_)
        if (applicable(state, a.id))
            result.push_back(a.id);
    return result;
}

int FondTask::fact_id(const std::string &name) const {
    auto it = fact_by_name_.find(name);
    return it == fact_by_name_.end() ? -1 : it->second;
}

int FondTask::action_id(const std::string &name) const {
    auto it = action_by_name_.find(name);
    return it == action_by_name_.end() ? -1 : it->second;
}

void FondTask::mark_explicit(std::vector<std::string> state_names,
                             std::vector<State> named_states) {
    assert(state_names.size() == named_states.size());
    explicit_encoding_ = true;
    explicit_state_names_ = std::move(state_names);
    explicit_states_ = std::move(named_states);
}

State FondTask::explicit_state(const std::string &name) const {
    for (std::size_t i = 0; i < explicit_state_names_.size(); ++i)
        if (explicit_state_names_[i] == name)
            return explicit_states_[i];
    throw DanglingStateReference(name);
}

std::string FondTask::explicit_state_name(const State &state) const {
    for (std::size_t i = 0; i < explicit_states_.size(); ++i)
        if (explicit_states_[i] == state)
            return explicit_state_names_[i];
    throw InvalidInput("state is not one of the named states");
}

} // namespace fondps
