#ifndef FONDPS_SIGNATURE_H
#define FONDPS_SIGNATURE_H

#include "policy.h"
#include "symmetry.h"

#include <cstdint>
#include <memory>
#include <vector>

namespace fondps {

enum class PruningKind {
    identity,
    lanes,
    domain_frontier,
    frontier,
    frontier_symmetric,
};

PruningKind parse_pruning(const std::string &text);
std::string pruning_name(PruningKind kind);

enum class StateSignMode { none, greedy, canonical };

StateSignMode parse_state_sign(const std::string &text);

/*
  Context shared by all signature computations of one search run: the
  symmetry group for the state-level signature, and whether all goal
  states are folded into one virtual goal in frontier bookkeeping.
*/
struct SignatureContext {
    std::shared_ptr<const PermutationGroup> group;
    StateSignMode state_sign = StateSignMode::none;
    bool goal_merging = true;
};

/*
  Hashable equivalence key. Two policies get equal keys iff they are
  equivalent under the selected signature: equal mappings (identity),
  equal per-state escape sets (lanes), equal domain and frontier sets
  (domain_frontier), equal frontier sets (frontier), or frontiers with
  the same number of states per symmetry class (frontier_symmetric).
*/
class SignatureKey {
    std::vector<std::uint64_t> words_;
    std::uint64_t hash_ = 0;

    void seal();

    friend SignatureKey make_signature(const Policy &, PruningKind,
                                       const SignatureContext &);

public:
    bool operator==(const SignatureKey &other) const {
        return words_ == other.words_;
    }
    std::uint64_t hash() const {
        return hash_;
    }
};

struct SignatureKeyHash {
    std::size_t operator()(const SignatureKey &k) const {
        return static_cast<std::size_t>(k.hash());
    }
};

SignatureKey make_signature(const Policy &policy, PruningKind kind,
                            const SignatureContext &ctx);

} // namespace fondps

#endif
