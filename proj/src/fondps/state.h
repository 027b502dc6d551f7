#ifndef FONDPS_STATE_H
#define FONDPS_STATE_H

#include <bit>
#include <cstdint>
#include <vector>

namespace fondps {

/*
  A state is a fixed-width bit vector over fact ids, immutable after
  construction, with a precomputed hash. Equality is bitwise.

  States carry a total order: the lexicographic order on the bit string
  b_0 b_1 ... b_{n-1} with 0 < 1. Every place that needs a "minimum
  state" (canonical signatures, concretizer candidate selection, stable
  serialization) uses this order.
*/
class State {
    std::vector<std::uint64_t> blocks_;
    std::uint32_t num_facts_ = 0;
    std::uint64_t hash_ = 0;

    void rehash();

public:
    State() = default;
    explicit State(std::uint32_t num_facts);
    State(std::uint32_t num_facts, const std::vector<int> &true_facts);

    std::uint32_t num_facts() const {
        return num_facts_;
    }

    bool test(int fact) const {
        return (blocks_[static_cast<std::size_t>(fact) >> 6] >>
                (static_cast<std::size_t>(fact) & 63)) & 1;
    }

    std::uint64_t hash() const {
        return hash_;
    }

    int count() const;
    std::vector<int> true_facts() const;

    // new state with the given facts deleted then added
    State apply(const std::vector<int> &del, const std::vector<int> &add) const;

    // new state with facts permuted: bit perm[f] of the result equals bit f
    State permute(const std::vector<int> &fact_perm) const;

    bool operator==(const State &other) const {
        return num_facts_ == other.num_facts_ && blocks_ == other.blocks_;
    }
    bool operator!=(const State &other) const {
        return !(*this == other);
    }

    // lexicographic on the bit string, 0 < 1
    bool operator<(const State &other) const;

    const std::vector<std::uint64_t> &blocks() const {
        return blocks_;
    }
};

struct StateHash {
    std::size_t operator()(const State &s) const {
        return static_cast<std::size_t>(s.hash());
    }
};

} // namespace fondps

#endif
