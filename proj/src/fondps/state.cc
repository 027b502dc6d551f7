#include "state.h"

#include <cassert>

namespace fondps {

static std::size_t blocks_for(std::uint32_t num_facts) {
    return (static_cast<std::size_t>(num_facts) + 63) / 64;
}

State::State(std::uint32_t num_facts)
    : blocks_(blocks_for(num_facts), 0), num_facts_(num_facts) {
    rehash();
}

State::State(std::uint32_t num_facts, const std::vector<int> &true_facts)
    : blocks_(blocks_for(num_facts), 0), num_facts_(num_facts) {
    for (int f : true_facts) {
        assert(f >= 0 && static_cast<std::uint32_t>(f) < num_facts);
        blocks_[static_cast<std::size_t>(f) >> 6] |= 1ULL << (f & 63);
    }
    rehash();
}

void State::rehash() {
    // splitmix-style mix over the blocks
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ num_facts_;
    for (std::uint64_t b : blocks_) {
        h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 29;
    }
    hash_ = h;
}

int State::count() const {
    int c = 0;
    for (std::uint64_t b : blocks_)
        c += std::popcount(b);
    return c;
}

std::vector<int> State::true_facts() const {
    std::vector<int> result;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        std::uint64_t b = blocks_[i];
        while (b) {
            int bit = std::countr_zero(b);
            result.push_back(static_cast<int>(i * 64 + bit));
            b &= b - 1;
        }
    }
    return result;
}

State State::apply(const std::vector<int> &del, const std::vector<int> &add) const {
    State result(*this);
    for (int f : del)
        result.blocks_[static_cast<std::size_t>(f) >> 6] &= ~(1ULL << (f & 63));
    for (int f : add)
        result.blocks_[static_cast<std::size_t>(f) >> 6] |= 1ULL << (f & 63);
    result.rehash();
    return result;
}

State State::permute(const std::vector<int> &fact_perm) const {
    State result(num_facts_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        std::uint64_t b = blocks_[i];
        while (b) {
            int bit = std::countr_zero(b);
            int f = static_cast<int>(i * 64 + bit);
            int g = fact_perm[f];
            result.blocks_[static_cast<std::size_t>(g) >> 6] |= 1ULL << (g & 63);
            b &= b - 1;
        }
    }
    result.rehash();
    return result;
}

bool State::operator<(const State &other) const {
    assert(num_facts_ == other.num_facts_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        std::uint64_t diff = blocks_[i] ^ other.blocks_[i];
        if (diff) {
            // lowest differing fact decides; the state with a 0 there is smaller
            int bit = std::countr_zero(diff);
            return (blocks_[i] >> bit & 1) == 0;
        }
    }
    return false;
}

} // namespace fondps
