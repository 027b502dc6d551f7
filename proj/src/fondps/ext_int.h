#ifndef FONDPS_EXT_INT_H
#define FONDPS_EXT_INT_H

#include <cstdint>
#include <limits>
#include <string>

namespace fondps {

/*
  Extended non-negative integers with an explicit infinity, used for
  heuristic values. Infinity absorbs addition.
*/
using ExtInt = std::int64_t;

inline constexpr ExtInt INFTY = std::numeric_limits<std::int64_t>::max();

inline ExtInt ext_add(ExtInt a, ExtInt b) {
    if (a == INFTY || b == INFTY)
        return INFTY;
    return a + b;
}

inline std::string ext_to_string(ExtInt v) {
    return v == INFTY ? "inf" : std::to_string(v);
}

} // namespace fondps

#endif
