#ifndef FONDPS_COMPRESSOR_H
#define FONDPS_COMPRESSOR_H

#include "cover_ip.h"
#include "partial.h"
#include "policy.h"

#include <cstdint>

namespace fondps {

struct CompressOptions {
    std::uint64_t solver_node_budget = 5'000'000;
};

/*
  Compress a state policy into a partial-state policy of minimal size:
  one cover-with-exclusion subproblem per action, solved exactly with
  an increasing number of partial states (feasibility is guaranteed at
  the cover size). The decompressed result agrees with the input on
  every domain state, matches no frontier state, and never matches a
  domain or frontier state with conflicting rules.
*/
PartialPolicy compress(const Policy &policy, const CompressOptions &options = {});

// the per-action subproblem the compressor solves
CoverInstance cover_instance_for_action(const Policy &policy, int action);

} // namespace fondps

#endif
