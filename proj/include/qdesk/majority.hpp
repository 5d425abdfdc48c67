#pragma once

#include <cstdint>
#include <functional>

namespace qdesk {

struct MajorityVote {
  bool outcome = false;
  int yes = 0;
  int no = 0;
};

/// Runs `trial` with sub-seeds derive_seed(seed, i), i = 0..trials-1, and
/// returns the majority outcome with the tally. trials must be odd.
MajorityVote majority_amplify(const std::function<bool(std::uint64_t)>& trial,
                              int trials, std::uint64_t seed);

}  // namespace qdesk
