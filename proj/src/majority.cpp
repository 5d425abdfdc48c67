#include "qdesk/majority.hpp"

#include <stdexcept>

#include "qdesk/rng.hpp"

namespace qdesk {

MajorityVote majority_amplify(const std::function<bool(std::uint64_t)>& trial,
                              int trials, std::uint64_t seed) {
  if (trials < 1 || trials % 2 == 0) {
    throw std::domain_error("majority vote needs an odd positive trial count");
  }
  MajorityVote vote;
  for (int i = 0; i < trials; ++i) {
    if (trial(derive_seed(seed, static_cast<std::uint64_t>(i)))) {
      ++vote.yes;
    } else {
      ++vote.no;
    }
  }
  vote.outcome = vote.yes > vote.no;
  return vote;
}

}  // namespace qdesk
