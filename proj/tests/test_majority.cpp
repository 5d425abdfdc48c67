#include "qdesk/majority.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qdesk/rng.hpp"

using namespace qdesk;

namespace {

double binomial_tail(int n, int at_least, double p) {
  double total = 0;
  for (int j = at_least; j <= n; ++j) {
    total += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0)) *
             std::pow(p, j) * std::pow(1 - p, n - j);
  }
  return total;
}

// A trial that succeeds with probability p, driven only by its sub-seed.
auto biased(double p) {
  return [p](std::uint64_t seed) {
    Rng rng(seed);
    return uniform_unit(rng) < p;
  };
}

}  // namespace

TEST(Majority, binomial_tail_for_two_thirds) {
  EXPECT_GE(binomial_tail(15, 8, 2.0 / 3), 0.85);
}

TEST(Majority, amplifies_two_thirds) {
  const double expected = binomial_tail(15, 8, 2.0 / 3);
  const int meta = 500;
  int wins = 0;
  for (int i = 0; i < meta; ++i) {
    const MajorityVote v = majority_amplify(biased(2.0 / 3), 15, derive_seed(77, i));
    EXPECT_EQ(v.yes + v.no, 15);
    wins += v.outcome;
  }
  const double sigma = std::sqrt(expected * (1 - expected) / meta);
  EXPECT_NEAR(static_cast<double>(wins) / meta, expected, 3 * sigma);
}

TEST(Majority, certain_trial) {
  const MajorityVote v = majority_amplify([](std::uint64_t) { return true; }, 7, 1);
  EXPECT_TRUE(v.outcome);
  EXPECT_EQ(v.yes, 7);
}

TEST(Majority, fair_coin_is_not_amplified) {
  const int meta = 1000;
  int wins = 0;
  for (int i = 0; i < meta; ++i) wins += majority_amplify(biased(0.5), 15, derive_seed(5, i)).outcome;
  EXPECT_NEAR(static_cast<double>(wins) / meta, 0.5, 3 * std::sqrt(0.25 / meta));
}

TEST(Majority, even_trials_rejected) {
  EXPECT_THROW(majority_amplify(biased(0.5), 4, 1), std::domain_error);
  EXPECT_THROW(majority_amplify(biased(0.5), 0, 1), std::domain_error);
}
