#include "qdesk/simon.hpp"

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

using namespace qdesk;
using namespace qdesk::simon;

TEST(Simon, oracle_examples) {
  const SimonOracle f = make_oracle(2, 0b11, 5);
  EXPECT_EQ(f(0b00), f(0b11));
  EXPECT_EQ(f(0b01), f(0b10));
  EXPECT_NE(f(0b00), f(0b01));
  EXPECT_TRUE(has_hidden_shift(f));
  for (int n = 1; n <= 6; ++n) {
    for (BitVector c = 1; c < (BitVector{1} << n); ++c) {
      const SimonOracle g = make_oracle(n, c, c * 31 + n);
      EXPECT_TRUE(has_hidden_shift(g));
      const std::set<BitVector> image(g.table.begin(), g.table.end());
      EXPECT_EQ(image.size(), std::size_t{1} << (n - 1));
    }
  }
  EXPECT_THROW(make_oracle(3, 0, 1), std::domain_error);
  EXPECT_THROW(make_oracle(3, 8, 1), std::domain_error);
  EXPECT_THROW(make_oracle(kMaxOracleBits + 1, 1, 1), std::domain_error);
}

TEST(Simon, recover_shift_examples) {
  EXPECT_EQ(recover_shift({0b110, 0b011}, 3).c, BitVector{0b111});
  EXPECT_FALSE(recover_shift({0b00}, 2).c.has_value());
  EXPECT_EQ(recover_shift({0b01}, 2).c, BitVector{0b10});
  EXPECT_THROW(recover_shift({0b01, 0b10}, 2), InconsistentSamples);
}

TEST(Simon, gf2_rank) {
  Gf2Matrix m(4);
  EXPECT_TRUE(m.add_row(0b1100));
  EXPECT_TRUE(m.add_row(0b0110));
  EXPECT_FALSE(m.add_row(0b1010));
  EXPECT_FALSE(m.add_row(0));
  EXPECT_EQ(m.rank(), 2);
  EXPECT_EQ(m.rows().size(), 4U);
}

TEST(Simon, null_vector_is_orthogonal) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 10));
    const BitVector c = 1 + uniform_below(rng, (BitVector{1} << n) - 1);
    Gf2Matrix m(n);
    while (m.rank() < n - 1) {
      const BitVector y = uniform_below(rng, BitVector{1} << n);
      if (dot(y, c) == 0) m.add_row(y);
    }
    const auto r = recover_shift(m);
    ASSERT_TRUE(r.c.has_value());
    EXPECT_EQ(*r.c, c);
  }
}

TEST(Simon, distribution_uniform_on_orthogonal_complement) {
  for (int n = 1; n <= 5; ++n) {
    for (BitVector c = 1; c < (BitVector{1} << n); ++c) {
      const Distribution d = simon_distribution(make_oracle(n, c, 100 + c));
      const double expected = 1.0 / static_cast<double>(BitVector{1} << (n - 1));
      for (BitVector y = 0; y < d.size(); ++y) {
        EXPECT_NEAR(d[y], dot(y, c) == 0 ? expected : 0.0, 1e-10) << n << " " << c << " " << y;
      }
    }
  }
}

TEST(Simon, samples_orthogonal_to_shift) {
  const SimonOracle f = make_oracle(2, 0b11, 9);
  std::set<BitVector> seen;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const BitVector y = simon_sample(f, s);
    EXPECT_EQ(dot(y, 0b11), 0);
    seen.insert(y);
  }
  EXPECT_EQ(seen, (std::set<BitVector>{0b00, 0b11}));
  const SimonOracle one = make_oracle(1, 1, 3);
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_EQ(simon_sample(one, s), 0U);
}

TEST(Simon, run_examples) {
  const SimonRun run = run_simon(make_oracle(2, 0b11, 1), 20, 4);
  EXPECT_EQ(run.c, BitVector{0b11});
  EXPECT_EQ(run.hadamards, 2 * 2 * run.rounds);
  EXPECT_EQ(run.oracle_calls, run.rounds);

  const SimonRun trivial = run_simon(make_oracle(1, 1, 1), 4, 4);
  EXPECT_EQ(trivial.c, BitVector{1});
  EXPECT_EQ(trivial.rounds, 0);

  EXPECT_THROW(run_simon(make_oracle(4, 3, 1), 3, 1), std::domain_error);
}

TEST(Simon, recovers_every_shift_up_to_six_bits) {
  for (int n = 2; n <= 6; ++n) {
    Rng rng(static_cast<std::uint64_t>(n));
    for (int seed = 1; seed <= 50; ++seed) {
      const BitVector c = 1 + uniform_below(rng, (BitVector{1} << n) - 1);
      const SimonRun run = run_simon(make_oracle(n, c, seed), 8 * n, seed);
      ASSERT_TRUE(run.c.has_value()) << run.failure;
      EXPECT_EQ(*run.c, c);
    }
  }
}

TEST(Simon, expected_rounds_linear) {
  Rng rng(44);
  double total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const BitVector c = 1 + uniform_below(rng, 15);
    const SimonRun run = run_simon(make_oracle(4, c, trial), 40, 1000 + trial);
    ASSERT_TRUE(run.c.has_value());
    total += run.rounds;
  }
  EXPECT_LE(total / 100, 4 + 2);
}

TEST(Simon, classical_baseline) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const SimonOracle f = make_oracle(2, 1 + s % 3, s);
    const ClassicalResult r = classical_query_baseline(f, s);
    EXPECT_LE(r.queries, 3);
    EXPECT_EQ(r.c, f.c);
  }
  std::vector<int> queries;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const SimonOracle f = make_oracle(6, 0b101101, s);
    const ClassicalResult r = classical_query_baseline(f, s);
    EXPECT_EQ(f(0), f(r.c));
    queries.push_back(r.queries);
  }
  std::nth_element(queries.begin(), queries.begin() + 100, queries.end());
  EXPECT_GE(queries[100], 4);
}
