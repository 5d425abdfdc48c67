#include "qdesk/shor.hpp"

#include <numeric>

#include <gtest/gtest.h>

using namespace qdesk;
using namespace qdesk::shor;

TEST(NumberTheory, modexp_examples) {
  EXPECT_EQ(modexp(7, 4, 15), 1U);
  EXPECT_EQ(modexp(9, 0, 20), 1U);
  EXPECT_EQ(modexp(2, 10, 1024), 0U);
  EXPECT_EQ(modexp(3, 200, 1000000007), 136318165U);
  EXPECT_THROW(modexp(2, 2, 1), std::domain_error);
}

TEST(NumberTheory, modexp_matches_repeated_multiplication) {
  for (std::uint64_t n = 2; n < 60; ++n) {
    for (std::uint64_t x = 0; x < n; ++x) {
      std::uint64_t acc = 1 % n;
      for (std::uint64_t a = 0; a < 20; ++a) {
        EXPECT_EQ(modexp(x, a, n), acc);
        acc = acc * x % n;
      }
    }
  }
}

TEST(NumberTheory, classification) {
  EXPECT_EQ(is_trivial_case(16), Classification::Even);
  EXPECT_EQ(is_trivial_case(2), Classification::Even);
  EXPECT_EQ(is_trivial_case(3), Classification::Prime);
  EXPECT_EQ(is_trivial_case(97), Classification::Prime);
  EXPECT_EQ(is_trivial_case(27), Classification::PrimePower);
  EXPECT_EQ(is_trivial_case(49), Classification::PrimePower);
  EXPECT_EQ(is_trivial_case(15), Classification::CompositeOk);
  EXPECT_EQ(is_trivial_case(225), Classification::CompositeOk);
  EXPECT_EQ(to_string(Classification::PrimePower), "prime power");
}

TEST(NumberTheory, orders) {
  EXPECT_EQ(multiplicative_order(7, 15), 4U);
  EXPECT_EQ(multiplicative_order(2, 21), 6U);
  EXPECT_TRUE(is_order(2, 6, 21));
  EXPECT_FALSE(is_order(2, 12, 21));
  EXPECT_EQ(reduce_to_order(2, 12, 21), 6U);
  EXPECT_THROW(multiplicative_order(3, 15), std::domain_error);
}

TEST(Shor, circuit_distribution_examples) {
  const Distribution d7 = order_finding_distribution(FactoringInstance::make(15, 7));
  ASSERT_EQ(d7.size(), 256U);
  for (std::uint64_t c = 0; c < 256; ++c) {
    EXPECT_NEAR(d7[c], c % 64 == 0 ? 0.25 : 0.0, 1e-12) << c;
  }
  const Distribution d14 = order_finding_distribution(FactoringInstance::make(15, 14));
  for (std::uint64_t c = 0; c < 256; ++c) {
    EXPECT_NEAR(d14[c], c % 128 == 0 ? 0.5 : 0.0, 1e-12) << c;
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(run_order_finding_circuit(FactoringInstance::make(15, 7), s) % 64, 0U);
  }
}

TEST(Shor, instance_validation) {
  EXPECT_THROW(FactoringInstance::make(15, 5), std::domain_error);
  EXPECT_EQ(FactoringInstance::make(21, 2).L, 5);
  EXPECT_THROW(order_finding_state(FactoringInstance::make(511, 2)), ResourceError);
}

TEST(Shor, second_register_holds_the_orbit) {
  const auto inst = FactoringInstance::make(21, 2);
  const Distribution d = distribution(order_finding_state(inst));
  const Distribution second = marginal(d, 2 * inst.L + 1, 3 * inst.L);
  for (std::uint64_t w = 0; w < second.size(); ++w) {
    bool in_orbit = false;
    for (std::uint64_t a = 0; a < 6; ++a) in_orbit |= modexp(2, a, 21) == w;
    if (!in_orbit) EXPECT_NEAR(second[w], 0.0, 1e-12);
  }
}

TEST(Shor, analytic_probability_examples) {
  const auto inst = FactoringInstance::make(15, 7);
  EXPECT_NEAR(analytic_outcome_probability(inst, 64, 0), 1.0 / 16, 1e-12);
  double total = 0;
  for (std::uint64_t c = 0; c < 256; ++c) {
    for (std::uint64_t a0 = 0; a0 < 4; ++a0) total += analytic_outcome_probability(inst, c, a0);
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Shor, simulation_matches_closed_form) {
  for (std::uint64_t N : {15ULL, 21ULL}) {
    for (std::uint64_t x = 2; x < N - 1; ++x) {
      if (std::gcd(x, N) != 1) continue;
      if (N == 21 && x != 2 && x != 5 && x != 4) continue;
      const auto inst = FactoringInstance::make(N, x);
      const Distribution d = order_finding_distribution(inst);
      const std::uint64_t r = multiplicative_order(x, N);
      double total = 0;
      for (std::uint64_t c = 0; c < d.size(); ++c) {
        double p = 0;
        for (std::uint64_t a0 = 0; a0 < r; ++a0) p += analytic_outcome_probability(inst, c, a0);
        EXPECT_NEAR(d[c], p, 1e-9) << N << " " << x << " " << c;
        total += p;
      }
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(Shor, continued_fraction_examples) {
  const auto has = [](const std::vector<Convergent>& v, std::uint64_t p, std::uint64_t q) {
    return std::any_of(v.begin(), v.end(), [&](const Convergent& f) { return f.p == p && f.q == q; });
  };
  EXPECT_TRUE(has(continued_fraction_candidates(192, 256, 15), 3, 4));
  const auto zero = continued_fraction_candidates(0, 256, 15);
  ASSERT_EQ(zero.size(), 1U);
  EXPECT_EQ(zero[0].p, 0U);
  EXPECT_EQ(zero[0].q, 1U);
  EXPECT_TRUE(has(continued_fraction_candidates(85, 256, 21), 1, 3));
  for (std::uint64_t c = 0; c < 1024; ++c) {
    for (const auto& f : continued_fraction_candidates(c, 1024, 33)) {
      EXPECT_LT(f.q, 33U);
      EXPECT_EQ(std::gcd(f.p, f.q), 1U);
    }
  }
}

TEST(Shor, recover_order_examples) {
  const auto inst = FactoringInstance::make(15, 7);
  const auto r = recover_order(inst, 192);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->r, 4U);
  EXPECT_FALSE(recover_order(inst, 0).has_value());

  const auto inst21 = FactoringInstance::make(21, 2);
  const std::uint64_t Q = inst21.first_register_size();
  for (std::uint64_t d : {1ULL, 5ULL}) {
    const std::uint64_t c = (d * Q + 3) / 6;
    const auto got = recover_order(inst21, c);
    ASSERT_TRUE(got.has_value()) << c;
    EXPECT_EQ(got->r, 6U);
  }
}

TEST(Shor, recovered_orders_always_verify) {
  for (std::uint64_t N : {15ULL, 21ULL, 33ULL, 35ULL}) {
    for (std::uint64_t x = 2; x < N - 1; ++x) {
      if (std::gcd(x, N) != 1) continue;
      const auto inst = FactoringInstance::make(N, x);
      for (std::uint64_t c = 0; c < inst.first_register_size(); ++c) {
        const auto r = recover_order(inst, c);
        if (r) EXPECT_EQ(modexp(x, r->r, N), 1U) << N << " " << x << " " << c;
      }
    }
  }
}

TEST(Shor, extract_factors_examples) {
  const auto a = extract_factors(15, 7, 4);
  ASSERT_TRUE(a.factors.has_value());
  EXPECT_EQ(*a.factors, std::make_pair(std::uint64_t{5}, std::uint64_t{3}));
  EXPECT_EQ(extract_factors(15, 14, 2).failure, kMinusOne);
  const auto b = extract_factors(21, 2, 6);
  ASSERT_TRUE(b.factors.has_value());
  EXPECT_EQ(*b.factors, std::make_pair(std::uint64_t{3}, std::uint64_t{7}));
  EXPECT_EQ(extract_factors(21, 4, 3).failure, kOddOrder);
  EXPECT_THROW(extract_factors(15, 7, 8), std::domain_error);
  EXPECT_THROW(extract_factors(15, 7, 3), std::domain_error);
}

TEST(Shor, half_the_residues_of_15_succeed) {
  int good = 0, total = 0;
  for (std::uint64_t x = 2; x < 15; ++x) {
    if (std::gcd(x, std::uint64_t{15}) != 1) continue;
    ++total;
    good += extract_factors(15, x, multiplicative_order(x, 15)).factors.has_value();
  }
  EXPECT_GE(2 * good, total);
}

TEST(Shor, factor_examples) {
  const auto sorted = [](std::pair<std::uint64_t, std::uint64_t> p) {
    if (p.first > p.second) std::swap(p.first, p.second);
    return p;
  };
  const FactorReport r15 = factor(15, 5, 42);
  ASSERT_TRUE(r15.succeeded()) << r15.failure;
  EXPECT_EQ(sorted(*r15.factors), std::make_pair(std::uint64_t{3}, std::uint64_t{5}));
  const FactorReport r21 = factor(21, 8, 7);
  ASSERT_TRUE(r21.succeeded()) << r21.failure;
  EXPECT_EQ(sorted(*r21.factors), std::make_pair(std::uint64_t{3}, std::uint64_t{7}));
  const FactorReport r33 = factor(33, 8, 7);
  ASSERT_TRUE(r33.succeeded()) << r33.failure;
  EXPECT_EQ(sorted(*r33.factors), std::make_pair(std::uint64_t{3}, std::uint64_t{11}));
  EXPECT_THROW(factor(49, 8, 1), std::domain_error);
  EXPECT_THROW(factor(16, 8, 1), std::domain_error);
}

TEST(Shor, factor_is_seed_deterministic) {
  const FactorReport a = factor(35, 8, 99);
  const FactorReport b = factor(35, 8, 99);
  EXPECT_EQ(a.attempts.size(), b.attempts.size());
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.measured_c, b.measured_c);
  EXPECT_EQ(a.factors, b.factors);
}

TEST(Shor, order_four_exactly_near_peaks) {
  const auto inst = FactoringInstance::make(15, 7);
  for (std::uint64_t c = 0; c < 256; ++c) {
    bool near_peak = false;
    for (int d = 1; d <= 4; ++d) near_peak |= std::abs(double(c) / 256 - d / 4.0) <= 1.0 / 32;
    const auto r = recover_order(inst, c);
    EXPECT_EQ(r && r->r == 4, near_peak) << c;
  }
}

TEST(Shor, factor_reports_exact_orders) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FactorReport rep = factor(21, 8, seed);
    for (const auto& a : rep.attempts) {
      if (a.recovered_r) EXPECT_TRUE(is_order(a.x, *a.recovered_r, 21));
    }
  }
}
