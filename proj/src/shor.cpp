#include "qdesk/shor.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qdesk/qft.hpp"
#include "qdesk/rng.hpp"

namespace qdesk::shor {

FactoringInstance FactoringInstance::make(std::uint64_t N, std::uint64_t x) {
  if (N < 3) throw std::domain_error("N must be at least 3");
  if (std::gcd(x % N, N) != 1) {
    throw std::domain_error("x must be coprime to N");
  }
  return {N, x % N, bit_length(N)};
}

StateVector order_finding_state(const FactoringInstance& inst) {
  const int first = inst.first_register_qubits();
  const int total = inst.total_qubits();
  check_qubit_count(total);
  StateVector state = init_basis(total, 0);
  state.hadamard_range_inplace(1, first);

  const std::uint64_t second_mask = (std::uint64_t{1} << inst.L) - 1;
  // Reversible classical oracle (a, w) -> (a, w xor x^a mod N). Powers are
  // tabulated by repeated multiplication; modexp is the spot check below.
  std::vector<std::uint64_t> power(inst.first_register_size());
  power[0] = 1 % inst.N;
  for (std::size_t a = 1; a < power.size(); ++a) {
    power[a] = power[a - 1] * inst.x % inst.N;
  }
  if (power.back() != modexp(inst.x, power.size() - 1, inst.N)) {
    throw std::logic_error("power table disagrees with modexp");
  }
  state.permute_inplace([&](std::uint64_t index) {
    const std::uint64_t a = index >> inst.L;
    return (a << inst.L) | ((index & second_mask) ^ power[a]);
  });

  state.apply_inplace(build_qft_circuit({first, std::nullopt, true}));
  return state;
}

Distribution order_finding_distribution(const FactoringInstance& inst) {
  return marginal(distribution(order_finding_state(inst)), 1,
                  inst.first_register_qubits());
}

std::uint64_t run_order_finding_circuit(const FactoringInstance& inst,
                                        std::uint64_t seed) {
  const StateVector state = order_finding_state(inst);
  const std::uint64_t outcome = measure_all(state, seed, 1).front();
  return extract_register(outcome, inst.total_qubits(), 1,
                          inst.first_register_qubits());
}

double analytic_outcome_probability(const FactoringInstance& inst,
                                    std::uint64_t c, std::uint64_t a0) {
  const std::uint64_t Q = inst.first_register_size();
  const std::uint64_t r = multiplicative_order(inst.x, inst.N);
  if (c >= Q) throw std::domain_error("c outside the first register");
  if (a0 >= r) throw std::domain_error("a0 must be below the order");
  // The exponents a0 + b r below Q number floor(Q/r) + eta, where eta is 1
  // exactly when a0 + floor(Q/r) r still fits below Q.
  const std::uint64_t eta = (a0 + (Q / r) * r < Q) ? 1 : 0;
  const std::uint64_t terms = Q / r + eta;
  const std::uint64_t step = (r * c) % Q;
  Complex sum(0);
  for (std::uint64_t b = 0; b < terms; ++b) {
    const std::uint64_t phase = (b * step) % Q;
    sum += std::polar(1.0, 2.0 * std::numbers::pi *
                               static_cast<double>(phase) / static_cast<double>(Q));
  }
  const double q = static_cast<double>(Q);
  return std::norm(sum) / (q * q);
}

std::vector<Convergent> continued_fraction_candidates(std::uint64_t c,
                                                      std::uint64_t two_pow_2L,
                                                      std::uint64_t N) {
  if (two_pow_2L == 0 || c >= two_pow_2L) {
    throw std::domain_error("need 0 <= c < 2^(2L)");
  }
  std::vector<Convergent> out;
  // h/k recurrences seeded with h_{-2}/k_{-2} = 0/1 and h_{-1}/k_{-1} = 1/0.
  std::uint64_t h_prev = 1, h_prev2 = 0;
  std::uint64_t k_prev = 0, k_prev2 = 1;
  std::uint64_t num = c, den = two_pow_2L;
  while (true) {
    const std::uint64_t a = num / den;
    const std::uint64_t h = a * h_prev + h_prev2;
    const std::uint64_t k = a * k_prev + k_prev2;
    if (k >= N) break;
    out.push_back({h, k});
    const std::uint64_t rem = num % den;
    if (rem == 0) break;
    num = den;
    den = rem;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return out;
}

bool within_peak_window(const FactoringInstance& inst, std::uint64_t c,
                        const Convergent& f) {
  const std::uint64_t Q = inst.first_register_size();
  // |c q - p Q| / (Q q) <= 1 / 2^(L+1), cross-multiplied.
  const std::uint64_t lhs = (c * f.q > f.p * Q) ? c * f.q - f.p * Q : f.p * Q - c * f.q;
  return (lhs << (inst.L + 1)) <= Q * f.q;
}

std::optional<OrderResult> recover_order(const FactoringInstance& inst,
                                         std::uint64_t c) {
  std::optional<std::uint64_t> best;
  for (const Convergent& f :
       continued_fraction_candidates(c, inst.first_register_size(), inst.N)) {
    // p = 0 means d = 0, which says nothing about r.
    if (f.p == 0 || !within_peak_window(inst, c, f)) continue;
    for (std::uint64_t lambda = 1; lambda <= 4; ++lambda) {
      const std::uint64_t candidate = lambda * f.q;
      if (modexp(inst.x, candidate, inst.N) != 1) continue;
      if (!best || candidate < *best) best = candidate;
      break;
    }
  }
  if (!best) return std::nullopt;
  return OrderResult{*best, "measured+cf"};
}

OrderResult exhaustive_order(const FactoringInstance& inst) {
  return {multiplicative_order(inst.x, inst.N), "exhaustive oracle"};
}

Extraction extract_factors(std::uint64_t N, std::uint64_t x, std::uint64_t r) {
  if (!is_order(x, r, N)) {
    throw std::domain_error(std::to_string(r) + " is not the order of " +
                            std::to_string(x) + " mod " + std::to_string(N));
  }
  if (r % 2 == 1) return {std::nullopt, kOddOrder};
  const std::uint64_t half = modexp(x, r / 2, N);
  if (half == N - 1) return {std::nullopt, kMinusOne};
  // half != +-1, so N divides (half+1)(half-1) but neither factor alone.
  return {std::pair{std::gcd(half + 1, N), std::gcd(half + N - 1, N)}, ""};
}

FactorReport factor(std::uint64_t N, int max_attempts, std::uint64_t seed) {
  const Classification kind = is_trivial_case(N);
  if (kind != Classification::CompositeOk) {
    throw std::domain_error("N = " + std::to_string(N) + " is " +
                            std::string(to_string(kind)) +
                            "; order finding needs an odd composite with two "
                            "or more distinct prime factors");
  }
  if (max_attempts < 1) throw std::domain_error("max_attempts must be positive");
  check_qubit_count(3 * bit_length(N));

  FactorReport report;
  report.N = N;
  Rng rng = make_rng(seed);
  for (int i = 0; i < max_attempts; ++i) {
    Attempt attempt;
    attempt.index = i;
    attempt.x = 2 + uniform_below(rng, N - 3);
    const std::uint64_t shared = std::gcd(attempt.x, N);
    if (shared > 1) {
      attempt.outcome = "lucky gcd";
      attempt.factors = std::pair{shared, N / shared};
    } else {
      const auto inst = FactoringInstance::make(N, attempt.x);
      attempt.measured_c = run_order_finding_circuit(
          inst, derive_seed(seed, static_cast<std::uint64_t>(i)));
      const auto order = recover_order(inst, *attempt.measured_c);
      if (!order) {
        attempt.outcome = kCfMiss;
      } else {
        // A widened candidate can be a multiple of the order; divide it down.
        attempt.recovered_r = reduce_to_order(attempt.x, order->r, N);
        const Extraction ex = extract_factors(N, attempt.x, *attempt.recovered_r);
        attempt.outcome = ex.factors ? "factored" : ex.failure;
        attempt.factors = ex.factors;
      }
    }
    report.attempts.push_back(attempt);
    report.x = attempt.x;
    report.measured_c = attempt.measured_c;
    report.recovered_r = attempt.recovered_r;
    if (attempt.factors) {
      report.factors = attempt.factors;
      report.failure.clear();
      return report;
    }
    report.failure = attempt.outcome;
  }
  report.failure = "attempts exhausted (last: " + report.failure + ")";
  return report;
}

}  // namespace qdesk::shor
