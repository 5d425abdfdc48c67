#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdesk/number_theory.hpp"
#include "qdesk/statevec.hpp"

namespace qdesk::shor {

/// An odd composite N with a residue x coprime to it. The first register
/// holds 2L qubits and the second L, where L is the bit length of N.
struct FactoringInstance {
  std::uint64_t N;
  std::uint64_t x;
  int L;

  /// Throws std::domain_error if N < 3 or gcd(x, N) != 1.
  static FactoringInstance make(std::uint64_t N, std::uint64_t x);

  int first_register_qubits() const { return 2 * L; }
  int total_qubits() const { return 3 * L; }
  std::uint64_t first_register_size() const { return std::uint64_t{1} << (2 * L); }
};

struct Convergent {
  std::uint64_t p;
  std::uint64_t q;
};

struct OrderResult {
  std::uint64_t r;
  std::string source;  // "measured+cf" or "exhaustive oracle"
};

/// Pre-measurement state: uniform first register, x^a mod N xor-ed into the
/// second register, QFT on the first register. Throws ResourceError if 3L
/// exceeds the simulator cap.
StateVector order_finding_state(const FactoringInstance& inst);

/// Distribution of the first-register value c.
Distribution order_finding_distribution(const FactoringInstance& inst);

/// Runs the circuit and measures; returns c in [0, 2^(2L)).
std::uint64_t run_order_finding_circuit(const FactoringInstance& inst,
                                        std::uint64_t seed);

/// Probability of observing (c, x^a0 mod N) from the closed-form geometric
/// sum over the exponents a0, a0 + r, a0 + 2r, ... below 2^(2L).
/// Requires 0 <= a0 < r, where r is the order of x.
double analytic_outcome_probability(const FactoringInstance& inst,
                                    std::uint64_t c, std::uint64_t a0);

/// Convergents p/q of c / two_pow_2L with q < N, in order of appearance.
std::vector<Convergent> continued_fraction_candidates(std::uint64_t c,
                                                      std::uint64_t two_pow_2L,
                                                      std::uint64_t N);

/// True when |c/2^(2L) - p/q| <= 1/2^(L+1), the widest offset a
/// probability peak can have. Convergents outside the window are not tried.
bool within_peak_window(const FactoringInstance& inst, std::uint64_t c,
                        const Convergent& f);

/// Tries the denominators of the trusted nonzero convergents and their
/// multiples up to 4, and returns the least one with x^r = 1 mod N. A hit
/// can be a multiple of the true order. Empty on a miss.
std::optional<OrderResult> recover_order(const FactoringInstance& inst,
                                         std::uint64_t c);

/// The order by brute force, tagged "exhaustive oracle".
OrderResult exhaustive_order(const FactoringInstance& inst);

inline constexpr const char* kOddOrder = "odd r";
inline constexpr const char* kMinusOne = "x^{r/2} == -1";
inline constexpr const char* kCfMiss = "cf miss";

struct Extraction {
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
  std::string failure;
};

/// Congruence-of-squares step. Throws std::domain_error unless r is the
/// multiplicative order of x mod N.
Extraction extract_factors(std::uint64_t N, std::uint64_t x, std::uint64_t r);

struct Attempt {
  int index = 0;
  std::uint64_t x = 0;
  std::string outcome;  // "lucky gcd", "factored" or a failure reason
  std::optional<std::uint64_t> measured_c;
  std::optional<std::uint64_t> recovered_r;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
};

struct FactorReport {
  std::uint64_t N = 0;
  std::optional<std::uint64_t> x;
  std::optional<std::uint64_t> measured_c;
  std::optional<std::uint64_t> recovered_r;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
  std::string failure;
  std::vector<Attempt> attempts;

  bool succeeded() const { return factors.has_value(); }
};

/// Draws x uniformly from [2, N-2] up to max_attempts times. A shared
/// factor is reported at once; otherwise the circuit is run (measurement
/// seed derive_seed(seed, attempt)) and the order turned into factors.
/// Throws std::domain_error unless N is composite-ok.
FactorReport factor(std::uint64_t N, int max_attempts, std::uint64_t seed);

}  // namespace qdesk::shor
