#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "qdesk/statevec.hpp"

namespace qdesk::grover {

/// Unordered search over N = 2^k items. The predicate is the only view of
/// the data the algorithm gets; every oracle() application is counted.
class SearchProblem {
 public:
  /// Counts the marked indices once up front (that scan is not charged to
  /// the oracle counter).
  SearchProblem(int k, std::function<bool(std::uint64_t)> predicate);

  static SearchProblem single(int k, std::uint64_t target);
  static SearchProblem of_targets(int k, std::vector<std::uint64_t> targets);

  int qubits() const { return k_; }
  std::uint64_t size() const { return std::uint64_t{1} << k_; }
  std::uint64_t target_count() const { return target_count_; }

  bool test(std::uint64_t index) const { return predicate_(index); }

  /// Z_t as a phase flip; one oracle call per application.
  PhaseFlip oracle() const;
  std::uint64_t oracle_calls() const { return *calls_; }

 private:
  int k_;
  std::function<bool(std::uint64_t)> predicate_;
  std::uint64_t target_count_ = 0;
  std::shared_ptr<std::uint64_t> calls_;
};

/// W = H on every wire.
StateVector walsh_hadamard(StateVector state);

/// a_i -> 2m - a_i with m the mean amplitude, straight from the formula.
StateVector inversion_about_mean(StateVector state);

/// The same reflection composed as -W Z0 W from gate layers.
StateVector inversion_about_mean_composed(StateVector state);

/// One iteration: Z_t, then the inversion about the mean.
StateVector grover_iterate(StateVector state, const SearchProblem& problem);

/// round(pi/4 sqrt(N / t) - 1/2). Throws std::domain_error unless
/// 1 <= t < N.
std::uint64_t iteration_schedule(std::uint64_t N, std::uint64_t target_count);

/// Total probability on marked indices.
double marked_probability(const StateVector& state, const SearchProblem& problem);

struct GroverRun {
  std::uint64_t found = 0;
  bool success = false;
  std::uint64_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  double final_probability = 0;
  // trace[j]: marked probability after j iterations, j = 0..iterations.
  std::vector<double> trace;
};

GroverRun run_grover(const SearchProblem& problem, std::uint64_t seed);

struct AmplitudePair {
  double alpha;  // each unmarked item
  double beta;   // the marked item
};

/// Two-amplitude model of the single-target iteration. With the oracle sign
/// folded into the mean, m = ((N-1) alpha - beta) / N, the step is
/// alpha' = 2m - alpha, beta' = beta + 2m. Returns iterations+1 pairs
/// starting from alpha = beta = 1/sqrt(N).
std::vector<AmplitudePair> analytic_recurrence(std::uint64_t N,
                                               std::uint64_t iterations);

}  // namespace qdesk::grover
