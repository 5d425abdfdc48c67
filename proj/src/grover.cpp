#include "qdesk/grover.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace qdesk::grover {

SearchProblem::SearchProblem(int k, std::function<bool(std::uint64_t)> predicate)
    : k_(k), predicate_(std::move(predicate)), calls_(std::make_shared<std::uint64_t>(0)) {
  check_qubit_count(k);
  for (std::uint64_t i = 0; i < size(); ++i) target_count_ += predicate_(i) ? 1 : 0;
}

SearchProblem SearchProblem::single(int k, std::uint64_t target) {
  if (k >= 1 && k <= kMaxQubits && target >= (std::uint64_t{1} << k)) {
    throw std::domain_error("target outside the search space");
  }
  return SearchProblem(k, [target](std::uint64_t i) { return i == target; });
}

SearchProblem SearchProblem::of_targets(int k, std::vector<std::uint64_t> targets) {
  check_qubit_count(k);
  std::vector<bool> mark(std::size_t{1} << k, false);
  for (auto t : targets) {
    if (t >= mark.size()) throw std::domain_error("target outside the search space");
    mark[t] = true;
  }
  return SearchProblem(k, [mark = std::move(mark)](std::uint64_t i) { return mark[i]; });
}

PhaseFlip SearchProblem::oracle() const {
  ++*calls_;
  return phase_flip_target(k_, predicate_);
}

StateVector walsh_hadamard(StateVector state) {
  state.hadamard_range_inplace(1, state.n_qubits());
  return state;
}

StateVector inversion_about_mean(StateVector state) {
  const auto& a = state.amplitudes();
  const Complex mean = a.mean();
  StateVector::Vector out = (2.0 * mean) * StateVector::Vector::Ones(a.size()) - a;
  return StateVector(state.n_qubits(), std::move(out));
}

StateVector inversion_about_mean_composed(StateVector state) {
  const int n = state.n_qubits();
  state = walsh_hadamard(std::move(state));
  state = apply_phase_flip(std::move(state), phase_flip_zero(n));
  state = walsh_hadamard(std::move(state));
  return StateVector(n, -state.amplitudes());
}

StateVector grover_iterate(StateVector state, const SearchProblem& problem) {
  state = apply_phase_flip(std::move(state), problem.oracle());
  return inversion_about_mean(std::move(state));
}

std::uint64_t iteration_schedule(std::uint64_t N, std::uint64_t target_count) {
  if (target_count < 1 || target_count >= N) {
    throw std::domain_error("schedule needs 1 <= targets < N");
  }
  const double ratio = static_cast<double>(N) / static_cast<double>(target_count);
  const double x = std::numbers::pi / 4.0 * std::sqrt(ratio) - 0.5;
  return x <= 0 ? 0 : static_cast<std::uint64_t>(std::llround(x));
}

double marked_probability(const StateVector& state, const SearchProblem& problem) {
  double p = 0;
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if (problem.test(i)) p += std::norm(state[i]);
  }
  return p;
}

GroverRun run_grover(const SearchProblem& problem, std::uint64_t seed) {
  GroverRun run;
  const std::uint64_t calls_before = problem.oracle_calls();
  run.iterations = iteration_schedule(problem.size(), problem.target_count());
  StateVector state = uniform_superposition(problem.qubits());
  run.trace.push_back(marked_probability(state, problem));
  for (std::uint64_t j = 0; j < run.iterations; ++j) {
    state = grover_iterate(std::move(state), problem);
    run.trace.push_back(marked_probability(state, problem));
  }
  run.oracle_calls = problem.oracle_calls() - calls_before;
  run.final_probability = run.trace.back();
  run.found = measure_all(state, seed, 1).front();
  run.success = problem.test(run.found);
  return run;
}

std::vector<AmplitudePair> analytic_recurrence(std::uint64_t N,
                                               std::uint64_t iterations) {
  if (N < 2) throw std::domain_error("recurrence needs N >= 2");
  const double n = static_cast<double>(N);
  std::vector<AmplitudePair> seq;
  seq.reserve(iterations + 1);
  AmplitudePair cur{1.0 / std::sqrt(n), 1.0 / std::sqrt(n)};
  seq.push_back(cur);
  for (std::uint64_t j = 0; j < iterations; ++j) {
    const double m = ((n - 1.0) * cur.alpha - cur.beta) / n;
    cur = {2.0 * m - cur.alpha, cur.beta + 2.0 * m};
    seq.push_back(cur);
  }
  return seq;
}

}  // namespace qdesk::grover
