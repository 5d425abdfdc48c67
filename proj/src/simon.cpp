#include "qdesk/simon.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "qdesk/rng.hpp"

namespace qdesk::simon {
namespace {

void check_width(int n) {
  if (n < 1 || n > kMaxOracleBits) {
    throw std::domain_error("oracle width must be in [1, " +
                            std::to_string(kMaxOracleBits) + "]");
  }
}

// Fisher-Yates over [0, size) with the portable integer sampler.
std::vector<std::uint64_t> shuffled_range(std::uint64_t size, Rng& rng) {
  std::vector<std::uint64_t> v(size);
  std::iota(v.begin(), v.end(), std::uint64_t{0});
  for (std::uint64_t i = size; i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
  return v;
}

}  // namespace

SimonOracle make_oracle(int n, BitVector c, std::uint64_t seed) {
  check_width(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  if (c == 0) throw std::domain_error("hidden shift c must be nonzero");
  if (c >= size) throw std::domain_error("hidden shift wider than n bits");

  Rng rng = make_rng(seed);
  const auto outputs = shuffled_range(size, rng);
  SimonOracle oracle{n, c, std::vector<BitVector>(size)};
  std::size_t next = 0;
  for (BitVector x = 0; x < size; ++x) {
    const BitVector partner = x ^ c;
    if (x < partner) {
      oracle.table[x] = outputs[next];
      oracle.table[partner] = outputs[next];
      ++next;
    }
  }
  return oracle;
}

bool has_hidden_shift(const SimonOracle& oracle) {
  const std::uint64_t size = std::uint64_t{1} << oracle.n;
  if (oracle.table.size() != size) return false;
  // f(x) = f(x ^ c) everywhere and no other collisions: the image then has
  // exactly 2^(n-1) values.
  std::vector<BitVector> image(oracle.table);
  for (BitVector x = 0; x < size; ++x) {
    if (oracle.table[x] != oracle.table[x ^ oracle.c]) return false;
  }
  std::sort(image.begin(), image.end());
  const auto distinct = std::unique(image.begin(), image.end()) - image.begin();
  return static_cast<std::uint64_t>(distinct) == size / 2;
}

Gf2Matrix::Gf2Matrix(int n_cols) : n_cols_(n_cols) {
  if (n_cols < 1 || n_cols > 63) throw std::domain_error("GF(2) width out of range");
}

Gf2Matrix::Gf2Matrix(int n_cols, const std::vector<BitVector>& rows)
    : Gf2Matrix(n_cols) {
  for (BitVector r : rows) add_row(r);
}

bool Gf2Matrix::add_row(BitVector row) {
  if (row >> n_cols_) throw std::domain_error("row wider than the matrix");
  rows_.push_back(row);
  for (BitVector b : basis_) {
    const int pivot = std::bit_width(b) - 1;
    if ((row >> pivot) & 1U) row ^= b;
  }
  if (row == 0) return false;
  const int pivot = std::bit_width(row) - 1;
  for (BitVector& b : basis_) {
    if ((b >> pivot) & 1U) b ^= row;
  }
  basis_.push_back(row);
  return true;
}

BitVector Gf2Matrix::null_vector() const {
  if (rank() != n_cols_ - 1) {
    throw std::domain_error("null_vector needs rank n-1");
  }
  BitVector pivots = 0;
  for (BitVector b : basis_) pivots |= BitVector{1} << (std::bit_width(b) - 1);
  const BitVector all = (BitVector{1} << n_cols_) - 1;
  const BitVector free_bit = all & ~pivots;
  // Fix the free coordinate to 1; each pivot coordinate must then equal the
  // basis row's entry in the free column.
  BitVector c = free_bit;
  for (BitVector b : basis_) {
    if (b & free_bit) c |= BitVector{1} << (std::bit_width(b) - 1);
  }
  return c;
}

ShiftRecovery recover_shift(const Gf2Matrix& samples) {
  const int n = samples.n_cols();
  if (samples.rank() == n) {
    throw InconsistentSamples("samples span all of F_2^" + std::to_string(n) +
                              "; the oracle has no hidden shift");
  }
  if (samples.rank() < n - 1) return {std::nullopt, samples.rank()};
  return {samples.null_vector(), samples.rank()};
}

ShiftRecovery recover_shift(const std::vector<BitVector>& samples, int n) {
  return recover_shift(Gf2Matrix(n, samples));
}

StateVector simon_state(const SimonOracle& oracle) {
  const int n = oracle.n;
  StateVector state = init_basis(2 * n, 0);
  state.hadamard_range_inplace(1, n);
  const BitVector low_mask = (BitVector{1} << n) - 1;
  state.permute_inplace([&](std::uint64_t index) {
    const BitVector x = index >> n;
    return (x << n) | ((index & low_mask) ^ oracle(x));
  });
  state.hadamard_range_inplace(1, n);
  return state;
}

Distribution simon_distribution(const SimonOracle& oracle) {
  return marginal(distribution(simon_state(oracle)), 1, oracle.n);
}

BitVector simon_sample(const SimonOracle& oracle, std::uint64_t seed) {
  const StateVector state = simon_state(oracle);
  const std::uint64_t outcome = measure_all(state, seed, 1).front();
  return extract_register(outcome, 2 * oracle.n, 1, oracle.n);
}

SimonRun run_simon(const SimonOracle& oracle, int max_rounds, std::uint64_t seed) {
  if (max_rounds < oracle.n) {
    throw std::domain_error("max_rounds must be at least n");
  }
  const int n = oracle.n;
  SimonRun run;
  Gf2Matrix rows(n);
  // Duplicate samples carry no information and are not stored as rows.
  std::vector<BitVector> seen;
  while (rows.rank() < n - 1) {
    if (run.rounds == max_rounds) {
      run.failure = "rank " + std::to_string(rows.rank()) + " < " +
                    std::to_string(n - 1) + " after " +
                    std::to_string(max_rounds) + " rounds";
      return run;
    }
    const BitVector y = simon_sample(oracle, derive_seed(seed, static_cast<std::uint64_t>(run.rounds)));
    ++run.rounds;
    run.hadamards += 2 * n;
    ++run.oracle_calls;
    run.samples.push_back(y);
    if (std::find(seen.begin(), seen.end(), y) == seen.end()) {
      seen.push_back(y);
      rows.add_row(y);
    }
  }
  const ShiftRecovery rec = recover_shift(rows);
  if (oracle(0) != oracle(*rec.c)) {
    run.failure = "recovered shift fails f(0) = f(c)";
    return run;
  }
  run.c = rec.c;
  return run;
}

ClassicalResult classical_query_baseline(const SimonOracle& oracle,
                                         std::uint64_t seed) {
  const std::uint64_t size = std::uint64_t{1} << oracle.n;
  Rng rng = make_rng(seed);
  const auto order = shuffled_range(size, rng);
  constexpr std::uint64_t kUnseen = ~std::uint64_t{0};
  std::vector<std::uint64_t> first_input(size, kUnseen);
  ClassicalResult result;
  for (std::uint64_t x : order) {
    ++result.queries;
    const BitVector fx = oracle(x);
    if (first_input[fx] != kUnseen) {
      result.c = x ^ first_input[fx];
      return result;
    }
    first_input[fx] = x;
  }
  throw std::domain_error("no collision found; oracle has no hidden shift");
}

}  // namespace qdesk::simon
