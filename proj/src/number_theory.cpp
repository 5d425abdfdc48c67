#include "qdesk/number_theory.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qdesk {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

// m^k, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t m, int k) {
  u128 acc = 1;
  for (int i = 0; i < k; ++i) {
    acc *= m;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::uint64_t modexp(std::uint64_t x, std::uint64_t a, std::uint64_t n) {
  if (n < 2) throw std::domain_error("modexp requires modulus >= 2");
  std::uint64_t result = 1;
  std::uint64_t base = x % n;
  while (a > 0) {
    if (a & 1U) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    a >>= 1;
  }
  return result;
}

int bit_length(std::uint64_t n) { return std::bit_width(n); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t n) {
  if (n < 2 || std::gcd(x % n, n) != 1) {
    throw std::domain_error("order needs gcd(x, n) = 1 and n >= 2");
  }
  std::uint64_t r = 1;
  std::uint64_t power = x % n;
  while (power != 1) {
    power = mulmod(power, x, n);
    ++r;
  }
  return r;
}

std::uint64_t reduce_to_order(std::uint64_t x, std::uint64_t r, std::uint64_t n) {
  if (r == 0 || modexp(x, r, n) != 1) {
    throw std::domain_error("r is not a multiple of the order");
  }
  std::uint64_t rest = r;
  for (std::uint64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    while (r % p == 0 && modexp(x, r / p, n) == 1) r /= p;
  }
  return r;
}

bool is_order(std::uint64_t x, std::uint64_t r, std::uint64_t n) {
  if (r == 0 || n < 2 || modexp(x, r, n) != 1) return false;
  return reduce_to_order(x, r, n) == r;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Even: return "even";
    case Classification::Prime: return "prime";
    case Classification::PrimePower: return "prime power";
    case Classification::CompositeOk: return "composite-ok";
  }
  return "?";
}

std::uint64_t integer_root(std::uint64_t n, int k) {
  if (k < 1) throw std::domain_error("root degree must be positive");
  if (k == 1 || n < 2) return n;
  auto m = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
  while (m > 0 && saturating_pow(m, k) > n) --m;
  while (saturating_pow(m + 1, k) <= n) ++m;
  return m;
}

Classification is_trivial_case(std::uint64_t n) {
  if (n < 2) throw std::domain_error("classification needs n >= 2");
  if (n % 2 == 0) return Classification::Even;
  if (is_prime(n)) return Classification::Prime;
  for (int k = bit_length(n); k >= 2; --k) {
    const std::uint64_t m = integer_root(n, k);
    if (m >= 2 && saturating_pow(m, k) == n && is_prime(m)) {
      return Classification::PrimePower;
    }
  }
  return Classification::CompositeOk;
}

}  // namespace qdesk
