#pragma once

#include <cstdint>
#include <string_view>

namespace qdesk {

/// x^a mod n by square-and-multiply. Throws std::domain_error for n < 2.
std::uint64_t modexp(std::uint64_t x, std::uint64_t a, std::uint64_t n);

/// Number of bits needed to write n (0 for n = 0).
int bit_length(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// Least r > 0 with x^r = 1 mod n, by stepping through powers. Throws
/// std::domain_error when gcd(x, n) != 1.
std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t n);

/// True when r is exactly the multiplicative order of x mod n.
bool is_order(std::uint64_t x, std::uint64_t r, std::uint64_t n);

/// Reduces a multiple of the order of x to the order itself.
std::uint64_t reduce_to_order(std::uint64_t x, std::uint64_t r, std::uint64_t n);

enum class Classification { Even, Prime, PrimePower, CompositeOk };

std::string_view to_string(Classification c);

/// How n relates to order-finding factoring: only odd composites with two
/// or more distinct prime factors are CompositeOk. Requires n >= 2.
Classification is_trivial_case(std::uint64_t n);

/// Largest m with m^k <= n.
std::uint64_t integer_root(std::uint64_t n, int k);

}  // namespace qdesk
