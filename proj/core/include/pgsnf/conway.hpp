#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace pgsnf {

/// Polynomials over F_p are coefficient vectors, constant term first.
using PolyFp = std::vector<std::uint64_t>;

bool is_prime(std::uint64_t n);
/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// (p, t) with q = p^t, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> split_prime_power(std::uint64_t q);

bool is_irreducible(const PolyFp& f, std::uint64_t p);
/// Irreducible and x generates the multiplicative group of F_p[x]/(f).
bool is_primitive(const PolyFp& f, std::uint64_t p);

/// Table lookup for p^t <= 2^16.
std::optional<PolyFp> bundled_conway_polynomial(std::uint64_t p, unsigned t);
/// Computes the Conway polynomial by search in Conway order (recursive on divisors of t).
PolyFp compute_conway_polynomial(std::uint64_t p, unsigned t);
/// Lexicographically smallest monic irreducible of degree t (coefficients compared
/// from the constant term).
PolyFp smallest_irreducible(std::uint64_t p, unsigned t);

}  // namespace pgsnf
