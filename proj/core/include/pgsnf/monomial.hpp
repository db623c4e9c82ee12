#pragma once

#include <cstdint>
#include <vector>

namespace pgsnf {

/// Exponents (b_0, ..., b_n) of a monomial x_0^{b_0} ... x_n^{b_n}, 0 <= b_i <= q-1.
struct ExponentTuple {
    std::vector<std::uint32_t> b;

    bool is_constant() const;
    friend bool operator==(const ExponentTuple&, const ExponentTuple&) = default;
    friend auto operator<=>(const ExponentTuple&, const ExponentTuple&) = default;
};

/// Basis monomials on PG(n, q): sum b_i = 0 mod (q-1), all-(q-1) excluded,
/// constant included. Lexicographic order; (q^{n+1}-1)/(q-1) tuples.
std::vector<ExponentTuple> monomial_basis(unsigned n, std::uint64_t q);

/// Base-p digits a_{i,0..t-1} of each exponent.
std::vector<std::vector<unsigned>> exponent_digits(const ExponentTuple& b, std::uint64_t p, unsigned t);

/// Digit sums lambda_j = sum_i a_{i,j}.
std::vector<unsigned> digit_column_sums(const ExponentTuple& b, std::uint64_t p, unsigned t);

/// Type (s_0, ..., s_{t-1}): s_j is the total degree of f^{p^{t-j}} (exponents
/// reduced to at most q-1) divided by q-1. Throws NoType for the constant monomial.
std::vector<unsigned> type_of_monomial(const ExponentTuple& b, std::uint64_t p, unsigned t);

/// Exponentwise b -> p b with digits rotated (q-1 stays q-1): the Frobenius twist f -> f^p.
ExponentTuple frobenius_twist(const ExponentTuple& b, std::uint64_t p, unsigned t);

}  // namespace pgsnf
