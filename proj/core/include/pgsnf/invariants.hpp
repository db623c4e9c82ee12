#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgsnf/bigint.hpp"
#include "pgsnf/incidence.hpp"
#include "pgsnf/snf.hpp"

namespace pgsnf {

/// Coefficients d_0 .. d_{(p-1)(n+1)} of (1 + x + ... + x^{p-1})^{n+1}.
/// Computed by polynomial expansion and cross-checked against the
/// alternating binomial sum; throws std::logic_error if they disagree.
std::vector<BigInt> d_coefficients(unsigned n, std::uint64_t p);

/// Alternating binomial-sum form of d_i (exposed for tests).
BigInt d_coefficient_by_binomials(unsigned n, std::uint64_t p, std::int64_t i);

/// A type tuple (s_0, ..., s_{t-1}) with lambda_j = p s_{j+1} - s_j (indices mod t)
/// and weight d_xi = prod_j d_{lambda_j}.
struct TypeTuple {
    std::vector<unsigned> s;
    std::vector<std::int64_t> lambda;
    BigInt weight;

    friend bool operator==(const TypeTuple& a, const TypeTuple& b) { return a.s == b.s; }
};

/// Fills lambda and weight from s.
TypeTuple make_type(std::vector<unsigned> s, unsigned n, std::uint64_t p);

bool in_H(const std::vector<unsigned>& s, unsigned n, std::uint64_t p);

/// All tuples with 1 <= s_j <= n and 0 <= p s_{j+1} - s_j <= (p-1)(n+1), lexicographic.
std::vector<TypeTuple> enumerate_H(unsigned n, std::uint64_t p, unsigned t);

/// sum_j max(0, r - s_j).
unsigned alpha_of_type(const std::vector<unsigned>& s, unsigned r);

/// Closed-form p-adic invariant spectrum.
struct InvariantSpectrum {
    std::uint64_t p = 0;
    unsigned t = 0;
    unsigned n = 0;
    unsigned r = 0;
    Space space = Space::projective;
    Multiplicities mult;
    /// Non-p factor carried by the invariant of largest p-valuation.
    BigInt last_nonp = 1;

    std::uint64_t q() const;
    BigInt total() const;
    /// p^alpha (ascending, with multiplicity), last one times last_nonp.
    std::vector<BigInt> predicted_invariants() const;
};

void to_json(nlohmann::json& j, const InvariantSpectrum& s);

/// Points vs r-subspaces of PG(n, q); requires 2 <= r <= n (OutsideTheoremRange otherwise).
InvariantSpectrum projective_spectrum(unsigned n, std::uint64_t q, unsigned r);

/// m_0 = 1 + sum of d_xi over xi in H with all s_j >= r.
BigInt hamada_p_rank(unsigned n, std::uint64_t q, unsigned r);

/// Points vs r-flats of AG(n, q) by counting basis monomials with b_0 >= 1
/// (plus the all-(q-1) monomial); 1 <= r <= n-1.
InvariantSpectrum affine_spectrum_direct(unsigned n, std::uint64_t q, unsigned r);

/// m(alpha, n, r+1) - m(alpha, n-1, r+1); 1 <= r <= n-2.
InvariantSpectrum affine_spectrum_difference(unsigned n, std::uint64_t q, unsigned r);

/// Spectrum maps equal after dropping zero multiplicities.
bool same_multiplicities(const Multiplicities& a, const Multiplicities& b);

}  // namespace pgsnf
