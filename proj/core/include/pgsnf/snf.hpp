#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgsnf/bigint.hpp"
#include "pgsnf/matrix.hpp"

namespace pgsnf {

/// Multiplicity of p^alpha, keyed by alpha.
using Multiplicities = std::map<unsigned, BigInt>;

enum class SnfMethod {
    /// Elimination for small matrices, the certified local route otherwise
    /// (falling back to elimination when no certificate exists).
    automatic,
    /// Min-|pivot| integer elimination (64-bit, then GMP on overflow).
    elimination,
    /// Gram matrix a*I + b*J certifies a multiple e of the last invariant
    /// factor; the SNF is assembled from eliminations localized at each prime of e.
    certified,
};

/// Nonzero invariant factors d_1 | d_2 | ... | d_k of an integer matrix.
struct SNFResult {
    std::vector<BigInt> invariants;
    /// True when the diagonalization was checked as U * M * W = D.
    bool verified = false;
    SnfMethod method = SnfMethod::elimination;

    std::size_t rank() const noexcept { return invariants.size(); }
    /// {alpha -> number of i with nu_p(d_i) = alpha}.
    Multiplicities p_spectrum(std::uint64_t p) const;
    /// d_k with its p-part removed (1 for the zero matrix).
    BigInt last_nonp(std::uint64_t p) const;
};

struct SnfOptions {
    /// Matrices with at most this many rows are re-multiplied against the
    /// tracked unimodular transforms.
    std::size_t verify_row_limit = 200;
    SnfMethod method = SnfMethod::automatic;
    /// automatic uses elimination when min(rows, cols) is at most this.
    std::size_t elimination_limit = 256;
};

/// Exact Smith normal form over Z.
SNFResult smith_normal_form(const IntMatrix& m, const SnfOptions& opts = {});

/// Turns a diagonal (any order, zeros ignored) into the equivalent divisibility chain.
std::vector<BigInt> diagonal_to_chain(std::vector<BigInt> diag);

/// p-parts of the invariant factors, computed by elimination over Z localized at p
/// (pivot on a minimal-valuation entry, arithmetic mod p^K).
Multiplicities p_elementary_divisors(const IntMatrix& m, std::uint64_t p);

/// Rank over F_p.
std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

/// {"invariants": [...], "p": p, "p_spectrum": {"0": ...}, "last_nonp": ...}
const char* to_string(SnfMethod m) noexcept;

nlohmann::json snf_json(const SNFResult& r, std::uint64_t p);
nlohmann::json multiplicities_json(const Multiplicities& m);
Multiplicities multiplicities_from_json(const nlohmann::json& j);

}  // namespace pgsnf
