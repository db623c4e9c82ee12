#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "pgsnf/geometry.hpp"
#include "pgsnf/gf.hpp"
#include "pgsnf/monomial.hpp"

namespace pgsnf {

/// Sum of the digits of k written in `base`.
std::uint64_t digit_sum(std::uint64_t k, std::uint64_t base);

/// Base-p digit sum of the least nonnegative residue of b modulo q-1.
std::uint64_t sigma_residue(std::int64_t b, std::uint64_t p, std::uint64_t q);

/// Teichmüller character T of F_q with values in R/p^N, plus the powers of
/// omega = T(generator).
class CharacterTable {
public:
    CharacterTable(std::shared_ptr<const Field> field, unsigned N);

    const std::shared_ptr<const Field>& field() const noexcept { return field_; }
    const std::shared_ptr<const Ring>& ring() const noexcept { return ring_; }
    unsigned precision() const noexcept { return ring_->precision(); }

    /// Teichmüller lift of x, each computed independently.
    const RingElement& teich(Field::Elem x) const { return teich_[x]; }
    /// omega^e for 0 <= e < q-1.
    const RingElement& omega_pow(std::uint64_t e) const { return omega_[e % omega_.size()]; }
    /// T^k(x) with T^0 = 1 everywhere and T^k(0) = 0 for k >= 1.
    RingElement character(std::uint64_t k, Field::Elem x) const;
    /// Ring inverse of q-1.
    const RingElement& inv_q_minus_1() const noexcept { return inv_qm1_; }

private:
    std::shared_ptr<const Field> field_;
    std::shared_ptr<const Ring> ring_;
    std::vector<RingElement> teich_;
    std::vector<RingElement> omega_;
    RingElement inv_qm1_;
};

/// J(T^{b0}, T^{b1}) = sum over x in F_q of T^{b0}(x) T^{b1}(1 - x).
RingElement jacobi_sum(std::uint64_t b0, std::uint64_t b1, const CharacterTable& table);

/// nu_p(J(T^{-b0}, T^{-b1})) by digit carries. Throws DegenerateCharacters when
/// b0, b1 or b0 + b1 is 0 mod q-1.
unsigned stickelberger_valuation(std::int64_t b0, std::int64_t b1, std::uint64_t q);

/// sum_l max(0, r - (1/(q-1)) sum_i sigma_q(p^l b_i)).
unsigned wan_lower_bound(const ExponentTuple& b, unsigned r, std::uint64_t p, unsigned t);

/// Y-coordinate of the image of the monomial: (1/(q-1)) times the sum of
/// prod_i T^{b_i}(x_i) over the nonzero vectors x of Y, factor by factor.
RingElement eta_coordinate(const ExponentTuple& b, const Subspace& Y, const CharacterTable& table);

/// Projective points of Y as discrete logs (-1 for a zero coordinate), the
/// input of the fast coordinate sum.
struct PointLogs {
    unsigned width = 0;
    std::vector<std::int32_t> logs;  // row-major, one row per point

    std::size_t size() const noexcept { return width ? logs.size() / width : 0; }
};
PointLogs point_logs(const Field& F, const Subspace& Y);

/// Same value as eta_coordinate. Summands are constant on projective points, so
/// the sum runs over points and collects a histogram of discrete logs.
RingElement eta_coordinate_fast(const ExponentTuple& b, const PointLogs& Y, const CharacterTable& table);

/// nu_p of a ring element; nullopt when it is 0 mod p^N.
std::optional<unsigned> ring_valuation(const RingElement& x);

/// Valuation of a coordinate; throws AtLeastPrecision when it vanishes mod p^N.
unsigned eta_valuation(const ExponentTuple& b, const Subspace& Y, const CharacterTable& table);

/// Minimum over Y in L_r of the finite coordinate valuations. Starts at N
/// (default (r-1)t + 4), doubles while no coordinate is finite and gives up
/// with PrecisionExhausted beyond 8 times the start.
unsigned min_valuation_of_monomial(const ExponentTuple& b, unsigned n, std::uint64_t q, unsigned r,
                                   std::optional<unsigned> N = {});

struct WanRow {
    ExponentTuple b;
    std::vector<unsigned> type;  // empty for the constant monomial
    unsigned alpha = 0;
    unsigned min_valuation = 0;
    unsigned wan_bound = 0;
    /// Every coordinate has valuation >= wan_bound.
    bool bound_holds = true;
    /// Precision at which min_valuation was settled.
    unsigned precision = 0;
};

struct WanAudit {
    std::uint64_t p = 0;
    unsigned t = 0;
    unsigned n = 0;
    unsigned r = 0;
    std::size_t subspaces = 0;
    std::vector<WanRow> rows;

    /// Bound holds everywhere and min_valuation == alpha for every nonconstant b.
    bool ok() const;
};

/// All nonconstant b in the monomial basis against all Y in L_r, 1 <= r <= n.
WanAudit wan_audit(unsigned n, std::uint64_t q, unsigned r, std::optional<unsigned> N = {});
/// Same over an explicitly chosen field model (e.g. a non-Conway modulus).
WanAudit wan_audit(unsigned n, const FieldSpec& field, unsigned r, std::optional<unsigned> N = {});

/// b,type,alpha,min_valuation,wan_bound with tuples written as a;b;c.
void write_wan_csv(std::ostream& os, const WanAudit& audit);

}  // namespace pgsnf
