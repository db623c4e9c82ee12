#pragma once

#include <cstdint>
#include <vector>

#include "pgsnf/matrix.hpp"

namespace pgsnf::detail {

struct LocalElimination {
    /// nu_ell of each pivot, nondecreasing.
    std::vector<unsigned> valuations;
    std::size_t pivots() const noexcept { return valuations.size(); }
};

/// Elimination over Z localized at the prime ell with entries kept mod ell^K.
/// Unit pivots only: once no unit remains, the residual block is divided by ell
/// (losing one digit of precision). Pivots with valuation >= K are not seen.
/// For ell = 2 arithmetic is mod 2^32 and K is ignored; for odd ell, ell^K must
/// not exceed 2^31.
LocalElimination local_elimination(const IntMatrix& m, std::uint64_t ell, unsigned K);

/// Largest K with ell^K <= limit (at least 1).
unsigned precision_within(std::uint64_t ell, std::uint64_t limit);

}  // namespace pgsnf::detail
