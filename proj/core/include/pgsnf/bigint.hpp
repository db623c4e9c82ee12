#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace pgsnf {

using BigInt = mpz_class;

inline BigInt big_pow(std::uint64_t base, unsigned exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

/// Exact 64-bit power; throws std::overflow_error if the result does not fit.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

/// p-adic valuation of a nonzero integer.
unsigned valuation_p(const BigInt& x, std::uint64_t p);

/// JSON number when the value fits in 64 bits, decimal string otherwise.
nlohmann::json to_json_number(const BigInt& x);
BigInt big_from_json(const nlohmann::json& j);

}  // namespace pgsnf
