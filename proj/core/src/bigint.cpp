#include "pgsnf/bigint.hpp"

#include <limits>
#include <stdexcept>

namespace pgsnf {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw std::overflow_error("checked_pow: overflow");
        r *= base;
    }
    return r;
}

unsigned valuation_p(const BigInt& x, std::uint64_t p) {
    if (x == 0) throw std::invalid_argument("valuation_p: zero");
    BigInt y = abs(x);
    unsigned v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
        ++v;
    }
    return v;
}

nlohmann::json to_json_number(const BigInt& x) {
    if (x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64) {
        std::uint64_t v = 0;
        mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, x.get_mpz_t());
        return v;
    }
    if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
    return x.get_str();
}

BigInt big_from_json(const nlohmann::json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
    throw std::invalid_argument("big_from_json: not an integer");
}

}  // namespace pgsnf
