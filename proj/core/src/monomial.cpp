#include "pgsnf/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pgsnf/bigint.hpp"
#include "pgsnf/errors.hpp"

namespace pgsnf {

bool ExponentTuple::is_constant() const {
    return std::all_of(b.begin(), b.end(), [](std::uint32_t x) { return x == 0; });
}

std::vector<ExponentTuple> monomial_basis(unsigned n, std::uint64_t q) {
    if (q < 2) throw InvalidArgument("q must be >= 2");
    const unsigned m = n + 1;
    const std::uint64_t count = checked_pow(q, m);
    if (count > (std::uint64_t{1} << 28)) throw TooLarge("monomial basis too large to enumerate");
    std::vector<ExponentTuple> out;
    ExponentTuple cur{std::vector<std::uint32_t>(m, 0)};
    for (;;) {
        const std::uint64_t deg = std::accumulate(cur.b.begin(), cur.b.end(), std::uint64_t{0});
        const bool all_top = std::all_of(cur.b.begin(), cur.b.end(), [q](std::uint32_t x) { return x == q - 1; });
        if (deg % (q - 1) == 0 && !all_top) out.push_back(cur);
        int i = static_cast<int>(m) - 1;
        while (i >= 0 && ++cur.b[i] == q) cur.b[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<std::vector<unsigned>> exponent_digits(const ExponentTuple& b, std::uint64_t p, unsigned t) {
    std::vector<std::vector<unsigned>> a(b.b.size(), std::vector<unsigned>(t, 0));
    for (std::size_t i = 0; i < b.b.size(); ++i) {
        std::uint64_t x = b.b[i];
        for (unsigned j = 0; j < t; ++j) {
            a[i][j] = static_cast<unsigned>(x % p);
            x /= p;
        }
        if (x != 0) throw InvalidArgument("exponent exceeds q-1");
    }
    return a;
}

std::vector<unsigned> digit_column_sums(const ExponentTuple& b, std::uint64_t p, unsigned t) {
    const auto a = exponent_digits(b, p, t);
    std::vector<unsigned> lambda(t, 0);
    for (const auto& row : a)
        for (unsigned j = 0; j < t; ++j) lambda[j] += row[j];
    return lambda;
}

std::vector<unsigned> type_of_monomial(const ExponentTuple& b, std::uint64_t p, unsigned t) {
    if (b.is_constant()) throw NoType("the constant monomial has no type");
    const auto a = exponent_digits(b, p, t);
    const std::uint64_t q = checked_pow(p, t);
    std::vector<std::uint64_t> pw(2 * t + 1, 1);
    for (unsigned i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * p;

    std::vector<unsigned> s(t);
    for (unsigned j = 0; j < t; ++j) {
        std::uint64_t total = 0;
        for (const auto& digits : a) {
            for (unsigned l = 0; l < j; ++l) total += pw[l + t - j] * digits[l];
            for (unsigned l = j; l < t; ++l) total += pw[l - j] * digits[l];
        }
        if (total % (q - 1) != 0) throw InvalidArgument("total degree not divisible by q-1");
        s[j] = static_cast<unsigned>(total / (q - 1));
    }
    // lambda_j = p s_{j+1} - s_j must hold for every j
    const auto lambda = digit_column_sums(b, p, t);
    for (unsigned j = 0; j < t; ++j) {
        const auto lhs = static_cast<std::int64_t>(lambda[j]);
        const auto rhs = static_cast<std::int64_t>(p) * s[(j + 1) % t] - static_cast<std::int64_t>(s[j]);
        if (lhs != rhs) throw std::logic_error("type_of_monomial: digit relation violated");
    }
    return s;
}

ExponentTuple frobenius_twist(const ExponentTuple& b, std::uint64_t p, unsigned t) {
    const std::uint64_t q = checked_pow(p, t);
    ExponentTuple out = b;
    for (auto& x : out.b) {
        if (x == 0 || x == q - 1) continue;
        x = static_cast<std::uint32_t>((x * p) % (q - 1));
    }
    return out;
}

}  // namespace pgsnf
