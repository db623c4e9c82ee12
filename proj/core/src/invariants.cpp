#include "pgsnf/invariants.hpp"

#include <stdexcept>

#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "pgsnf/monomial.hpp"

namespace pgsnf {

namespace {

std::pair<std::uint64_t, unsigned> field_params(std::uint64_t q) {
    const auto pt = split_prime_power(q);
    if (!pt) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
    return *pt;
}

BigInt binomial(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0 || b > a) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return out;
}

BigInt gauss_ratio(std::uint64_t q, unsigned r) {
    // (q^r - 1) / (q - 1)
    return (big_pow(q, r) - 1) / (q - 1);
}

void drop_zeros(Multiplicities& m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

BigInt d_coefficient_by_binomials(unsigned n, std::uint64_t p, std::int64_t i) {
    BigInt sum = 0;
    const auto P = static_cast<std::int64_t>(p);
    for (std::int64_t j = 0; j <= static_cast<std::int64_t>(n) + 1 && j * P <= i; ++j) {
        const BigInt term = binomial(n + 1, j) * binomial(static_cast<std::int64_t>(n) + i - j * P, n);
        if (j % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

std::vector<BigInt> d_coefficients(unsigned n, std::uint64_t p) {
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (!is_prime(p)) throw InvalidArgument("p must be prime");
    std::vector<BigInt> poly{1};
    for (unsigned k = 0; k <= n; ++k) {
        std::vector<BigInt> next(poly.size() + p - 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::uint64_t e = 0; e < p; ++e) next[i + e] += poly[i];
        poly = std::move(next);
    }
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (poly[i] != d_coefficient_by_binomials(n, p, static_cast<std::int64_t>(i)))
            throw std::logic_error("d_coefficients: expansion and binomial sum disagree");
    return poly;
}

TypeTuple make_type(std::vector<unsigned> s, unsigned n, std::uint64_t p) {
    const std::size_t t = s.size();
    const auto d = d_coefficients(n, p);
    TypeTuple out;
    out.lambda.resize(t);
    out.weight = 1;
    for (std::size_t j = 0; j < t; ++j) {
        const std::int64_t l =
            static_cast<std::int64_t>(p) * s[(j + 1) % t] - static_cast<std::int64_t>(s[j]);
        out.lambda[j] = l;
        if (l < 0 || l >= static_cast<std::int64_t>(d.size())) out.weight = 0;
        else out.weight *= d[static_cast<std::size_t>(l)];
    }
    out.s = std::move(s);
    return out;
}

bool in_H(const std::vector<unsigned>& s, unsigned n, std::uint64_t p) {
    const std::size_t t = s.size();
    const std::int64_t top = static_cast<std::int64_t>((p - 1) * (n + 1));
    for (std::size_t j = 0; j < t; ++j) {
        if (s[j] < 1 || s[j] > n) return false;
        const std::int64_t l =
            static_cast<std::int64_t>(p) * s[(j + 1) % t] - static_cast<std::int64_t>(s[j]);
        if (l < 0 || l > top) return false;
    }
    return true;
}

std::vector<TypeTuple> enumerate_H(unsigned n, std::uint64_t p, unsigned t) {
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (t < 1) throw InvalidArgument("t must be >= 1");
    const auto d = d_coefficients(n, p);
    std::vector<TypeTuple> out;
    std::vector<unsigned> s(t, 1);
    for (;;) {
        if (in_H(s, n, p)) {
            TypeTuple x;
            x.s = s;
            x.lambda.resize(t);
            x.weight = 1;
            for (unsigned j = 0; j < t; ++j) {
                x.lambda[j] = static_cast<std::int64_t>(p) * s[(j + 1) % t] - static_cast<std::int64_t>(s[j]);
                x.weight *= d[static_cast<std::size_t>(x.lambda[j])];
            }
            out.push_back(std::move(x));
        }
        int j = static_cast<int>(t) - 1;
        while (j >= 0 && ++s[j] > n) s[j--] = 1;
        if (j < 0) break;
    }
    return out;
}

unsigned alpha_of_type(const std::vector<unsigned>& s, unsigned r) {
    unsigned a = 0;
    for (unsigned x : s)
        if (x < r) a += r - x;
    return a;
}

std::uint64_t InvariantSpectrum::q() const { return checked_pow(p, t); }

BigInt InvariantSpectrum::total() const {
    BigInt s = 0;
    for (const auto& [a, m] : mult) s += m;
    return s;
}

std::vector<BigInt> InvariantSpectrum::predicted_invariants() const {
    if (total() > 50'000'000) throw TooLarge("spectrum too large to expand");
    std::vector<BigInt> out;
    for (const auto& [a, m] : mult) {
        const BigInt pw = big_pow(p, a);
        for (unsigned long i = 0; i < m.get_ui(); ++i) out.push_back(pw);
    }
    if (!out.empty()) out.back() *= last_nonp;
    return out;
}

void to_json(nlohmann::json& j, const InvariantSpectrum& s) {
    j = nlohmann::json{{"p", s.p},
                       {"t", s.t},
                       {"q", s.q()},
                       {"n", s.n},
                       {"r", s.r},
                       {"space", to_string(s.space)},
                       {"multiplicities", multiplicities_json(s.mult)},
                       {"last_nonp", to_json_number(s.last_nonp)},
                       {"total", to_json_number(s.total())}};
}

InvariantSpectrum projective_spectrum(unsigned n, std::uint64_t q, unsigned r) {
    const auto [p, t] = field_params(q);
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (r < 2 || r > n)
        throw OutsideTheoremRange("projective spectrum needs 2 <= r <= n (got r = " + std::to_string(r) +
                                  ", n = " + std::to_string(n) + ")");
    InvariantSpectrum out{p, t, n, r, Space::projective, {}, gauss_ratio(q, r)};
    out.mult[0] += 1;  // constant monomial
    for (const auto& xi : enumerate_H(n, p, t)) out.mult[alpha_of_type(xi.s, r)] += xi.weight;
    drop_zeros(out.mult);
    return out;
}

BigInt hamada_p_rank(unsigned n, std::uint64_t q, unsigned r) {
    const auto [p, t] = field_params(q);
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (r < 2 || r > n) throw OutsideTheoremRange("Hamada formula here needs 2 <= r <= n");
    BigInt m0 = 1;
    for (const auto& xi : enumerate_H(n, p, t))
        if (std::all_of(xi.s.begin(), xi.s.end(), [r](unsigned s) { return s >= r; })) m0 += xi.weight;
    return m0;
}

InvariantSpectrum affine_spectrum_direct(unsigned n, std::uint64_t q, unsigned r) {
    const auto [p, t] = field_params(q);
    if (n < 2 || r < 1 || r > n - 1)
        throw OutsideTheoremRange("affine spectrum needs 1 <= r <= n-1 (got r = " + std::to_string(r) +
                                  ", n = " + std::to_string(n) + ")");
    InvariantSpectrum out{p, t, n, r, Space::affine, {}, 1};
    out.mult[0] += 1;  // the all-(q-1) monomial stands in for the constant
    for (const auto& b : monomial_basis(n, q)) {
        if (b.b[0] == 0) continue;
        out.mult[alpha_of_type(type_of_monomial(b, p, t), r + 1)] += 1;
    }
    drop_zeros(out.mult);
    return out;
}

InvariantSpectrum affine_spectrum_difference(unsigned n, std::uint64_t q, unsigned r) {
    const auto [p, t] = field_params(q);
    if (n < 3 || r < 1 || r > n - 2)
        throw OutsideTheoremRange("difference formula needs 1 <= r <= n-2 (got r = " + std::to_string(r) +
                                  ", n = " + std::to_string(n) + ")");
    const auto big = projective_spectrum(n, q, r + 1);
    const auto small = projective_spectrum(n - 1, q, r + 1);
    InvariantSpectrum out{p, t, n, r, Space::affine, big.mult, 1};
    for (const auto& [a, m] : small.mult) out.mult[a] -= m;
    for (const auto& [a, m] : out.mult)
        if (m < 0) throw std::logic_error("affine_spectrum_difference: negative multiplicity");
    drop_zeros(out.mult);
    return out;
}

bool same_multiplicities(const Multiplicities& a, const Multiplicities& b) {
    Multiplicities x = a, y = b;
    drop_zeros(x);
    drop_zeros(y);
    return x == y;
}

}  // namespace pgsnf
