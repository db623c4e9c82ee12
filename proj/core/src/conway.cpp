#include "pgsnf/conway.hpp"

#include <map>
#include <stdexcept>

#include "poly_fp.hpp"

namespace pgsnf {

namespace {

using detail::Poly;

// Flat records: p, t, c_0, ..., c_t. Generated by tools/gen_conway.
constexpr std::uint32_t kConwayData[] = {
#include "conway_table.inc"
};

const std::map<std::pair<std::uint64_t, unsigned>, PolyFp>& conway_index() {
    static const auto index = [] {
        std::map<std::pair<std::uint64_t, unsigned>, PolyFp> m;
        const std::size_t n = sizeof(kConwayData) / sizeof(kConwayData[0]);
        std::size_t i = 0;
        while (i + 2 < n) {
            const std::uint64_t p = kConwayData[i];
            const unsigned t = kConwayData[i + 1];
            PolyFp f(kConwayData + i + 2, kConwayData + i + 3 + t);
            m.emplace(std::make_pair(p, t), std::move(f));
            i += 3 + t;
        }
        return m;
    }();
    return index;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / b) throw std::overflow_error("prime power overflow");
        r *= b;
    }
    return r;
}

Poly x_poly() { return Poly{0, 1}; }

// Evaluates g(y) in F_p[x]/(f).
Poly compose_mod(const Poly& g, const Poly& y, const Poly& f, std::uint64_t p) {
    Poly acc;
    for (std::size_t i = g.size(); i-- > 0;) {
        acc = detail::poly_mulmod(acc, y, f, p);
        if (acc.empty()) acc.push_back(0);
        acc[0] = (acc[0] + g[i]) % p;
        detail::trim(acc);
    }
    return acc;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::optional<std::pair<std::uint64_t, unsigned>> split_prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    const auto f = prime_factors(q);
    if (f.size() != 1) return std::nullopt;
    unsigned t = 0;
    while (q > 1) {
        q /= f[0];
        ++t;
    }
    return std::make_pair(f[0], t);
}

bool is_irreducible(const PolyFp& f_in, std::uint64_t p) {
    Poly f = f_in;
    detail::trim(f);
    if (f.size() < 2 || f.back() != 1) return false;
    const unsigned t = static_cast<unsigned>(f.size() - 1);
    if (t == 1) return true;
    // Rabin: x^(p^t) = x mod f and gcd(x^(p^(t/l)) - x, f) = 1 for primes l | t.
    auto frob = [&](unsigned k) {
        Poly y = detail::poly_mod(x_poly(), f, p);
        for (unsigned i = 0; i < k; ++i) y = detail::poly_powmod(y, p, f, p);
        return y;
    };
    if (detail::poly_sub(frob(t), detail::poly_mod(x_poly(), f, p), p) != Poly{}) return false;
    for (std::uint64_t l : prime_factors(t)) {
        Poly g = detail::poly_gcd(f, detail::poly_sub(frob(t / static_cast<unsigned>(l)), x_poly(), p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

bool is_primitive(const PolyFp& f, std::uint64_t p) {
    if (!is_irreducible(f, p)) return false;
    const unsigned t = static_cast<unsigned>(f.size() - 1);
    const std::uint64_t order = ipow(p, t) - 1;
    const Poly x = detail::poly_mod(x_poly(), f, p);
    if (x.empty()) return false;
    for (std::uint64_t l : prime_factors(order)) {
        if (detail::poly_powmod(x, order / l, f, p) == Poly{1}) return false;
    }
    return true;
}

std::optional<PolyFp> bundled_conway_polynomial(std::uint64_t p, unsigned t) {
    const auto& idx = conway_index();
    auto it = idx.find({p, t});
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

PolyFp compute_conway_polynomial(std::uint64_t p, unsigned t) {
    if (!is_prime(p) || t == 0) throw std::invalid_argument("compute_conway_polynomial: bad (p, t)");
    const std::uint64_t q = ipow(p, t);
    std::vector<std::pair<unsigned, PolyFp>> sub;
    for (unsigned m = 1; m < t; ++m) {
        if (t % m != 0) continue;
        auto c = bundled_conway_polynomial(p, m);
        sub.emplace_back(m, c ? *c : compute_conway_polynomial(p, m));
    }
    // Candidates ordered by (a_{t-1}, ..., a_0) with f_i = (-1)^(t-i) a_i.
    std::vector<std::uint64_t> a(t, 0);
    for (;;) {
        Poly f(t + 1, 0);
        f[t] = 1;
        for (unsigned i = 0; i < t; ++i) f[i] = ((t - i) % 2 == 0) ? a[i] : (p - a[i]) % p;
        if (f[0] != 0 && is_primitive(f, p)) {
            bool compatible = true;
            for (const auto& [m, cm] : sub) {
                const std::uint64_t e = (q - 1) / (ipow(p, m) - 1);
                const Poly y = detail::poly_powmod(x_poly(), e, f, p);
                if (!compose_mod(cm, y, f, p).empty()) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) return f;
        }
        // increment with a_0 least significant
        unsigned i = 0;
        while (i < t && ++a[i] == p) a[i++] = 0;
        if (i == t) break;
    }
    throw std::logic_error("no Conway polynomial found");
}

PolyFp smallest_irreducible(std::uint64_t p, unsigned t) {
    if (!is_prime(p) || t == 0) throw std::invalid_argument("smallest_irreducible: bad (p, t)");
    std::vector<std::uint64_t> c(t, 0);
    for (;;) {
        Poly f(c.begin(), c.end());
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
        unsigned i = t;
        while (i > 0 && ++c[i - 1] == p) c[--i] = 0;
        if (i == 0) break;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace pgsnf
