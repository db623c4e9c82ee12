#pragma once

// Dense polynomial arithmetic over F_p for small p (p < 2^32).

#include <cstdint>
#include <vector>

namespace pgsnf::detail {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
    // f monic
    const std::size_t d = f.size() - 1;
    trim(a);
    while (a.size() > d) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - d;
        for (std::size_t i = 0; i < d; ++i)
            a[shift + i] = (a[shift + i] + (p - lead) * f[i]) % p;
        a.pop_back();
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(c), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
    Poly r{1};
    r = poly_mod(r, f, p);
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        e >>= 1;
        if (e) base = poly_mulmod(base, base, f, p);
    }
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        const std::int64_t qq = r / nr;
        std::int64_t tmp = t - qq * nt;
        t = nt;
        nt = tmp;
        tmp = r - qq * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic, then a mod b
        const std::uint64_t li = inv_mod(b.back(), p);
        for (auto& c : b) c = c * li % p;
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i] % p) % p;
    trim(a);
    return a;
}

}  // namespace pgsnf::detail
