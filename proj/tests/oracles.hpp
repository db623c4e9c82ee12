#pragma once

// Slow reference implementations used only by the tests. Nothing here calls
// into the elimination or formula code under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "pgsnf/gf.hpp"
#include "pgsnf/matrix.hpp"

namespace oracle {

using Z = mpz_class;
using ZMat = std::vector<std::vector<Z>>;

inline ZMat to_z(const pgsnf::IntMatrix& m) {
    ZMat a(m.rows(), std::vector<Z>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = static_cast<long>(m(i, j));
    return a;
}

// Textbook SNF: move a smallest nonzero entry to the corner, clear its row and
// column by division with remainder, fix divisibility against the rest.
inline std::vector<Z> textbook_snf(ZMat a) {
    const std::size_t R = a.size(), C = R ? a[0].size() : 0;
    std::vector<Z> d;
    for (std::size_t k = 0; k < std::min(R, C); ++k) {
        for (;;) {
            std::size_t pi = R, pj = C;
            for (std::size_t i = k; i < R; ++i)
                for (std::size_t j = k; j < C; ++j)
                    if (a[i][j] != 0 && (pi == R || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
            if (pi == R) return d;
            std::swap(a[k], a[pi]);
            for (auto& row : a) std::swap(row[k], row[pj]);
            bool clean = true;
            for (std::size_t i = k + 1; i < R; ++i) {
                Z f = a[i][k] / a[k][k];
                for (std::size_t j = k; j < C; ++j) a[i][j] -= f * a[k][j];
                if (a[i][k] != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < C; ++j) {
                Z f = a[k][j] / a[k][k];
                for (std::size_t i = k; i < R; ++i) a[i][j] -= f * a[i][k];
                if (a[k][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = k + 1; i < R && divides; ++i)
                for (std::size_t j = k + 1; j < C; ++j)
                    if (a[i][j] % a[k][k] != 0) {
                        for (std::size_t jj = k; jj < C; ++jj) a[k][jj] += a[i][jj];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        d.push_back(abs(a[k][k]));
    }
    return d;
}

inline Z det(ZMat a) {
    // Bareiss fraction-free elimination.
    const std::size_t n = a.size();
    Z prev = 1, sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    if (k > n) return;
    for (;;) {
        out.push_back(s);
        std::size_t i = k;
        while (i > 0 && s[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++s[i - 1];
        for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

// Invariant factors as ratios of determinantal divisors (gcd of all k-minors).
// Only for tiny matrices.
inline std::vector<Z> determinantal_snf(const ZMat& a) {
    const std::size_t R = a.size(), C = R ? a[0].size() : 0;
    std::vector<Z> d;
    Z prev = 1;
    for (std::size_t k = 1; k <= std::min(R, C); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        subsets(R, k, rs);
        subsets(C, k, cs);
        Z g = 0;
        for (const auto& ri : rs)
            for (const auto& ci : cs) {
                ZMat m(k, std::vector<Z>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = a[ri[i]][ci[j]];
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Z(det(m)).get_mpz_t());
            }
        if (g == 0) break;
        d.push_back(g / prev);
        prev = g;
    }
    return d;
}

inline std::size_t rank_mod(const pgsnf::IntMatrix& m, std::int64_t p) {
    std::vector<std::vector<std::int64_t>> a(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = ((m(i, j) % p) + p) % p;
    auto inv = [p](std::int64_t x) {
        std::int64_t r = 1, e = p - 2;
        for (; e; e >>= 1, x = x * x % p)
            if (e & 1) r = r * x % p;
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t j = 0; j < m.cols() && rank < m.rows(); ++j) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][j] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[rank], a[piv]);
        const std::int64_t f = inv(a[rank][j]);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            const std::int64_t c = a[i][j] * f % p;
            for (std::size_t jj = j; jj < m.cols(); ++jj) a[i][jj] = ((a[i][jj] - c * a[rank][jj]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

inline std::map<unsigned, std::size_t> p_parts(const std::vector<Z>& inv, unsigned long p) {
    std::map<unsigned, std::size_t> out;
    for (Z x : inv) {
        unsigned v = 0;
        while (x % p == 0) x /= p, ++v;
        ++out[v];
    }
    return out;
}

// Vectors of F_q^{m} as index tuples; span closure by brute force.
using V = std::vector<pgsnf::Field::Elem>;

inline std::vector<V> all_vectors(const pgsnf::Field& F, unsigned m) {
    std::vector<V> out(1, V{});
    for (unsigned i = 0; i < m; ++i) {
        std::vector<V> next;
        for (const auto& v : out)
            for (pgsnf::Field::Elem x = 0; x < F.q(); ++x) {
                V w = v;
                w.push_back(x);
                next.push_back(w);
            }
        out.swap(next);
    }
    return out;
}

inline std::set<V> span(const pgsnf::Field& F, unsigned m, const std::vector<V>& gens) {
    std::set<V> s{V(m, 0)};
    for (const auto& g : gens) {
        std::set<V> next;
        for (const auto& v : s)
            for (pgsnf::Field::Elem c = 0; c < F.q(); ++c) {
                V w = v;
                for (unsigned i = 0; i < m; ++i) w[i] = F.add(w[i], F.mul(c, g[i]));
                next.insert(w);
            }
        s.swap(next);
    }
    return s;
}

inline Z gaussian_binomial(unsigned m, unsigned k, unsigned long q) {
    if (k > m) return 0;
    Z num = 1, den = 1, qq = q;
    for (unsigned i = 0; i < k; ++i) {
        Z a, b;
        mpz_pow_ui(a.get_mpz_t(), qq.get_mpz_t(), m - i);
        mpz_pow_ui(b.get_mpz_t(), qq.get_mpz_t(), i + 1);
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

}  // namespace oracle
