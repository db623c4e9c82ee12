#include "local_elim.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "pgsnf/errors.hpp"

namespace pgsnf::detail {

namespace {

std::uint64_t inverse_mod(std::uint64_t u, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(u % m);
    while (nr != 0) {
        const std::int64_t qq = r / nr;
        t = std::exchange(nt, t - qq * nt);
        r = std::exchange(nr, r - qq * nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

std::uint32_t inverse_pow2_32(std::uint32_t u) {
    std::uint32_t x = u;  // correct to 3 bits; Newton doubles that each step
    for (int i = 0; i < 4; ++i) x *= 2u - u * x;
    return x;
}

// kWrap: ell = 2 with natural mod-2^32 arithmetic. Otherwise entries are
// residues mod M = ell^K that may grow lazily until the type's range forces a
// reduction.
template <class T, bool kWrap>
LocalElimination run(const IntMatrix& m, std::uint64_t ell, unsigned K) {
    const std::size_t R = m.rows(), C = m.cols();
    std::uint64_t M = 1;
    if constexpr (!kWrap)
        for (unsigned i = 0; i < K; ++i) M *= ell;

    std::vector<T> a(R * C);
    for (std::size_t i = 0; i < R * C; ++i) {
        const std::int64_t x = m.data()[i];
        if constexpr (kWrap) {
            a[i] = static_cast<std::uint32_t>(x);
        } else {
            std::int64_t r = x % static_cast<std::int64_t>(M);
            if (r < 0) r += static_cast<std::int64_t>(M);
            a[i] = static_cast<T>(r);
        }
    }
    std::vector<T*> row(R);
    for (std::size_t i = 0; i < R; ++i) row[i] = a.data() + i * C;

    LocalElimination out;
    const std::size_t kmax = std::min(R, C);
    const unsigned levels = kWrap ? 32 : K;
    std::size_t np = 0;

    for (unsigned v = 0; v < levels && np < kmax; ++v) {
        std::size_t budget = std::numeric_limits<std::size_t>::max(), since = 0;
        if constexpr (!kWrap) {
            const std::uint64_t sq = (M - 1) * (M - 1);
            if (sq) budget = (std::numeric_limits<T>::max() - (M - 1)) / sq;
        }
        std::size_t deferred = 0;
        while (np + deferred < C && np < R) {
            const std::size_t c = np + deferred;
            std::size_t pi = R;
            for (std::size_t i = np; i < R; ++i) {
                const T x = row[i][c];
                if (kWrap ? (x & 1u) != 0 : x % ell != 0) {
                    pi = i;
                    break;
                }
            }
            if (pi == R) {
                ++deferred;  // no unit in this column at this level
                continue;
            }
            if (c != np)
                for (std::size_t i = np; i < R; ++i) std::swap(row[i][c], row[i][np]);
            std::swap(row[np], row[pi]);
            T* __restrict rk = row[np];
            T inv;
            if constexpr (kWrap) {
                inv = inverse_pow2_32(rk[np]);
            } else {
                for (std::size_t j = np; j < C; ++j) rk[j] = static_cast<T>(rk[j] % M);
                inv = static_cast<T>(inverse_mod(rk[np], M));
            }
            for (std::size_t i = np + 1; i < R; ++i) {
                T* __restrict ri = row[i];
                if constexpr (kWrap) {
                    const std::uint32_t f = ri[np] * inv;
                    if (f == 0) continue;
                    for (std::size_t j = np + 1; j < C; ++j) ri[j] -= f * rk[j];
                } else {
                    const std::uint64_t x = ri[np] % M;
                    if (x == 0) continue;
                    const T g = static_cast<T>(M - x * inv % M);
                    for (std::size_t j = np + 1; j < C; ++j) ri[j] += g * rk[j];
                }
            }
            if constexpr (!kWrap) {
                if (++since >= budget) {
                    for (std::size_t i = np + 1; i < R; ++i)
                        for (std::size_t j = np + 1; j < C; ++j) row[i][j] = static_cast<T>(row[i][j] % M);
                    since = 0;
                }
            }
            out.valuations.push_back(v);
            ++np;
        }
        if (np >= kmax) break;

        // Every residual entry is now divisible by ell.
        bool zero = true;
        if constexpr (kWrap) {
            const unsigned bits = 32 - v;
            const std::uint32_t mask = bits >= 32 ? ~0u : (1u << bits) - 1;
            for (std::size_t i = np; i < R; ++i)
                for (std::size_t j = np; j < C; ++j) {
                    if (row[i][j] & mask) zero = false;
                    row[i][j] >>= 1;
                }
        } else {
            for (std::size_t i = np; i < R; ++i)
                for (std::size_t j = np; j < C; ++j) {
                    const T x = static_cast<T>(row[i][j] % M);
                    if (x) zero = false;
                    row[i][j] = static_cast<T>(x / ell);
                }
            M /= ell;
        }
        if (zero) break;
    }
    return out;
}

}  // namespace

unsigned precision_within(std::uint64_t ell, std::uint64_t limit) {
    unsigned K = 1;
    for (std::uint64_t M = ell; M <= limit / ell; M *= ell) ++K;
    return K;
}

LocalElimination local_elimination(const IntMatrix& m, std::uint64_t ell, unsigned K) {
    if (ell < 2) throw InvalidArgument("local_elimination: ell must be prime");
    if (ell == 2) return run<std::uint32_t, true>(m, 2, 32);
    if (K == 0) throw InvalidArgument("local_elimination: K must be positive");
    std::uint64_t M = 1;
    for (unsigned i = 0; i < K; ++i) {
        if (M > (std::uint64_t{1} << 31) / ell) throw InvalidArgument("local_elimination: ell^K exceeds 2^31");
        M *= ell;
    }
    if (M <= (std::uint64_t{1} << 16)) return run<std::uint32_t, false>(m, ell, K);
    return run<std::uint64_t, false>(m, ell, K);
}

}  // namespace pgsnf::detail
