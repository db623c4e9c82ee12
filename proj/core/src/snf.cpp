#include "pgsnf/snf.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "local_elim.hpp"

namespace pgsnf {

Multiplicities SNFResult::p_spectrum(std::uint64_t p) const {
    Multiplicities m;
    for (const auto& d : invariants) m[valuation_p(d, p)] += 1;
    return m;
}

BigInt SNFResult::last_nonp(std::uint64_t p) const {
    if (invariants.empty()) return 1;
    BigInt d = invariants.back();
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
    return d;
}

std::vector<BigInt> diagonal_to_chain(std::vector<BigInt> diag) {
    std::erase_if(diag, [](const BigInt& x) { return x == 0; });
    for (auto& d : diag) d = abs(d);
    std::sort(diag.begin(), diag.end());
    const std::size_t k = diag.size();
    BigInt g, l;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (mpz_divisible_p(diag[j].get_mpz_t(), diag[i].get_mpz_t())) continue;
            mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    return diag;
}

namespace {

struct Overflow {};

inline int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline int cmpabs(const BigInt& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }

// 64-bit entries with per-row magnitude bounds; throws Overflow when a result
// might leave the safe range.
struct Int64Policy {
    using T = std::int64_t;
    static constexpr bool kTracks = false;
    static constexpr std::int64_t kSafe = std::int64_t{1} << 62;

    static bool is_zero(T x) { return x == 0; }
    static T from(std::int64_t x) { return x; }
    static T absval(T x) { return x < 0 ? -x : x; }
    static bool less_abs(T a, T b) { return absval(a) < absval(b); }
    static bool is_unit(T x) { return x == 1 || x == -1; }
};

struct MpzPolicy {
    using T = BigInt;
    static constexpr bool kTracks = true;

    static bool is_zero(const T& x) { return sgn(x) == 0; }
    static T from(std::int64_t x) { return T(static_cast<long>(x)); }
    static bool less_abs(const T& a, const T& b) { return cmpabs(a, b) < 0; }
    static bool is_unit(const T& x) { return cmpabs(x, 1) == 0; }
};

// q = round(a / b) so that |a - q b| <= |b| / 2.
inline std::int64_t nearest_quotient(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    const std::int64_t r = a - q * b;
    if (2 * (r < 0 ? -r : r) > (b < 0 ? -b : b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
    return q;
}

inline BigInt nearest_quotient(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const BigInt r = a - q * b;
    if (cmpabs(2 * r, b) > 0) q += ((sgn(r) < 0) == (sgn(b) < 0)) ? 1 : -1;
    return q;
}

template <class Policy>
class Diagonalizer {
public:
    using T = typename Policy::T;

    Diagonalizer(const IntMatrix& m, bool track) : R_(m.rows()), C_(m.cols()), track_(track) {
        a_.resize(R_ * C_);
        for (std::size_t i = 0; i < R_; ++i)
            for (std::size_t j = 0; j < C_; ++j) a_[i * C_ + j] = Policy::from(m(i, j));
        row_of_.resize(R_);
        std::iota(row_of_.begin(), row_of_.end(), std::size_t{0});
        if constexpr (std::is_same_v<T, std::int64_t>) {
            bound_.resize(R_);
            for (std::size_t i = 0; i < R_; ++i) bound_[i] = exact_bound(i);
        }
        if (track_) {
            U_.assign(R_ * R_, T(0));
            W_.assign(C_ * C_, T(0));
            for (std::size_t i = 0; i < R_; ++i) U_[i * R_ + i] = T(1);
            for (std::size_t j = 0; j < C_; ++j) W_[j * C_ + j] = T(1);
        }
    }

    // Returns the diagonal (signed, in pivot order).
    std::vector<T> run() {
        std::vector<T> diag;
        const std::size_t kmax = std::min(R_, C_);
        for (std::size_t k = 0; k < kmax; ++k) {
            if (!place_min_pivot(k)) break;
            for (;;) {
                clear_column(k);
                if (clear_row(k)) break;
            }
            diag.push_back(at(k, k));
        }
        return diag;
    }

    // U * M * W where U, W are the tracked transforms (row order as stored).
    bool verify(const IntMatrix& m, const std::vector<T>& diag) const {
        // D = U M W; physical row k of the working matrix is U row row_of_[k].
        std::vector<T> MW(R_ * C_, T(0));
        for (std::size_t i = 0; i < R_; ++i)
            for (std::size_t l = 0; l < C_; ++l) {
                if (m(i, l) == 0) continue;
                const T v = Policy::from(m(i, l));
                for (std::size_t j = 0; j < C_; ++j)
                    if (!Policy::is_zero(W_[l * C_ + j])) MW[i * C_ + j] += v * W_[l * C_ + j];
            }
        for (std::size_t k = 0; k < R_; ++k) {
            const std::size_t u = row_of_[k];
            for (std::size_t j = 0; j < C_; ++j) {
                T s(0);
                for (std::size_t i = 0; i < R_; ++i)
                    if (!Policy::is_zero(U_[u * R_ + i])) s += U_[u * R_ + i] * MW[i * C_ + j];
                const T expect = (k == j && k < diag.size()) ? diag[k] : T(0);
                if (s != expect) return false;
            }
        }
        return true;
    }

private:
    T& at(std::size_t i, std::size_t j) { return a_[row_of_[i] * C_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a_[row_of_[i] * C_ + j]; }

    std::int64_t exact_bound(std::size_t phys) const {
        if constexpr (std::is_same_v<T, std::int64_t>) {
            std::int64_t b = 0;
            const T* r = &a_[phys * C_];
            for (std::size_t j = 0; j < C_; ++j) b = std::max(b, Policy::absval(r[j]));
            return b;
        } else {
            return 0;
        }
    }

    bool place_min_pivot(std::size_t k) {
        std::size_t bi = R_, bj = C_;
        for (std::size_t i = k; i < R_; ++i) {
            const T* r = &a_[row_of_[i] * C_];
            for (std::size_t j = k; j < C_; ++j) {
                if (Policy::is_zero(r[j])) continue;
                if (bi == R_ || Policy::less_abs(r[j], at(bi, bj))) {
                    bi = i;
                    bj = j;
                    if (Policy::is_unit(r[j])) goto found;
                }
            }
        }
        if (bi == R_) return false;
    found:
        swap_rows(k, bi);
        swap_cols(k, bj);
        return true;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i != j) std::swap(row_of_[i], row_of_[j]);
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < R_; ++r) std::swap(a_[r * C_ + i], a_[r * C_ + j]);
        if (track_)
            for (std::size_t r = 0; r < C_; ++r) std::swap(W_[r * C_ + i], W_[r * C_ + j]);
    }

    // row i -= f * row k over columns >= k
    void row_axpy(std::size_t i, std::size_t k, const T& f) {
        const std::size_t pi = row_of_[i], pk = row_of_[k];
        T* ri = &a_[pi * C_];
        const T* rk = &a_[pk * C_];
        if constexpr (std::is_same_v<T, std::int64_t>) {
            const std::int64_t af = Policy::absval(f);
            auto fits = [&] {
                const __int128 nb = static_cast<__int128>(af) * bound_[pk] + bound_[pi];
                return nb < Policy::kSafe;
            };
            if (!fits()) {
                bound_[pi] = exact_bound(pi);
                bound_[pk] = exact_bound(pk);
            }
            if (fits()) {
                for (std::size_t j = k; j < C_; ++j) ri[j] -= f * rk[j];
                bound_[pi] = bound_[pi] + af * bound_[pk];
            } else {
                for (std::size_t j = k; j < C_; ++j) {
                    std::int64_t prod = 0, res = 0;
                    if (__builtin_mul_overflow(f, rk[j], &prod) || __builtin_sub_overflow(ri[j], prod, &res) ||
                        res >= Policy::kSafe || res <= -Policy::kSafe)
                        throw Overflow{};
                    ri[j] = res;
                }
                bound_[pi] = exact_bound(pi);
            }
        } else {
            for (std::size_t j = k; j < C_; ++j)
                if (!Policy::is_zero(rk[j])) ri[j] -= f * rk[j];
            if (track_) {
                T* ui = &U_[pi * R_];
                const T* uk = &U_[pk * R_];
                for (std::size_t j = 0; j < R_; ++j)
                    if (!Policy::is_zero(uk[j])) ui[j] -= f * uk[j];
            }
        }
    }

    // Eliminates column k below the pivot; keeps swapping in smaller remainders.
    void clear_column(std::size_t k) {
        for (;;) {
            const T piv = at(k, k);
            std::size_t smallest = R_;
            for (std::size_t i = k + 1; i < R_; ++i) {
                const T x = at(i, k);
                if (Policy::is_zero(x)) continue;
                const T f = nearest_quotient(x, piv);
                if (!Policy::is_zero(f)) row_axpy(i, k, f);
                if (!Policy::is_zero(at(i, k)) && (smallest == R_ || Policy::less_abs(at(i, k), at(smallest, k))))
                    smallest = i;
            }
            if (smallest == R_) return;
            swap_rows(k, smallest);
        }
    }

    // Eliminates row k right of the pivot. Column k is zero below the pivot and
    // finished rows are zero in columns >= k, so a column operation only touches
    // row k. Returns false if a smaller remainder had to be swapped into column k.
    bool clear_row(std::size_t k) {
        const T piv = at(k, k);
        std::size_t smallest = C_;
        T* rk = &a_[row_of_[k] * C_];
        for (std::size_t j = k + 1; j < C_; ++j) {
            if (Policy::is_zero(rk[j])) continue;
            const T f = nearest_quotient(rk[j], piv);
            if (!Policy::is_zero(f)) {
                rk[j] -= f * piv;
                if (track_)
                    for (std::size_t r = 0; r < C_; ++r)
                        if (!Policy::is_zero(W_[r * C_ + k])) W_[r * C_ + j] -= f * W_[r * C_ + k];
            }
            if (!Policy::is_zero(rk[j]) && (smallest == C_ || Policy::less_abs(rk[j], rk[smallest]))) smallest = j;
        }
        if (smallest == C_) return true;
        swap_cols(k, smallest);
        return false;
    }

    std::size_t R_, C_;
    bool track_;
    std::vector<T> a_;
    std::vector<std::size_t> row_of_;
    std::vector<std::int64_t> bound_;
    std::vector<T> U_, W_;
};

template <class T>
BigInt to_big(const T& x) {
    if constexpr (std::is_same_v<T, std::int64_t>) return BigInt(static_cast<long>(x));
    else return x;
}

// Gram matrix on the smaller side, if it has the shape a*I + b*J.
std::optional<std::pair<std::int64_t, std::int64_t>> gram_design(const IntMatrix& m) {
    const bool by_cols = m.cols() <= m.rows();
    const std::size_t k = std::min(m.rows(), m.cols()), len = std::max(m.rows(), m.cols());
    if (k == 0) return std::nullopt;
    // Nonzeros along each line of the longer side.
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> lines(len);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (const std::int64_t x = m(i, j)) {
                if (by_cols) lines[i].emplace_back(static_cast<std::uint32_t>(j), x);
                else lines[j].emplace_back(static_cast<std::uint32_t>(i), x);
            }
    std::vector<std::int64_t> G(k * k, 0);
    for (const auto& l : lines)
        for (std::size_t u = 0; u < l.size(); ++u) {
            std::int64_t* g = &G[l[u].first * k];
            for (std::size_t w = u; w < l.size(); ++w) {
                std::int64_t prod = 0;
                if (__builtin_mul_overflow(l[u].second, l[w].second, &prod) ||
                    __builtin_add_overflow(g[l[w].first], prod, &g[l[w].first]))
                    return std::nullopt;
            }
        }
    // lines list indices ascending, so only the upper triangle is filled
    const std::int64_t diag = G[0], off = k > 1 ? G[1] : 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j)
            if (G[i * k + j] != (i == j ? diag : off)) return std::nullopt;
    return std::make_pair(diag - off, off);
}

// Exact SNF of a matrix whose Gram matrix is a*I + b*J with a(a + k b) != 0.
// Then e = |a (a + k b)| satisfies X M = e I (or M X = e I) for an integral X,
// so every invariant factor divides e, there are exactly k of them, and each is
// the product of its ell-parts over the primes ell | e.
std::optional<std::vector<BigInt>> certified_snf(const IntMatrix& m) {
    const auto design = gram_design(m);
    if (!design) return std::nullopt;
    const std::size_t k = std::min(m.rows(), m.cols());
    const __int128 a = design->first, s = a + static_cast<__int128>(k) * design->second;
    __int128 e = a * s;
    if (e < 0) e = -e;
    if (e == 0 || e >= (static_cast<__int128>(1) << 62)) return std::nullopt;
    const auto E = static_cast<std::uint64_t>(e);

    std::vector<BigInt> d(k, BigInt(1));
    for (std::uint64_t ell : prime_factors(E)) {
        unsigned f = 0;
        for (std::uint64_t x = E; x % ell == 0; x /= ell) ++f;
        unsigned __int128 M = 1;
        for (unsigned i = 0; i <= f; ++i) M *= ell;
        if (ell == 2 ? f >= 31 : M > (std::uint64_t{1} << 31)) return std::nullopt;
        const auto loc = detail::local_elimination(m, ell, f + 1);
        if (loc.pivots() != k) return std::nullopt;
        for (std::size_t i = 0; i < k; ++i) {
            if (loc.valuations[i] > f) return std::nullopt;
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), ell, loc.valuations[i]);
            d[i] *= pw;
        }
    }
    return d;
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m, const SnfOptions& opts) {
    SNFResult res;
    const bool small = std::min(m.rows(), m.cols()) <= opts.elimination_limit;
    if (opts.method == SnfMethod::certified || (opts.method == SnfMethod::automatic && !small)) {
        if (auto d = certified_snf(m)) {
            res.invariants = std::move(*d);
            res.method = SnfMethod::certified;
            return res;
        }
        if (opts.method == SnfMethod::certified)
            throw InvalidArgument("smith_normal_form: no Gram-matrix certificate for this matrix");
    }
    res.method = SnfMethod::elimination;
    std::vector<BigInt> diag;
    const bool track = m.rows() <= opts.verify_row_limit;
    if (track) {
        Diagonalizer<MpzPolicy> d(m, true);
        auto dg = d.run();
        if (!d.verify(m, dg)) throw std::logic_error("smith_normal_form: transform verification failed");
        res.verified = true;
        diag.assign(dg.begin(), dg.end());
    } else {
        try {
            Diagonalizer<Int64Policy> d(m, false);
            for (auto x : d.run()) diag.push_back(to_big(x));
        } catch (const Overflow&) {
            diag.clear();
            Diagonalizer<MpzPolicy> d(m, false);
            diag = d.run();
        }
    }
    res.invariants = diagonal_to_chain(std::move(diag));
    return res;
}

// ---------------------------------------------------------------------------
// p-local elimination

Multiplicities p_elementary_divisors(const IntMatrix& m, std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) throw InvalidArgument("p out of range");
    const std::size_t full = std::min(m.rows(), m.cols());
    std::vector<unsigned> tries{detail::precision_within(p, 1u << 12)};
    if (p != 2 && detail::precision_within(p, std::uint64_t{1} << 31) > tries[0])
        tries.push_back(detail::precision_within(p, std::uint64_t{1} << 31));
    for (unsigned K : tries) {
        const auto e = detail::local_elimination(m, p, K);
        if (e.pivots() != full) continue;
        Multiplicities s;
        for (unsigned v : e.valuations) s[v] += 1;
        return s;
    }
    // Residual vanished mod p^K before full rank: the rank over Q (and any
    // valuations >= K) are settled exactly by the integer route.
    return smith_normal_form(m).p_spectrum(p);
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) throw InvalidArgument("p out of range");
    const auto e = detail::local_elimination(m, p, 1);
    return static_cast<std::size_t>(std::count(e.valuations.begin(), e.valuations.end(), 0u));
}

nlohmann::json multiplicities_json(const Multiplicities& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [alpha, mult] : m)
        if (mult != 0) j[std::to_string(alpha)] = to_json_number(mult);
    return j;
}

Multiplicities multiplicities_from_json(const nlohmann::json& j) {
    Multiplicities m;
    for (const auto& [k, v] : j.items()) m[static_cast<unsigned>(std::stoul(k))] = big_from_json(v);
    return m;
}

const char* to_string(SnfMethod m) noexcept {
    switch (m) {
        case SnfMethod::automatic: return "automatic";
        case SnfMethod::elimination: return "elimination";
        case SnfMethod::certified: return "certified";
    }
    return "?";
}

nlohmann::json snf_json(const SNFResult& r, std::uint64_t p) {
    nlohmann::json inv = nlohmann::json::array();
    for (const auto& d : r.invariants) inv.push_back(to_json_number(d));
    return nlohmann::json{{"invariants", inv},
                          {"p", p},
                          {"p_spectrum", multiplicities_json(r.p_spectrum(p))},
                          {"last_nonp", to_json_number(r.last_nonp(p))},
                          {"method", to_string(r.method)},
                          {"verified", r.verified}};
}

}  // namespace pgsnf
