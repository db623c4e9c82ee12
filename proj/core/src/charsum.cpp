#include "pgsnf/charsum.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "pgsnf/invariants.hpp"

namespace pgsnf {

std::uint64_t digit_sum(std::uint64_t k, std::uint64_t base) {
    if (base < 2) throw InvalidArgument("digit_sum: base must be >= 2");
    std::uint64_t s = 0;
    for (; k; k /= base) s += k % base;
    return s;
}

std::uint64_t sigma_residue(std::int64_t b, std::uint64_t p, std::uint64_t q) {
    if (q < 2) throw InvalidArgument("sigma_residue: q must be >= 2");
    const auto m = static_cast<std::int64_t>(q - 1);
    return digit_sum(static_cast<std::uint64_t>(((b % m) + m) % m), p);
}

CharacterTable::CharacterTable(std::shared_ptr<const Field> field, unsigned N)
    : field_(std::move(field)),
      ring_(Ring::create(RingSpec::lift(field_->spec(), N))),
      inv_qm1_(RingElement::zero(ring_)) {
    const Field::Elem q = field_->q();
    teich_.reserve(q);
    for (Field::Elem x = 0; x < q; ++x) teich_.push_back(teichmuller_lift(FieldElement(field_, x), ring_));
    const RingElement w = teich_[field_->generator()];
    omega_.reserve(q - 1);
    omega_.push_back(RingElement::from_int(ring_, 1));
    for (Field::Elem e = 1; e + 1 < q; ++e) omega_.push_back(omega_.back() * w);
    inv_qm1_ = RingElement::from_int(ring_, static_cast<std::int64_t>(q - 1)).inv();
}

RingElement CharacterTable::character(std::uint64_t k, Field::Elem x) const {
    if (k == 0) return RingElement::from_int(ring_, 1);
    if (x == 0) return RingElement::zero(ring_);
    return teich_[x].pow(k);
}

RingElement jacobi_sum(std::uint64_t b0, std::uint64_t b1, const CharacterTable& table) {
    const Field& F = *table.field();
    RingElement sum = RingElement::zero(table.ring());
    for (Field::Elem x = 0; x < F.q(); ++x)
        sum = sum + table.character(b0, x) * table.character(b1, F.sub(F.one(), x));
    return sum;
}

unsigned stickelberger_valuation(std::int64_t b0, std::int64_t b1, std::uint64_t q) {
    const auto pt = split_prime_power(q);
    if (!pt) throw InvalidArgument("q must be a prime power");
    const std::uint64_t p = pt->first;
    const auto m = static_cast<std::int64_t>(q - 1);
    auto res = [m](std::int64_t b) { return ((b % m) + m) % m; };
    if (res(b0) == 0 || res(b1) == 0 || res(b0 + b1) == 0)
        throw DegenerateCharacters("b0, b1 and b0 + b1 must all be nonzero mod q-1");
    const std::uint64_t num = sigma_residue(b0, p, q) + sigma_residue(b1, p, q) - sigma_residue(b0 + b1, p, q);
    return static_cast<unsigned>(num / (p - 1));
}

unsigned wan_lower_bound(const ExponentTuple& b, unsigned r, std::uint64_t p, unsigned t) {
    const std::uint64_t q = checked_pow(p, t);
    unsigned bound = 0;
    std::uint64_t pl = 1;
    for (unsigned l = 0; l < t; ++l, pl *= p) {
        std::uint64_t S = 0;
        for (auto bi : b.b) S += digit_sum(pl * bi, q);
        if (S % (q - 1) != 0) throw InvalidArgument("wan_lower_bound: total degree not divisible by q-1");
        const std::uint64_t s = S / (q - 1);
        if (s < r) bound += static_cast<unsigned>(r - s);
    }
    return bound;
}

RingElement eta_coordinate(const ExponentTuple& b, const Subspace& Y, const CharacterTable& table) {
    const Field& F = *table.field();
    if (b.b.size() != Y.ambient_dim) throw SpecMismatch("exponent tuple and subspace have different lengths");
    RingElement sum = RingElement::zero(table.ring());
    for (const auto& x : nonzero_vectors(F, Y)) {
        RingElement term = RingElement::from_int(table.ring(), 1);
        for (std::size_t i = 0; i < x.size() && !term.is_zero(); ++i) term = term * table.character(b.b[i], x[i]);
        sum = sum + term;
    }
    return sum * table.inv_q_minus_1();
}

PointLogs point_logs(const Field& F, const Subspace& Y) {
    PointLogs out;
    out.width = Y.ambient_dim;
    for (const auto& P : points_of(F, Y))
        for (auto x : P.coords) out.logs.push_back(x == 0 ? -1 : static_cast<std::int32_t>(F.log(x)));
    return out;
}

RingElement eta_coordinate_fast(const ExponentTuple& b, const PointLogs& Y, const CharacterTable& table) {
    const std::uint64_t qm1 = table.field()->q() - 1;
    if (b.b.size() != Y.width) throw SpecMismatch("exponent tuple and subspace have different lengths");
    std::vector<std::uint64_t> hist(qm1, 0);
    const std::size_t w = Y.width;
    for (std::size_t k = 0; k < Y.size(); ++k) {
        const std::int32_t* x = &Y.logs[k * w];
        std::uint64_t e = 0;
        bool vanishes = false;
        for (std::size_t i = 0; i < w; ++i) {
            if (b.b[i] == 0) continue;
            if (x[i] < 0) {
                vanishes = true;
                break;
            }
            e += static_cast<std::uint64_t>(b.b[i]) * static_cast<std::uint64_t>(x[i]);
        }
        if (!vanishes) ++hist[e % qm1];
    }
    const Ring& R = *table.ring();
    Ring::Coeffs acc{};
    for (std::uint64_t e = 0; e < qm1; ++e)
        if (hist[e]) R.add_scaled(acc, acc, hist[e] % R.modulus_pN(), table.omega_pow(e).raw());
    return RingElement(table.ring(), acc);
}

std::optional<unsigned> ring_valuation(const RingElement& x) { return valuation(x); }

unsigned eta_valuation(const ExponentTuple& b, const Subspace& Y, const CharacterTable& table) {
    const auto v = ring_valuation(eta_coordinate(b, Y, table));
    if (!v) throw AtLeastPrecision("coordinate vanishes mod p^" + std::to_string(table.precision()));
    return *v;
}

namespace {

struct AuditContext {
    std::shared_ptr<const Field> F;
    std::vector<PointLogs> ys;
    std::map<unsigned, CharacterTable> tables;

    const CharacterTable& table(unsigned N) {
        auto it = tables.find(N);
        if (it == tables.end()) it = tables.emplace(N, CharacterTable(F, N)).first;
        return it->second;
    }
};

AuditContext make_context(unsigned n, const FieldSpec& field, unsigned r) {
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (r < 1 || r > n) throw InvalidDimension("coordinate sums need 1 <= r <= n");
    AuditContext ctx;
    ctx.F = Field::create(field);
    for (const auto& Y : enumerate_subspaces(*ctx.F, n, r)) ctx.ys.push_back(point_logs(*ctx.F, Y));
    return ctx;
}

struct Scan {
    std::optional<unsigned> min;
    bool bound_holds = true;
};

Scan scan(const ExponentTuple& b, unsigned wan, AuditContext& ctx, unsigned N) {
    const CharacterTable& T = ctx.table(N);
    Scan s;
    for (const auto& Y : ctx.ys) {
        const auto v = ring_valuation(eta_coordinate_fast(b, Y, T));
        if (!v) {
            if (N < wan) s.bound_holds = false;  // only known to be >= N
            continue;
        }
        if (*v < wan) s.bound_holds = false;
        if (!s.min || *v < *s.min) s.min = v;
    }
    return s;
}

// Doubles N from N0 until some coordinate is finite.
std::pair<Scan, unsigned> settle(const ExponentTuple& b, unsigned wan, AuditContext& ctx, unsigned N0) {
    const unsigned cap = std::min(8 * N0, max_precision(ctx.F->p()));
    for (unsigned N = std::min(N0, cap);; N = std::min(2 * N, cap)) {
        Scan s = scan(b, wan, ctx, N);
        if (s.min) return {s, N};
        if (N >= cap) break;
    }
    throw PrecisionExhausted("every coordinate vanishes up to p^" + std::to_string(cap));
}

}  // namespace

unsigned min_valuation_of_monomial(const ExponentTuple& b, unsigned n, std::uint64_t q, unsigned r,
                                   std::optional<unsigned> N) {
    if (b.b.size() != n + 1) throw InvalidArgument("exponent tuple must have n+1 entries");
    if (b.is_constant()) throw NoType("the constant monomial is outside the valuation statement");
    AuditContext ctx = make_context(n, FieldSpec::for_order(q), r);
    const unsigned N0 = N.value_or(default_precision(r, ctx.F->t()));
    return *settle(b, 0, ctx, N0).first.min;
}

bool WanAudit::ok() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const WanRow& w) { return w.bound_holds && w.min_valuation == w.alpha; });
}

WanAudit wan_audit(unsigned n, std::uint64_t q, unsigned r, std::optional<unsigned> N) {
    return wan_audit(n, FieldSpec::for_order(q), r, N);
}

WanAudit wan_audit(unsigned n, const FieldSpec& field, unsigned r, std::optional<unsigned> N) {
    AuditContext ctx = make_context(n, field, r);
    const std::uint64_t q = ctx.F->q();
    const std::uint64_t p = ctx.F->p();
    const unsigned t = ctx.F->t();
    const unsigned N0 = N.value_or(default_precision(r, t));
    WanAudit out{p, t, n, r, ctx.ys.size(), {}};
    for (auto& b : monomial_basis(n, q)) {
        if (b.is_constant()) continue;
        WanRow row;
        row.type = type_of_monomial(b, p, t);
        row.alpha = alpha_of_type(row.type, r);
        row.wan_bound = wan_lower_bound(b, r, p, t);
        const auto [s, used] = settle(b, row.wan_bound, ctx, N0);
        row.min_valuation = *s.min;
        row.bound_holds = s.bound_holds;
        row.precision = used;
        row.b = std::move(b);
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_wan_csv(std::ostream& os, const WanAudit& audit) {
    auto tuple = [&os](const auto& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
    };
    os << "b,type,alpha,min_valuation,wan_bound\n";
    for (const auto& w : audit.rows) {
        tuple(w.b.b);
        os << ',';
        tuple(w.type);
        os << ',' << w.alpha << ',' << w.min_valuation << ',' << w.wan_bound << '\n';
    }
}

}  // namespace pgsnf
