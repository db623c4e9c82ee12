#include "pgsnf/gf.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "poly_fp.hpp"

namespace pgsnf {

namespace {

constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 22;

std::uint64_t field_order(std::uint64_t p, unsigned t) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < t; ++i) {
        if (q > kMaxFieldOrder / p) throw InvalidArgument("field order exceeds 2^22");
        q *= p;
    }
    return q;
}

}  // namespace

FieldSpec FieldSpec::make(std::uint64_t p, unsigned t, std::vector<std::uint64_t> modulus) {
    if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
    if (t == 0 || t > kMaxDegree) throw InvalidArgument("degree t must be in [1, 16]");
    field_order(p, t);
    if (modulus.size() != t + 1 || modulus.back() != 1)
        throw InvalidArgument("modulus must be monic of degree t");
    for (auto c : modulus)
        if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    if (!is_irreducible(modulus, p)) throw InvalidArgument("modulus is not irreducible");
    return FieldSpec{p, t, std::move(modulus)};
}

FieldSpec FieldSpec::standard(std::uint64_t p, unsigned t) {
    if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
    if (t == 0 || t > kMaxDegree) throw InvalidArgument("degree t must be in [1, 16]");
    field_order(p, t);
    if (auto c = bundled_conway_polynomial(p, t)) return FieldSpec{p, t, *c};
    return FieldSpec{p, t, smallest_irreducible(p, t)};
}

FieldSpec FieldSpec::for_order(std::uint64_t q) {
    auto pt = split_prime_power(q);
    if (!pt) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
    return standard(pt->first, pt->second);
}

std::uint64_t FieldSpec::order() const { return field_order(p, t); }

void to_json(nlohmann::json& j, const FieldSpec& s) {
    j = nlohmann::json{{"p", s.p}, {"t", s.t}, {"modulus", s.modulus}};
}

void from_json(const nlohmann::json& j, FieldSpec& s) {
    s = FieldSpec::make(j.at("p").get<std::uint64_t>(), j.at("t").get<unsigned>(),
                        j.at("modulus").get<std::vector<std::uint64_t>>());
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Field> Field::create(const FieldSpec& spec) {
    return std::shared_ptr<const Field>(new Field(spec));
}

Field::Field(const FieldSpec& spec) : spec_(spec), q_(static_cast<Elem>(spec.order())) {
    pow_p_.resize(spec_.t + 1);
    pow_p_[0] = 1;
    for (unsigned i = 1; i <= spec_.t; ++i) pow_p_[i] = pow_p_[i - 1] * static_cast<std::uint32_t>(spec_.p);

    const auto& f = spec_.modulus;
    auto mul_poly = [&](Elem a, Elem b) {
        detail::Poly pa = coeffs(a), pb = coeffs(b);
        return from_coeffs(detail::poly_mulmod(pa, pb, f, spec_.p));
    };

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    // smallest element of order q - 1, starting from x
    const auto factors = prime_factors(q_ - 1);
    auto has_full_order = [&](Elem g) {
        for (auto l : factors) {
            Elem acc = 1, base = g;
            std::uint64_t e = (q_ - 1) / l;
            while (e) {
                if (e & 1) acc = mul_poly(acc, base);
                base = mul_poly(base, base);
                e >>= 1;
            }
            if (acc == 1) return false;
        }
        return true;
    };
    Elem gen = 0;
    const Elem x = spec_.t > 1 ? static_cast<Elem>(spec_.p) : from_coeffs({(spec_.p - f[0]) % spec_.p});
    if (q_ == 2) {
        gen = 1;
    } else if (x != 0 && has_full_order(x)) {
        gen = x;
    } else {
        for (Elem g = 2; g < q_; ++g)
            if (has_full_order(g)) {
                gen = g;
                break;
            }
    }
    Elem cur = 1;
    for (Elem k = 0; k + 1 < q_; ++k) {
        exp_[k] = cur;
        log_[cur] = k;
        cur = mul_poly(cur, gen);
    }
}

std::vector<std::uint64_t> Field::coeffs(Elem a) const {
    std::vector<std::uint64_t> c(spec_.t);
    for (unsigned i = 0; i < spec_.t; ++i) {
        c[i] = a % spec_.p;
        a = static_cast<Elem>(a / spec_.p);
    }
    return c;
}

Field::Elem Field::from_coeffs(const std::vector<std::uint64_t>& c) const {
    Elem a = 0;
    for (std::size_t i = std::min<std::size_t>(c.size(), spec_.t); i-- > 0;)
        a = static_cast<Elem>(a * spec_.p + c[i] % spec_.p);
    return a;
}

Field::Elem Field::add(Elem a, Elem b) const noexcept {
    if (spec_.p == 2) return a ^ b;
    if (spec_.t == 1) {
        const Elem s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    const auto p = static_cast<Elem>(spec_.p);
    Elem r = 0;
    for (unsigned i = 0; i < spec_.t; ++i) {
        const Elem s = a % p + b % p;
        r += (s >= p ? s - p : s) * pow_p_[i];
        a /= p;
        b /= p;
    }
    return r;
}

Field::Elem Field::neg(Elem a) const noexcept {
    if (spec_.p == 2) return a;
    const auto p = static_cast<Elem>(spec_.p);
    Elem r = 0;
    for (unsigned i = 0; i < spec_.t; ++i) {
        const Elem d = a % p;
        r += (d == 0 ? 0 : p - d) * pow_p_[i];
        a /= p;
    }
    return r;
}

Field::Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Field::Elem Field::inv(Elem a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Field::Elem Field::pow(Elem a, std::uint64_t k) const noexcept {
    if (k == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t e = (static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1);
    return exp_[e];
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(std::shared_ptr<const Field> field, Field::Elem index)
    : field_(std::move(field)), index_(index) {
    if (index_ >= field_->q()) throw InvalidArgument("field element index out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
    if (field_ != o.field_ && !(field_->spec() == o.field_->spec()))
        throw SpecMismatch("field elements from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->add(index_, o.index_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->sub(index_, o.index_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->mul(index_, o.index_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->mul(index_, field_->inv(o.index_))};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(index_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(index_)}; }
FieldElement FieldElement::pow(std::uint64_t k) const { return {field_, field_->pow(index_, k)}; }

// ---------------------------------------------------------------------------

RingSpec RingSpec::lift(const FieldSpec& field, unsigned N) {
    if (N == 0) throw InvalidArgument("precision N must be >= 1");
    return RingSpec{field.p, field.t, N, field.modulus};
}

FieldSpec RingSpec::residue_spec() const {
    std::vector<std::uint64_t> m(modulus.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = modulus[i] % p;
    return FieldSpec::make(p, t, std::move(m));
}

void to_json(nlohmann::json& j, const RingSpec& s) {
    j = nlohmann::json{{"p", s.p}, {"t", s.t}, {"modulus", s.modulus}, {"N", s.N}};
}

void from_json(const nlohmann::json& j, RingSpec& s) {
    s.p = j.at("p").get<std::uint64_t>();
    s.t = j.at("t").get<unsigned>();
    s.N = j.at("N").get<unsigned>();
    s.modulus = j.at("modulus").get<std::vector<std::uint64_t>>();
    (void)s.residue_spec();  // validates
}

unsigned max_precision(std::uint64_t p) {
    unsigned n = 0;
    unsigned __int128 v = 1;
    while (v * p < (static_cast<unsigned __int128>(1) << 62)) {
        v *= p;
        ++n;
    }
    return n;
}

std::shared_ptr<const Ring> Ring::create(const RingSpec& spec) {
    return std::shared_ptr<const Ring>(new Ring(spec));
}

Ring::Ring(const RingSpec& spec) : spec_(spec), pN_(1) {
    const FieldSpec residue = spec_.residue_spec();
    if (spec_.N == 0) throw InvalidArgument("precision N must be >= 1");
    if (spec_.N > max_precision(spec_.p))
        throw InvalidArgument("precision " + std::to_string(spec_.N) + " exceeds storage limit " +
                              std::to_string(max_precision(spec_.p)));
    for (unsigned i = 0; i < spec_.N; ++i) pN_ *= spec_.p;
    for (auto& c : spec_.modulus) c %= pN_;
    if (spec_.modulus.back() != 1) throw InvalidArgument("ring modulus must be monic");
    field_ = Field::create(residue);
}

std::uint64_t Ring::reduce_scalar(std::int64_t k) const noexcept {
    const auto m = static_cast<std::int64_t>(pN_);
    std::int64_t r = k % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

void Ring::add(Coeffs& out, const Coeffs& a, const Coeffs& b) const noexcept {
    for (unsigned i = 0; i < spec_.t; ++i) {
        const std::uint64_t s = a[i] + b[i];
        out[i] = s >= pN_ ? s - pN_ : s;
    }
}

void Ring::sub(Coeffs& out, const Coeffs& a, const Coeffs& b) const noexcept {
    for (unsigned i = 0; i < spec_.t; ++i) out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + pN_ - b[i];
}

void Ring::add_scaled(Coeffs& out, const Coeffs& a, std::uint64_t k, const Coeffs& b) const noexcept {
    for (unsigned i = 0; i < spec_.t; ++i) {
        const std::uint64_t s = a[i] + mul_scalar(k, b[i]);
        out[i] = s >= pN_ ? s - pN_ : s;
    }
}

void Ring::mul(Coeffs& out, const Coeffs& a, const Coeffs& b) const noexcept {
    const unsigned t = spec_.t;
    std::array<unsigned __int128, 2 * kMaxDegree> prod{};
    for (unsigned i = 0; i < t; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < t; ++j) prod[i + j] += static_cast<unsigned __int128>(a[i]) * b[j] % pN_;
    }
    std::array<std::uint64_t, 2 * kMaxDegree> c{};
    for (unsigned i = 0; i + 1 < 2 * t; ++i) c[i] = static_cast<std::uint64_t>(prod[i] % pN_);
    // reduce by the monic modulus: x^t = -sum m_i x^i
    for (unsigned d = 2 * t - 2; d >= t && d < 2 * t; --d) {
        const std::uint64_t lead = c[d];
        if (lead == 0) continue;
        c[d] = 0;
        for (unsigned i = 0; i < t; ++i) {
            const std::uint64_t sub = mul_scalar(lead, spec_.modulus[i]);
            std::uint64_t& x = c[d - t + i];
            x = x >= sub ? x - sub : x + pN_ - sub;
        }
    }
    for (unsigned i = 0; i < t; ++i) out[i] = c[i];
    for (unsigned i = t; i < kMaxDegree; ++i) out[i] = 0;
}

// ---------------------------------------------------------------------------

RingElement::RingElement(std::shared_ptr<const Ring> ring, const Ring::Coeffs& c)
    : ring_(std::move(ring)), c_(c) {
    for (unsigned i = 0; i < kMaxDegree; ++i) {
        if (i >= ring_->t()) c_[i] = 0;
        else if (c_[i] >= ring_->modulus_pN()) c_[i] %= ring_->modulus_pN();
    }
}

RingElement RingElement::zero(std::shared_ptr<const Ring> ring) { return RingElement(std::move(ring), {}); }

RingElement RingElement::from_int(std::shared_ptr<const Ring> ring, std::int64_t k) {
    Ring::Coeffs c{};
    c[0] = ring->reduce_scalar(k);
    return RingElement(std::move(ring), c);
}

RingElement RingElement::naive_lift(std::shared_ptr<const Ring> ring, const FieldElement& a) {
    if (!(a.field()->spec() == ring->residue_field()->spec()))
        throw SpecMismatch("field element does not belong to the residue field of the ring");
    return from_coeffs(std::move(ring), a.coeffs());
}

RingElement RingElement::from_coeffs(std::shared_ptr<const Ring> ring, const std::vector<std::uint64_t>& v) {
    if (v.size() > ring->t()) throw InvalidArgument("too many ring coefficients");
    Ring::Coeffs c{};
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] % ring->modulus_pN();
    return RingElement(std::move(ring), c);
}

std::vector<std::uint64_t> RingElement::coeffs() const {
    return std::vector<std::uint64_t>(c_.begin(), c_.begin() + ring_->t());
}

bool RingElement::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t x) { return x == 0; });
}

bool RingElement::is_unit() const { return !reduce().is_zero(); }

void RingElement::check_same(const RingElement& o) const {
    if (ring_ != o.ring_ && !(ring_->spec() == o.ring_->spec()))
        throw SpecMismatch("ring elements from different rings");
}

RingElement RingElement::operator+(const RingElement& o) const {
    check_same(o);
    Ring::Coeffs r{};
    ring_->add(r, c_, o.c_);
    return RingElement(ring_, r);
}

RingElement RingElement::operator-(const RingElement& o) const {
    check_same(o);
    Ring::Coeffs r{};
    ring_->sub(r, c_, o.c_);
    return RingElement(ring_, r);
}

RingElement RingElement::operator*(const RingElement& o) const {
    check_same(o);
    Ring::Coeffs r{};
    ring_->mul(r, c_, o.c_);
    return RingElement(ring_, r);
}

RingElement RingElement::operator-() const { return zero(ring_) - *this; }

RingElement RingElement::pow(std::uint64_t k) const {
    RingElement result = from_int(ring_, 1), base = *this;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

FieldElement RingElement::reduce() const {
    const auto& F = ring_->residue_field();
    std::vector<std::uint64_t> c(ring_->t());
    for (unsigned i = 0; i < ring_->t(); ++i) c[i] = c_[i] % ring_->p();
    return FieldElement(F, F->from_coeffs(c));
}

RingElement RingElement::inv() const {
    const FieldElement r = reduce();
    if (r.is_zero()) throw NotAUnit("element is divisible by p");
    // Newton iteration x <- x (2 - a x) doubles the p-adic precision.
    RingElement x = naive_lift(ring_, r.inv());
    const RingElement two = from_int(ring_, 2);
    for (unsigned prec = 1; prec < ring_->precision(); prec *= 2) x = x * (two - *this * x);
    return x;
}

RingElement teichmuller_lift(const FieldElement& a, std::shared_ptr<const Ring> ring) {
    RingElement w = RingElement::naive_lift(ring, a);
    const std::uint64_t q = ring->residue_field()->q();
    // each application of x -> x^q gains one p-adic digit
    for (unsigned i = 0; i < ring->precision(); ++i) {
        RingElement next = w.pow(q);
        if (next == w) break;
        w = std::move(next);
    }
    return w;
}

std::optional<unsigned> valuation(const RingElement& x) {
    const auto& R = *x.ring();
    unsigned best = R.precision();
    for (unsigned i = 0; i < R.t(); ++i) {
        std::uint64_t c = x.raw()[i];
        if (c == 0) continue;
        unsigned v = 0;
        while (c % R.p() == 0) {
            c /= R.p();
            ++v;
        }
        best = std::min(best, v);
    }
    if (best >= R.precision()) return std::nullopt;
    return best;
}

}  // namespace pgsnf
