#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

namespace pgsnf {

/// Prime field characteristic p, extension degree t and a monic irreducible
/// modulus of degree t over F_p (coefficients constant term first).
struct FieldSpec {
    std::uint64_t p = 2;
    unsigned t = 1;
    std::vector<std::uint64_t> modulus{1, 1};

    /// Validating constructor: p prime, modulus monic of degree t and irreducible.
    static FieldSpec make(std::uint64_t p, unsigned t, std::vector<std::uint64_t> modulus);
    /// Conway polynomial when bundled (p^t <= 2^16), otherwise the
    /// lexicographically smallest monic irreducible.
    static FieldSpec standard(std::uint64_t p, unsigned t);
    /// Splits q = p^t and returns standard(p, t). Throws if q is not a prime power.
    static FieldSpec for_order(std::uint64_t q);

    std::uint64_t order() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

void to_json(nlohmann::json& j, const FieldSpec& s);
void from_json(const nlohmann::json& j, FieldSpec& s);

/// Table-driven arithmetic in F_q on integer indices sum c_i p^i.
/// Immutable after construction; share it through `std::shared_ptr<const Field>`.
class Field {
public:
    using Elem = std::uint32_t;

    static std::shared_ptr<const Field> create(const FieldSpec& spec);

    const FieldSpec& spec() const noexcept { return spec_; }
    std::uint64_t p() const noexcept { return spec_.p; }
    unsigned t() const noexcept { return spec_.t; }
    Elem q() const noexcept { return q_; }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }
    /// Fixed primitive element (x itself when the modulus is primitive).
    Elem generator() const noexcept { return exp_[1 % (q_ - 1)]; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t k) const noexcept;

    /// Discrete log to base generator(); a must be nonzero.
    std::uint32_t log(Elem a) const noexcept { return log_[a]; }
    /// generator()^k, k taken mod q-1.
    Elem exp(std::uint64_t k) const noexcept { return exp_[k % (q_ - 1)]; }

    /// Polynomial-basis coordinates (t residues mod p) of an element.
    std::vector<std::uint64_t> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<std::uint64_t>& c) const;

private:
    explicit Field(const FieldSpec& spec);

    FieldSpec spec_;
    Elem q_;
    std::vector<std::uint32_t> pow_p_;  // p^i
    std::vector<Elem> exp_;             // size q-1
    std::vector<std::uint32_t> log_;    // size q, log_[0] unused
};

/// Element of F_q bound to its field. Binary operations require a shared spec.
class FieldElement {
public:
    FieldElement(std::shared_ptr<const Field> field, Field::Elem index);

    const std::shared_ptr<const Field>& field() const noexcept { return field_; }
    Field::Elem index() const noexcept { return index_; }
    std::vector<std::uint64_t> coeffs() const { return field_->coeffs(index_); }
    bool is_zero() const noexcept { return index_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::uint64_t k) const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.index_ == b.index_ && a.field_->spec() == b.field_->spec();
    }

private:
    void check_same(const FieldElement& o) const;

    std::shared_ptr<const Field> field_;
    Field::Elem index_;
};

/// Truncated unramified ring GR(p^N, t) = (Z/p^N)[x]/(modulus).
struct RingSpec {
    std::uint64_t p = 2;
    unsigned t = 1;
    unsigned N = 1;
    std::vector<std::uint64_t> modulus{1, 1};

    /// Lifts the field modulus coefficientwise into [0, p) ⊂ Z/p^N.
    static RingSpec lift(const FieldSpec& field, unsigned N);
    FieldSpec residue_spec() const;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

void to_json(nlohmann::json& j, const RingSpec& s);
void from_json(const nlohmann::json& j, RingSpec& s);

/// Precision used for workflows parameterized by (r, t).
constexpr unsigned default_precision(unsigned r, unsigned t) {
    return (r > 0 ? (r - 1) * t : 0) + 4;
}

/// Largest N with p^N < 2^62 (storage limit for ring coefficients).
unsigned max_precision(std::uint64_t p);

inline constexpr unsigned kMaxDegree = 16;

class RingElement;

/// Arithmetic in the truncated ring. Immutable, shared by its elements.
class Ring {
public:
    using Coeffs = std::array<std::uint64_t, kMaxDegree>;

    static std::shared_ptr<const Ring> create(const RingSpec& spec);

    const RingSpec& spec() const noexcept { return spec_; }
    std::uint64_t p() const noexcept { return spec_.p; }
    unsigned t() const noexcept { return spec_.t; }
    unsigned precision() const noexcept { return spec_.N; }
    std::uint64_t modulus_pN() const noexcept { return pN_; }
    const std::shared_ptr<const Field>& residue_field() const noexcept { return field_; }

    void add(Coeffs& out, const Coeffs& a, const Coeffs& b) const noexcept;
    void sub(Coeffs& out, const Coeffs& a, const Coeffs& b) const noexcept;
    void mul(Coeffs& out, const Coeffs& a, const Coeffs& b) const noexcept;
    /// out = a + k * b for an integer scalar k in [0, p^N).
    void add_scaled(Coeffs& out, const Coeffs& a, std::uint64_t k, const Coeffs& b) const noexcept;

    std::uint64_t reduce_scalar(std::int64_t k) const noexcept;
    std::uint64_t mul_scalar(std::uint64_t a, std::uint64_t b) const noexcept {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % pN_);
    }

private:
    explicit Ring(const RingSpec& spec);

    RingSpec spec_;
    std::uint64_t pN_;
    std::shared_ptr<const Field> field_;
};

/// Element of the truncated ring, coefficients in [0, p^N).
class RingElement {
public:
    RingElement(std::shared_ptr<const Ring> ring, const Ring::Coeffs& c);

    static RingElement zero(std::shared_ptr<const Ring> ring);
    static RingElement from_int(std::shared_ptr<const Ring> ring, std::int64_t k);
    /// Coefficientwise lift of a residue-field element (not the Teichmüller lift).
    static RingElement naive_lift(std::shared_ptr<const Ring> ring, const FieldElement& a);
    static RingElement from_coeffs(std::shared_ptr<const Ring> ring,
                                   const std::vector<std::uint64_t>& c);

    const std::shared_ptr<const Ring>& ring() const noexcept { return ring_; }
    const Ring::Coeffs& raw() const noexcept { return c_; }
    std::vector<std::uint64_t> coeffs() const;
    bool is_zero() const noexcept;
    bool is_unit() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    /// Throws NotAUnit unless the reduction mod p is nonzero.
    RingElement inv() const;
    RingElement pow(std::uint64_t k) const;
    /// Reduction mod p into the residue field.
    FieldElement reduce() const;

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.c_ == b.c_ && a.ring_->spec() == b.ring_->spec();
    }

private:
    void check_same(const RingElement& o) const;

    std::shared_ptr<const Ring> ring_;
    Ring::Coeffs c_{};
};

/// Teichmüller representative: the unique root of X^q = X congruent to a mod p.
RingElement teichmuller_lift(const FieldElement& a, std::shared_ptr<const Ring> ring);

/// Largest k < N with p^k dividing every coefficient; nullopt when x ≡ 0 mod p^N.
std::optional<unsigned> valuation(const RingElement& x);

}  // namespace pgsnf
