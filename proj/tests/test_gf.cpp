#include <doctest.h>

#include <random>

#include <gmpxx.h>

#include "pgsnf/charsum.hpp"
#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "pgsnf/gf.hpp"

using namespace pgsnf;

namespace {

std::shared_ptr<const Ring> ring_for(std::uint64_t q, unsigned N) {
    return Ring::create(RingSpec::lift(FieldSpec::for_order(q), N));
}

// Schoolbook product of two F_p[x] residues mod f, on coefficient vectors.
std::vector<std::uint64_t> poly_mulmod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                       const std::vector<std::uint64_t>& f, std::uint64_t p) {
    const std::size_t t = f.size() - 1;
    std::vector<std::uint64_t> c(2 * t, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    for (std::size_t k = c.size(); k-- > t;) {
        const std::uint64_t lead = c[k];
        for (std::size_t i = 0; i <= t; ++i) c[k - t + i] = (c[k - t + i] + (p - lead) * f[i] % p) % p;
    }
    c.resize(t);
    return c;
}

}  // namespace

TEST_CASE("prime field and small extensions") {
    auto F2 = Field::create(FieldSpec::for_order(2));
    CHECK(F2->add(1, 1) == 0);

    auto F4 = Field::create(FieldSpec::make(2, 2, {1, 1, 1}));
    // x has index 2, x + 1 has index 3
    CHECK(F4->mul(2, 2) == 3);

    auto F9 = Field::create(FieldSpec::for_order(9));
    for (Field::Elem a = 1; a < 9; ++a) CHECK(F9->pow(a, 8) == 1);
}

TEST_CASE("field multiplication matches polynomial arithmetic") {
    for (std::uint64_t q : {4u, 8u, 9u, 16u, 25u, 27u}) {
        auto F = Field::create(FieldSpec::for_order(q));
        const auto& f = F->spec().modulus;
        for (Field::Elem a = 0; a < q; ++a)
            for (Field::Elem b = 0; b < q; ++b)
                REQUIRE(F->coeffs(F->mul(a, b)) == poly_mulmod(F->coeffs(a), F->coeffs(b), f, F->p()));
    }
}

TEST_CASE("field errors") {
    auto F4 = Field::create(FieldSpec::for_order(4));
    auto F8 = Field::create(FieldSpec::for_order(8));
    CHECK_THROWS_AS(FieldElement(F4, 0).inv(), DivisionByZero);
    CHECK_THROWS_AS(FieldElement(F4, 1) + FieldElement(F8, 1), SpecMismatch);
    CHECK_THROWS_AS(FieldSpec::make(2, 2, {1, 0, 1}), InvalidArgument);  // x^2 + 1 = (x + 1)^2
    CHECK_THROWS_AS(FieldSpec::for_order(6), InvalidArgument);
}

TEST_CASE("inverse and generator") {
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
        auto F = Field::create(FieldSpec::for_order(q));
        for (Field::Elem a = 1; a < q; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
        // generator has order exactly q - 1
        Field::Elem g = F->generator(), x = g;
        std::uint64_t ord = 1;
        while (x != 1) x = F->mul(x, g), ++ord;
        CHECK(ord == q - 1);
    }
}

TEST_CASE("bundled moduli are irreducible and primitive") {
    for (std::uint64_t q : {4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 81u, 125u, 128u, 256u}) {
        const auto s = FieldSpec::for_order(q);
        CHECK(is_irreducible(s.modulus, s.p));
        CHECK(is_primitive(s.modulus, s.p));
    }
}

TEST_CASE("ring arithmetic") {
    auto R = ring_for(2, 4);
    CHECK(RingElement::from_int(R, 3).inv() == RingElement::from_int(R, 11));
    auto a = RingElement::from_int(R, 7);
    CHECK(a + RingElement::zero(R) == a);
    CHECK_THROWS_AS(RingElement::from_int(R, 6).inv(), NotAUnit);

    auto R9 = ring_for(9, 3);
    auto xi = teichmuller_lift(FieldElement(R9->residue_field(), R9->residue_field()->generator()), R9);
    CHECK(xi * xi.inv() == RingElement::from_int(R9, 1));
}

TEST_CASE("Teichmüller lifts") {
    auto R = ring_for(3, 3);
    const auto& F = R->residue_field();
    CHECK(teichmuller_lift(FieldElement(F, 0), R).is_zero());
    CHECK(teichmuller_lift(FieldElement(F, 1), R) == RingElement::from_int(R, 1));
    CHECK(teichmuller_lift(FieldElement(F, 2), R) == RingElement::from_int(R, 26));

    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        auto Rq = ring_for(q, 5);
        auto Fq = Rq->residue_field();
        std::vector<RingElement> lift;
        for (Field::Elem a = 0; a < q; ++a) lift.push_back(teichmuller_lift(FieldElement(Fq, a), Rq));
        for (Field::Elem a = 0; a < q; ++a) {
            CHECK(lift[a].pow(q) == lift[a]);
            CHECK(lift[a].reduce() == FieldElement(Fq, a));
            // Frobenius consistency
            CHECK(lift[a].pow(Fq->p()) == lift[Fq->pow(a, Fq->p())]);
            if (q <= 9)
                for (Field::Elem b = 0; b < q; ++b) CHECK(lift[Fq->mul(a, b)] == lift[a] * lift[b]);
        }
    }
}

TEST_CASE("valuation") {
    auto R = ring_for(2, 4);
    CHECK(valuation(RingElement::from_int(R, 12)) == 2u);
    CHECK_FALSE(valuation(RingElement::zero(R)).has_value());

    // additivity against an mpz computation, t = 1
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {2u, 3u, 5u}) {
        const unsigned N = 12;
        auto Rp = ring_for(p, N);
        mpz_class pN;
        mpz_ui_pow_ui(pN.get_mpz_t(), p, N);
        for (int it = 0; it < 300; ++it) {
            const auto x = static_cast<std::int64_t>(rng() % pN.get_ui());
            const auto y = static_cast<std::int64_t>(rng() % pN.get_ui());
            if (x == 0 || y == 0) continue;
            mpz_class prod = mpz_class(static_cast<unsigned long>(x)) * static_cast<unsigned long>(y);
            const unsigned v = static_cast<unsigned>(mpz_remove(prod.get_mpz_t(), prod.get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t()));
            const auto vx = valuation(RingElement::from_int(Rp, x));
            const auto vy = valuation(RingElement::from_int(Rp, y));
            const auto vxy = valuation(RingElement::from_int(Rp, x) * RingElement::from_int(Rp, y));
            if (*vx + *vy < N) {
                CHECK(vxy == *vx + *vy);
                CHECK(v == *vx + *vy);
            }
        }
    }
}

TEST_CASE("reduction mod p is a ring homomorphism") {
    std::mt19937_64 rng(11);
    for (std::uint64_t q : {4u, 9u, 8u, 25u}) {
        auto R = ring_for(q, 6);
        const std::uint64_t pN = R->modulus_pN();
        for (int it = 0; it < 200; ++it) {
            std::vector<std::uint64_t> a(R->t()), b(R->t());
            for (auto& c : a) c = rng() % pN;
            for (auto& c : b) c = rng() % pN;
            auto x = RingElement::from_coeffs(R, a), y = RingElement::from_coeffs(R, b);
            CHECK((x * y).reduce() == x.reduce() * y.reduce());
            CHECK((x + y).reduce() == x.reduce() + y.reduce());
        }
    }
}

TEST_CASE("valuations do not depend on the chosen modulus") {
    // Two different irreducible moduli per field; per-monomial minimal
    // valuations must coincide.
    struct Case {
        std::uint64_t p;
        unsigned t;
        std::vector<std::uint64_t> other;
    };
    for (const auto& c : {Case{2, 3, {1, 0, 1, 1}}, Case{3, 2, {1, 0, 1}}}) {
        const auto standard = FieldSpec::standard(c.p, c.t);
        const auto other = FieldSpec::make(c.p, c.t, c.other);
        REQUIRE_FALSE(standard == other);
        const auto a = wan_audit(2, standard, 2);
        const auto b = wan_audit(2, other, 2);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].b == b.rows[i].b);
            CHECK(a.rows[i].min_valuation == b.rows[i].min_valuation);
        }
    }
}
