#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "pgsnf/charsum.hpp"
#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "pgsnf/invariants.hpp"

using namespace pgsnf;

namespace {

std::shared_ptr<const Field> field(std::uint64_t q) { return Field::create(FieldSpec::for_order(q)); }

ExponentTuple tup(std::vector<std::uint32_t> b) { return ExponentTuple{std::move(b)}; }

}  // namespace

TEST_CASE("monomial basis") {
    const auto m = monomial_basis(1, 2);
    REQUIRE(m.size() == 3);
    CHECK(m[0] == tup({0, 0}));
    CHECK(m[1] == tup({0, 1}));
    CHECK(m[2] == tup({1, 0}));
    CHECK(monomial_basis(2, 2).size() == 7);
    CHECK(monomial_basis(2, 4).size() == 21);
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 8u, 9u})
        for (unsigned n = 1; n <= 3; ++n) {
            const auto basis = monomial_basis(n, q);
            CHECK(BigInt(static_cast<unsigned long>(basis.size())) == (big_pow(q, n + 1) - 1) / (q - 1));
            CHECK(std::is_sorted(basis.begin(), basis.end()));
        }
}

TEST_CASE("types") {
    CHECK(type_of_monomial(tup({1, 2, 3}), 2, 2) == std::vector<unsigned>{2, 2});
    CHECK(type_of_monomial(tup({1, 1, 0}), 2, 1) == std::vector<unsigned>{2});
    CHECK_THROWS_AS(type_of_monomial(tup({0, 0, 0}), 2, 1), NoType);

    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const auto [p, t] = *split_prime_power(q);
        for (unsigned n = 1; n <= 3; ++n)
            for (const auto& b : monomial_basis(n, q)) {
                if (b.is_constant()) continue;
                const auto s = type_of_monomial(b, p, t);
                REQUIRE(in_H(s, n, p));
                // lambda_j = p s_{j+1} - s_j
                const auto lam = digit_column_sums(b, p, t);
                for (unsigned j = 0; j < t; ++j)
                    CHECK(static_cast<std::int64_t>(lam[j]) ==
                          static_cast<std::int64_t>(p * s[(j + 1) % t]) - static_cast<std::int64_t>(s[j]));
                if (t == 1) {
                    std::uint64_t deg = 0;
                    for (auto bi : b.b) deg += bi;
                    CHECK(s[0] == deg / (q - 1));
                }
            }
    }
}

TEST_CASE("digit sums") {
    CHECK(digit_sum(0, 2) == 0);
    CHECK(digit_sum(5, 2) == 2);
    CHECK(sigma_residue(-1, 2, 8) == 2);  // 6 = 110
    CHECK(sigma_residue(7, 2, 8) == 0);
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const auto [p, t] = *split_prime_power(q);
        for (std::uint64_t k = 0; k < q * q; ++k) {
            std::uint64_t lhs = 0, pl = 1;
            for (unsigned l = 0; l < t; ++l, pl *= p) lhs += digit_sum(pl * k, q);
            CHECK(lhs * (p - 1) == (q - 1) * digit_sum(k, p));
        }
    }
}

TEST_CASE("Jacobi sum special values") {
    for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
        auto F = field(q);
        CharacterTable T(F, 6);
        const auto one = RingElement::from_int(T.ring(), 1);
        for (std::uint64_t b0 = 1; b0 + 1 < q; ++b0) {
            CHECK(jacobi_sum(b0, 0, T).is_zero());
            CHECK(jacobi_sum(b0, q - 1, T) == -one);
        }
        if (q == 2) {
            CHECK(jacobi_sum(0, 1, T) == one);  // T^{-1} = T^0 here
            continue;
        }
        // J(T^{-1}, T) = -T(-1): 1 in odd characteristic, -1 in characteristic 2
        const auto j = jacobi_sum(q - 2, 1, T);
        CHECK(j == -T.teich(F->neg(1)));
        CHECK(j == (q % 2 ? one : -one));
    }
}

TEST_CASE("Stickelberger") {
    CHECK(stickelberger_valuation(2, 2, 4) == 1);
    CHECK(stickelberger_valuation(1, 1, 8) == 1);
    CHECK_THROWS_AS(stickelberger_valuation(1, 2, 4), DegenerateCharacters);
    CHECK_THROWS_AS(stickelberger_valuation(0, 1, 4), DegenerateCharacters);

    {
        CharacterTable T(field(4), 3);
        CHECK(valuation(jacobi_sum(2, 2, T)) == 1u);
    }
    {
        CharacterTable T(field(8), 4);
        CHECK(valuation(jacobi_sum(6, 6, T)) == 1u);
    }

    for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        const unsigned t = split_prime_power(q)->second;
        CharacterTable T(field(q), t + 2);
        for (std::uint64_t b0 = 1; b0 + 1 < q; ++b0)
            for (std::uint64_t b1 = 1; b1 + 1 < q; ++b1) {
                if ((b0 + b1) % (q - 1) == 0) continue;
                const auto v = valuation(jacobi_sum(q - 1 - b0, q - 1 - b1, T));
                REQUIRE(v.has_value());
                CHECK(*v == stickelberger_valuation(static_cast<std::int64_t>(b0), static_cast<std::int64_t>(b1), q));
            }
    }
}

TEST_CASE("Wan bound equals alpha of the type") {
    CHECK(wan_lower_bound(tup({1, 2, 3}), 2, 2, 2) == 0);
    CHECK(wan_lower_bound(tup({1, 0, 0}), 2, 2, 1) == 1);
    for (std::uint64_t q : {2u, 3u, 4u})
        for (unsigned n = 1; n <= 2; ++n) {
            const auto [p, t] = *split_prime_power(q);
            for (const auto& b : monomial_basis(n, q)) {
                if (b.is_constant()) continue;
                for (unsigned r = 1; r <= n + 1; ++r)
                    CHECK(wan_lower_bound(b, r, p, t) == alpha_of_type(type_of_monomial(b, p, t), r));
            }
        }
}

TEST_CASE("coordinate sums on the Fano plane") {
    auto F = field(2);
    CharacterTable T(F, 4);
    const auto Y2 = canonical_subspace(*F, 3, {{1, 0, 0}, {0, 1, 0}});  // x_2 = 0
    const auto Y0 = canonical_subspace(*F, 3, {{0, 1, 0}, {0, 0, 1}});  // x_0 = 0
    CHECK(eta_coordinate(tup({1, 1, 0}), Y2, T) == RingElement::from_int(T.ring(), 1));
    CHECK(eta_coordinate(tup({1, 0, 0}), Y2, T) == RingElement::from_int(T.ring(), 2));
    CHECK(eta_valuation(tup({1, 0, 0}), Y2, T) == 1);
    CHECK(eta_coordinate(tup({1, 0, 0}), Y0, T).is_zero());
    CHECK_THROWS_AS(eta_valuation(tup({1, 0, 0}), Y0, T), AtLeastPrecision);
    CHECK_THROWS_AS(eta_coordinate(tup({1, 0}), Y0, T), SpecMismatch);

    CHECK(min_valuation_of_monomial(tup({1, 1, 0}), 2, 2, 2) == 0);
    CHECK(min_valuation_of_monomial(tup({1, 0, 0}), 2, 2, 2) == 1);
    CHECK(min_valuation_of_monomial(tup({1, 2, 3}), 2, 4, 2) == 0);
    CHECK_THROWS_AS(min_valuation_of_monomial(tup({0, 0, 0}), 2, 2, 2), NoType);
}

TEST_CASE("fast coordinate sum equals the direct one") {
    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
        auto F = field(q);
        CharacterTable T(F, 5);
        for (unsigned r = 1; r <= 2; ++r)
            for (const auto& Y : enumerate_subspaces(*F, 2, r)) {
                const auto logs = point_logs(*F, Y);
                for (const auto& b : monomial_basis(2, q)) REQUIRE(eta_coordinate(b, Y, T) == eta_coordinate_fast(b, logs, T));
            }
    }
}

TEST_CASE("summands are scale invariant") {
    std::mt19937 rng(2);
    for (std::uint64_t q : {3u, 4u, 5u, 8u, 9u}) {
        auto F = field(q);
        CharacterTable T(F, 5);
        const auto basis = monomial_basis(3, q);
        for (int it = 0; it < 200; ++it) {
            const auto& b = basis[rng() % basis.size()];
            const Field::Elem c = 1 + rng() % (q - 1);
            RingElement u = RingElement::from_int(T.ring(), 1), v = u;
            for (auto bi : b.b) {
                const Field::Elem x = rng() % q;
                u = u * T.character(bi, x);
                v = v * T.character(bi, F->mul(c, x));
            }
            CHECK(u == v);
        }
    }
}

TEST_CASE("minimal valuations are Frobenius symmetric") {
    for (std::uint64_t q : {4u, 8u, 9u}) {
        const auto [p, t] = *split_prime_power(q);
        const auto audit = wan_audit(2, q, 2);
        std::map<ExponentTuple, unsigned> mv;
        for (const auto& w : audit.rows) mv[w.b] = w.min_valuation;
        for (const auto& [b, v] : mv) CHECK(mv.at(frobenius_twist(b, p, t)) == v);
    }
}

TEST_CASE("Wan audit on small spaces") {
    for (std::uint64_t q : {2u, 3u, 4u})
        for (unsigned n = 1; n <= 2; ++n)
            for (unsigned r = 1; r <= n; ++r) {
                const auto a = wan_audit(n, q, r);
                CHECK(a.ok());
                CHECK(a.rows.size() + 1 == monomial_basis(n, q).size());
            }
    CHECK_THROWS_AS(wan_audit(2, 4, 3), InvalidDimension);

    std::ostringstream os;
    write_wan_csv(os, wan_audit(1, 2, 1));
    CHECK(os.str().rfind("b,type,alpha,min_valuation,wan_bound\n", 0) == 0);
}
