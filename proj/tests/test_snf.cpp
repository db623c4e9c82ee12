#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "pgsnf/incidence.hpp"
#include "pgsnf/snf.hpp"

using namespace pgsnf;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) {
    std::vector<BigInt> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

Multiplicities mult(std::initializer_list<std::pair<const unsigned, long>> v) {
    Multiplicities m;
    for (const auto& [a, c] : v) m[a] = c;
    return m;
}

Multiplicities from_oracle(const std::map<unsigned, std::size_t>& m) {
    Multiplicities out;
    for (const auto& [a, c] : m) out[a] = static_cast<unsigned long>(c);
    return out;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

const IntMatrix& fano() {
    static const IntMatrix m = projective_incidence_matrix(2, 2, 2).dense();
    return m;
}

}  // namespace

TEST_CASE("small examples") {
    CHECK(smith_normal_form(IntMatrix::identity(3)).invariants == big({1, 1, 1}));
    CHECK(smith_normal_form(IntMatrix(0, 0)).invariants.empty());
    CHECK(smith_normal_form(IntMatrix(3, 2)).invariants.empty());

    CHECK(oracle::determinantal_snf(oracle::to_z(fano())) == big({1, 1, 1, 1, 2, 2, 6}));
    CHECK(smith_normal_form(fano()).invariants == big({1, 1, 1, 1, 2, 2, 6}));

    const auto ag22 = affine_incidence_matrix(2, 2, 1).dense();
    CHECK(oracle::determinantal_snf(oracle::to_z(ag22)) == big({1, 1, 1, 2}));
    CHECK(smith_normal_form(ag22).invariants == big({1, 1, 1, 2}));
}

TEST_CASE("p-parts and ranks") {
    CHECK(p_elementary_divisors(fano(), 2) == mult({{0, 4}, {1, 3}}));
    CHECK(p_elementary_divisors(fano(), 3) == mult({{0, 6}, {1, 1}}));
    const auto pg24 = projective_incidence_matrix(2, 4, 2).dense();
    CHECK(p_elementary_divisors(pg24, 2) == mult({{0, 10}, {1, 2}, {2, 9}}));

    CHECK(rank_mod_p(fano(), 2) == 4);
    CHECK(rank_mod_p(fano(), 5) == 7);
    CHECK(rank_mod_p(affine_incidence_matrix(2, 3, 1).dense(), 3) == 6);

    const auto r = smith_normal_form(fano());
    CHECK(r.p_spectrum(2) == mult({{0, 4}, {1, 3}}));
    CHECK(r.last_nonp(2) == 3);
}

TEST_CASE("elimination agrees with the textbook oracle on random matrices") {
    std::mt19937 rng(1);
    for (int it = 0; it < 60; ++it) {
        const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        const auto m = random_matrix(rng, r, c, -6, 6);
        const auto expect = oracle::textbook_snf(oracle::to_z(m));
        const auto got = smith_normal_form(m);
        REQUIRE(got.invariants == expect);
        for (unsigned long p : {2ul, 3ul, 5ul}) {
            CHECK(p_elementary_divisors(m, p) == from_oracle(oracle::p_parts(expect, p)));
            CHECK(rank_mod_p(m, p) == oracle::rank_mod(m, static_cast<std::int64_t>(p)));
        }
    }
    // tiny cases against determinantal divisors too
    for (int it = 0; it < 20; ++it) {
        const auto m = random_matrix(rng, 4, 5, -3, 3);
        CHECK(smith_normal_form(m).invariants == oracle::determinantal_snf(oracle::to_z(m)));
    }
}

TEST_CASE("large entries fall back to big integers") {
    IntMatrix m = IntMatrix::from_rows({{INT64_C(4611686018427387904), 3}, {5, INT64_C(-4611686018427387903)}});
    CHECK(smith_normal_form(m).invariants == oracle::textbook_snf(oracle::to_z(m)));
}

TEST_CASE("incidence matrices against the textbook oracle") {
    struct Cell {
        Space s;
        unsigned n;
        std::uint64_t q;
        unsigned r;
    };
    for (const auto& c : {Cell{Space::projective, 3, 2, 2}, Cell{Space::projective, 3, 3, 2}, Cell{Space::projective, 2, 5, 2},
                          Cell{Space::affine, 3, 2, 1}, Cell{Space::affine, 3, 3, 2}, Cell{Space::affine, 2, 4, 1}}) {
        const auto M = (c.s == Space::projective ? projective_incidence_matrix(c.n, c.q, c.r)
                                                 : affine_incidence_matrix(c.n, c.q, c.r))
                           .dense();
        const auto expect = oracle::textbook_snf(oracle::to_z(M));
        const std::uint64_t p = split_prime_power(c.q)->first;
        CHECK(smith_normal_form(M).invariants == expect);
        CHECK(smith_normal_form(M, {.method = SnfMethod::certified}).invariants == expect);
        CHECK(p_elementary_divisors(M, p) == from_oracle(oracle::p_parts(expect, p)));
        CHECK(rank_mod_p(M, p) == oracle::rank_mod(M, static_cast<std::int64_t>(p)));
    }
}

TEST_CASE("certified route") {
    const auto M = projective_incidence_matrix(3, 4, 2).dense();  // 357 x 85
    const auto a = smith_normal_form(M, {.method = SnfMethod::elimination});
    const auto b = smith_normal_form(M, {.method = SnfMethod::certified});
    CHECK(a.method == SnfMethod::elimination);
    CHECK(b.method == SnfMethod::certified);
    CHECK(a.invariants == b.invariants);
    CHECK(smith_normal_form(M).invariants == a.invariants);

    // no a*I + b*J Gram structure: certified cannot apply
    std::mt19937 rng(5);
    CHECK_THROWS_AS(smith_normal_form(random_matrix(rng, 4, 4, 0, 1), {.method = SnfMethod::certified}), InvalidArgument);
}

TEST_CASE("permutation invariance") {
    std::mt19937 rng(9);
    const auto M = projective_incidence_matrix(2, 4, 2).dense();
    const auto base = smith_normal_form(M).invariants;
    for (int it = 0; it < 10; ++it) {
        std::vector<std::size_t> rp(M.rows()), cp(M.cols());
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        const auto P = M.permuted(rp, cp);
        CHECK(smith_normal_form(P).invariants == base);
        CHECK(smith_normal_form(P.transposed()).invariants == base);
    }
}

TEST_CASE("divisibility chain from a diagonal") {
    CHECK(diagonal_to_chain(big({6, 4})) == big({2, 12}));
    CHECK(diagonal_to_chain(big({0, 3, 0, 1})) == big({1, 3}));
    CHECK(diagonal_to_chain(big({-2, 2})) == big({2, 2}));
}

TEST_CASE("Matrix Market round trip") {
    const auto s = projective_incidence_matrix(2, 3, 2).to_sparse();
    std::stringstream ss;
    write_matrix_market(ss, s, "PG(2,3)");
    const auto back = read_matrix_market(ss);
    CHECK(back.rows == s.rows);
    CHECK(back.cols == s.cols);
    CHECK(back.entries == s.entries);

    std::stringstream bad("%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 1\n");
    CHECK_THROWS_AS(read_matrix_market(bad), ParseError);
}

TEST_CASE("SNF JSON") {
    const auto j = snf_json(smith_normal_form(fano()), 2);
    CHECK(j.at("invariants").size() == 7);
    CHECK(j.at("last_nonp") == 3);
    CHECK(multiplicities_from_json(j.at("p_spectrum")) == mult({{0, 4}, {1, 3}}));
}
