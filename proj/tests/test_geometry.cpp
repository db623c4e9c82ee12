#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pgsnf/errors.hpp"
#include "pgsnf/geometry.hpp"
#include "pgsnf/incidence.hpp"

using namespace pgsnf;

namespace {

std::shared_ptr<const Field> field(std::uint64_t q) { return Field::create(FieldSpec::for_order(q)); }

std::vector<oracle::V> rows_of(const Subspace& Y) {
    std::vector<oracle::V> out;
    for (unsigned i = 0; i < Y.dim; ++i) out.push_back(Y.row(i));
    return out;
}

}  // namespace

TEST_CASE("subspace counts") {
    auto F2 = field(2);
    CHECK(enumerate_subspaces(*F2, 2, 1).size() == 7);
    CHECK(enumerate_subspaces(*F2, 2, 2).size() == 7);
    CHECK(enumerate_subspaces(*field(3), 3, 2).size() == 130);
    CHECK_THROWS_AS(enumerate_subspaces(*F2, 2, 0), InvalidDimension);
    CHECK_THROWS_AS(enumerate_subspaces(*F2, 2, 4), InvalidDimension);

    CHECK(gaussian_binomial(3, 1, 2) == 7);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(5, 0, 3) == 1);

    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
        auto F = field(q);
        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned r = 1; r <= n + 1; ++r) {
                if (oracle::gaussian_binomial(n + 1, r, q) > 25000) continue;
                const auto ys = enumerate_subspaces(*F, n, r);
                CHECK(ys.size() == oracle::gaussian_binomial(n + 1, r, q));
                CHECK(gaussian_binomial(n + 1, r, q) == oracle::gaussian_binomial(n + 1, r, q));
                CHECK(std::is_sorted(ys.begin(), ys.end()));
            }
    }
}

TEST_CASE("contains") {
    auto F = field(2);
    const auto Y = canonical_subspace(*F, 3, {{1, 0, 0}, {0, 1, 0}});
    CHECK(contains(*F, Y, normalize_point(*F, {1, 1, 0})));
    CHECK_FALSE(contains(*F, Y, normalize_point(*F, {0, 0, 1})));
    CHECK_THROWS_AS(contains(*F, Y, normalize_point(*F, {0, 0, 0, 1})), SpecMismatch);
}

TEST_CASE("points of a subspace agree with the brute-force span") {
    for (std::uint64_t q : {2u, 3u, 4u}) {
        auto F = field(q);
        for (unsigned n = 1; n <= 3; ++n) {
            const auto pts = enumerate_points(*F, n);
            for (unsigned r = 1; r <= n + 1; ++r)
                for (const auto& Y : enumerate_subspaces(*F, n, r)) {
                    const auto S = oracle::span(*F, n + 1, rows_of(Y));
                    std::size_t hits = 0;
                    for (const auto& P : pts) {
                        const bool in = S.count(P.coords) > 0;
                        REQUIRE(contains(*F, Y, P) == in);
                        hits += in;
                    }
                    CHECK(hits * (q - 1) == S.size() - 1);
                    CHECK(S.size() == checked_pow(q, r));
                    CHECK(points_of(*F, Y).size() == hits);
                    CHECK(nonzero_vectors(*F, Y).size() == S.size() - 1);
                }
        }
    }
}

TEST_CASE("canonical form is basis independent") {
    std::mt19937 rng(3);
    for (std::uint64_t q : {3u, 4u, 5u}) {
        auto F = field(q);
        const auto ys = enumerate_subspaces(*F, 3, 2);
        for (int it = 0; it < 100; ++it) {
            const auto& Y = ys[rng() % ys.size()];
            // random invertible 2x2 change of basis
            Field::Elem a, b, c, d;
            do {
                a = rng() % q, b = rng() % q, c = rng() % q, d = rng() % q;
            } while (F->sub(F->mul(a, d), F->mul(b, c)) == 0);
            const auto r0 = Y.row(0), r1 = Y.row(1);
            Vec u(4), v(4);
            for (int i = 0; i < 4; ++i) {
                u[i] = F->add(F->mul(a, r0[i]), F->mul(b, r1[i]));
                v[i] = F->add(F->mul(c, r0[i]), F->mul(d, r1[i]));
            }
            CHECK(canonical_subspace(*F, 4, {u, v}) == Y);
            CHECK(canonical_subspace(*F, 4, {v, u, u}) == Y);
        }
    }
}

TEST_CASE("point normalization") {
    auto F = field(5);
    const auto P = normalize_point(*F, {0, 3, 2});
    CHECK(P.coords[0] == 0);
    CHECK(P.coords[1] == 1);
    CHECK(F->mul(3, P.coords[2]) == 2);
    CHECK_THROWS_AS(normalize_point(*F, {0, 0, 0}), InvalidArgument);
}

TEST_CASE("subspace text round trip") {
    auto F = field(9);
    for (const auto& Y : enumerate_subspaces(*F, 2, 2)) CHECK(parse_subspace(*F, format_subspace(Y)) == Y);
}

TEST_CASE("affine flats") {
    CHECK(enumerate_affine_flats(*field(2), 2, 1).size() == 6);
    CHECK(enumerate_affine_flats(*field(3), 2, 1).size() == 12);
    CHECK(enumerate_affine_flats(*field(2), 2, 0).size() == 4);
    CHECK_THROWS_AS(enumerate_affine_flats(*field(2), 2, 3), InvalidDimension);
    for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
        auto F = field(q);
        for (unsigned n = 1; n <= 3; ++n) {
            CHECK(enumerate_affine_points(*F, n).size() == checked_pow(q, n));
            for (unsigned r = 0; r <= n; ++r) {
                // carriers plus subspaces inside H_0 give all (r+1)-subspaces
                const auto all = enumerate_subspaces(*F, n, r + 1);
                const auto flats = enumerate_affine_flats(*F, n, r);
                const auto inside = std::count_if(all.begin(), all.end(), [](const Subspace& Y) { return inside_h0(Y); });
                CHECK(flats.size() + static_cast<std::size_t>(inside) == all.size());
                CHECK(BigInt(static_cast<unsigned long>(flats.size())) ==
                      BigInt(static_cast<unsigned long>(checked_pow(q, n - r))) * oracle::gaussian_binomial(n, r, q));
                for (const auto& A : flats) CHECK(A.dim() == r);
            }
        }
    }
}

TEST_CASE("projective incidence matrices") {
    struct Case {
        unsigned n;
        std::uint64_t q;
        unsigned r;
        std::size_t rows, cols, row_sum, col_sum;
    };
    for (const auto& c : {Case{2, 2, 2, 7, 7, 3, 3}, Case{2, 4, 2, 21, 21, 5, 5}, Case{3, 2, 2, 35, 15, 3, 7}}) {
        const auto M = projective_incidence_matrix(c.n, c.q, c.r);
        CHECK(M.rows == c.rows);
        CHECK(M.cols == c.cols);
        for (auto s : M.row_sums()) CHECK(s == c.row_sum);
        for (auto s : M.col_sums()) CHECK(s == c.col_sum);
        CHECK(M.meta.degenerate == false);
        CHECK(incidence_row_count(c.n, c.q, c.r, Space::projective) == static_cast<unsigned long>(c.rows));
    }
    CHECK(projective_incidence_matrix(2, 3, 1).meta.degenerate);
    CHECK(projective_incidence_matrix(2, 3, 3).meta.degenerate);
    CHECK(projective_incidence_matrix(2, 3, 1).dense() == IntMatrix::identity(13));
    CHECK_THROWS_AS(projective_incidence_matrix(2, 3, 4), InvalidDimension);
}

TEST_CASE("incidence entries agree with brute-force membership") {
    for (std::uint64_t q : {2u, 3u}) {
        auto F = field(q);
        const auto ys = enumerate_subspaces(*F, 2, 2);
        const auto pts = enumerate_points(*F, 2);
        const auto M = projective_incidence_matrix(*F, 2, 2).dense();
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const auto S = oracle::span(*F, 3, rows_of(ys[i]));
            for (std::size_t j = 0; j < pts.size(); ++j) CHECK((M(i, j) == 1) == (S.count(pts[j].coords) > 0));
        }
    }
}

TEST_CASE("affine incidence matrices") {
    struct Case {
        unsigned n;
        std::uint64_t q;
        unsigned r;
        std::size_t rows, cols, row_sum;
    };
    for (const auto& c : {Case{2, 2, 1, 6, 4, 2}, Case{2, 3, 1, 12, 9, 3}, Case{3, 2, 1, 28, 8, 2}}) {
        const auto M = affine_incidence_matrix(c.n, c.q, c.r);
        CHECK(M.rows == c.rows);
        CHECK(M.cols == c.cols);
        for (auto s : M.row_sums()) CHECK(s == c.row_sum);
        CHECK(incidence_row_count(c.n, c.q, c.r, Space::affine) == static_cast<unsigned long>(c.rows));
    }
}

TEST_CASE("incidence sidecar") {
    const auto M = projective_incidence_matrix(2, 2, 2);
    const auto j = sidecar_json(M);
    CHECK(j.at("rows") == 7);
    CHECK(j.at("space") == "projective");
    CHECK(j.at("degenerate") == false);
}
