#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgsnf/geometry.hpp"
#include "pgsnf/matrix.hpp"

namespace pgsnf {

enum class Space { projective, affine };

std::string to_string(Space s);
Space parse_space(const std::string& s);

struct IncidenceMeta {
    std::uint64_t p = 0;
    unsigned t = 0;
    unsigned n = 0;
    unsigned r = 0;
    Space space = Space::projective;
    /// Outside the closed-form regime (projective r in {1, n+1}; affine r in {0, n}).
    bool degenerate = false;

    std::uint64_t q() const;
    friend bool operator==(const IncidenceMeta&, const IncidenceMeta&) = default;
};

/// (0,1) matrix with rows = subspaces (or flats) and cols = points.
/// Row labels index the canonical subspace list (dimension r projective,
/// r+1 affine); column labels index the canonical point list of PG(n, q).
struct IncidenceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
    std::vector<std::uint32_t> row_labels;
    std::vector<std::uint32_t> col_labels;
    IncidenceMeta meta;

    std::vector<std::size_t> row_sums() const;
    std::vector<std::size_t> col_sums() const;
    SparseIntMatrix to_sparse() const;
    IntMatrix dense() const { return to_sparse().dense(); }
};

/// Points of PG(n, q) against r-subspaces of F_q^{n+1}; 1 <= r <= n+1.
IncidenceMatrix projective_incidence_matrix(const Field& F, unsigned n, unsigned r);
IncidenceMatrix projective_incidence_matrix(unsigned n, std::uint64_t q, unsigned r);

/// Points of AG(n, q) against r-flats; 0 <= r <= n.
IncidenceMatrix affine_incidence_matrix(const Field& F, unsigned n, unsigned r);
IncidenceMatrix affine_incidence_matrix(unsigned n, std::uint64_t q, unsigned r);

/// Row count of the matrix for (n, q, r, space) without building it.
BigInt incidence_row_count(unsigned n, std::uint64_t q, unsigned r, Space space);

/// Sidecar metadata {p, t, n, r, space, rows, cols, degenerate}.
nlohmann::json sidecar_json(const IncidenceMatrix& m);
void to_json(nlohmann::json& j, const IncidenceMeta& m);
void from_json(const nlohmann::json& j, IncidenceMeta& m);

}  // namespace pgsnf
