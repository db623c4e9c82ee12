#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "pgsnf/bigint.hpp"
#include "pgsnf/gf.hpp"

namespace pgsnf {

using Vec = std::vector<Field::Elem>;

/// r-dimensional subspace of F_q^{n+1}, stored as its reduced row echelon
/// form (row-major, `dim` rows of `ambient_dim` field indices). Two values
/// compare equal iff they are the same subspace.
struct Subspace {
    unsigned ambient_dim = 0;
    unsigned dim = 0;
    Vec rref;

    Field::Elem at(unsigned row, unsigned col) const { return rref[row * ambient_dim + col]; }
    Vec row(unsigned i) const;
    std::vector<unsigned> pivots() const;

    friend bool operator==(const Subspace&, const Subspace&) = default;
    friend auto operator<=>(const Subspace& a, const Subspace& b) {
        if (auto c = a.ambient_dim <=> b.ambient_dim; c != 0) return c;
        if (auto c = a.dim <=> b.dim; c != 0) return c;
        return a.rref <=> b.rref;
    }
};

/// Homogeneous coordinates normalized so the first nonzero entry is 1.
struct ProjectivePoint {
    Vec coords;

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
    friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;
};

/// r-flat of AG(n, q): the part of an (r+1)-subspace outside H_0 = {x_0 = 0}.
struct AffineFlat {
    Subspace carrier;

    unsigned dim() const { return carrier.dim - 1; }
    friend bool operator==(const AffineFlat&, const AffineFlat&) = default;
};

/// Row space of `rows` in reduced row echelon form (zero rows dropped).
Subspace canonical_subspace(const Field& F, unsigned ambient_dim, const std::vector<Vec>& rows);

/// Scales v so its first nonzero coordinate is 1. Throws InvalidArgument for the zero vector.
ProjectivePoint normalize_point(const Field& F, Vec v);

/// All r-subspaces of F_q^{n+1}, sorted by flattened RREF. 1 <= r <= n+1.
std::vector<Subspace> enumerate_subspaces(const Field& F, unsigned n, unsigned r);

/// Points of PG(n, q) in canonical order (same order as the 1-subspaces).
std::vector<ProjectivePoint> enumerate_points(const Field& F, unsigned n);

bool contains(const Field& F, const Subspace& Y, const ProjectivePoint& Z);

/// The (q^r - 1)/(q - 1) normalized points of Y, in increasing order of their
/// combination coefficients.
std::vector<ProjectivePoint> points_of(const Field& F, const Subspace& Y);

/// All q^r - 1 nonzero vectors of Y.
std::vector<Vec> nonzero_vectors(const Field& F, const Subspace& Y);

/// Number of k-subspaces of an m-dimensional space over F_q.
BigInt gaussian_binomial(unsigned m, unsigned k, std::uint64_t q);

bool inside_h0(const Subspace& Y);

/// r-flats of AG(n, q), 0 <= r <= n, in the order of their carriers.
std::vector<AffineFlat> enumerate_affine_flats(const Field& F, unsigned n, unsigned r);

/// Points of AG(n, q): projective points with x_0 = 1.
std::vector<ProjectivePoint> enumerate_affine_points(const Field& F, unsigned n);

/// "a,b,c;d,e,f": RREF rows as comma-separated element indices joined by ';'.
std::string format_subspace(const Subspace& Y);
Subspace parse_subspace(const Field& F, const std::string& line);

}  // namespace pgsnf
