#include "pgsnf/incidence.hpp"

#include <algorithm>
#include <unordered_map>

#include "pgsnf/errors.hpp"

namespace pgsnf {

std::string to_string(Space s) { return s == Space::projective ? "projective" : "affine"; }

Space parse_space(const std::string& s) {
    if (s == "projective") return Space::projective;
    if (s == "affine") return Space::affine;
    throw InvalidArgument("unknown space '" + s + "' (expected projective or affine)");
}

std::uint64_t IncidenceMeta::q() const { return checked_pow(p, t); }

std::vector<std::size_t> IncidenceMatrix::row_sums() const {
    std::vector<std::size_t> s(rows, 0);
    for (const auto& [i, j] : entries) ++s[i];
    return s;
}

std::vector<std::size_t> IncidenceMatrix::col_sums() const {
    std::vector<std::size_t> s(cols, 0);
    for (const auto& [i, j] : entries) ++s[j];
    return s;
}

SparseIntMatrix IncidenceMatrix::to_sparse() const {
    SparseIntMatrix m{rows, cols, {}};
    m.entries.reserve(entries.size());
    for (const auto& [i, j] : entries) m.entries.push_back({i, j, 1});
    return m;
}

namespace {

std::uint64_t point_key(const Vec& v, std::uint64_t q) {
    std::uint64_t k = 0;
    for (auto x : v) k = k * q + x;
    return k;
}

class PointIndex {
public:
    PointIndex(const std::vector<ProjectivePoint>& pts, std::uint64_t q) : q_(q) {
        index_.reserve(pts.size() * 2);
        for (std::size_t i = 0; i < pts.size(); ++i)
            index_.emplace(point_key(pts[i].coords, q_), static_cast<std::uint32_t>(i));
    }
    std::uint32_t at(const Vec& v) const { return index_.at(point_key(v, q_)); }

private:
    std::uint64_t q_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

void check_key_range(unsigned n, std::uint64_t q) {
    // keys are base-q encodings of n+1 coordinates
    BigInt span = big_pow(q, n + 1);
    if (mpz_sizeinbase(span.get_mpz_t(), 2) > 63) throw TooLarge("PG(n, q) too large to index points");
}

}  // namespace

IncidenceMatrix projective_incidence_matrix(const Field& F, unsigned n, unsigned r) {
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (r < 1 || r > n + 1)
        throw InvalidDimension("r = " + std::to_string(r) + " outside [1, " + std::to_string(n + 1) + "]");
    check_key_range(n, F.q());
    const auto subspaces = enumerate_subspaces(F, n, r);
    const auto points = enumerate_points(F, n);
    const PointIndex index(points, F.q());

    IncidenceMatrix A;
    A.rows = subspaces.size();
    A.cols = points.size();
    A.meta = {F.p(), F.t(), n, r, Space::projective, r == 1 || r == n + 1};
    for (std::size_t i = 0; i < subspaces.size(); ++i) {
        std::vector<std::uint32_t> cols;
        for (const auto& Z : points_of(F, subspaces[i])) cols.push_back(index.at(Z.coords));
        std::sort(cols.begin(), cols.end());
        for (auto c : cols) A.entries.emplace_back(static_cast<std::uint32_t>(i), c);
    }
    A.row_labels.resize(A.rows);
    A.col_labels.resize(A.cols);
    for (std::size_t i = 0; i < A.rows; ++i) A.row_labels[i] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < A.cols; ++j) A.col_labels[j] = static_cast<std::uint32_t>(j);
    return A;
}

IncidenceMatrix projective_incidence_matrix(unsigned n, std::uint64_t q, unsigned r) {
    const auto F = Field::create(FieldSpec::for_order(q));
    return projective_incidence_matrix(*F, n, r);
}

IncidenceMatrix affine_incidence_matrix(const Field& F, unsigned n, unsigned r) {
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (r > n) throw InvalidDimension("affine r = " + std::to_string(r) + " outside [0, " + std::to_string(n) + "]");
    check_key_range(n, F.q());
    const auto carriers = enumerate_subspaces(F, n, r + 1);
    const auto points = enumerate_points(F, n);

    // affine columns: points with x_0 != 0, kept in canonical order
    std::vector<ProjectivePoint> affine_points;
    std::vector<std::uint32_t> col_labels;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].coords[0] != 0) {
            affine_points.push_back(points[j]);
            col_labels.push_back(static_cast<std::uint32_t>(j));
        }
    }
    const PointIndex index(affine_points, F.q());

    IncidenceMatrix A;
    A.cols = affine_points.size();
    A.col_labels = std::move(col_labels);
    A.meta = {F.p(), F.t(), n, r, Space::affine, r == 0 || r == n};
    std::uint32_t row = 0;
    for (std::size_t i = 0; i < carriers.size(); ++i) {
        if (inside_h0(carriers[i])) continue;
        std::vector<std::uint32_t> cols;
        for (const auto& Z : points_of(F, carriers[i]))
            if (Z.coords[0] != 0) cols.push_back(index.at(Z.coords));
        std::sort(cols.begin(), cols.end());
        for (auto c : cols) A.entries.emplace_back(row, c);
        A.row_labels.push_back(static_cast<std::uint32_t>(i));
        ++row;
    }
    A.rows = row;
    return A;
}

IncidenceMatrix affine_incidence_matrix(unsigned n, std::uint64_t q, unsigned r) {
    const auto F = Field::create(FieldSpec::for_order(q));
    return affine_incidence_matrix(*F, n, r);
}

BigInt incidence_row_count(unsigned n, std::uint64_t q, unsigned r, Space space) {
    if (space == Space::projective) return gaussian_binomial(n + 1, r, q);
    if (r > n) return 0;
    return big_pow(q, n - r) * gaussian_binomial(n, r, q);
}

void to_json(nlohmann::json& j, const IncidenceMeta& m) {
    j = nlohmann::json{{"p", m.p}, {"t", m.t}, {"n", m.n}, {"r", m.r}, {"space", to_string(m.space)},
                       {"degenerate", m.degenerate}};
}

void from_json(const nlohmann::json& j, IncidenceMeta& m) {
    m.p = j.at("p").get<std::uint64_t>();
    m.t = j.at("t").get<unsigned>();
    m.n = j.at("n").get<unsigned>();
    m.r = j.at("r").get<unsigned>();
    m.space = parse_space(j.at("space").get<std::string>());
    m.degenerate = j.value("degenerate", false);
}

nlohmann::json sidecar_json(const IncidenceMatrix& m) {
    nlohmann::json j = m.meta;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    return j;
}

}  // namespace pgsnf
