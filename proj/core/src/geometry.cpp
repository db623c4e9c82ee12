#include "pgsnf/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "pgsnf/errors.hpp"

namespace pgsnf {

Vec Subspace::row(unsigned i) const {
    return Vec(rref.begin() + static_cast<std::ptrdiff_t>(i * ambient_dim),
               rref.begin() + static_cast<std::ptrdiff_t>((i + 1) * ambient_dim));
}

std::vector<unsigned> Subspace::pivots() const {
    std::vector<unsigned> piv(dim);
    for (unsigned i = 0; i < dim; ++i) {
        unsigned j = 0;
        while (j < ambient_dim && at(i, j) == 0) ++j;
        piv[i] = j;
    }
    return piv;
}

Subspace canonical_subspace(const Field& F, unsigned ambient_dim, const std::vector<Vec>& rows_in) {
    std::vector<Vec> m = rows_in;
    for (const auto& r : m)
        if (r.size() != ambient_dim) throw SpecMismatch("row length differs from ambient dimension");
    unsigned rank = 0;
    for (unsigned col = 0; col < ambient_dim && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        const Field::Elem s = F.inv(m[rank][col]);
        for (auto& x : m[rank]) x = F.mul(x, s);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const Field::Elem f = m[i][col];
            for (unsigned j = 0; j < ambient_dim; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[rank][j]));
        }
        ++rank;
    }
    Subspace Y{ambient_dim, rank, {}};
    Y.rref.reserve(static_cast<std::size_t>(rank) * ambient_dim);
    for (unsigned i = 0; i < rank; ++i) Y.rref.insert(Y.rref.end(), m[i].begin(), m[i].end());
    return Y;
}

ProjectivePoint normalize_point(const Field& F, Vec v) {
    auto it = std::find_if(v.begin(), v.end(), [](Field::Elem x) { return x != 0; });
    if (it == v.end()) throw InvalidArgument("the zero vector is not a projective point");
    const Field::Elem s = F.inv(*it);
    for (auto& x : v) x = F.mul(x, s);
    return ProjectivePoint{std::move(v)};
}

std::vector<Subspace> enumerate_subspaces(const Field& F, unsigned n, unsigned r) {
    const unsigned m = n + 1;
    if (r < 1 || r > m)
        throw InvalidDimension("r = " + std::to_string(r) + " outside [1, " + std::to_string(m) + "]");
    const Field::Elem q = F.q();
    std::vector<Subspace> out;

    std::vector<unsigned> piv(r);
    for (unsigned i = 0; i < r; ++i) piv[i] = i;
    for (;;) {
        // free positions: (row, col) with col > piv[row], col not a pivot column
        std::vector<bool> is_piv(m, false);
        for (unsigned c : piv) is_piv[c] = true;
        std::vector<std::pair<unsigned, unsigned>> free;
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = piv[i] + 1; j < m; ++j)
                if (!is_piv[j]) free.emplace_back(i, j);

        Subspace Y{m, r, Vec(static_cast<std::size_t>(r) * m, 0)};
        for (unsigned i = 0; i < r; ++i) Y.rref[i * m + piv[i]] = 1;
        std::vector<Field::Elem> val(free.size(), 0);
        for (;;) {
            out.push_back(Y);
            std::size_t k = 0;
            while (k < free.size()) {
                auto [i, j] = free[k];
                if (++val[k] < q) {
                    Y.rref[i * m + j] = val[k];
                    break;
                }
                val[k] = 0;
                Y.rref[i * m + j] = 0;
                ++k;
            }
            if (k == free.size()) break;
        }

        // next r-subset of {0..m-1}
        int i = static_cast<int>(r) - 1;
        while (i >= 0 && piv[i] == m - r + static_cast<unsigned>(i)) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjectivePoint> enumerate_points(const Field& F, unsigned n) {
    std::vector<ProjectivePoint> pts;
    for (auto& Y : enumerate_subspaces(F, n, 1)) pts.push_back(ProjectivePoint{std::move(Y.rref)});
    return pts;
}

bool contains(const Field& F, const Subspace& Y, const ProjectivePoint& Z) {
    if (Z.coords.size() != Y.ambient_dim) throw SpecMismatch("point and subspace live in different spaces");
    const auto piv = Y.pivots();
    Vec v(Y.ambient_dim, 0);
    for (unsigned i = 0; i < Y.dim; ++i) {
        const Field::Elem c = Z.coords[piv[i]];
        if (c == 0) continue;
        for (unsigned j = 0; j < Y.ambient_dim; ++j) v[j] = F.add(v[j], F.mul(c, Y.at(i, j)));
    }
    return v == Z.coords;
}

namespace {

// Calls fn(coeffs, vector) for every coefficient tuple in [0,q)^dim except zero,
// restricted to tuples whose first nonzero entry is 1 when `normalized`.
template <class Fn>
void for_each_combination(const Field& F, const Subspace& Y, bool normalized, Fn&& fn) {
    const unsigned r = Y.dim, m = Y.ambient_dim;
    std::vector<Field::Elem> c(r, 0);
    Vec v(m);
    for (;;) {
        // increment (last coefficient varies fastest)
        int k = static_cast<int>(r) - 1;
        while (k >= 0) {
            if (++c[k] < F.q()) break;
            c[k] = 0;
            --k;
        }
        if (k < 0) break;
        if (normalized) {
            unsigned lead = 0;
            while (c[lead] == 0) ++lead;
            if (c[lead] != 1) continue;
        }
        std::fill(v.begin(), v.end(), 0);
        for (unsigned i = 0; i < r; ++i) {
            if (c[i] == 0) continue;
            for (unsigned j = 0; j < m; ++j) v[j] = F.add(v[j], F.mul(c[i], Y.at(i, j)));
        }
        fn(v);
    }
}

}  // namespace

std::vector<ProjectivePoint> points_of(const Field& F, const Subspace& Y) {
    std::vector<ProjectivePoint> pts;
    for_each_combination(F, Y, true, [&](const Vec& v) { pts.push_back(ProjectivePoint{v}); });
    return pts;
}

std::vector<Vec> nonzero_vectors(const Field& F, const Subspace& Y) {
    std::vector<Vec> out;
    for_each_combination(F, Y, false, [&](const Vec& v) { out.push_back(v); });
    return out;
}

BigInt gaussian_binomial(unsigned m, unsigned k, std::uint64_t q) {
    if (k > m) return 0;
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= big_pow(q, m - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    return num / den;
}

bool inside_h0(const Subspace& Y) {
    for (unsigned i = 0; i < Y.dim; ++i)
        if (Y.at(i, 0) != 0) return false;
    return true;
}

std::vector<AffineFlat> enumerate_affine_flats(const Field& F, unsigned n, unsigned r) {
    if (r > n) throw InvalidDimension("affine flat dimension r = " + std::to_string(r) + " exceeds n");
    std::vector<AffineFlat> out;
    for (auto& Y : enumerate_subspaces(F, n, r + 1))
        if (!inside_h0(Y)) out.push_back(AffineFlat{std::move(Y)});
    return out;
}

std::vector<ProjectivePoint> enumerate_affine_points(const Field& F, unsigned n) {
    std::vector<ProjectivePoint> out;
    for (auto& Z : enumerate_points(F, n))
        if (Z.coords[0] != 0) out.push_back(std::move(Z));
    return out;
}

std::string format_subspace(const Subspace& Y) {
    std::ostringstream os;
    for (unsigned i = 0; i < Y.dim; ++i) {
        if (i) os << ';';
        for (unsigned j = 0; j < Y.ambient_dim; ++j) {
            if (j) os << ',';
            os << Y.at(i, j);
        }
    }
    return os.str();
}

Subspace parse_subspace(const Field& F, const std::string& line) {
    std::vector<Vec> rows;
    std::stringstream rs(line);
    std::string row;
    while (std::getline(rs, row, ';')) {
        Vec v;
        std::stringstream es(row);
        std::string e;
        while (std::getline(es, e, ',')) {
            const unsigned long x = std::stoul(e);
            if (x >= F.q()) throw ParseError("element index out of range: " + e);
            v.push_back(static_cast<Field::Elem>(x));
        }
        rows.push_back(std::move(v));
    }
    if (rows.empty()) throw ParseError("empty subspace line");
    Subspace Y = canonical_subspace(F, static_cast<unsigned>(rows[0].size()), rows);
    if (Y.dim != rows.size()) throw ParseError("rows are linearly dependent");
    return Y;
}

}  // namespace pgsnf
