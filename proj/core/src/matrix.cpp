#include "pgsnf/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pgsnf/errors.hpp"

namespace pgsnf {

IntMatrix SparseIntMatrix::dense() const {
    IntMatrix m(rows, cols);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
}

void SparseIntMatrix::normalize() {
    std::sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<SparseEntry> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        if (!out.empty() && out.back().row == e.row && out.back().col == e.col)
            out.back().value += e.value;
        else
            out.push_back(e);
    }
    std::erase_if(out, [](const SparseEntry& e) { return e.value == 0; });
    entries = std::move(out);
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw InvalidArgument("ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::permuted(const std::vector<std::size_t>& rp, const std::vector<std::size_t>& cp) const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rp[i], cp[j]);
    return out;
}

SparseIntMatrix IntMatrix::sparse() const {
    SparseIntMatrix s{rows_, cols_, {}};
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (const auto v = (*this)(i, j); v != 0)
                s.entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
    return s;
}

void write_matrix_market(std::ostream& os, const SparseIntMatrix& m, const std::string& comment) {
    os << "%%MatrixMarket matrix coordinate integer general\n";
    if (!comment.empty()) {
        std::istringstream cs(comment);
        std::string line;
        while (std::getline(cs, line)) os << "% " << line << '\n';
    }
    os << m.rows << ' ' << m.cols << ' ' << m.entries.size() << '\n';
    for (const auto& e : m.entries) os << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
}

SparseIntMatrix read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty Matrix Market stream");
    std::istringstream hs(line);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
        throw ParseError("expected a Matrix Market coordinate header");
    field = lower(field);
    if (field != "integer" && field != "real" && field != "pattern")
        throw ParseError("unsupported Matrix Market field: " + field);
    if (lower(symmetry) != "general") throw ParseError("only general symmetry is supported");

    while (std::getline(is, line))
        if (!line.empty() && line[0] != '%') break;
    std::istringstream ss(line);
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(ss >> rows >> cols >> nnz)) throw ParseError("bad Matrix Market size line");

    SparseIntMatrix m{rows, cols, {}};
    m.entries.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        if (!std::getline(is, line)) throw ParseError("truncated Matrix Market data");
        if (line.empty() || line[0] == '%') {
            --k;
            continue;
        }
        std::istringstream es(line);
        std::size_t i = 0, j = 0;
        std::int64_t v = 1;
        if (!(es >> i >> j)) throw ParseError("bad entry line: " + line);
        if (field == "integer") {
            if (!(es >> v)) throw ParseError("missing value: " + line);
        } else if (field == "real") {
            double d = 0;
            if (!(es >> d) || d != std::floor(d)) throw ParseError("non-integral value: " + line);
            v = static_cast<std::int64_t>(d);
        }
        if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError("index out of range: " + line);
        m.entries.push_back({static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(j - 1), v});
    }
    m.normalize();
    return m;
}

SparseIntMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_matrix_market(in);
}

void write_matrix_market_file(const std::string& path, const SparseIntMatrix& m, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    write_matrix_market(out, m, comment);
}

}  // namespace pgsnf
