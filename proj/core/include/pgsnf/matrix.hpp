#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgsnf {

struct SparseEntry {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    std::int64_t value = 0;

    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

class IntMatrix;

/// Coordinate-list integer matrix, entries sorted by (row, col), no explicit zeros.
struct SparseIntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<SparseEntry> entries;

    IntMatrix dense() const;
    /// Sorts entries, merges duplicates by summation and drops zeros.
    void normalize();
};

/// Dense row-major matrix of 64-bit integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<std::int64_t>& data() const noexcept { return data_; }

    IntMatrix transposed() const;
    /// Applies row permutation `rp` and column permutation `cp`: out(i, j) = in(rp[i], cp[j]).
    IntMatrix permuted(const std::vector<std::size_t>& rp, const std::vector<std::size_t>& cp) const;
    SparseIntMatrix sparse() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Matrix Market "coordinate integer general" with 1-based indices.
void write_matrix_market(std::ostream& os, const SparseIntMatrix& m, const std::string& comment = {});
/// Accepts coordinate integer/real/pattern general files; real values must be integral.
SparseIntMatrix read_matrix_market(std::istream& is);

SparseIntMatrix read_matrix_market_file(const std::string& path);
void write_matrix_market_file(const std::string& path, const SparseIntMatrix& m, const std::string& comment = {});

}  // namespace pgsnf
