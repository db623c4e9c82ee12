#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgsnf/incidence.hpp"
#include "pgsnf/invariants.hpp"
#include "pgsnf/snf.hpp"

namespace pgsnf {

struct StageTimings {
    double build_ms = 0;
    double formula_ms = 0;
    double plocal_ms = 0;
    double snf_ms = 0;
    double total_ms = 0;
};

struct VerificationReport {
    std::uint64_t p = 0;
    unsigned t = 0;
    unsigned n = 0;
    unsigned r = 0;
    Space space = Space::projective;
    /// Identity or all-ones incidence: oracle only, no closed form applied.
    bool degenerate = false;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string matrix_source = "generated";

    std::optional<InvariantSpectrum> formula;
    /// Affine difference form, when 1 <= r <= n-2.
    std::optional<InvariantSpectrum> difference;
    InvariantSpectrum oracle;
    std::vector<BigInt> integer_invariants;
    SnfMethod snf_method = SnfMethod::elimination;

    bool match = false;
    /// Why match is false (empty on success).
    std::vector<std::string> failures;
    StageTimings timings;

    std::uint64_t q() const;
};

void to_json(nlohmann::json& j, const VerificationReport& r);

struct VerifyOptions {
    std::size_t row_cap = 5000;
    SnfOptions snf;
    /// Matrix Market file used instead of the generated incidence matrix.
    std::optional<std::string> matrix_file;
};

/// 1 <= r <= n+1; r = 1 and r = n+1 are degenerate. Throws TooLarge above the row cap.
VerificationReport verify_projective(unsigned n, std::uint64_t q, unsigned r, const VerifyOptions& opts = {});

/// 1 <= r <= n-1 (OutsideTheoremRange otherwise). Throws TooLarge above the row cap.
VerificationReport verify_affine(unsigned n, std::uint64_t q, unsigned r, const VerifyOptions& opts = {});

struct GridCell {
    Space space = Space::projective;
    unsigned n = 0;
    std::uint64_t q = 0;
    unsigned r = 0;
    std::optional<std::string> matrix_file;

    friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

struct GridConfig {
    std::vector<GridCell> cells;
    std::size_t row_cap = 5000;
    unsigned jobs = 1;
};

/// key=value lines; '#' starts a comment. Keys: q (list), n (list or a..b),
/// r ("all", list or a..b), space (projective, affine, both), row_cap, jobs,
/// and repeatable cell = <space> <n> <q> <r> [matrix.mtx].
GridConfig parse_grid_config(std::istream& is);
GridConfig parse_grid_config_file(const std::string& path);

/// q in {2,3,4,5,8,9}, 1 <= n <= 4, all valid r, both spaces.
GridConfig default_grid();

enum class CellStatus { pass, fail, skipped, error };
const char* to_string(CellStatus s) noexcept;

struct GridEntry {
    GridCell cell;
    CellStatus status = CellStatus::error;
    std::string message;
    std::optional<VerificationReport> report;
};

struct GridResult {
    std::vector<GridEntry> entries;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::size_t errors = 0;

    /// No failures and no errors (skipped cells are reported, not counted).
    bool ok() const noexcept { return failed == 0 && errors == 0; }
};

/// Runs every cell (all attempted even after failures) on `jobs` threads;
/// entries come back in config order.
GridResult grid_report(const GridConfig& cfg, unsigned jobs = 0);

/// p,t,n,r,space,alpha,multiplicity,last_nonp,match,ms_total; one line per alpha.
void write_grid_csv(std::ostream& os, const GridResult& g, bool timings = true);
nlohmann::json grid_json(const GridResult& g, bool timings = true);

}  // namespace pgsnf
