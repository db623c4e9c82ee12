#include "pgsnf/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"

namespace pgsnf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::pair<std::uint64_t, unsigned> field_params(std::uint64_t q) {
    const auto pt = split_prime_power(q);
    if (!pt) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
    return *pt;
}

std::string cell_name(Space s, unsigned n, std::uint64_t q, unsigned r) {
    return to_string(s) + " (n,q,r)=(" + std::to_string(n) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

void check_cap(Space s, unsigned n, std::uint64_t q, unsigned r, std::size_t cap) {
    const BigInt rows = incidence_row_count(n, q, r, s);
    if (rows > BigInt(static_cast<unsigned long>(cap)))
        throw TooLarge(cell_name(s, n, q, r) + " has " + rows.get_str() + " rows, above the row cap " +
                       std::to_string(cap));
}

IntMatrix obtain_matrix(VerificationReport& rep, const VerifyOptions& opts, const auto& build) {
    const auto t0 = Clock::now();
    IntMatrix M;
    std::size_t want_rows = 0, want_cols = 0;
    {
        const IncidenceMatrix A = build();
        want_rows = A.rows;
        want_cols = A.cols;
        if (!opts.matrix_file) M = A.dense();
    }
    if (opts.matrix_file) {
        M = read_matrix_market_file(*opts.matrix_file).dense();
        rep.matrix_source = *opts.matrix_file;
        if (M.rows() != want_rows || M.cols() != want_cols)
            rep.failures.push_back("matrix is " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                                   ", expected " + std::to_string(want_rows) + "x" + std::to_string(want_cols));
    }
    rep.rows = M.rows();
    rep.cols = M.cols();
    rep.timings.build_ms = ms_since(t0);
    return M;
}

void run_oracle(VerificationReport& rep, const IntMatrix& M, const VerifyOptions& opts) {
    rep.oracle = InvariantSpectrum{rep.p, rep.t, rep.n, rep.r, rep.space, {}, 1};
    auto t0 = Clock::now();
    rep.oracle.mult = p_elementary_divisors(M, rep.p);
    rep.timings.plocal_ms = ms_since(t0);

    t0 = Clock::now();
    SNFResult s = smith_normal_form(M, opts.snf);
    rep.timings.snf_ms = ms_since(t0);
    rep.snf_method = s.method;
    rep.oracle.last_nonp = s.last_nonp(rep.p);
    if (!same_multiplicities(s.p_spectrum(rep.p), rep.oracle.mult))
        rep.failures.push_back("integer SNF and p-local elimination disagree on p-parts");
    rep.integer_invariants = std::move(s.invariants);
}

void compare_with_formula(VerificationReport& rep) {
    if (!same_multiplicities(rep.formula->mult, rep.oracle.mult))
        rep.failures.push_back("closed-form spectrum differs from the oracle spectrum");
    if (rep.integer_invariants != rep.formula->predicted_invariants())
        rep.failures.push_back("integer SNF differs from the predicted invariant chain");
}

}  // namespace

std::uint64_t VerificationReport::q() const { return checked_pow(p, t); }

void to_json(nlohmann::json& j, const VerificationReport& r) {
    nlohmann::json inv = nlohmann::json::array();
    for (const auto& d : r.integer_invariants) inv.push_back(to_json_number(d));
    j = nlohmann::json{
        {"p", r.p},
        {"t", r.t},
        {"q", r.q()},
        {"n", r.n},
        {"r", r.r},
        {"space", to_string(r.space)},
        {"degenerate", r.degenerate},
        {"rows", r.rows},
        {"cols", r.cols},
        {"matrix_source", r.matrix_source},
        {"formula", r.formula ? nlohmann::json(*r.formula) : nlohmann::json(nullptr)},
        {"difference", r.difference ? nlohmann::json(*r.difference) : nlohmann::json(nullptr)},
        {"oracle", r.oracle},
        {"integer_invariants", inv},
        {"snf_method", to_string(r.snf_method)},
        {"match", r.match},
        {"failures", r.failures},
        {"timings_ms",
         {{"build", r.timings.build_ms},
          {"formula", r.timings.formula_ms},
          {"plocal", r.timings.plocal_ms},
          {"snf", r.timings.snf_ms},
          {"total", r.timings.total_ms}}},
    };
}

VerificationReport verify_projective(unsigned n, std::uint64_t q, unsigned r, const VerifyOptions& opts) {
    const auto t0 = Clock::now();
    const auto [p, t] = field_params(q);
    if (n < 1) throw InvalidDimension("n must be >= 1");
    if (r < 1 || r > n + 1) throw InvalidDimension("projective verification needs 1 <= r <= n+1");
    check_cap(Space::projective, n, q, r, opts.row_cap);

    VerificationReport rep;
    rep.p = p;
    rep.t = t;
    rep.n = n;
    rep.r = r;
    rep.space = Space::projective;
    rep.degenerate = r == 1 || r == n + 1;
    if (!rep.degenerate) {
        const auto tf = Clock::now();
        rep.formula = projective_spectrum(n, q, r);
        rep.timings.formula_ms = ms_since(tf);
    }
    const IntMatrix M = obtain_matrix(rep, opts, [&] { return projective_incidence_matrix(n, q, r); });
    run_oracle(rep, M, opts);

    if (rep.formula) {
        compare_with_formula(rep);
    } else {
        // identity (r = 1) or a single all-ones row (r = n+1): every invariant is 1
        const std::size_t k = std::min(rep.rows, rep.cols);
        const bool ones = rep.integer_invariants.size() == k &&
                          std::all_of(rep.integer_invariants.begin(), rep.integer_invariants.end(),
                                      [](const BigInt& d) { return d == 1; });
        if (!ones) rep.failures.push_back("degenerate incidence should have only unit invariants");
    }
    rep.match = rep.failures.empty();
    rep.timings.total_ms = ms_since(t0);
    return rep;
}

VerificationReport verify_affine(unsigned n, std::uint64_t q, unsigned r, const VerifyOptions& opts) {
    const auto t0 = Clock::now();
    const auto [p, t] = field_params(q);
    if (n < 2 || r < 1 || r > n - 1)
        throw OutsideTheoremRange("affine verification needs 1 <= r <= n-1 (got " + cell_name(Space::affine, n, q, r) +
                                  ")");
    check_cap(Space::affine, n, q, r, opts.row_cap);

    VerificationReport rep;
    rep.p = p;
    rep.t = t;
    rep.n = n;
    rep.r = r;
    rep.space = Space::affine;
    const auto tf = Clock::now();
    rep.formula = affine_spectrum_direct(n, q, r);
    if (r + 2 <= n) rep.difference = affine_spectrum_difference(n, q, r);
    rep.timings.formula_ms = ms_since(tf);

    const IntMatrix M = obtain_matrix(rep, opts, [&] { return affine_incidence_matrix(n, q, r); });
    run_oracle(rep, M, opts);

    if (rep.difference && !same_multiplicities(rep.difference->mult, rep.formula->mult))
        rep.failures.push_back("direct count and difference formula disagree");
    compare_with_formula(rep);
    for (const auto& d : rep.integer_invariants) {
        BigInt x = d;
        while (mpz_divisible_ui_p(x.get_mpz_t(), p)) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
        if (x != 1) {
            rep.failures.push_back("integer invariant " + d.get_str() + " is not a power of p");
            break;
        }
    }
    rep.match = rep.failures.empty();
    rep.timings.total_ms = ms_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// grid

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty() || tok[0] == '-')
        throw ParseError("line " + std::to_string(line) + ": expected a nonnegative integer, got '" + tok + "'");
    return v;
}

// "2,3,4", "2 3 4" or "1..4"
std::vector<std::uint64_t> parse_list(const std::string& value, std::size_t line) {
    std::string v = value;
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream in(v);
    std::vector<std::uint64_t> out;
    for (std::string tok; in >> tok;) {
        if (const auto dots = tok.find(".."); dots != std::string::npos) {
            const auto a = parse_uint(tok.substr(0, dots), line), b = parse_uint(tok.substr(dots + 2), line);
            for (auto x = a; x <= b; ++x) out.push_back(x);
        } else {
            out.push_back(parse_uint(tok, line));
        }
    }
    return out;
}

std::vector<unsigned> valid_r(Space s, unsigned n) {
    std::vector<unsigned> out;
    if (s == Space::projective)
        for (unsigned r = 1; r <= n + 1; ++r) out.push_back(r);
    else
        for (unsigned r = 1; r + 1 <= n; ++r) out.push_back(r);
    return out;
}

}  // namespace

GridConfig parse_grid_config(std::istream& is) {
    GridConfig cfg;
    std::vector<std::uint64_t> qs, ns;
    std::optional<std::vector<std::uint64_t>> rs;
    std::vector<Space> spaces{Space::projective, Space::affine};
    std::vector<GridCell> explicit_cells;

    std::string raw;
    for (std::size_t lineno = 1; std::getline(is, raw); ++lineno) {
        if (const auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "q") {
            qs = parse_list(value, lineno);
            for (auto q : qs)
                if (!split_prime_power(q))
                    throw ParseError("line " + std::to_string(lineno) + ": " + std::to_string(q) + " is not a prime power");
        } else if (key == "n") {
            ns = parse_list(value, lineno);
        } else if (key == "r") {
            if (value == "all") rs.reset();
            else rs = parse_list(value, lineno);
        } else if (key == "space") {
            spaces.clear();
            std::string v = value;
            std::replace(v.begin(), v.end(), ',', ' ');
            std::istringstream in(v);
            for (std::string tok; in >> tok;) {
                if (tok == "both") {
                    spaces = {Space::projective, Space::affine};
                } else {
                    try {
                        spaces.push_back(parse_space(tok));
                    } catch (const Error&) {
                        throw ParseError("line " + std::to_string(lineno) + ": unknown space '" + tok + "'");
                    }
                }
            }
        } else if (key == "row_cap") {
            cfg.row_cap = parse_uint(value, lineno);
        } else if (key == "jobs") {
            cfg.jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_uint(value, lineno)));
        } else if (key == "cell") {
            std::istringstream in(value);
            std::string sp, a, b, c, file, extra;
            if (!(in >> sp >> a >> b >> c))
                throw ParseError("line " + std::to_string(lineno) + ": cell = <space> <n> <q> <r> [matrix]");
            GridCell cell;
            try {
                cell.space = parse_space(sp);
            } catch (const Error&) {
                throw ParseError("line " + std::to_string(lineno) + ": unknown space '" + sp + "'");
            }
            cell.n = static_cast<unsigned>(parse_uint(a, lineno));
            cell.q = parse_uint(b, lineno);
            cell.r = static_cast<unsigned>(parse_uint(c, lineno));
            if (in >> file) cell.matrix_file = file;
            if (in >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing text in cell");
            explicit_cells.push_back(cell);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }

    std::vector<GridCell> ranged;
    for (auto q : qs)
        for (auto n : ns)
            for (Space s : spaces)
                for (unsigned r : valid_r(s, static_cast<unsigned>(n)))
                    if (!rs || std::find(rs->begin(), rs->end(), r) != rs->end())
                        ranged.push_back(GridCell{s, static_cast<unsigned>(n), q, r, std::nullopt});
    std::sort(ranged.begin(), ranged.end(), [](const GridCell& x, const GridCell& y) {
        return std::tie(x.n, x.q, x.r, x.space) < std::tie(y.n, y.q, y.r, y.space);
    });
    cfg.cells = std::move(ranged);
    cfg.cells.insert(cfg.cells.end(), explicit_cells.begin(), explicit_cells.end());
    return cfg;
}

GridConfig parse_grid_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open grid config " + path);
    return parse_grid_config(in);
}

GridConfig default_grid() {
    std::istringstream in("q = 2,3,4,5,8,9\nn = 1..4\nr = all\nspace = both\n");
    return parse_grid_config(in);
}

const char* to_string(CellStatus s) noexcept {
    switch (s) {
        case CellStatus::pass: return "pass";
        case CellStatus::fail: return "fail";
        case CellStatus::skipped: return "skipped";
        case CellStatus::error: return "error";
    }
    return "?";
}

GridResult grid_report(const GridConfig& cfg, unsigned jobs) {
    GridResult out;
    out.entries.resize(cfg.cells.size());
    VerifyOptions base;
    base.row_cap = cfg.row_cap;

    auto run_cell = [&](std::size_t i) {
        GridEntry& e = out.entries[i];
        e.cell = cfg.cells[i];
        VerifyOptions opts = base;
        opts.matrix_file = e.cell.matrix_file;
        try {
            e.report = e.cell.space == Space::projective ? verify_projective(e.cell.n, e.cell.q, e.cell.r, opts)
                                                         : verify_affine(e.cell.n, e.cell.q, e.cell.r, opts);
            e.status = e.report->match ? CellStatus::pass : CellStatus::fail;
            for (const auto& f : e.report->failures) e.message += (e.message.empty() ? "" : "; ") + f;
        } catch (const TooLarge& ex) {
            e.status = CellStatus::skipped;
            e.message = ex.what();
        } catch (const std::exception& ex) {
            e.status = CellStatus::error;
            e.message = ex.what();
        }
    };

    const unsigned workers =
        std::max(1u, std::min<unsigned>(jobs ? jobs : cfg.jobs, static_cast<unsigned>(cfg.cells.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cfg.cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < cfg.cells.size();) run_cell(i);
            });
    }
    for (const auto& e : out.entries) {
        switch (e.status) {
            case CellStatus::pass: ++out.passed; break;
            case CellStatus::fail: ++out.failed; break;
            case CellStatus::skipped: ++out.skipped; break;
            case CellStatus::error: ++out.errors; break;
        }
    }
    return out;
}

void write_grid_csv(std::ostream& os, const GridResult& g, bool timings) {
    os << "p,t,n,r,space,alpha,multiplicity,last_nonp,match,ms_total\n";
    for (const auto& e : g.entries) {
        const auto pt = split_prime_power(e.cell.q);
        const std::string head = std::to_string(pt ? pt->first : 0) + "," + std::to_string(pt ? pt->second : 0) +
                                 "," + std::to_string(e.cell.n) + "," + std::to_string(e.cell.r) + "," +
                                 to_string(e.cell.space) + ",";
        if (!e.report) {
            os << head << ",,," << to_string(e.status) << ",\n";
            continue;
        }
        const auto& rep = *e.report;
        const InvariantSpectrum& s = rep.formula ? *rep.formula : rep.oracle;
        std::ostringstream ms;
        if (timings) ms << std::fixed << std::setprecision(1) << rep.timings.total_ms;
        for (const auto& [alpha, m] : s.mult)
            os << head << alpha << ',' << m.get_str() << ',' << s.last_nonp.get_str() << ','
               << (rep.match ? "true" : "false") << ',' << ms.str() << '\n';
    }
}

nlohmann::json grid_json(const GridResult& g, bool timings) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& e : g.entries) {
        nlohmann::json c{{"space", to_string(e.cell.space)},
                         {"n", e.cell.n},
                         {"q", e.cell.q},
                         {"r", e.cell.r},
                         {"status", to_string(e.status)},
                         {"message", e.message}};
        if (e.report) {
            nlohmann::json rep = *e.report;
            if (!timings) rep.erase("timings_ms");
            c["report"] = std::move(rep);
        }
        cells.push_back(std::move(c));
    }
    return nlohmann::json{{"cells", cells},
                          {"summary",
                           {{"cells", g.entries.size()},
                            {"passed", g.passed},
                            {"failed", g.failed},
                            {"skipped", g.skipped},
                            {"errors", g.errors}}}};
}

}  // namespace pgsnf
