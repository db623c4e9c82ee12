// pgsnf: incidence matrices of PG(n,q) / AG(n,q), their Smith normal forms,
// the closed-form spectra, and the checks that tie them together.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pgsnf/charsum.hpp"
#include "pgsnf/conway.hpp"
#include "pgsnf/errors.hpp"
#include "pgsnf/incidence.hpp"
#include "pgsnf/invariants.hpp"
#include "pgsnf/snf.hpp"
#include "pgsnf/verify.hpp"

using namespace pgsnf;

namespace {

struct Common {
    std::uint64_t q = 2;
    unsigned n = 2;
    unsigned r = 2;
    std::string space = "projective";
    std::string out;
    std::string format;
};

void add_geometry(CLI::App* app, Common& c) {
    app->add_option("--q", c.q, "field order (prime power)")->required();
    app->add_option("--n", c.n, "projective/affine dimension")->required();
    app->add_option("--r", c.r, "subspace dimension (vector space dim; affine: flat dim)")->required();
    app->add_option("--space", c.space, "projective or affine")
        ->check(CLI::IsMember({"projective", "affine"}));
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    f << text;
}

IncidenceMatrix build(const Common& c) {
    return parse_space(c.space) == Space::projective ? projective_incidence_matrix(c.n, c.q, c.r)
                                                     : affine_incidence_matrix(c.n, c.q, c.r);
}

std::string spectrum_csv(const InvariantSpectrum& s) {
    std::ostringstream os;
    os << "p,t,n,r,space,alpha,multiplicity,last_nonp\n";
    for (const auto& [a, m] : s.mult)
        os << s.p << ',' << s.t << ',' << s.n << ',' << s.r << ',' << to_string(s.space) << ',' << a << ','
           << m.get_str() << ',' << s.last_nonp.get_str() << '\n';
    return os.str();
}

SnfMethod parse_method(const std::string& m) {
    if (m == "auto") return SnfMethod::automatic;
    if (m == "elimination") return SnfMethod::elimination;
    return SnfMethod::certified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smith normal forms of point/subspace incidence matrices over finite geometries"};
    app.require_subcommand(1);
    int status = 0;

    // incidence -------------------------------------------------------------
    Common inc;
    inc.format = "mtx";
    auto* c_inc = app.add_subcommand("incidence", "build an incidence matrix (rows = subspaces, cols = points)");
    add_geometry(c_inc, inc);
    c_inc->add_option("--out", inc.out, "output path (a .json sidecar is written next to it)");
    c_inc->add_option("--format", inc.format)->check(CLI::IsMember({"mtx", "json"}));
    c_inc->callback([&] {
        const auto A = build(inc);
        const auto meta = sidecar_json(A);
        if (inc.format == "json") {
            nlohmann::json j = meta;
            j["entries"] = A.entries;
            emit(inc.out, j.dump(2) + "\n");
            return;
        }
        std::ostringstream os;
        write_matrix_market(os, A.to_sparse(), meta.dump());
        emit(inc.out, os.str());
        if (!inc.out.empty() && inc.out != "-") emit(inc.out + ".json", meta.dump(2) + "\n");
    });

    // snf -------------------------------------------------------------------
    Common sn;
    sn.format = "json";
    std::string snf_in, method = "auto";
    std::uint64_t snf_p = 0;
    auto* c_snf = app.add_subcommand("snf", "Smith normal form of a Matrix Market file or a generated matrix");
    c_snf->add_option("--in", snf_in, "Matrix Market input");
    c_snf->add_option("--q", sn.q);
    c_snf->add_option("--n", sn.n);
    c_snf->add_option("--r", sn.r);
    c_snf->add_option("--space", sn.space)->check(CLI::IsMember({"projective", "affine"}));
    c_snf->add_option("--p", snf_p, "prime for the p-spectrum (default: characteristic of --q)");
    c_snf->add_option("--method", method)->check(CLI::IsMember({"auto", "elimination", "certified"}));
    c_snf->add_option("--out", sn.out);
    c_snf->add_option("--format", sn.format)->check(CLI::IsMember({"json", "csv"}));
    c_snf->callback([&] {
        IntMatrix M;
        std::uint64_t p = snf_p;
        if (!snf_in.empty()) {
            M = read_matrix_market_file(snf_in).dense();
        } else {
            M = build(sn).dense();
            if (!p) p = split_prime_power(sn.q).value().first;
        }
        if (!p) throw InvalidArgument("--p is required with --in");
        SnfOptions opts;
        opts.method = parse_method(method);
        const SNFResult s = smith_normal_form(M, opts);
        if (sn.format == "csv") {
            std::ostringstream os;
            os << "index,invariant\n";
            for (std::size_t i = 0; i < s.invariants.size(); ++i) os << i << ',' << s.invariants[i].get_str() << '\n';
            emit(sn.out, os.str());
        } else {
            emit(sn.out, snf_json(s, p).dump(2) + "\n");
        }
    });

    // formula ---------------------------------------------------------------
    Common fo;
    fo.format = "json";
    std::string affine_form = "direct";
    auto* c_fo = app.add_subcommand("formula", "closed-form p-adic spectrum");
    add_geometry(c_fo, fo);
    c_fo->add_option("--affine-form", affine_form)->check(CLI::IsMember({"direct", "difference"}));
    c_fo->add_option("--out", fo.out);
    c_fo->add_option("--format", fo.format)->check(CLI::IsMember({"json", "csv"}));
    c_fo->callback([&] {
        InvariantSpectrum s;
        if (parse_space(fo.space) == Space::projective) s = projective_spectrum(fo.n, fo.q, fo.r);
        else if (affine_form == "direct") s = affine_spectrum_direct(fo.n, fo.q, fo.r);
        else s = affine_spectrum_difference(fo.n, fo.q, fo.r);
        if (fo.format == "csv") {
            emit(fo.out, spectrum_csv(s));
        } else {
            nlohmann::json j = s;
            if (s.space == Space::projective) j["hamada_p_rank"] = to_json_number(hamada_p_rank(fo.n, fo.q, fo.r));
            emit(fo.out, j.dump(2) + "\n");
        }
    });

    // charsum ---------------------------------------------------------------
    Common cs;
    cs.format = "csv";
    unsigned precision = 0;
    bool jacobi = false;
    auto* c_cs = app.add_subcommand("charsum", "Wan/valuation audit of the monomial basis, or a Jacobi-sum table");
    c_cs->add_option("--q", cs.q)->required();
    c_cs->add_option("--n", cs.n);
    c_cs->add_option("--r", cs.r);
    c_cs->add_option("--precision", precision, "ring precision N (default (r-1)t+4)");
    c_cs->add_flag("--jacobi", jacobi, "tabulate Stickelberger valuations against direct Jacobi sums");
    c_cs->add_option("--out", cs.out);
    c_cs->add_option("--format", cs.format)->check(CLI::IsMember({"json", "csv"}));
    c_cs->callback([&] {
        std::ostringstream os;
        if (jacobi) {
            const auto F = Field::create(FieldSpec::for_order(cs.q));
            CharacterTable T(F, precision ? precision : F->t() + 2);
            nlohmann::json rows = nlohmann::json::array();
            os << "b0,b1,stickelberger,valuation\n";
            for (std::uint64_t b0 = 1; b0 + 1 < cs.q; ++b0)
                for (std::uint64_t b1 = 1; b1 + 1 < cs.q; ++b1) {
                    if ((b0 + b1) % (cs.q - 1) == 0) continue;
                    const unsigned s = stickelberger_valuation(static_cast<std::int64_t>(b0),
                                                               static_cast<std::int64_t>(b1), cs.q);
                    const auto v = ring_valuation(jacobi_sum(cs.q - 1 - b0, cs.q - 1 - b1, T));
                    const std::string vs = v ? std::to_string(*v) : ">=" + std::to_string(T.precision());
                    if (!v || *v != s) status = 1;
                    os << b0 << ',' << b1 << ',' << s << ',' << vs << '\n';
                    rows.push_back({{"b0", b0}, {"b1", b1}, {"stickelberger", s}, {"valuation", vs}});
                }
            emit(cs.out, cs.format == "csv" ? os.str() : rows.dump(2) + "\n");
            return;
        }
        const auto audit = wan_audit(cs.n, cs.q, cs.r, precision ? std::optional<unsigned>(precision) : std::nullopt);
        if (!audit.ok()) status = 1;
        if (cs.format == "csv") {
            write_wan_csv(os, audit);
            emit(cs.out, os.str());
        } else {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& w : audit.rows)
                rows.push_back({{"b", w.b.b},
                                {"type", w.type},
                                {"alpha", w.alpha},
                                {"min_valuation", w.min_valuation},
                                {"wan_bound", w.wan_bound},
                                {"bound_holds", w.bound_holds}});
            emit(cs.out, nlohmann::json{{"p", audit.p},
                                        {"t", audit.t},
                                        {"n", audit.n},
                                        {"r", audit.r},
                                        {"subspaces", audit.subspaces},
                                        {"ok", audit.ok()},
                                        {"rows", rows}}
                                 .dump(2) +
                             "\n");
        }
    });

    // verify ----------------------------------------------------------------
    Common ve;
    ve.format = "json";
    std::size_t row_cap = 5000;
    std::string ve_in;
    auto* c_ve = app.add_subcommand("verify", "closed form against the brute-force SNF for one cell");
    add_geometry(c_ve, ve);
    c_ve->add_option("--row-cap", row_cap);
    c_ve->add_option("--in", ve_in, "Matrix Market file to use instead of the generated matrix");
    c_ve->add_option("--out", ve.out);
    c_ve->add_option("--format", ve.format)->check(CLI::IsMember({"json", "csv"}));
    c_ve->callback([&] {
        VerifyOptions opts;
        opts.row_cap = row_cap;
        if (!ve_in.empty()) opts.matrix_file = ve_in;
        GridResult g;
        g.entries.push_back(GridEntry{GridCell{parse_space(ve.space), ve.n, ve.q, ve.r, opts.matrix_file},
                                      CellStatus::fail,
                                      {},
                                      parse_space(ve.space) == Space::projective
                                          ? verify_projective(ve.n, ve.q, ve.r, opts)
                                          : verify_affine(ve.n, ve.q, ve.r, opts)});
        const auto& rep = *g.entries[0].report;
        if (rep.match) g.entries[0].status = CellStatus::pass;
        if (ve.format == "csv") {
            std::ostringstream os;
            write_grid_csv(os, g);
            emit(ve.out, os.str());
        } else {
            emit(ve.out, nlohmann::json(rep).dump(2) + "\n");
        }
        if (!rep.match) status = 1;
    });

    // grid ------------------------------------------------------------------
    std::string config, grid_out, grid_format = "csv", json_out;
    unsigned jobs = 0;
    std::size_t grid_cap = 0;
    bool no_timings = false;
    auto* c_grid = app.add_subcommand("grid", "verify every cell of a grid (default: q in {2,3,4,5,8,9}, n <= 4)");
    c_grid->add_option("--config", config, "key=value grid definition");
    c_grid->add_option("--jobs", jobs, "cells verified in parallel");
    c_grid->add_option("--row-cap", grid_cap, "skip cells with more rows (default 5000)");
    c_grid->add_option("--out", grid_out);
    c_grid->add_option("--format", grid_format)->check(CLI::IsMember({"json", "csv"}));
    c_grid->add_option("--json", json_out, "also write the JSON report here");
    c_grid->add_flag("--no-timings", no_timings, "omit timing fields for byte-stable output");
    c_grid->callback([&] {
        GridConfig cfg = config.empty() ? default_grid() : parse_grid_config_file(config);
        if (grid_cap) cfg.row_cap = grid_cap;
        const GridResult g = grid_report(cfg, jobs);
        std::ostringstream os;
        if (grid_format == "csv") write_grid_csv(os, g, !no_timings);
        else os << grid_json(g, !no_timings).dump(2) << '\n';
        emit(grid_out, os.str());
        if (!json_out.empty()) emit(json_out, grid_json(g, !no_timings).dump(2) + "\n");
        for (const auto& e : g.entries)
            if (e.status == CellStatus::fail || e.status == CellStatus::error)
                std::cerr << to_string(e.status) << ": " << to_string(e.cell.space) << " n=" << e.cell.n
                          << " q=" << e.cell.q << " r=" << e.cell.r << ": " << e.message << '\n';
        std::cerr << "grid: " << g.entries.size() << " cells, " << g.passed << " passed, " << g.failed << " failed, "
                  << g.skipped << " skipped, " << g.errors << " errors\n";
        if (!g.ok()) status = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return status;
}
