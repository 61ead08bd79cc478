// lenskein: toroidal grid diagrams in lens spaces, their Legendrian and
// transverse invariants, and the lens-space HOMFLY polynomial.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lenskein/diagram_io.hpp"
#include "lenskein/engine.hpp"
#include "lenskein/invariants.hpp"
#include "lenskein/laurent.hpp"
#include "lenskein/lens.hpp"
#include "lenskein/moves.hpp"
#include "lenskein/projection.hpp"

using namespace lenskein;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidDiagram = 1;
constexpr int kExitEngine = 2;
constexpr int kExitUsage = 3;

GridDiagram read_diagram_or_exit(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        std::exit(kExitInvalidDiagram);
    }
    try {
        GridDiagram d = parse_diagram(in);
        ValidityReport report = validate(d);
        if (!report.ok()) {
            std::cerr << report.message << '\n';
            std::exit(kExitInvalidDiagram);
        }
        return d;
    } catch (const Error& e) {
        std::cerr << errc_name(e.code) << ": " << e.what() << '\n';
        std::exit(kExitInvalidDiagram);
    }
}

int engine_exit(const Error& e) {
    std::cerr << errc_name(e.code) << ": " << e.what() << '\n';
    return e.code == Errc::PlanSearchFailed || e.code == Errc::CycleDetected ? kExitEngine
                                                                             : kExitInvalidDiagram;
}

int cmd_validate(const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        std::cerr << "error: cannot open '" << file << "'\n";
        return kExitInvalidDiagram;
    }
    try {
        GridDiagram d = parse_diagram(in);
        ValidityReport report = validate(d);
        if (report.ok()) {
            std::cout << "OK\n";
            return kExitOk;
        }
        std::cout << report.message << '\n';
        return kExitInvalidDiagram;
    } catch (const Error& e) {
        std::cout << errc_name(e.code) << ": " << e.what() << '\n';
        return kExitInvalidDiagram;
    }
}

// All 2^(2n) arc choices, holding coincident-pair entries fixed.
bool all_projections_agree(const GridDiagram& d, long long* checked) {
    RowTable t = row_table(d);
    int n = d.n();
    std::vector<int> free_rows, free_cols;
    for (int y = 0; y < n; ++y)
        if (t.o_x[y] != t.x_x[y]) free_rows.push_back(y);
    for (int y = 0; y < n; ++y)
        if (t.o_x[y] != t.x_x[y]) free_cols.push_back(t.o_x[y] % n);
    int p = d.lens().p;
    int bits = static_cast<int>(free_rows.size() + free_cols.size());
    Rational tb0, rot0, slp0, slm0;
    bool first = true;
    bool agree = true;
    for (long long mask = 0; mask < (1LL << bits); ++mask) {
        std::vector<int8_t> h(n, 1), v(n, 1);
        for (std::size_t i = 0; i < free_rows.size(); ++i)
            h[free_rows[i]] = mask >> i & 1 ? -1 : 1;
        for (std::size_t i = 0; i < free_cols.size(); ++i)
            v[free_cols[i]] = mask >> (free_rows.size() + i) & 1 ? -1 : 1;
        ProjectionCounts pc = counts(make_projection(d, h, v));
        Rational tb = tb_q(pc, p), rot = rot_q(pc, p), slp = sl_plus(pc, p), slm = sl_minus(pc, p);
        if (first) {
            tb0 = tb;
            rot0 = rot;
            slp0 = slp;
            slm0 = slm;
            first = false;
        } else if (tb != tb0 || rot != rot0 || slp != slp0 || slm != slm0) {
            agree = false;
        }
    }
    if (checked) *checked = 1LL << bits;
    return agree;
}

int cmd_invariants(const std::string& file, bool all_projections) {
    GridDiagram d = read_diagram_or_exit(file);
    ProjectionCounts pc = counts(default_projection(d));
    int p = d.lens().p;
    std::cout << "tb_Q  = " << tb_q(pc, p).str() << '\n';
    std::cout << "rot_Q = " << rot_q(pc, p).str() << '\n';
    std::cout << "sl_+  = " << sl_plus(pc, p).str() << '\n';
    std::cout << "sl_-  = " << sl_minus(pc, p).str() << '\n';
    std::cout << "sl_T  = " << sl_T(d).str() << '\n';
    std::cout << "mu    = " << pc.mu << '\n';
    std::cout << "lambda = " << pc.lambda << '\n';
    ComponentDecomposition dec = components(d);
    std::cout << "components =";
    for (const Component& c : dec.components)
        std::cout << " class " << c.klass << " (grid " << c.grid_number << ")"
                  << (c.coincident ? " [split unknot]" : "");
    std::cout << '\n';
    if (all_projections) {
        std::cout << "counters w=" << pc.w << " c=" << pc.c << " c_d=" << pc.c_d
                  << " c_u=" << pc.c_u << " mu=" << pc.mu << " lambda=" << pc.lambda << '\n';
        long long checked = 0;
        bool agree = all_projections_agree(d, &checked);
        std::cout << "projections checked = " << checked
                  << (agree ? " (all agree)" : " (DISAGREEMENT)") << '\n';
        if (!agree) return kExitInvalidDiagram;
    }
    return kExitOk;
}

int cmd_homfly(const std::string& file, const std::string& trace_path, bool memo_stats) {
    GridDiagram d = read_diagram_or_exit(file);
    EngineOptions opt;
    opt.record_trace = !trace_path.empty();
    try {
        HomflyResult res = homfly(d, opt);
        std::cout << render(res.value) << '\n';
        if (!trace_path.empty() && res.trace) {
            std::ofstream out(trace_path);
            if (!out) {
                std::cerr << "error: cannot write '" << trace_path << "'\n";
                return kExitUsage;
            }
            out << "# skein trace (tree)\n" << render_trace_tree(*res.trace);
            out << "# skein trace (graph)\n" << render_trace_graph(*res.trace);
        }
        if (memo_stats) {
            std::cout << "memo entries=" << res.stats.entries << " hits=" << res.stats.hits
                      << " lookups=" << res.stats.lookups << '\n';
        }
        return kExitOk;
    } catch (const Error& e) {
        return engine_exit(e);
    }
}

int cmd_fwm(const std::string& file) {
    GridDiagram d = read_diagram_or_exit(file);
    try {
        FwmReport r = fwm_report(d);
        std::cout << "sl_T  = " << r.sl_T.str() << '\n';
        std::cout << "e     = " << r.e << '\n';
        std::cout << "bound = " << r.bound.str() << '\n';
        std::cout << (r.holds ? "HOLDS" : "VIOLATED") << (r.sharp ? " SHARP" : "") << '\n';
        return r.holds ? kExitOk : kExitInvalidDiagram;
    } catch (const Error& e) {
        return engine_exit(e);
    }
}

int cmd_trivial(int p, int q, const std::string& index) {
    std::vector<int> m;
    std::stringstream ss(index);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            m.push_back(v);
        } catch (const std::exception&) {
            std::cerr << "error: malformed index entry '" << tok << "'\n";
            return kExitUsage;
        }
    }
    try {
        GridDiagram d = trivial_diagram(LensParams{p, q}, m);
        std::cout << serialize_diagram(d);
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << errc_name(e.code) << ": " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_fixture_ln(int n) {
    try {
        std::cout << serialize_diagram(fixture_ln(n));
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << errc_name(e.code) << ": " << e.what() << '\n';
        return kExitUsage;
    }
}

int cmd_lift(const std::string& file) {
    GridDiagram d = read_diagram_or_exit(file);
    std::cout << serialize_diagram(lift_to_s3(d));
    return kExitOk;
}

int census_fail(const GridDiagram& d, const std::string& what) {
    std::cout << "counterexample (" << what << "):\n" << serialize_diagram(d);
    return kExitInvalidDiagram;
}

int cmd_census(int p, int q, int max_grid, const std::string& check) {
    LensParams lens{p, q};
    if (!lens_params_ok(lens)) {
        std::cerr << "error: bad lens parameters\n";
        return kExitUsage;
    }
    long long diagrams = 0, tested = 0;
    int failures = 0;
    GridDiagram failed(lens, 1, {Cell{0, 0}}, {Cell{0, 0}});
    std::string fail_what;
    HomflyEngine engine;
    try {
        enumerate_diagrams(lens, max_grid, [&](const GridDiagram& d) {
            if (failures > 0) return;
            ++diagrams;
            if (check == "fwm") {
                FwmReport r = engine.fwm(d);
                ++tested;
                if (!r.holds) {
                    ++failures;
                    failed = d;
                    fail_what = "fwm bound violated";
                }
            } else if (check == "skein") {
                for (int c = 0; d.n() >= 2 && c < d.n(); ++c) {
                    if (classify_column_commutation(d, c) != CommutationClass::Interleaving)
                        continue;
                    GridDiagram commuted = commute_columns(d, c);
                    GridDiagram resolved = resolve_skein(d, c);
                    const GridDiagram& pos = skein_sign(d, c) == SkeinSign::Positive ? d : commuted;
                    const GridDiagram& neg = skein_sign(d, c) == SkeinSign::Positive ? commuted : d;
                    LaurentPoly2 lhs = engine.value(pos).mono_mul(-p, 0) -
                                       engine.value(neg).mono_mul(p, 0) -
                                       engine.value(resolved).mono_mul(0, 1);
                    ++tested;
                    if (!lhs.is_zero()) {
                        ++failures;
                        failed = d;
                        fail_what = "skein relation violated at columns (" + std::to_string(c) +
                                    "," + std::to_string((c + 1) % d.n()) + ")";
                        break;
                    }
                }
            } else if (check == "projections") {
                ++tested;
                if (!all_projections_agree(d, nullptr)) {
                    ++failures;
                    failed = d;
                    fail_what = "projection dependence";
                }
            } else if (check == "moves") {
                Rational tb0 = tb_q(d);
                LaurentPoly2 j0 = engine.value(d);
                RowTable t = row_table(d);
                for (MarkType mark : {MarkType::X, MarkType::O}) {
                    const auto& cells = mark == MarkType::X ? d.xs() : d.os();
                    bool degenerate = t.o_x[cells[0].y] == t.x_x[cells[0].y];
                    for (Corner corner : {Corner::NW, Corner::NE, Corner::SW, Corner::SE}) {
                        GridDiagram s = stabilize(d, 0, StabilizationType{mark, corner});
                        ++tested;
                        if (engine.value(s) != j0) {
                            ++failures;
                            failed = d;
                            fail_what = "homfly changed under stabilization";
                            return;
                        }
                        // a coincident pair has no kink directions to add
                        if (degenerate) continue;
                        bool legendrian = corner == Corner::NW || corner == Corner::SE;
                        if (legendrian != (tb_q(s) == tb0)) {
                            ++failures;
                            failed = d;
                            fail_what = "tb behavior under stabilization";
                            return;
                        }
                    }
                }
                for (int c = 0; d.n() >= 2 && c < d.n(); ++c) {
                    if (classify_column_commutation(d, c) != CommutationClass::NonInterleaving)
                        continue;
                    GridDiagram moved = commute_columns(d, c);
                    ++tested;
                    if (engine.value(moved) != j0 || tb_q(moved) != tb0) {
                        ++failures;
                        failed = d;
                        fail_what = "non-interleaving commutation not an isotopy";
                        return;
                    }
                }
            } else {
                throw Error(Errc::BadIndex, "unknown check '" + check + "'");
            }
        });
    } catch (const Error& e) {
        if (e.code == Errc::BadIndex) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        return engine_exit(e);
    }
    std::cout << "census L(" << p << ',' << q << ") max-grid " << max_grid << " check " << check
              << ": " << diagrams << " diagrams, " << tested << " checks, " << failures
              << " counterexamples\n";
    if (failures > 0) return census_fail(failed, fail_what);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toroidal grid diagrams in L(p,q): invariants and HOMFLY"};
    app.require_subcommand(1);

    std::string file, trace_path, index, check;
    bool all_projections = false, memo_stats = false;
    int p = 1, q = 0, n = 0, max_grid = 2;

    auto* validate_cmd = app.add_subcommand("validate", "check a diagram file");
    validate_cmd->add_option("file", file)->required();

    auto* inv = app.add_subcommand("invariants", "tb_Q, rot_Q, sl_+/-, sl_T, mu, lambda, classes");
    inv->add_option("file", file)->required();
    inv->add_flag("--all-projections", all_projections,
                  "verify agreement across all arc choices and print raw counters");

    auto* hom = app.add_subcommand("homfly", "HOMFLY polynomial of the diagram's link");
    hom->add_option("file", file)->required();
    hom->add_option("--trace", trace_path, "write the skein trace to this file");
    hom->add_flag("--memo-stats", memo_stats, "print memo table statistics");

    auto* fwm = app.add_subcommand("fwm", "self-linking bound report");
    fwm->add_option("file", file)->required();

    auto* triv = app.add_subcommand("trivial", "emit the trivial link diagram D(I)");
    triv->add_option("--p", p)->required();
    triv->add_option("--q", q)->required();
    triv->add_option("--index", index, "comma-separated multiplicities m0,...,m(p-1)")->required();

    auto* fix = app.add_subcommand("fixture-ln", "emit the L(5,1) family diagram");
    fix->add_option("--n", n)->required();

    auto* lift = app.add_subcommand("lift", "emit the p-fold cover diagram in L(1,0)");
    lift->add_option("file", file)->required();

    auto* census = app.add_subcommand("census", "enumerate canonical diagrams and run a check");
    census->add_option("--p", p)->required();
    census->add_option("--q", q)->required();
    census->add_option("--max-grid", max_grid)->required();
    census->add_option("--check", check, "one of fwm, skein, projections, moves")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (validate_cmd->parsed()) return cmd_validate(file);
    if (inv->parsed()) return cmd_invariants(file, all_projections);
    if (hom->parsed()) return cmd_homfly(file, trace_path, memo_stats);
    if (fwm->parsed()) return cmd_fwm(file);
    if (triv->parsed()) return cmd_trivial(p, q, index);
    if (fix->parsed()) return cmd_fixture_ln(n);
    if (lift->parsed()) return cmd_lift(file);
    if (census->parsed()) return cmd_census(p, q, max_grid, check);
    return kExitUsage;
}
