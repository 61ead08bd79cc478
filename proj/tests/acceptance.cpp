// Acceptance suite: one pass/fail line per criterion.  Expects the CLI
// binary's path as argv[1] for the byte-determinism checks.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "lenskein/diagram_io.hpp"
#include "lenskein/engine.hpp"
#include "lenskein/invariants.hpp"
#include "lenskein/projection.hpp"
#include "test_util.hpp"

using namespace lenskein;
using testutil::fig8_grid;
using testutil::random_diagram;
using testutil::trefoil_grid;

namespace {

int g_failures = 0;
std::map<int, std::string> g_lines;

void report(int num, bool pass, const std::string& name, const std::string& detail) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "CRITERION %2d %s  %s%s%s", num, pass ? "PASS" : "FAIL",
                  name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    g_lines[num] = buf;
    if (!pass) ++g_failures;
}

const std::vector<LensParams> kSpaces = {{1, 0}, {2, 1}, {3, 1}, {3, 2}, {4, 1},
                                         {4, 3}, {5, 1}, {5, 2}, {5, 3}, {5, 4}};

std::vector<LaurentPoly2> f_sequence(int up_to) {
    std::vector<LaurentPoly2> f;
    f.push_back(LaurentPoly2::constant(1));
    f.push_back(LaurentPoly2::constant(1) - LaurentPoly2::monomial(0, 1));
    for (int n = 2; n <= up_to; ++n) f.push_back(f[n - 2] - f[n - 1].mono_mul(0, 1));
    return f;
}

GridDiagram coincident_unknot(LensParams lens) {
    return GridDiagram(lens, 1, {Cell{0, 0}}, {Cell{0, 0}});
}

// ---------------------------------------------------------------------------
// Test-only oracle: the Alexander polynomial of a knot grid in the sphere via
// the winding-number matrix determinant (det = +-t^a (1-t)^(n-1) Delta).
// Independent of the skein engine; used to certify the sphere fixtures.

using Poly1 = std::map<int, long long>;

Poly1 poly1_mul(const Poly1& a, const Poly1& b) {
    Poly1 r;
    for (const auto& [e1, c1] : a)
        for (const auto& [e2, c2] : b) {
            r[e1 + e2] += c1 * c2;
            if (!r[e1 + e2]) r.erase(e1 + e2);
        }
    return r;
}

Poly1 poly1_det(std::vector<std::vector<Poly1>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Poly1 r;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].empty()) continue;
        std::vector<std::vector<Poly1>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly1> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Poly1 term = poly1_mul(m[0][j], poly1_det(std::move(minor)));
        for (const auto& [e, c] : term) {
            r[e] += j % 2 ? -c : c;
            if (!r[e]) r.erase(e);
        }
    }
    return r;
}

bool divide_one_minus_t(Poly1& f) {
    if (f.empty()) return false;
    long long carry = 0;
    Poly1 g;
    int lo = f.begin()->first, hi = f.rbegin()->first;
    for (int e = lo; e <= hi; ++e) {
        long long c = carry + (f.count(e) ? f[e] : 0);
        if (c) g[e] = c;
        carry = c;
    }
    if (carry != 0) return false;
    f = std::move(g);
    return true;
}

Poly1 alexander_oracle(const GridDiagram& d) {
    int n = d.n();
    RowTable t = row_table(d);
    auto winding = [&](int i, int j) {
        int w = 0;
        for (int c = 0; c < n; ++c) {
            int yo = -1, yx = -1;
            for (int y = 0; y < n; ++y) {
                if (t.o_x[y] == c) yo = y;
                if (t.x_x[y] == c) yx = y;
            }
            if (yo < 0 || yx < 0 || yo == yx) continue;
            int ylo = std::min(yo, yx), yhi = std::max(yo, yx);
            if (c + 1 <= i && ylo + 1 <= j && j <= yhi) w += yo < yx ? -1 : 1;
        }
        return w;
    };
    std::vector<std::vector<Poly1>> m(n, std::vector<Poly1>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j][winding(i, j)] = 1;
    Poly1 det = poly1_det(std::move(m));
    for (int k = 0; k + 1 < n; ++k)
        if (!divide_one_minus_t(det)) return {};
    if (det.empty()) return det;
    int lo = det.begin()->first;
    long long sign = det.begin()->second > 0 ? 1 : -1;
    Poly1 out;
    for (const auto& [e, c] : det) out[e - lo] = sign * c;
    return out;
}

// ---------------------------------------------------------------------------

void criterion_1_2_family() {
    auto f = f_sequence(8);
    auto t0 = std::chrono::steady_clock::now();
    bool values_ok = true;
    HomflyEngine engine;
    for (int n = 0; n <= 8; ++n) {
        if (engine.value(fixture_ln(n)) != f[n].mono_mul(-5 * n - 3, 0)) values_ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream detail;
    detail << "J(L_n) = a^(-5n-3) f_n for n = 0..8 in " << secs << "s";
    report(1, values_ok && secs < 60.0, "family exactness", detail.str());

    bool inv_ok = true;
    for (int n = 0; n <= 8; ++n) {
        GridDiagram d = fixture_ln(n);
        inv_ok = inv_ok && tb_q(d) == Rational(-10 * n - 4, 5);
        inv_ok = inv_ok && rot_q(d) == Rational(-n);
        inv_ok = inv_ok && sl_T(d) == Rational(-5 * n - 4, 5);
        ProjectionCounts pc = counts(all_left_up_projection(d));
        inv_ok = inv_ok && pc.w == -n - 2 && pc.c_d == 0 && pc.mu == 2 && pc.lambda == -8;
    }
    report(2, inv_ok, "family invariants and drawn-projection counters",
           "tb = -2n-4/5, rot = -n, sl_T = -n-4/5; w = -n-2, c_d = 0, mu = 2, lambda = -8");
}

void criterion_3_normalization() {
    bool ok = true;
    for (int p = 1; p <= 7; ++p) {
        for (int q = 0; q < std::max(1, p); ++q) {
            if (!lens_params_ok({p, q})) continue;
            ok = ok && homfly(coincident_unknot({p, q})).value == LaurentPoly2::monomial(-p + 1, 0);
        }
    }
    GridDiagram uu(LensParams{1, 0}, 2, {Cell{0, 0}, Cell{1, 1}}, {Cell{0, 0}, Cell{1, 1}});
    LaurentPoly2 split = LaurentPoly2::monomial(-1, -1) - LaurentPoly2::monomial(1, -1);
    ok = ok && homfly(uu).value == split;
    report(3, ok, "normalization", "J(U) = a^(1-p) for p <= 7; J(U+U) = (a^-1 - a)/z in the sphere");
}

struct TripleDegrees {
    int p, e_pos, e_neg, e_res;
};

void criterion_4_skein(std::vector<TripleDegrees>& degrees_out) {
    std::mt19937_64 rng(20260810);
    std::uniform_int_distribution<int> pick_space(0, static_cast<int>(kSpaces.size()) - 1);
    std::uniform_int_distribution<int> pick_n(2, 4);
    int done = 0, bad = 0;
    HomflyEngine engine;
    while (done < 200) {
        LensParams lens = kSpaces[pick_space(rng)];
        GridDiagram d = random_diagram(lens, pick_n(rng), rng);
        if (!is_valid(d)) continue;
        int crossing = -1;
        for (int c = 0; c < d.n(); ++c)
            if (classify_column_commutation(d, c) == CommutationClass::Interleaving) {
                crossing = c;
                break;
            }
        if (crossing < 0) continue;
        ++done;
        int p = lens.p;
        GridDiagram commuted = commute_columns(d, crossing);
        GridDiagram resolved = resolve_skein(d, crossing);
        bool dpos = skein_sign(d, crossing) == SkeinSign::Positive;
        LaurentPoly2 jpos = engine.value(dpos ? d : commuted);
        LaurentPoly2 jneg = engine.value(dpos ? commuted : d);
        LaurentPoly2 jres = engine.value(resolved);
        if (!(jpos.mono_mul(-p, 0) - jneg.mono_mul(p, 0) - jres.mono_mul(0, 1)).is_zero()) ++bad;
        degrees_out.push_back(
            {p, jpos.a_min_degree(), jneg.a_min_degree(), jres.a_min_degree()});
    }
    std::ostringstream detail;
    detail << done << " sampled triples (p <= 5, grid <= 4), " << bad << " violations";
    report(4, bad == 0, "skein identity", detail.str());
}

struct CensusOutcome {
    long long diagrams = 0;
    long long proj_bad = 0;
    long long moves_bad = 0;
    long long fwm_bad = 0;
    long long lift_bad = 0;
    long long quad_applicable = 0;
    long long quad_bad = 0;
    long long engine_errors = 0;
};

bool all_projections_agree(const GridDiagram& d) {
    RowTable t = row_table(d);
    int n = d.n(), p = d.lens().p;
    std::vector<int> free_rows, free_cols;
    for (int y = 0; y < n; ++y)
        if (t.o_x[y] != t.x_x[y]) {
            free_rows.push_back(y);
            free_cols.push_back(t.o_x[y] % n);
        }
    int bits = static_cast<int>(free_rows.size() + free_cols.size());
    bool first = true, agree = true;
    std::array<Rational, 4> base;
    for (long long mask = 0; mask < (1LL << bits); ++mask) {
        std::vector<int8_t> h(n, 1), v(n, 1);
        for (std::size_t i = 0; i < free_rows.size(); ++i)
            h[free_rows[i]] = mask >> i & 1 ? -1 : 1;
        for (std::size_t i = 0; i < free_cols.size(); ++i)
            v[free_cols[i]] = mask >> (free_rows.size() + i) & 1 ? -1 : 1;
        ProjectionCounts pc = counts(make_projection(d, h, v));
        std::array<Rational, 4> now = {tb_q(pc, p), rot_q(pc, p), sl_plus(pc, p),
                                       sl_minus(pc, p)};
        if (first) {
            base = now;
            first = false;
        } else if (now != base) {
            agree = false;
        }
    }
    return agree;
}

CensusOutcome census_pass(LensParams lens, int max_grid) {
    CensusOutcome out;
    HomflyEngine engine;
    enumerate_diagrams(lens, max_grid, [&](const GridDiagram& d) {
        ++out.diagrams;
        int p = lens.p;
        // projection independence
        if (!all_projections_agree(d)) ++out.proj_bad;
        // lift identity
        if (tb_q(d) != tb_q(lift_to_s3(d)) / Rational(p)) ++out.lift_bad;
        // quadratic residues on knots
        if (components(d).components.size() == 1) {
            QuadResidueReport qr = quad_residue_check(d);
            if (qr.applicable) {
                ++out.quad_applicable;
                if (!(qr.mu_lambda_ok && qr.mu_sq_q_ok)) ++out.quad_bad;
            }
        }
        try {
            // self-linking bound
            if (!engine.fwm(d).holds) ++out.fwm_bad;
            // move invariance
            Rational tb0 = tb_q(d);
            LaurentPoly2 j0 = engine.value(d);
            RowTable t = row_table(d);
            for (MarkType mark : {MarkType::X, MarkType::O}) {
                const auto& cells = mark == MarkType::X ? d.xs() : d.os();
                bool degenerate = t.o_x[cells[0].y] == t.x_x[cells[0].y];
                for (Corner corner : {Corner::NW, Corner::NE, Corner::SW, Corner::SE}) {
                    GridDiagram s = stabilize(d, 0, StabilizationType{mark, corner});
                    if (engine.value(s) != j0) ++out.moves_bad;
                    if (!degenerate) {
                        bool legendrian = corner == Corner::NW || corner == Corner::SE;
                        if (legendrian != (tb_q(s) == tb0)) ++out.moves_bad;
                    }
                }
            }
            for (int c = 0; d.n() >= 2 && c < d.n(); ++c) {
                if (classify_column_commutation(d, c) != CommutationClass::NonInterleaving)
                    continue;
                GridDiagram moved = commute_columns(d, c);
                if (engine.value(moved) != j0 || tb_q(moved) != tb0) ++out.moves_bad;
            }
        } catch (const Error&) {
            ++out.engine_errors;
        }
    });
    return out;
}

void criteria_census(const std::vector<TripleDegrees>& triples) {
    CensusOutcome total;
    for (LensParams lens : kSpaces) {
        CensusOutcome o = census_pass(lens, 3);
        total.diagrams += o.diagrams;
        total.proj_bad += o.proj_bad;
        total.moves_bad += o.moves_bad;
        total.fwm_bad += o.fwm_bad;
        total.lift_bad += o.lift_bad;
        total.quad_applicable += o.quad_applicable;
        total.quad_bad += o.quad_bad;
        total.engine_errors += o.engine_errors;
    }
    std::ostringstream base;
    base << total.diagrams << " census diagrams (p <= 5, grid <= 3)";

    report(5, total.proj_bad == 0, "projection independence",
           base.str() + ", " + std::to_string(total.proj_bad) + " disagreements");
    report(6, total.moves_bad == 0 && total.engine_errors == 0, "move invariance",
           base.str() + ", " + std::to_string(total.moves_bad) + " violations, " +
               std::to_string(total.engine_errors) + " engine errors");

    // sharpness on trivial diagrams, plus the degree inequality on triples
    bool sharp_ok = true;
    HomflyEngine engine;
    for (LensParams lens : kSpaces) {
        std::vector<int> m(lens.p, 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            long long sum = 0;
            for (int v : m) sum += v;
            if (sum > 0) {
                GridDiagram d = trivial_diagram(lens, m);
                if (!engine.fwm(d).sharp) sharp_ok = false;
            }
            if (i == lens.p || left == 0) return;
            for (int take = 0; take <= left; ++take) {
                m[i] = take;
                rec(i + 1, left - take);
            }
            m[i] = 0;
        };
        rec(0, 3);
    }
    bool degree_ok = true;
    for (const TripleDegrees& t : triples)
        if (t.e_pos < std::min(t.e_neg + 2 * t.p, t.e_res + t.p)) degree_ok = false;
    report(7, total.fwm_bad == 0 && sharp_ok && degree_ok && total.engine_errors == 0,
           "self-linking bound",
           base.str() + ", " + std::to_string(total.fwm_bad) +
               " violations; sharp on trivial diagrams: " + (sharp_ok ? "yes" : "NO") +
               "; degree inequality on " + std::to_string(triples.size()) + " triples: " +
               (degree_ok ? "holds" : "FAILS"));
    report(9, total.lift_bad == 0, "lift identity",
           base.str() + ", tb = tb(lift)/p failed " + std::to_string(total.lift_bad) + " times");
    report(11, total.quad_bad == 0, "quadratic residues",
           std::to_string(total.quad_applicable) + " applicable census knots, " +
               std::to_string(total.quad_bad) + " violations");
}

void criterion_8_sphere_oracle() {
    // Published HOMFLY values transcribed with v = a, J(U) = 1, re-derived
    // here from the skein relation chain through the Hopf links.
    LaurentPoly2 one = LaurentPoly2::constant(1);
    LaurentPoly2 z = LaurentPoly2::monomial(0, 1);
    LaurentPoly2 split = LaurentPoly2::monomial(-1, -1) - LaurentPoly2::monomial(1, -1);
    // v^-1 J(L+) - v J(L-) = z J(L0)
    LaurentPoly2 hopf_pos = (split + z * one).mono_mul(1, 0) * LaurentPoly2::monomial(1, 0);
    hopf_pos = (split.mono_mul(1, 0) + z).mono_mul(1, 0);            // J(H+) = v(v J(UU) + z)
    LaurentPoly2 hopf_neg = (split.mono_mul(-1, 0) - z).mono_mul(-1, 0);  // mirror chain
    LaurentPoly2 trefoil_right = (one.mono_mul(1, 0) + z * hopf_pos).mono_mul(1, 0);
    LaurentPoly2 fig8 = (one.mono_mul(1, 0) + z * hopf_neg).mono_mul(1, 0);

    LaurentPoly2 trefoil_table = LaurentPoly2::monomial(2, 0, 2) - LaurentPoly2::monomial(4, 0) +
                                 LaurentPoly2::monomial(2, 2);
    LaurentPoly2 fig8_table = LaurentPoly2::monomial(-2, 0) - one + LaurentPoly2::monomial(2, 0) -
                              LaurentPoly2::monomial(0, 2);
    bool oracle_consistent = trefoil_right == trefoil_table && fig8 == fig8_table;

    // certify the fixture grids independently of the engine
    Poly1 delta_trefoil = {{0, 1}, {1, -1}, {2, 1}};
    Poly1 delta_fig8 = {{0, 1}, {1, -3}, {2, 1}};
    bool knots_certified = alexander_oracle(trefoil_grid()) == delta_trefoil &&
                           alexander_oracle(fig8_grid()) == delta_fig8 &&
                           components(trefoil_grid()).components.size() == 1 &&
                           components(fig8_grid()).components.size() == 1;

    HomflyEngine engine;
    bool engine_matches = engine.value(trefoil_grid()) == trefoil_table &&
                          engine.value(fig8_grid()) == fig8_table;
    report(8, oracle_consistent && knots_certified && engine_matches, "sphere oracle",
           std::string("skein-derived table values consistent: ") +
               (oracle_consistent ? "yes" : "NO") + "; fixtures certified by Alexander: " +
               (knots_certified ? "yes" : "NO") + "; engine matches: " +
               (engine_matches ? "yes" : "NO"));
}

std::string run_command(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    char buf[512];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    pclose(pipe);
    return out;
}

void criterion_10_determinism(const std::string& cli) {
    GridDiagram clasp(LensParams{2, 1}, 2, {Cell{0, 0}, Cell{1, 1}}, {Cell{2, 0}, Cell{3, 1}});
    std::vector<GridDiagram> ds = {fixture_ln(0), fixture_ln(1), fixture_ln(2), fixture_ln(3),
                                   fixture_ln(4), clasp, trefoil_grid(),
                                   trivial_diagram(LensParams{5, 2}, {0, 1, 2, 0, 3})};
    bool engine_ok = true;
    for (const GridDiagram& d : ds) {
        LaurentPoly2 base = homfly(d).value;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            EngineOptions opt;
            opt.seed = seed;
            if (homfly(d, opt).value != base) engine_ok = false;
        }
        EngineOptions par;
        par.parallel = true;
        par.seed = 3;
        if (homfly(d, par).value != base) engine_ok = false;
    }

    bool cli_ok = false;
    std::string cli_note = "cli binary not supplied";
    if (!cli.empty()) {
        std::string file = "acceptance_fixture.grid";
        std::ofstream(file) << serialize_diagram(fixture_ln(2));
        std::string a1 = run_command(cli + " homfly " + file);
        std::string a2 = run_command(cli + " homfly " + file);
        std::string b1 = run_command(cli + " invariants " + file + " --all-projections");
        std::string b2 = run_command(cli + " invariants " + file + " --all-projections");
        cli_ok = !a1.empty() && a1 == a2 && !b1.empty() && b1 == b2;
        cli_note = cli_ok ? "cli output byte-identical across runs" : "cli output differed";
        std::remove(file.c_str());
    }
    report(10, engine_ok && cli_ok, "determinism",
           std::string("10 seeds and parallel evaluation agree: ") +
               (engine_ok ? "yes" : "NO") + "; " + cli_note);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    criterion_1_2_family();
    criterion_3_normalization();
    std::vector<TripleDegrees> triples;
    criterion_4_skein(triples);
    criteria_census(triples);
    criterion_8_sphere_oracle();
    criterion_10_determinism(cli);
    for (const auto& [num, line] : g_lines) std::printf("%s\n", line.c_str());
    if (g_failures == 0) {
        std::printf("ACCEPTANCE: all criteria satisfied\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
}
