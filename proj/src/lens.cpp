#include "lenskein/lens.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace lenskein {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::BadLensParams: return "BadLensParams";
        case Errc::BadIndex: return "BadIndex";
        case Errc::BadColumn: return "BadColumn";
        case Errc::BadRow: return "BadRow";
        case Errc::BadSite: return "BadSite";
        case Errc::IllegalCommutation: return "IllegalCommutation";
        case Errc::NotASkeinCrossing: return "NotASkeinCrossing";
        case Errc::NotAKnot: return "NotAKnot";
        case Errc::EmptyIndex: return "EmptyIndex";
        case Errc::EmptyLink: return "EmptyLink";
        case Errc::NoReductionNeeded: return "NoReductionNeeded";
        case Errc::PlanSearchFailed: return "PlanSearchFailed";
        case Errc::CycleDetected: return "CycleDetected";
        case Errc::InternalError: return "InternalError";
        case Errc::ParseError: return "ParseError";
    }
    return "Error";
}

bool lens_params_ok(LensParams lens) {
    if (lens.p < 1) return false;
    if (lens.q < 0 || lens.q >= lens.p) {
        if (!(lens.p == 1 && lens.q == 0)) return false;
    }
    if (lens.p == 1) return lens.q == 0;
    return lens.q >= 1 && std::gcd(lens.p, lens.q) == 1;
}

namespace {

int pos_mod(long long a, int m) {
    int r = static_cast<int>(a % m);
    return r < 0 ? r + m : r;
}

}  // namespace

GridDiagram::GridDiagram(LensParams lens, int n, std::vector<Cell> os, std::vector<Cell> xs)
    : lens_(lens), n_(n), os_(std::move(os)), xs_(std::move(xs)) {
    int w = std::max(1, lens_.p * n_);
    int rows = std::max(1, n_);
    for (auto* v : {&os_, &xs_}) {
        for (Cell& c : *v) {
            c.x = pos_mod(c.x, w);
            c.y = pos_mod(c.y, rows);
        }
        std::sort(v->begin(), v->end());
    }
}

ValidityReport validate(const GridDiagram& d) {
    if (!lens_params_ok(d.lens())) {
        std::ostringstream msg;
        msg << "BadLensParams: L(" << d.lens().p << "," << d.lens().q
            << ") needs gcd(p,q)=1 and 0<q<p (q=0 only for p=1)";
        return {Violation::BadLensParams, msg.str()};
    }
    int n = d.n();
    if (n < 1 || static_cast<int>(d.os().size()) != n || static_cast<int>(d.xs().size()) != n) {
        return {Violation::RowViolation, "RowViolation: marking counts do not match grid number"};
    }
    std::vector<int> o_in_row(n, 0), x_in_row(n, 0), o_in_col(n, 0), x_in_col(n, 0);
    for (const Cell& c : d.os()) {
        ++o_in_row[c.y];
        ++o_in_col[c.x % n];
    }
    for (const Cell& c : d.xs()) {
        ++x_in_row[c.y];
        ++x_in_col[c.x % n];
    }
    for (int y = 0; y < n; ++y) {
        if (o_in_row[y] != 1 || x_in_row[y] != 1) {
            std::ostringstream msg;
            msg << "RowViolation: row " << y << " holds " << o_in_row[y] << " O and "
                << x_in_row[y] << " X markings";
            return {Violation::RowViolation, msg.str()};
        }
    }
    for (int c = 0; c < n; ++c) {
        if (o_in_col[c] != 1 || x_in_col[c] != 1) {
            std::ostringstream msg;
            msg << "ColumnViolation: column annulus " << c << " holds " << o_in_col[c]
                << " O and " << x_in_col[c] << " X markings";
            return {Violation::ColumnViolation, msg.str()};
        }
    }
    // With one O and one X per row and per column annulus, a shared cell is
    // automatically alone in both, i.e. a split unknot.  Guard anyway.
    for (const Cell& o : d.os()) {
        for (const Cell& x : d.xs()) {
            if (o == x) {
                bool lone = o_in_row[o.y] == 1 && x_in_row[o.y] == 1 &&
                            o_in_col[o.x % n] == 1 && x_in_col[o.x % n] == 1;
                if (!lone) {
                    return {Violation::IllegalCoincidence,
                            "IllegalCoincidence: shared cell is not a lone component"};
                }
            }
        }
    }
    return {};
}

RowTable row_table(const GridDiagram& d) {
    RowTable t;
    t.o_x.assign(d.n(), -1);
    t.x_x.assign(d.n(), -1);
    for (const Cell& c : d.os()) t.o_x[c.y] = c.x;
    for (const Cell& c : d.xs()) t.x_x[c.y] = c.x;
    return t;
}

int mod_inverse(int a, int m) {
    if (m == 1) return 0;
    int t = 0, new_t = 1, r = m, new_r = pos_mod(a, m);
    while (new_r != 0) {
        int qt = r / new_r;
        t -= qt * new_t;
        std::swap(t, new_t);
        r -= qt * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw Error(Errc::BadLensParams, "mod_inverse: not coprime");
    return pos_mod(t, m);
}

int annulus_level(const GridDiagram& d, Cell c) {
    int n = d.n(), p = d.lens().p;
    if (p == 1) return c.y;
    int j = c.x / n;
    int qinv = mod_inverse(d.lens().q, p);
    int k = pos_mod(-static_cast<long long>(j) * qinv, p);
    return k * n + c.y;
}

Cell cell_at_level(const GridDiagram& d, int annulus_class, int level) {
    int n = d.n(), p = d.lens().p;
    int k = level / n, y = level % n;
    int j = pos_mod(-static_cast<long long>(k) * d.lens().q, p);
    return Cell{j * n + annulus_class, y};
}

GridDiagram translate(const GridDiagram& d, int dx, int dy) {
    int n = d.n(), w = d.width(), qn = d.lens().q * n;
    dx = pos_mod(dx, w);
    dy = pos_mod(dy, n);
    auto move = [&](Cell c) {
        int y = c.y + dy;
        int wrap = y >= n ? 1 : 0;
        return Cell{pos_mod(c.x - wrap * qn + dx, w), y % n};
    };
    std::vector<Cell> os, xs;
    os.reserve(n);
    xs.reserve(n);
    for (Cell c : d.os()) os.push_back(move(c));
    for (Cell c : d.xs()) xs.push_back(move(c));
    return GridDiagram(d.lens(), n, std::move(os), std::move(xs));
}

namespace {

// Encoding of a diagram as [o_x by row | x_x by row]; the canonical form is
// the lexicographic minimum over all translations.  For each vertical shift
// only one horizontal shift can win: the one placing row 0's O at x = 0.
std::vector<int> encode_rows(const RowTable& t) {
    std::vector<int> enc;
    enc.reserve(t.o_x.size() * 2);
    enc.insert(enc.end(), t.o_x.begin(), t.o_x.end());
    enc.insert(enc.end(), t.x_x.begin(), t.x_x.end());
    return enc;
}

}  // namespace

GridDiagram canonical_form(const GridDiagram& d) {
    int n = d.n(), w = d.width();
    std::vector<int> best;
    int best_dx = 0, best_dy = 0;
    for (int dy = 0; dy < n; ++dy) {
        GridDiagram td = translate(d, 0, dy);
        RowTable t = row_table(td);
        int dx = pos_mod(-t.o_x[0], w);
        for (int& x : t.o_x) x = pos_mod(x + dx, w);
        for (int& x : t.x_x) x = pos_mod(x + dx, w);
        std::vector<int> enc = encode_rows(t);
        if (best.empty() || enc < best) {
            best = std::move(enc);
            best_dx = dx;
            best_dy = dy;
        }
    }
    return translate(d, best_dx, best_dy);
}

std::string canonical_key(const GridDiagram& d) {
    GridDiagram c = canonical_form(d);
    RowTable t = row_table(c);
    std::ostringstream out;
    out << c.lens().p << '.' << c.lens().q << '.' << c.n() << ':';
    for (int y = 0; y < c.n(); ++y) out << t.o_x[y] << ',';
    out << '|';
    for (int y = 0; y < c.n(); ++y) out << t.x_x[y] << ',';
    return out.str();
}

std::string diagram_brief(const GridDiagram& d) {
    std::ostringstream out;
    out << "L(" << d.lens().p << ',' << d.lens().q << ") n=" << d.n() << " O";
    for (const Cell& c : d.os()) out << " (" << c.x << ',' << c.y << ')';
    out << " X";
    for (const Cell& c : d.xs()) out << " (" << c.x << ',' << c.y << ')';
    return out.str();
}

ComponentDecomposition components(const GridDiagram& d) {
    int n = d.n(), p = d.lens().p, pn = d.width();
    RowTable t = row_table(d);
    std::vector<int> xrow_of_class(n, -1);
    for (int y = 0; y < n; ++y) xrow_of_class[t.x_x[y] % n] = y;

    ComponentDecomposition dec;
    std::vector<char> seen(n, 0);
    long long total = 0;
    for (int y0 = 0; y0 < n; ++y0) {
        if (seen[y0]) continue;
        Component comp;
        int y = y0;
        long long wraps = 0;
        do {
            seen[y] = 1;
            comp.rows.push_back(y);
            Cell o{t.o_x[y], y};
            int cls = o.x % n;
            int y_next = xrow_of_class[cls];
            Cell x{t.x_x[y_next], y_next};
            int a = annulus_level(d, o);
            int b = annulus_level(d, x);
            int delta = pos_mod(b - a, pn);
            wraps += (a + delta) / n - a / n;
            y = y_next;
        } while (y != y0);
        comp.grid_number = static_cast<int>(comp.rows.size());
        comp.klass = pos_mod(wraps, p);
        comp.coincident = comp.grid_number == 1 && t.o_x[y0] == t.x_x[y0];
        total += wraps;
        dec.components.push_back(std::move(comp));
    }
    dec.class_sum_mod_p = pos_mod(total, p);
    return dec;
}

GridDiagram trivial_diagram(LensParams lens, const std::vector<int>& m) {
    if (!lens_params_ok(lens)) throw Error(Errc::BadLensParams, "trivial_diagram: bad lens parameters");
    if (static_cast<int>(m.size()) != lens.p)
        throw Error(Errc::BadIndex, "trivial_diagram: index must have p entries");
    long long total = 0;
    for (int v : m) {
        if (v < 0) throw Error(Errc::BadIndex, "trivial_diagram: negative multiplicity");
        total += v;
    }
    if (total == 0) throw Error(Errc::EmptyIndex, "trivial_diagram: empty index");
    int n = static_cast<int>(total);
    int pn = lens.p * n;

    // Components along the anti-diagonal, ascending in mu*q mod p (distinct
    // classes have distinct keys, so the order is unique).
    std::vector<std::pair<int, int>> order;  // (mu*q mod p, mu)
    for (int mu = 0; mu < lens.p; ++mu)
        if (m[mu] > 0) order.emplace_back(pos_mod(static_cast<long long>(mu) * lens.q, lens.p), mu);
    std::sort(order.begin(), order.end());

    std::vector<Cell> os, xs;
    int i = 1;
    for (const auto& [key, mu] : order) {
        int k = pos_mod(-static_cast<long long>(mu) * lens.q, lens.p);
        for (int rep = 0; rep < m[mu]; ++rep, ++i) {
            Cell o{i - 1, n - i};
            os.push_back(o);
            xs.push_back(Cell{pos_mod(o.x + k * n, pn), o.y});
        }
    }
    return GridDiagram(lens, n, std::move(os), std::move(xs));
}

std::optional<TrivialIndex> is_trivial_form(const GridDiagram& d) {
    ComponentDecomposition dec = components(d);
    TrivialIndex idx;
    idx.m.assign(d.lens().p, 0);
    for (const Component& c : dec.components) {
        if (c.grid_number != 1) return std::nullopt;
        if (c.coincident) {
            ++idx.k_unknots;
        } else {
            // A nullhomotopic grid-number-one component forces a shared cell.
            if (c.klass == 0)
                throw Error(Errc::InternalError, "distinct-cell class-0 component");
            ++idx.m[c.klass];
        }
    }
    return idx;
}

std::optional<int> coincident_row(const GridDiagram& d) {
    RowTable t = row_table(d);
    for (int y = 0; y < d.n(); ++y)
        if (t.o_x[y] == t.x_x[y]) return y;
    return std::nullopt;
}

GridDiagram remove_coincident_pair(const GridDiagram& d, int row) {
    int n = d.n();
    RowTable t = row_table(d);
    if (row < 0 || row >= n || t.o_x[row] != t.x_x[row])
        throw Error(Errc::BadIndex, "remove_coincident_pair: row has no coincident pair");
    if (n == 1) throw Error(Errc::EmptyLink, "remove_coincident_pair: nothing would remain");
    int cls = t.o_x[row] % n;
    auto shrink = [&](Cell c) {
        int j = c.x / n, r = c.x % n;
        return Cell{j * (n - 1) + r - (r > cls ? 1 : 0), c.y - (c.y > row ? 1 : 0)};
    };
    std::vector<Cell> os, xs;
    for (const Cell& c : d.os())
        if (c.y != row) os.push_back(shrink(c));
    for (const Cell& c : d.xs())
        if (c.y != row) xs.push_back(shrink(c));
    return GridDiagram(d.lens(), n - 1, std::move(os), std::move(xs));
}

GridDiagram lift_to_s3(const GridDiagram& d) {
    // Ascending through the top gluing lands at x - q*n, so the covering map
    // sends (x', y'+n) upstairs to (x'-q*n, y') downstairs and the preimage
    // copies of a marking sit at x + k*q*n.
    int n = d.n(), p = d.lens().p, pn = d.width(), qn = d.lens().q * n;
    std::vector<Cell> os, xs;
    os.reserve(pn);
    xs.reserve(pn);
    for (int k = 0; k < p; ++k) {
        for (const Cell& c : d.os()) os.push_back(Cell{pos_mod(c.x + k * qn, pn), c.y + k * n});
        for (const Cell& c : d.xs()) xs.push_back(Cell{pos_mod(c.x + k * qn, pn), c.y + k * n});
    }
    return GridDiagram(LensParams{1, 0}, pn, std::move(os), std::move(xs));
}

GridDiagram fixture_ln(int n) {
    if (n < 0) throw Error(Errc::BadIndex, "fixture_ln: n must be non-negative");
    LensParams lens{5, 1};
    int g = n + 2, w = 5 * g;
    std::vector<Cell> os, xs;
    for (int y = 0; y < g; ++y) xs.push_back(Cell{w - 1 - y, y});
    os.push_back(Cell{g - 2, g - 1});
    os.push_back(Cell{g - 1, g - 2});
    for (int y = 0; y <= g - 3; ++y) os.push_back(Cell{w - 3 - y, y});
    return GridDiagram(lens, g, std::move(os), std::move(xs));
}

void enumerate_diagrams(LensParams lens, int max_n,
                        const std::function<void(const GridDiagram&)>& fn) {
    if (!lens_params_ok(lens)) throw Error(Errc::BadLensParams, "enumerate_diagrams: bad lens parameters");
    int p = lens.p;
    std::set<std::string> seen;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> perm_o(n), perm_x(n);
        std::iota(perm_o.begin(), perm_o.end(), 0);
        do {
            std::vector<int> copy_o(n, 0);
            for (;;) {  // odometer over O copies
                std::iota(perm_x.begin(), perm_x.end(), 0);
                do {
                    std::vector<int> copy_x(n, 0);
                    for (;;) {
                        std::vector<Cell> os, xs;
                        for (int y = 0; y < n; ++y) {
                            os.push_back(Cell{copy_o[y] * n + perm_o[y], y});
                            xs.push_back(Cell{copy_x[y] * n + perm_x[y], y});
                        }
                        GridDiagram d(lens, n, std::move(os), std::move(xs));
                        std::string key = canonical_key(d);
                        if (seen.insert(key).second) fn(canonical_form(d));
                        int i = 0;
                        while (i < n && ++copy_x[i] == p) copy_x[i++] = 0;
                        if (i == n) break;
                    }
                } while (std::next_permutation(perm_x.begin(), perm_x.end()));
                int i = 0;
                while (i < n && ++copy_o[i] == p) copy_o[i++] = 0;
                if (i == n) break;
            }
        } while (std::next_permutation(perm_o.begin(), perm_o.end()));
    }
}

}  // namespace lenskein
