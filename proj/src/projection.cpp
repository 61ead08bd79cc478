#include "lenskein/projection.hpp"

namespace lenskein {

namespace {

int pos_mod(long long a, int m) {
    int r = static_cast<int>(a % m);
    return r < 0 ? r + m : r;
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

// Multiples of n in the half-open interval (lo, lo+len].
long long multiples_in(long long lo, long long len, int n) {
    return floor_div(lo + len, n) - floor_div(lo, n);
}

}  // namespace

GridProjection make_projection(const GridDiagram& d, std::vector<int8_t> hdir,
                               std::vector<int8_t> vdir) {
    if (static_cast<int>(hdir.size()) != d.n() || static_cast<int>(vdir.size()) != d.n())
        throw Error(Errc::BadIndex, "make_projection: choice vectors must have n entries");
    return GridProjection{d, std::move(hdir), std::move(vdir)};
}

GridProjection default_projection(const GridDiagram& d) {
    int n = d.n(), w = d.width(), pn = w;
    RowTable t = row_table(d);
    std::vector<int8_t> hdir(n, 1), vdir(n, 1);
    for (int y = 0; y < n; ++y) {
        if (t.o_x[y] == t.x_x[y]) continue;
        int right = pos_mod(t.o_x[y] - t.x_x[y], w);
        hdir[y] = right <= w - right ? 1 : -1;
    }
    std::vector<int> orow(n, -1), xrow(n, -1);
    for (int y = 0; y < n; ++y) {
        orow[t.o_x[y] % n] = y;
        xrow[t.x_x[y] % n] = y;
    }
    for (int c = 0; c < n; ++c) {
        Cell o{t.o_x[orow[c]], orow[c]}, x{t.x_x[xrow[c]], xrow[c]};
        if (o == x) continue;
        int up = pos_mod(annulus_level(d, x) - annulus_level(d, o), pn);
        vdir[c] = up <= pn - up ? 1 : -1;
    }
    return GridProjection{d, std::move(hdir), std::move(vdir)};
}

GridProjection all_left_up_projection(const GridDiagram& d) {
    return GridProjection{d, std::vector<int8_t>(d.n(), -1), std::vector<int8_t>(d.n(), 1)};
}

GridProjection disk_slide(const GridProjection& proj, bool row, int index) {
    const GridDiagram& d = proj.diagram;
    if (index < 0 || index >= d.n()) throw Error(Errc::BadIndex, "disk_slide: index out of range");
    RowTable t = row_table(d);
    GridProjection out = proj;
    if (row) {
        if (t.o_x[index] == t.x_x[index])
            throw Error(Errc::BadIndex, "disk_slide: coincident pair has no arc");
        out.hdir[index] = -out.hdir[index];
    } else {
        bool coincident = false;
        for (int y = 0; y < d.n(); ++y)
            if (t.o_x[y] % d.n() == index && t.o_x[y] == t.x_x[y]) coincident = true;
        if (coincident) throw Error(Errc::BadIndex, "disk_slide: coincident pair has no arc");
        out.vdir[index] = -out.vdir[index];
    }
    return out;
}

ProjectionCounts counts(const GridProjection& proj) {
    const GridDiagram& d = proj.diagram;
    int n = d.n(), w = d.width(), pn = w;
    RowTable t = row_table(d);
    ProjectionCounts pc;

    std::vector<char> coincident_row_flag(n, 0);
    for (int y = 0; y < n; ++y) {
        if (t.o_x[y] == t.x_x[y]) {
            coincident_row_flag[y] = 1;
            pc.c += 2;
            ++pc.c_d;
            ++pc.c_u;
        }
    }

    // Whether the row-y horizontal arc passes the center of column u.
    auto covers_center = [&](int y, int u) {
        int s = t.x_x[y], e = t.o_x[y];
        if (proj.hdir[y] > 0) {
            int len = pos_mod(e - s, w);
            int off = pos_mod(u - s, w);
            return 0 < off && off < len;
        }
        int len = pos_mod(s - e, w);
        int off = pos_mod(s - u, w);
        return 0 < off && off < len;
    };

    // lambda and cusp bookkeeping per row.
    std::vector<int> orow(n, -1), xrow(n, -1);
    for (int y = 0; y < n; ++y) {
        orow[t.o_x[y] % n] = y;
        xrow[t.x_x[y] % n] = y;
    }
    for (int y = 0; y < n; ++y) {
        if (coincident_row_flag[y]) continue;
        int s = t.x_x[y], e = t.o_x[y], h = proj.hdir[y];
        if (h > 0) {
            pc.lambda += multiples_in(s, pos_mod(e - s, w), n);
        } else {
            pc.lambda -= multiples_in(s - pos_mod(s - e, w), pos_mod(s - e, w), n);
        }
        for (Cell m : {Cell{s, y}, Cell{e, y}}) {
            int v = proj.vdir[m.x % n];
            if (h * v == -1) {
                ++pc.c;
                if (h > 0)
                    ++pc.c_d;
                else
                    ++pc.c_u;
            }
        }
    }

    // Vertical arcs: mu, and crossings against horizontal arcs.
    for (int c = 0; c < n; ++c) {
        Cell o{t.o_x[orow[c]], orow[c]}, x{t.x_x[xrow[c]], xrow[c]};
        if (o == x) continue;
        int a = annulus_level(d, o), b = annulus_level(d, x);
        int v = proj.vdir[c];
        int len = v > 0 ? pos_mod(b - a, pn) : pos_mod(a - b, pn);
        if (v > 0) {
            pc.mu += multiples_in(a, len, n);
        } else {
            pc.mu -= multiples_in(a - len, len, n);
        }
        for (int step = 1; step < len; ++step) {
            int level = pos_mod(a + v * step, pn);
            Cell cell = cell_at_level(d, c, level);
            if (coincident_row_flag[cell.y]) continue;
            if (covers_center(cell.y, cell.x)) pc.w += proj.hdir[cell.y] * v;
        }
    }
    return pc;
}

}  // namespace lenskein
