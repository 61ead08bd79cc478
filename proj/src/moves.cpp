#include "lenskein/moves.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "lenskein/invariants.hpp"

namespace lenskein {

namespace {

int pos_mod(long long a, int m) {
    int r = static_cast<int>(a % m);
    return r < 0 ? r + m : r;
}

Corner opposite(Corner c) {
    switch (c) {
        case Corner::NW: return Corner::SE;
        case Corner::NE: return Corner::SW;
        case Corner::SW: return Corner::NE;
        case Corner::SE: return Corner::NW;
    }
    return Corner::NW;
}

bool corner_top(Corner c) { return c == Corner::NW || c == Corner::NE; }
bool corner_right(Corner c) { return c == Corner::NE || c == Corner::SE; }

}  // namespace

const char* corner_name(Corner c) {
    switch (c) {
        case Corner::NW: return "NW";
        case Corner::NE: return "NE";
        case Corner::SW: return "SW";
        case Corner::SE: return "SE";
    }
    return "?";
}

GridDiagram stabilize(const GridDiagram& d, int index, StabilizationType type) {
    int n = d.n(), m = n + 1;
    const std::vector<Cell>& same = type.mark == MarkType::X ? d.xs() : d.os();
    const std::vector<Cell>& other = type.mark == MarkType::X ? d.os() : d.xs();
    if (index < 0 || index >= n) throw Error(Errc::BadIndex, "stabilize: bad marking index");
    Cell at = same[index];
    int c0 = at.x % n, j0 = at.x / n, y0 = at.y;

    int row_partner = -1, col_partner = -1;
    for (int i = 0; i < n; ++i) {
        if (other[i].y == y0) row_partner = i;
        if (other[i].x % n == c0) col_partner = i;
    }

    auto grow = [&](Cell c) {
        int j = c.x / n, r = c.x % n;
        return Cell{j * m + r + (r > c0 ? 1 : 0), c.y + (c.y > y0 ? 1 : 0)};
    };

    std::vector<Cell> new_same, new_other;
    for (int i = 0; i < n; ++i)
        if (i != index) new_same.push_back(grow(same[i]));
    for (int i = 0; i < n; ++i)
        if (i != row_partner && i != col_partner) new_other.push_back(grow(other[i]));

    // 2x2 replacement block at the split row and column copy of the marking.
    int x_left = j0 * m + c0, y_bot = y0;
    auto corner_cell = [&](Corner c) {
        return Cell{x_left + (corner_right(c) ? 1 : 0), y_bot + (corner_top(c) ? 1 : 0)};
    };
    for (Corner c : {Corner::NW, Corner::NE, Corner::SW, Corner::SE}) {
        if (c == type.corner) continue;
        if (c == opposite(type.corner))
            new_other.push_back(corner_cell(c));
        else
            new_same.push_back(corner_cell(c));
    }

    // The displaced partners land in the empty corner's row and column side.
    int partner_y = y0 + (corner_top(type.corner) ? 1 : 0);
    int partner_r = c0 + (corner_right(type.corner) ? 1 : 0);
    if (row_partner == col_partner) {
        Cell p = other[row_partner];
        new_other.push_back(Cell{(p.x / n) * m + partner_r, partner_y});
    } else {
        Cell pr = other[row_partner];
        new_other.push_back(Cell{grow(pr).x, partner_y});
        Cell pcl = other[col_partner];
        new_other.push_back(Cell{(pcl.x / n) * m + partner_r, grow(pcl).y});
    }

    GridDiagram out = type.mark == MarkType::X
                          ? GridDiagram(d.lens(), m, std::move(new_other), std::move(new_same))
                          : GridDiagram(d.lens(), m, std::move(new_same), std::move(new_other));
    if (!is_valid(out)) throw Error(Errc::InternalError, "stabilize produced an invalid diagram");
    return out;
}

namespace {

struct BlockCells {
    std::array<Cell, 4> cell;  // SW, SE, NW, NE
};

BlockCells block_at(const GridDiagram& d, Cell sw) {
    int n = d.n(), w = d.width(), qn = d.lens().q * n;
    BlockCells b;
    b.cell[0] = sw;
    b.cell[1] = Cell{pos_mod(sw.x + 1, w), sw.y};
    if (sw.y + 1 < n) {
        b.cell[2] = Cell{sw.x, sw.y + 1};
        b.cell[3] = Cell{pos_mod(sw.x + 1, w), sw.y + 1};
    } else {
        b.cell[2] = Cell{pos_mod(sw.x - qn, w), 0};
        b.cell[3] = Cell{pos_mod(sw.x + 1 - qn, w), 0};
    }
    return b;
}

Corner corner_from_block_index(int i) {
    switch (i) {
        case 0: return Corner::SW;
        case 1: return Corner::SE;
        case 2: return Corner::NW;
        default: return Corner::NE;
    }
}

}  // namespace

std::vector<DestabSite> find_destabilization_sites(const GridDiagram& d) {
    int n = d.n(), w = d.width();
    std::vector<DestabSite> sites;
    if (n < 2) return sites;
    std::map<std::pair<int, int>, int> occ;  // cell -> bit 1 O, bit 2 X
    for (const Cell& c : d.os()) occ[{c.x, c.y}] |= 1;
    for (const Cell& c : d.xs()) occ[{c.x, c.y}] |= 2;
    auto occupancy = [&](Cell c) {
        auto it = occ.find({c.x, c.y});
        return it == occ.end() ? 0 : it->second;
    };
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < w; ++x) {
            BlockCells b = block_at(d, Cell{x, y});
            std::array<int, 4> m{};
            bool shared_cell = false;
            int count = 0;
            for (int i = 0; i < 4; ++i) {
                m[i] = occupancy(b.cell[i]);
                if (m[i] == 3) shared_cell = true;
                count += (m[i] & 1 ? 1 : 0) + (m[i] & 2 ? 1 : 0);
            }
            if (shared_cell) continue;
            if (count == 3) {
                int empty = -1;
                for (int i = 0; i < 4; ++i)
                    if (m[i] == 0) empty = i;
                if (empty < 0) continue;
                int opp = empty ^ 3;  // diagonal partner among SW,SE,NW,NE
                int others[2], k = 0;
                for (int i = 0; i < 4; ++i)
                    if (i != empty && i != opp) others[k++] = i;
                if (m[others[0]] != m[others[1]]) continue;
                if (m[opp] == m[others[0]]) continue;
                sites.push_back(DestabSite{Cell{x, y},
                                           m[others[0]] == 2 ? MarkType::X : MarkType::O,
                                           corner_from_block_index(empty), false});
            } else if (count == 4) {
                // Split-unknot site: one marking type on each diagonal.
                if (m[0] != 0 && m[0] == m[3] && m[1] == m[2] && m[0] != m[1]) {
                    sites.push_back(DestabSite{Cell{x, y},
                                               m[0] == 2 ? MarkType::X : MarkType::O,
                                               Corner::NW, true});
                }
            }
        }
    }
    return sites;
}

GridDiagram destabilize(const GridDiagram& d, const DestabSite& site) {
    int n = d.n(), w = d.width();
    if (n < 2) throw Error(Errc::BadSite, "destabilize: grid number already one");
    // Move the block to rows (0,1), columns (0,1); the merge is then plain
    // index arithmetic with no gluing wraps inside the block.
    int dy = pos_mod(-site.sw.y, n);
    int sx = site.sw.y + dy >= n ? pos_mod(site.sw.x - d.lens().q * n, w) : site.sw.x;
    GridDiagram td = translate(d, pos_mod(-sx, w), dy);

    auto occupancy = [&](Cell c) {
        int v = 0;
        for (const Cell& o : td.os())
            if (o == c) v |= 1;
        for (const Cell& x : td.xs())
            if (x == c) v |= 2;
        return v;
    };
    std::array<Cell, 4> block = {Cell{0, 0}, Cell{1, 0}, Cell{0, 1}, Cell{1, 1}};
    std::array<int, 4> m{};
    int count = 0;
    for (int i = 0; i < 4; ++i) {
        m[i] = occupancy(block[i]);
        count += (m[i] & 1 ? 1 : 0) + (m[i] & 2 ? 1 : 0);
    }
    int os_in_block = 0, xs_in_block = 0;
    for (int i = 0; i < 4; ++i) {
        os_in_block += m[i] & 1 ? 1 : 0;
        xs_in_block += m[i] & 2 ? 1 : 0;
    }
    bool split = count == 4;
    if (!(count == 3 || split) || (split && !(os_in_block == 2 && xs_in_block == 2)))
        throw Error(Errc::BadSite, "destabilize: block does not match a stabilization pattern");

    auto in_block = [&](Cell c) { return c.x <= 1 && c.y <= 1; };
    auto shrink = [&](Cell c) {
        int j = c.x / n, r = c.x % n;
        return Cell{j * (n - 1) + (r <= 1 ? 0 : r - 1), c.y <= 1 ? 0 : c.y - 1};
    };
    std::vector<Cell> os, xs;
    for (const Cell& c : td.os())
        if (!in_block(c)) os.push_back(shrink(c));
    for (const Cell& c : td.xs())
        if (!in_block(c)) xs.push_back(shrink(c));
    if (split) {
        os.push_back(Cell{0, 0});
        xs.push_back(Cell{0, 0});
    } else if (xs_in_block == 2) {
        xs.push_back(Cell{0, 0});
    } else if (os_in_block == 2) {
        os.push_back(Cell{0, 0});
    } else {
        throw Error(Errc::BadSite, "destabilize: block does not match a stabilization pattern");
    }
    GridDiagram out(d.lens(), n - 1, std::move(os), std::move(xs));
    if (!is_valid(out)) throw Error(Errc::BadSite, "destabilize produced an invalid diagram");
    return out;
}

namespace {

struct ColumnPairLevels {
    int o1, x1, o2, x2;  // levels of the pair's markings on the p*n circle
    bool left_coincident, right_coincident;
};

ColumnPairLevels column_pair_levels(const GridDiagram& d, int c) {
    int n = d.n();
    if (n < 2 || c < 0 || c >= n) throw Error(Errc::BadColumn, "column pair out of range");
    int c2 = (c + 1) % n;
    RowTable t = row_table(d);
    ColumnPairLevels L{};
    Cell o1{}, x1{}, o2{}, x2{};
    for (int y = 0; y < n; ++y) {
        if (t.o_x[y] % n == c) o1 = Cell{t.o_x[y], y};
        if (t.x_x[y] % n == c) x1 = Cell{t.x_x[y], y};
        if (t.o_x[y] % n == c2) o2 = Cell{t.o_x[y], y};
        if (t.x_x[y] % n == c2) x2 = Cell{t.x_x[y], y};
    }
    // Sections of the pair annulus are indexed by the left column's levels.
    // When the pair wraps across the x = 0 annulus boundary, the right
    // column's copy count is off by q^-1 relative to the left's.
    int p = d.lens().p;
    int shift = 0;
    if (c2 != c + 1 && p > 1) shift = mod_inverse(d.lens().q, p) * n;
    int pn = d.width();
    L.o1 = annulus_level(d, o1);
    L.x1 = annulus_level(d, x1);
    L.o2 = (annulus_level(d, o2) + shift) % pn;
    L.x2 = (annulus_level(d, x2) + shift) % pn;
    L.left_coincident = o1 == x1;
    L.right_coincident = o2 == x2;
    return L;
}

bool in_open_cyclic(int u, int lo, int hi, int period) {
    int span = pos_mod(hi - lo, period);
    int off = pos_mod(u - lo, period);
    return 0 < off && off < span;
}

}  // namespace

CommutationClass classify_column_commutation(const GridDiagram& d, int c) {
    ColumnPairLevels L = column_pair_levels(d, c);
    int pn = d.width();
    if (L.o1 == L.o2 || L.o1 == L.x2 || L.x1 == L.o2 || L.x1 == L.x2)
        return CommutationClass::Illegal;
    if (L.left_coincident || L.right_coincident) return CommutationClass::NonInterleaving;
    int inside = (in_open_cyclic(L.o2, L.o1, L.x1, pn) ? 1 : 0) +
                 (in_open_cyclic(L.x2, L.o1, L.x1, pn) ? 1 : 0);
    return inside == 1 ? CommutationClass::Interleaving : CommutationClass::NonInterleaving;
}

CommutationClass classify_row_commutation(const GridDiagram& d, int r) {
    int n = d.n(), w = d.width(), qn = d.lens().q * n;
    if (n < 2 || r < 0 || r >= n) throw Error(Errc::BadRow, "row pair out of range");
    int r2 = (r + 1) % n;
    bool wrap = r == n - 1;
    RowTable t = row_table(d);
    // Section index of a marking on the two-row pair annulus of p*n sections.
    int a1 = t.o_x[r], b1 = t.x_x[r];
    int a2 = wrap ? pos_mod(t.o_x[r2] + qn, w) : t.o_x[r2];
    int b2 = wrap ? pos_mod(t.x_x[r2] + qn, w) : t.x_x[r2];
    if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) return CommutationClass::Illegal;
    if (a1 == b1 || a2 == b2) return CommutationClass::NonInterleaving;
    int inside = (in_open_cyclic(a2, a1, b1, w) ? 1 : 0) + (in_open_cyclic(b2, a1, b1, w) ? 1 : 0);
    return inside == 1 ? CommutationClass::Interleaving : CommutationClass::NonInterleaving;
}

GridDiagram commute_columns(const GridDiagram& d, int c) {
    if (classify_column_commutation(d, c) == CommutationClass::Illegal)
        throw Error(Errc::IllegalCommutation, "commute_columns: columns share a segment");
    int n = d.n(), w = d.width();
    int c2 = (c + 1) % n;
    auto move = [&](Cell cell) {
        int r = cell.x % n;
        if (r == c) return Cell{pos_mod(cell.x + 1, w), cell.y};
        if (r == c2) return Cell{pos_mod(cell.x - 1, w), cell.y};
        return cell;
    };
    std::vector<Cell> os, xs;
    for (Cell cell : d.os()) os.push_back(move(cell));
    for (Cell cell : d.xs()) xs.push_back(move(cell));
    return GridDiagram(d.lens(), n, std::move(os), std::move(xs));
}

GridDiagram commute_rows(const GridDiagram& d, int r) {
    if (classify_row_commutation(d, r) == CommutationClass::Illegal)
        throw Error(Errc::IllegalCommutation, "commute_rows: rows share a section");
    int n = d.n(), w = d.width(), qn = d.lens().q * n;
    int r2 = (r + 1) % n;
    bool wrap = r == n - 1;
    auto move = [&](Cell cell) {
        if (cell.y == r) return wrap ? Cell{pos_mod(cell.x - qn, w), 0} : Cell{cell.x, r + 1};
        if (cell.y == r2) return wrap ? Cell{pos_mod(cell.x + qn, w), n - 1} : Cell{cell.x, r};
        return cell;
    };
    std::vector<Cell> os, xs;
    for (Cell cell : d.os()) os.push_back(move(cell));
    for (Cell cell : d.xs()) xs.push_back(move(cell));
    return GridDiagram(d.lens(), n, std::move(os), std::move(xs));
}

GridDiagram resolve_skein(const GridDiagram& d, int c) {
    if (classify_column_commutation(d, c) != CommutationClass::Interleaving)
        throw Error(Errc::NotASkeinCrossing, "resolve_skein: columns are not interleaving");
    int n = d.n(), w = d.width();
    int c2 = (c + 1) % n;
    std::vector<Cell> xs;
    for (Cell cell : d.xs()) {
        int r = cell.x % n;
        if (r == c)
            xs.push_back(Cell{pos_mod(cell.x + 1, w), cell.y});
        else if (r == c2)
            xs.push_back(Cell{pos_mod(cell.x - 1, w), cell.y});
        else
            xs.push_back(cell);
    }
    return GridDiagram(d.lens(), n, d.os(), std::move(xs));
}

SkeinSign skein_sign(const GridDiagram& d, int c) {
    if (classify_column_commutation(d, c) != CommutationClass::Interleaving)
        throw Error(Errc::NotASkeinCrossing, "skein_sign: columns are not interleaving");
    Rational diff = tb_q(d) - tb_q(commute_columns(d, c));
    if (diff == Rational(2)) return SkeinSign::Positive;
    if (diff == Rational(-2)) return SkeinSign::Negative;
    throw Error(Errc::InternalError, "skein_sign: tb difference is not +-2");
}

}  // namespace lenskein
