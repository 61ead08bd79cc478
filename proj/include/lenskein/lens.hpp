#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lenskein/error.hpp"

namespace lenskein {

// Parameters of the lens space L(p,q).  gcd(p,q) = 1 and 0 <= q < p, with
// q = 0 permitted only for p = 1 (the 3-sphere).
struct LensParams {
    int p = 1;
    int q = 0;
    friend bool operator==(LensParams a, LensParams b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(LensParams a, LensParams b) { return !(a == b); }
};

bool lens_params_ok(LensParams lens);

// A cell of the straightened fundamental domain: n rows by p*n columns.
// x increases rightward in [0, p*n); y is the row index with 0 the bottom row.
// The left and right edges glue directly; ascending through the top edge at
// horizontal index x re-enters the bottom at x - q*n (mod p*n).
struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(Cell a, Cell b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Cell a, Cell b) { return !(a == b); }
    friend bool operator<(Cell a, Cell b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }
};

// Toroidal grid diagram: n O markings and n X markings on the twisted torus.
// Marking labels carry no meaning; lists are kept sorted by (y,x).
// Construction does not validate; see validate().
class GridDiagram {
public:
    GridDiagram(LensParams lens, int n, std::vector<Cell> os, std::vector<Cell> xs);

    LensParams lens() const { return lens_; }
    int n() const { return n_; }
    int width() const { return lens_.p * n_; }
    const std::vector<Cell>& os() const { return os_; }
    const std::vector<Cell>& xs() const { return xs_; }

    friend bool operator==(const GridDiagram& a, const GridDiagram& b) {
        return a.lens_ == b.lens_ && a.n_ == b.n_ && a.os_ == b.os_ && a.xs_ == b.xs_;
    }
    friend bool operator!=(const GridDiagram& a, const GridDiagram& b) { return !(a == b); }

private:
    LensParams lens_;
    int n_;
    std::vector<Cell> os_;
    std::vector<Cell> xs_;
};

enum class Violation {
    None,
    BadLensParams,
    RowViolation,
    ColumnViolation,
    IllegalCoincidence,
};

struct ValidityReport {
    Violation kind = Violation::None;
    std::string message;
    bool ok() const { return kind == Violation::None; }
};

// Checks lens parameters, the one-O-one-X-per-row and per-column-annulus
// constraints, and that coincident O/X cells form lone components.
ValidityReport validate(const GridDiagram& d);
inline bool is_valid(const GridDiagram& d) { return validate(d).ok(); }

// x of the O and X in each row of a valid diagram.
struct RowTable {
    std::vector<int> o_x;
    std::vector<int> x_x;
};
RowTable row_table(const GridDiagram& d);

int mod_inverse(int a, int m);

// Position of a marking on its column-annulus circle of length p*n:
// level = k*n + y where k counts ascents through the top gluing from the
// annulus base representative x mod n.
int annulus_level(const GridDiagram& d, Cell c);
Cell cell_at_level(const GridDiagram& d, int annulus_class, int level);

// Horizontal translation x -> x+dx; vertical translation y -> y+dy with the
// compensating horizontal shift at the top-bottom gluing.
GridDiagram translate(const GridDiagram& d, int dx, int dy);

// Lexicographically minimal marking encoding over all p*n^2 translations.
GridDiagram canonical_form(const GridDiagram& d);
std::string canonical_key(const GridDiagram& d);

// Compact human-readable one-line form, also used in traces.
std::string diagram_brief(const GridDiagram& d);

struct Component {
    std::vector<int> rows;    // rows visited by the marking cycle
    int grid_number = 0;
    int klass = 0;            // mu(O) in Z/p
    bool coincident = false;  // lone O/X pair sharing a cell
};

struct ComponentDecomposition {
    std::vector<Component> components;
    int class_sum_mod_p = 0;
};

ComponentDecomposition components(const GridDiagram& d);

// Index of a trivial link: m[i] counts class-i components; split unknots
// (nullhomotopic, coincident-cell) are tallied separately in k_unknots.
struct TrivialIndex {
    std::vector<int> m;
    int k_unknots = 0;
    friend bool operator==(const TrivialIndex& a, const TrivialIndex& b) {
        return a.m == b.m && a.k_unknots == b.k_unknots;
    }
};

// The diagram D(I): O markings on the anti-diagonal ordered by mu*q mod p,
// each component of grid number one; m[0] components appear as coincident
// pairs.  Throws EmptyIndex when the index sums to zero.
GridDiagram trivial_diagram(LensParams lens, const std::vector<int>& m);

// Returns the index iff every component has grid number one; coincident
// pairs count into k_unknots and m[0] stays zero.
std::optional<TrivialIndex> is_trivial_form(const GridDiagram& d);

// Row index of some coincident O/X pair, if any.
std::optional<int> coincident_row(const GridDiagram& d);

// Sub-diagram with the given coincident pair's row and column removed.
GridDiagram remove_coincident_pair(const GridDiagram& d, int row);

// The p-fold cover diagram in L(1,0): copy k of a marking at (x,y) sits at
// (x - k*q*n mod p*n, y + k*n).
GridDiagram lift_to_s3(const GridDiagram& d);

// The L(5,1) family: grid number n+2, X markings on the anti-diagonal,
// two O markings at the top left and a cascade below; the first two column
// annuli form a skein crossing for n >= 1.
GridDiagram fixture_ln(int n);

// One representative per canonical form with grid number <= max_n, in a
// deterministic order.
void enumerate_diagrams(LensParams lens, int max_n,
                        const std::function<void(const GridDiagram&)>& fn);

}  // namespace lenskein
