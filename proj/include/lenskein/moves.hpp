#pragma once

#include <vector>

#include "lenskein/lens.hpp"

namespace lenskein {

enum class MarkType { X, O };
enum class Corner { NW, NE, SW, SE };

// The eight stabilization types: the marking type being split and the corner
// of the 2x2 replacement block left empty.  NW and SE preserve the Legendrian
// class; all eight preserve the link.
struct StabilizationType {
    MarkType mark;
    Corner corner;
};

enum class CommutationClass { Illegal, NonInterleaving, Interleaving };
enum class SkeinSign { Positive, Negative };

// index selects the marking within d.xs() / d.os() per type.mark.
GridDiagram stabilize(const GridDiagram& d, int index, StabilizationType type);

// A destabilization site: a 2x2 block (adjacency across both gluings) whose
// lower-left cell is sw.  Pattern sites hold three markings in a
// stabilization pattern; split sites hold four markings with one type on each
// diagonal and collapse to a coincident-cell unknot pair.
struct DestabSite {
    Cell sw;
    MarkType doubled = MarkType::X;
    Corner empty_corner = Corner::NW;
    bool split_unknot = false;
    friend bool operator==(const DestabSite& a, const DestabSite& b) {
        return a.sw == b.sw && a.doubled == b.doubled && a.empty_corner == b.empty_corner &&
               a.split_unknot == b.split_unknot;
    }
};

std::vector<DestabSite> find_destabilization_sites(const GridDiagram& d);
GridDiagram destabilize(const GridDiagram& d, const DestabSite& site);

// Classification of the adjacent pair (c, c+1 mod n) on the two-column
// annulus circle of p*n segments.  Illegal means a shared segment; the two
// level pairs alternating around the circle means Interleaving.
CommutationClass classify_column_commutation(const GridDiagram& d, int c);
CommutationClass classify_row_commutation(const GridDiagram& d, int r);

// Exchange the two adjacent column annuli (rows), preserving rows (columns).
// Non-interleaving commutations are isotopies; interleaving column
// commutations are crossing changes.
GridDiagram commute_columns(const GridDiagram& d, int c);
GridDiagram commute_rows(const GridDiagram& d, int r);

// Oriented resolution of the skein crossing at columns (c, c+1): the two X
// markings trade columns at their levels.
GridDiagram resolve_skein(const GridDiagram& d, int c);

// Positive iff tb drops by 2 under the crossing change at columns (c, c+1).
SkeinSign skein_sign(const GridDiagram& d, int c);

const char* corner_name(Corner c);

}  // namespace lenskein
