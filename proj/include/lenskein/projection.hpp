#pragma once

#include <cstdint>
#include <vector>

#include "lenskein/lens.hpp"

namespace lenskein {

// Arc choices on a diagram: one horizontal arc per row (X to O, +1 rightward,
// -1 leftward) and one vertical arc per column annulus (O to X, +1 upward,
// -1 downward).  Coincident pairs carry no arcs; their entries are ignored.
struct GridProjection {
    GridDiagram diagram;
    std::vector<int8_t> hdir;  // per row
    std::vector<int8_t> vdir;  // per column annulus class
};

// Raw counters of a projection.  w is the signed crossing count with vertical
// arcs passing under; cusps are the corners where the horizontal and vertical
// germs disagree (h*v = -1), split by horizontal direction; mu and lambda are
// the signed crossing counts with the alpha_0 and beta_0 circles.
struct ProjectionCounts {
    long long w = 0;
    long long c = 0;
    long long c_d = 0;
    long long c_u = 0;
    long long mu = 0;
    long long lambda = 0;
};

// Shorter arc in every row and column, ties broken rightward/upward.
GridProjection default_projection(const GridDiagram& d);

GridProjection make_projection(const GridDiagram& d, std::vector<int8_t> hdir,
                               std::vector<int8_t> vdir);

// Projection with every horizontal arc leftward and every vertical arc
// upward; matches the drawn projection of the fixture_ln family.
GridProjection all_left_up_projection(const GridDiagram& d);

ProjectionCounts counts(const GridProjection& proj);

// Flips one arc choice; the underlying diagram is unchanged.
GridProjection disk_slide(const GridProjection& proj, bool row, int index);

}  // namespace lenskein
