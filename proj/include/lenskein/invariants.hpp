#pragma once

#include "lenskein/projection.hpp"
#include "lenskein/rational.hpp"

namespace lenskein {

// The four front-projection formulas, exact in the raw counters.  All are
// independent of the projection choice; the diagram overloads evaluate the
// default projection.
Rational tb_q(const ProjectionCounts& pc, int p);
Rational rot_q(const ProjectionCounts& pc, int p);
Rational sl_plus(const ProjectionCounts& pc, int p);
Rational sl_minus(const ProjectionCounts& pc, int p);

Rational tb_q(const GridDiagram& d);
Rational rot_q(const GridDiagram& d);
Rational sl_plus(const GridDiagram& d);
Rational sl_minus(const GridDiagram& d);

// Self-linking of the preferred transverse push-off: tb + |rot|, the larger
// of the two push-offs, positive on ties.
Rational sl_T(const GridDiagram& d);

struct FwmReport {
    Rational sl_T;
    int e = 0;           // minimum a-degree of the HOMFLY value
    Rational bound;      // (e-1)/p
    bool holds = false;  // sl_T <= bound
    bool sharp = false;  // equality
};

FwmReport make_fwm_report(Rational sl_t, int e, int p);

struct QuadResidueReport {
    bool applicable = false;  // p*tb == +-1 mod p (vacuous for p = 1)
    int p_tb_mod_p = 0;
    int mu_mod_p = 0;
    int lambda_mod_p = 0;
    bool mu_lambda_ok = false;  // mu*lambda == +-1 mod p
    bool mu_sq_q_ok = false;    // mu^2 q == +-1 mod p
};

// Knots only; throws NotAKnot on multi-component diagrams.
QuadResidueReport quad_residue_check(const GridDiagram& d);

}  // namespace lenskein
