#include "lenskein/invariants.hpp"

namespace lenskein {

Rational tb_q(const ProjectionCounts& pc, int p) {
    return Rational(2 * p * pc.w - p * pc.c - 2 * pc.mu * pc.lambda, 2 * p);
}

Rational rot_q(const ProjectionCounts& pc, int p) {
    return Rational(p * (pc.c_d - pc.c_u) - 2 * (pc.lambda - pc.mu), 2 * p);
}

Rational sl_plus(const ProjectionCounts& pc, int p) {
    return Rational(p * (pc.w - pc.c_d) - (pc.mu * pc.lambda + pc.mu - pc.lambda), p);
}

Rational sl_minus(const ProjectionCounts& pc, int p) {
    return Rational(p * (pc.w - pc.c_u) - (pc.mu * pc.lambda + pc.lambda - pc.mu), p);
}

Rational tb_q(const GridDiagram& d) { return tb_q(counts(default_projection(d)), d.lens().p); }
Rational rot_q(const GridDiagram& d) { return rot_q(counts(default_projection(d)), d.lens().p); }
Rational sl_plus(const GridDiagram& d) { return sl_plus(counts(default_projection(d)), d.lens().p); }
Rational sl_minus(const GridDiagram& d) { return sl_minus(counts(default_projection(d)), d.lens().p); }

Rational sl_T(const GridDiagram& d) {
    ProjectionCounts pc = counts(default_projection(d));
    int p = d.lens().p;
    Rational a = sl_plus(pc, p), b = sl_minus(pc, p);
    return a >= b ? a : b;
}

FwmReport make_fwm_report(Rational sl_t, int e, int p) {
    FwmReport r;
    r.sl_T = sl_t;
    r.e = e;
    r.bound = Rational(e - 1, p);
    r.holds = sl_t <= r.bound;
    r.sharp = sl_t == r.bound;
    return r;
}

QuadResidueReport quad_residue_check(const GridDiagram& d) {
    ComponentDecomposition dec = components(d);
    if (dec.components.size() != 1)
        throw Error(Errc::NotAKnot, "quad_residue_check: diagram has more than one component");
    int p = d.lens().p;
    QuadResidueReport r;
    if (p == 1) {
        r.applicable = true;
        r.mu_lambda_ok = true;
        r.mu_sq_q_ok = true;
        return r;
    }
    ProjectionCounts pc = counts(default_projection(d));
    Rational tb = tb_q(pc, p);
    Rational ptb = tb * Rational(p);
    if (!ptb.is_integer())
        throw Error(Errc::InternalError, "quad_residue_check: p*tb not an integer");
    auto md = [&](long long v) { return static_cast<int>(((v % p) + p) % p); };
    r.p_tb_mod_p = md(ptb.num);
    r.mu_mod_p = md(pc.mu);
    r.lambda_mod_p = md(pc.lambda);
    r.applicable = r.p_tb_mod_p == 1 || r.p_tb_mod_p == p - 1;
    if (r.applicable) {
        int ml = md(static_cast<long long>(r.mu_mod_p) * r.lambda_mod_p);
        int msq = md(static_cast<long long>(r.mu_mod_p) * r.mu_mod_p * d.lens().q);
        r.mu_lambda_ok = ml == 1 || ml == p - 1;
        r.mu_sq_q_ok = msq == 1 || msq == p - 1;
    }
    return r;
}

}  // namespace lenskein
