#pragma once

#include "hgks/moments.hpp"

namespace hgks {

/// Expansion coefficients of a distribution-function derivative over the
/// moment vector: a = c1 + c2 u + c3 v + c4 w + c5 (u^2+v^2+w^2+xi^2)/2.
struct MicroSlope {
    double c1, c2, c3, c4, c5;
};

/// < a u^i v^j w^k psi > for a micro-slope expansion a, unit density.
inline Vec5 slope_moment(const MomentTable& m, const MicroSlope& a, int i, int j, int k,
                         Half h = Half::none) {
    Vec5 r = a.c1 * psi_moment(m, i, j, k, 0, h);
    r += a.c2 * psi_moment(m, i + 1, j, k, 0, h);
    r += a.c3 * psi_moment(m, i, j + 1, k, 0, h);
    r += a.c4 * psi_moment(m, i, j, k + 1, 0, h);
    Vec5 q = psi_moment(m, i + 2, j, k, 0, h) + psi_moment(m, i, j + 2, k, 0, h) +
             psi_moment(m, i, j, k + 2, 0, h) + psi_moment(m, i, j, k, 1, h);
    r += 0.5 * a.c5 * q;
    return r;
}

namespace detail {
/// Closed-form back-substitution for <a psi> = r with r already scaled by
/// 1/rho. The 5x5 moment system is positive definite for lam > 0.
inline MicroSlope solve_slope_unit(const Primitive& w, const Vec5& r, const GasModel& gas) {
    const double D = gas.K + 3.0;
    const double q2 = w.U * w.U + w.V * w.V + w.W * w.W;
    const double sbar = 0.5 * D / w.lam;  // 2*<s> with s the psi energy variable
    const double B = 2.0 * r[4] - (q2 + sbar) * r[0];
    const double R2 = r[1] - w.U * r[0];
    const double R3 = r[2] - w.V * r[0];
    const double R4 = r[3] - w.W * r[0];
    MicroSlope a;
    a.c5 = 4.0 * w.lam * w.lam / D * (B - 2.0 * (w.U * R2 + w.V * R3 + w.W * R4));
    a.c2 = 2.0 * w.lam * R2 - w.U * a.c5;
    a.c3 = 2.0 * w.lam * R3 - w.V * a.c5;
    a.c4 = 2.0 * w.lam * R4 - w.W * a.c5;
    a.c1 = r[0] - w.U * a.c2 - w.V * a.c3 - w.W * a.c4 - 0.5 * a.c5 * (q2 + sbar);
    return a;
}
}  // namespace detail

/// Solve <a psi> = dq for the expansion of a spatial derivative of the
/// distribution, dq being the derivative of the conserved vector.
inline MicroSlope micro_slope(const Primitive& w, const Vec5& dq, const GasModel& gas) {
    const double inv = 1.0 / w.rho;
    return detail::solve_slope_unit(w, inv * dq, gas);
}

/// Time coefficient A from the compatibility condition
/// <(a1 u + a2 v + a3 w + A) psi> = 0, with the moment table of w supplied.
inline MicroSlope time_coefficient(const Primitive& w, const MomentTable& m, const MicroSlope& ax,
                                   const MicroSlope& ay, const MicroSlope& az,
                                   const GasModel& gas) {
    const Vec5 rhs = -1.0 * (slope_moment(m, ax, 1, 0, 0) + slope_moment(m, ay, 0, 1, 0) +
                             slope_moment(m, az, 0, 0, 1));
    return detail::solve_slope_unit(w, rhs, gas);
}

inline MicroSlope time_coefficient(const Primitive& w, const MicroSlope& ax, const MicroSlope& ay,
                                   const MicroSlope& az, const GasModel& gas) {
    return time_coefficient(w, maxwellian_moments(w, gas), ax, ay, az, gas);
}

}  // namespace hgks
