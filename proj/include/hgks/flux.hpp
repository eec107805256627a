#pragma once

#include <utility>

#include "hgks/microslope.hpp"

namespace hgks {

/// Flux and its time derivative at t_n, recovered from the time-integrated
/// kinetic flux by the linear-in-time ansatz.
struct FluxPair {
    Vec5 F;
    Vec5 Ft;
};

/// Time integrals over [0, dt] of the five coefficient functions of the
/// second-order interface distribution:
///   g0      : 1 - e^{-t/tau}
///   abar    : (t + tau) e^{-t/tau} - tau          (equilibrium slope terms)
///   Abar    : t - tau + tau e^{-t/tau}            (equilibrium time term)
///   f0      : e^{-t/tau}                          (free-streaming part)
///   aneq    : -(tau + t) e^{-t/tau}               (initial slope terms)
///   Aneq    : -tau e^{-t/tau}                     (initial time terms)
/// At tau = 0 the exact polynomial limits are used; e^{-dt/tau} is clamped to
/// zero once dt/tau > 700 to avoid underflow.
struct TimeCoeffs {
    double g0, abar, Abar, f0, aneq, Aneq;
};

inline TimeCoeffs flux_time_integrals(double tau, double dt) {
    TimeCoeffs c;
    if (tau <= 0.0) {
        c.g0 = dt;
        c.abar = 0.0;
        c.Abar = 0.5 * dt * dt;
        c.f0 = c.aneq = c.Aneq = 0.0;
        return c;
    }
    const double r = dt / tau;
    const double E = r > 700.0 ? 0.0 : std::exp(-r);
    c.g0 = dt - tau * (1.0 - E);
    c.abar = 2.0 * tau * tau - tau * dt - tau * (dt + 2.0 * tau) * E;
    c.Abar = 0.5 * dt * dt - tau * dt + tau * tau * (1.0 - E);
    c.f0 = tau * (1.0 - E);
    c.aneq = -2.0 * tau * tau + tau * (dt + 2.0 * tau) * E;
    c.Aneq = -tau * tau * (1.0 - E);
    return c;
}

/// One-sided trace at a face quadrature point, in the face-local frame where
/// u is the normal direction: conserved value plus the derivatives of the
/// conserved vector along (normal, tangent1, tangent2).
struct FaceTrace {
    Conserved q;
    std::array<Vec5, 3> dq;
};

namespace detail {
inline Vec5 directional_slope_flux(const MomentTable& m, const MicroSlope& a1,
                                   const MicroSlope& a2, const MicroSlope& a3, Half h) {
    // < u (a1 u + a2 v + a3 w) psi >
    return slope_moment(m, a1, 2, 0, 0, h) + slope_moment(m, a2, 1, 1, 0, h) +
           slope_moment(m, a3, 1, 0, 1, h);
}
}  // namespace detail

/// Time-integrated kinetic flux through a face quadrature point over [0, dt]
/// and [0, dt/2]. The equilibrium part is built from the compatibility-merged
/// state of the two traces; the non-equilibrium parts are the Heaviside-split
/// initial distributions of the two sides.
inline std::pair<Vec5, Vec5> interface_flux_integrals(const FaceTrace& left, const FaceTrace& right,
                                                      const GasModel& gas, double tau, double dt) {
    const Primitive wl = primitive_from_conserved(left.q, gas);
    const Primitive wr = primitive_from_conserved(right.q, gas);
    const MomentTable ml = maxwellian_moments(wl, gas);
    const MomentTable mr = maxwellian_moments(wr, gas);

    std::array<MicroSlope, 3> al, ar;
    for (int i = 0; i < 3; ++i) {
        al[i] = micro_slope(wl, left.dq[i], gas);
        ar[i] = micro_slope(wr, right.dq[i], gas);
    }

    // Merged interface state and its derivatives from half-space moments.
    const Vec5 q0 = wl.rho * psi_moment(ml, 0, 0, 0, 0, Half::positive) +
                    wr.rho * psi_moment(mr, 0, 0, 0, 0, Half::negative);
    const Primitive w0 = primitive_from_conserved(Conserved::from(q0), gas);
    const MomentTable m0 = maxwellian_moments(w0, gas);

    std::array<MicroSlope, 3> abar;
    for (int i = 0; i < 3; ++i) {
        const Vec5 dq0 = wl.rho * slope_moment(ml, al[i], 0, 0, 0, Half::positive) +
                         wr.rho * slope_moment(mr, ar[i], 0, 0, 0, Half::negative);
        abar[i] = micro_slope(w0, dq0, gas);
    }
    const MicroSlope Abar = time_coefficient(w0, m0, abar[0], abar[1], abar[2], gas);

    const Vec5 Fg0 = w0.rho * psi_moment(m0, 1, 0, 0);
    const Vec5 Fabar = w0.rho * detail::directional_slope_flux(m0, abar[0], abar[1], abar[2], Half::none);
    const Vec5 FAbar = w0.rho * slope_moment(m0, Abar, 1, 0, 0);

    const TimeCoeffs cf = flux_time_integrals(tau, dt);
    const TimeCoeffs ch = flux_time_integrals(tau, 0.5 * dt);

    Vec5 full = cf.g0 * Fg0 + cf.abar * Fabar + cf.Abar * FAbar;
    Vec5 half = ch.g0 * Fg0 + ch.abar * Fabar + ch.Abar * FAbar;

    if (tau > 0.0) {
        const MicroSlope Al = time_coefficient(wl, ml, al[0], al[1], al[2], gas);
        const MicroSlope Ar = time_coefficient(wr, mr, ar[0], ar[1], ar[2], gas);

        const Vec5 Ff0 = wl.rho * psi_moment(ml, 1, 0, 0, 0, Half::positive) +
                         wr.rho * psi_moment(mr, 1, 0, 0, 0, Half::negative);
        const Vec5 Faneq =
            wl.rho * detail::directional_slope_flux(ml, al[0], al[1], al[2], Half::positive) +
            wr.rho * detail::directional_slope_flux(mr, ar[0], ar[1], ar[2], Half::negative);
        const Vec5 FAneq = wl.rho * slope_moment(ml, Al, 1, 0, 0, Half::positive) +
                           wr.rho * slope_moment(mr, Ar, 1, 0, 0, Half::negative);

        full += cf.f0 * Ff0 + cf.aneq * Faneq + cf.Aneq * FAneq;
        half += ch.f0 * Ff0 + ch.aneq * Faneq + ch.Aneq * FAneq;
    }
    return {full, half};
}

/// Prepared in-cell expansion point: state, moment table, micro-slopes of the
/// three spatial derivatives, and the compatibility time coefficient.
struct SmoothPoint {
    Primitive w;
    MomentTable m;
    std::array<MicroSlope, 3> a;
    MicroSlope A;
};

inline SmoothPoint make_smooth_point(const Conserved& q, const std::array<Vec5, 3>& dq,
                                     const GasModel& gas) {
    SmoothPoint p;
    p.w = primitive_from_conserved(q, gas);
    p.m = maxwellian_moments(p.w, gas);
    for (int i = 0; i < 3; ++i) p.a[i] = micro_slope(p.w, dq[i], gas);
    p.A = time_coefficient(p.w, p.m, p.a[0], p.a[1], p.a[2], gas);
    return p;
}

/// Time-integrated flux of the smooth in-cell distribution
/// f = g0 (1 - tau (a1 u + a2 v + a3 w + A) + A t) along one axis,
/// over [0, dt] and [0, dt/2]. At tau = 0 this is the inviscid f = g0 (1 + A t).
inline std::pair<Vec5, Vec5> smooth_flux_integrals(const SmoothPoint& p, double tau, double dt,
                                                   int axis) {
    const int iu = axis == 0 ? 1 : 0;
    const int iv = axis == 1 ? 1 : 0;
    const int iw = axis == 2 ? 1 : 0;

    const Vec5 F0 = p.w.rho * psi_moment(p.m, iu, iv, iw);
    Vec5 FA = p.w.rho * slope_moment(p.m, p.A, iu, iv, iw);
    Vec5 Fvis{};
    if (tau > 0.0) {
        Fvis = slope_moment(p.m, p.a[0], iu + 1, iv, iw) +
               slope_moment(p.m, p.a[1], iu, iv + 1, iw) +
               slope_moment(p.m, p.a[2], iu, iv, iw + 1);
        Fvis = p.w.rho * Fvis + FA;
    }
    const auto integral = [&](double d) { return d * (F0 - tau * Fvis) + 0.5 * d * d * FA; };
    return {integral(dt), integral(0.5 * dt)};
}

inline std::pair<Vec5, Vec5> smooth_flux_integrals(const Primitive& w, const MicroSlope& ax,
                                                   const MicroSlope& ay, const MicroSlope& az,
                                                   const GasModel& gas, double tau, double dt,
                                                   int axis) {
    SmoothPoint p;
    p.w = w;
    p.m = maxwellian_moments(w, gas);
    p.a = {ax, ay, az};
    p.A = time_coefficient(w, p.m, ax, ay, az, gas);
    return smooth_flux_integrals(p, tau, dt, axis);
}

/// Recover (F, dF/dt) at t_n from the full- and half-window flux integrals.
inline FluxPair flux_linearize(const Vec5& I_full, const Vec5& I_half, double dt) {
    FluxPair fp;
    const double a = 1.0 / dt;
    const double b = 4.0 / (dt * dt);
    for (int i = 0; i < 5; ++i) {
        fp.F[i] = (4.0 * I_half[i] - I_full[i]) * a;
        fp.Ft[i] = (I_full[i] - 2.0 * I_half[i]) * b;
    }
    return fp;
}

}  // namespace hgks
