#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hgks/dg.hpp"

namespace hgks {

struct StepControl {
    double cfl = 0.15;
    double t_end = 1.0;
    std::optional<double> dt_fixed;
};

struct non_positive_dt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default Courant numbers per element degree.
inline double default_cfl(int degree) { return degree == 2 ? 0.15 : 0.09; }

/// CFL time step from cell-averaged wave speeds, dt = cfl * min h/(|U|+|V|+|W|+c),
/// with the explicit viscous bound dt <= cfl * h^2 rho / (2 mu (2k+1)) when
/// the gas is viscous.
inline double compute_dt(const DGState& s, const Mesh& mesh, const GasModel& gas,
                         const StepControl& ctrl, int degree) {
    if (ctrl.dt_fixed) return *ctrl.dt_fixed;
    double dt = std::numeric_limits<double>::infinity();
    for (int c = 0; c < mesh.ncells(); ++c) {
        const Conserved avg{s.coeff(c, 0, 0), s.coeff(c, 0, 1), s.coeff(c, 0, 2),
                            s.coeff(c, 0, 3), s.coeff(c, 0, 4)};
        const Primitive w = primitive_from_conserved(avg, gas);
        const auto hw = mesh.widths(c);
        const double h = std::min({hw[0], hw[1], hw[2]});
        const double speed =
            std::abs(w.U) + std::abs(w.V) + std::abs(w.W) + sound_speed(w, gas);
        dt = std::min(dt, ctrl.cfl * h / speed);
        if (gas.mu_ref > 0.0)
            dt = std::min(dt, ctrl.cfl * h * h * w.rho / (2.0 * gas.mu_ref * (2.0 * degree + 1.0)));
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw non_positive_dt("compute_dt: nonpositive dt");
    return dt;
}

struct TwoStageScratch {
    std::vector<double> qstar, L1, Lt1, L2, Lt2;

    void resize(size_t n) {
        qstar.resize(n);
        L1.resize(n);
        Lt1.resize(n);
        L2.resize(n);
        Lt2.resize(n);
    }
};

/// Two-stage fourth-order step for dq/dt = L(q) with the operator's time
/// derivative Lt available:
///   q*      = q^n + dt/2 L(q^n) + dt^2/8 Lt(q^n)
///   q^{n+1} = q^n + dt L(q^n) + dt^2/6 (Lt(q^n) + 2 Lt(q*))
/// Eval fills (L, Lt) for a coefficient vector; exactly two evaluations.
template <class Eval>
void two_stage_step(std::vector<double>& q, double dt, Eval&& eval, TwoStageScratch& ws) {
    const size_t n = q.size();
    ws.resize(n);
    eval(q, ws.L1, ws.Lt1);
    for (size_t i = 0; i < n; ++i)
        ws.qstar[i] = q[i] + 0.5 * dt * ws.L1[i] + 0.125 * dt * dt * ws.Lt1[i];
    eval(ws.qstar, ws.L2, ws.Lt2);
    const double c = dt * dt / 6.0;
    for (size_t i = 0; i < n; ++i)
        q[i] += dt * ws.L1[i] + c * (ws.Lt1[i] + 2.0 * ws.Lt2[i]);
}

}  // namespace hgks
