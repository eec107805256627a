#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hgks {

using Vec5 = std::array<double, 5>;

inline Vec5 operator+(const Vec5& a, const Vec5& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3], a[4] + b[4]};
}
inline Vec5 operator-(const Vec5& a, const Vec5& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4]};
}
inline Vec5 operator*(double s, const Vec5& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3], s * a[4]};
}
inline Vec5& operator+=(Vec5& a, const Vec5& b) {
    for (int i = 0; i < 5; ++i) a[i] += b[i];
    return a;
}

/// Perfect-gas model. K is the internal degrees of freedom that realize the
/// specific-heat ratio in 3D; Pr is fixed at 1 (the kinetic heat flux is not
/// corrected), mu_ref = 0 selects the inviscid (collisionless-relaxation) limit.
struct GasModel {
    double gamma;
    double K;
    double Pr = 1.0;
    double mu_ref = 0.0;

    static GasModel make(double gamma, double mu = 0.0) {
        GasModel g;
        g.gamma = gamma;
        g.K = (5.0 - 3.0 * gamma) / (gamma - 1.0);
        g.mu_ref = mu;
        if (g.K < 0.0) throw std::invalid_argument("GasModel: gamma gives negative internal dof");
        return g;
    }
};

/// Conservative state (rho, rho*U, rho*V, rho*W, rho*E).
struct Conserved {
    double rho, mx, my, mz, E;

    Vec5 vec() const { return {rho, mx, my, mz, E}; }
    static Conserved from(const Vec5& v) { return {v[0], v[1], v[2], v[3], v[4]}; }
};

/// Maxwellian parameters (rho, U, V, W, lam) with lam = rho/(2p).
struct Primitive {
    double rho, U, V, W, lam;
};

struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_positive_density : invalid_state_error {
    explicit non_positive_density(double rho)
        : invalid_state_error("non-positive density: rho=" + std::to_string(rho)) {}
};

struct non_positive_pressure : invalid_state_error {
    explicit non_positive_pressure(double p)
        : invalid_state_error("non-positive pressure: p=" + std::to_string(p)) {}
};

inline double pressure(const Conserved& q, const GasModel& gas) {
    return (gas.gamma - 1.0) * (q.E - 0.5 * (q.mx * q.mx + q.my * q.my + q.mz * q.mz) / q.rho);
}

inline Primitive primitive_from_conserved(const Conserved& q, const GasModel& gas) {
    if (!(q.rho > 0.0)) throw non_positive_density(q.rho);
    const double p = pressure(q, gas);
    if (!(p > 0.0)) throw non_positive_pressure(p);
    const double inv = 1.0 / q.rho;
    return {q.rho, q.mx * inv, q.my * inv, q.mz * inv, 0.5 * q.rho / p};
}

inline Conserved conserved_from_primitive(const Primitive& w, const GasModel& gas) {
    const double p = 0.5 * w.rho / w.lam;
    const double E = p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.U * w.U + w.V * w.V + w.W * w.W);
    return {w.rho, w.rho * w.U, w.rho * w.V, w.rho * w.W, E};
}

inline double pressure(const Primitive& w) { return 0.5 * w.rho / w.lam; }

inline double sound_speed(const Primitive& w, const GasModel& gas) {
    return std::sqrt(gas.gamma * pressure(w) / w.rho);
}

/// Analytic Euler flux along one axis (0 = x, 1 = y, 2 = z).
inline Vec5 euler_flux(const Primitive& w, const GasModel& gas, int axis) {
    const Conserved q = conserved_from_primitive(w, gas);
    const double p = pressure(w);
    const double un = axis == 0 ? w.U : axis == 1 ? w.V : w.W;
    Vec5 f = {q.rho * un, q.mx * un, q.my * un, q.mz * un, (q.E + p) * un};
    f[1 + axis] += p;
    return f;
}

}  // namespace hgks
