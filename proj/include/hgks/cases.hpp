#pragma once

#include <cmath>
#include <string>

#include "hgks/dg.hpp"

namespace hgks {

/// Built-in test problems: adv2d, adv3d (density-perturbation advection),
/// vortex2d (isotropic vortex propagation), tgv (Taylor-Green vortex).
struct CaseConfig {
    std::string name;
    int dim = 2;
    int n = 8;
    bool nonuniform = false;
    double gamma = 1.4;
    double mach0 = 0.1;     // tgv
    double reynolds = 1600; // tgv
    double eps = 5.0;       // vortex strength
    double t_end = 2.0;

    static CaseConfig named(const std::string& name, int n) {
        CaseConfig c;
        c.name = name;
        c.n = n;
        if (name == "adv2d") {
            c.dim = 2;
            c.t_end = 2.0;
        } else if (name == "adv3d") {
            c.dim = 3;
            c.t_end = 2.0;
        } else if (name == "vortex2d") {
            c.dim = 2;
            c.t_end = 10.0;
        } else if (name == "tgv") {
            c.dim = 3;
            c.t_end = 10.0;
        } else {
            throw std::invalid_argument("unknown case: " + name);
        }
        return c;
    }

    double viscosity() const { return name == "tgv" ? 1.0 / reynolds : 0.0; }
};

/// Uniform or sinusoidally perturbed node coordinates over [lo, hi]:
/// x = xi + 0.05 sin(pi xi) applied to the uniform parameter nodes.
inline std::vector<double> case_axis_nodes(double lo, double hi, int n, bool nonuniform) {
    std::vector<double> nodes(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double xi = lo + (hi - lo) * i / n;
        nodes[i] = nonuniform ? xi + 0.05 * std::sin(M_PI * xi) : xi;
    }
    return nodes;
}

inline Mesh build_mesh(const CaseConfig& cfg) {
    if (cfg.n < 4) throw std::invalid_argument("build_mesh: need at least 4 cells per axis");
    double lo = 0.0, hi = 2.0;
    if (cfg.name == "vortex2d") hi = 10.0;
    if (cfg.name == "tgv") {
        lo = -M_PI;
        hi = M_PI;
    }
    auto ax = [&] { return case_axis_nodes(lo, hi, cfg.n, cfg.nonuniform); };
    // 2D cases run on the degenerate 3D box with one z cell spanning the full
    // domain extent, so the z-uniform error integrals carry the same volume
    // weighting as the 3D runs.
    if (cfg.dim == 2) return Mesh::make(ax(), ax(), {lo, hi});
    return Mesh::make(ax(), ax(), ax());
}

/// Exact advected density wave: rho = 1 + 0.2 sin(pi (sum x_i - dim*t)),
/// unit pressure and unit velocities. At integer times the phase coincides
/// with sum x_i - t on the period-2 domain.
inline Conserved density_wave(int dim, const std::array<double, 3>& x, double t,
                              double gamma = 1.4) {
    double s = x[0] + x[1] - 2.0 * t;
    if (dim == 3) s = x[0] + x[1] + x[2] - 3.0 * t;
    const double rho = 1.0 + 0.2 * std::sin(M_PI * s);
    const double W = dim == 3 ? 1.0 : 0.0;
    const double p = 1.0;
    const double E = p / (gamma - 1.0) + 0.5 * rho * (1.0 + 1.0 + W * W);
    return {rho, rho, rho, rho * W, E};
}

/// Isotropic vortex on [0,10]^2 translated with velocity (1,1); perturbations
/// in velocity and temperature, none in entropy, so rho = T^{1/(gamma-1)}.
inline Conserved isotropic_vortex(const std::array<double, 3>& x, double t, double eps,
                                  double gamma) {
    auto wrap = [](double v) {
        v = std::fmod(v, 10.0);
        if (v < -5.0) v += 10.0;
        if (v >= 5.0) v -= 10.0;
        return v;
    };
    const double dx = wrap(x[0] - 5.0 - t);
    const double dy = wrap(x[1] - 5.0 - t);
    const double r2 = dx * dx + dy * dy;
    const double g = eps / (2.0 * M_PI) * std::exp(0.5 * (1.0 - r2));
    const double U = 1.0 - g * dy;
    const double V = 1.0 + g * dx;
    const double T = 1.0 - (gamma - 1.0) * eps * eps / (8.0 * gamma * M_PI * M_PI) *
                               std::exp(1.0 - r2);
    const double rho = std::pow(T, 1.0 / (gamma - 1.0));
    const double p = rho * T;
    const double E = p / (gamma - 1.0) + 0.5 * rho * (U * U + V * V);
    return {rho, rho * U, rho * V, 0.0, E};
}

/// Taylor-Green initial field on [-pi, pi]^3 with L = V0 = rho0 = 1 and
/// uniform temperature: p0 = 1/(gamma M0^2), rho = p/p0.
inline Conserved taylor_green_init(const std::array<double, 3>& x, const CaseConfig& cfg) {
    const double p0 = 1.0 / (cfg.gamma * cfg.mach0 * cfg.mach0);
    const double U = std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]);
    const double V = -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]);
    const double p =
        p0 + (std::cos(2.0 * x[0]) + std::cos(2.0 * x[1])) * (std::cos(2.0 * x[2]) + 2.0) / 16.0;
    const double rho = p / p0;
    const double E = p / (cfg.gamma - 1.0) + 0.5 * rho * (U * U + V * V);
    return {rho, rho * U, rho * V, 0.0, E};
}

/// Initial projector for a case configuration.
inline std::function<Conserved(std::array<double, 3>)> initial_field(const CaseConfig& cfg) {
    if (cfg.name == "adv2d" || cfg.name == "adv3d")
        return [dim = cfg.dim, g = cfg.gamma](std::array<double, 3> x) {
            return density_wave(dim, x, 0.0, g);
        };
    if (cfg.name == "vortex2d")
        return [e = cfg.eps, g = cfg.gamma](std::array<double, 3> x) {
            return isotropic_vortex(x, 0.0, e, g);
        };
    return [cfg](std::array<double, 3> x) { return taylor_green_init(x, cfg); };
}

/// Exact solution at time t, or null for cases without one (tgv).
inline std::function<Conserved(std::array<double, 3>)> exact_field(const CaseConfig& cfg,
                                                                   double t) {
    if (cfg.name == "adv2d" || cfg.name == "adv3d")
        return [dim = cfg.dim, g = cfg.gamma, t](std::array<double, 3> x) {
            return density_wave(dim, x, t, g);
        };
    if (cfg.name == "vortex2d")
        return [e = cfg.eps, g = cfg.gamma, t](std::array<double, 3> x) {
            return isotropic_vortex(x, t, e, g);
        };
    return nullptr;
}

/// Taylor-Green diagnostics sample: volume-averaged kinetic energy, the
/// central-difference dissipation rate (filled in post-processing), and the
/// enstrophy-based dissipation rate.
struct TgvRecord {
    double t;
    double Ek;
    double epsEk = 0.0;
    double epsZeta;
};

/// Kinetic energy and integrated-enstrophy dissipation by cell-wise
/// quadrature; vorticity comes from the in-cell polynomial derivatives.
inline TgvRecord tgv_diagnostics(const DGState& s, const Mesh& mesh, const DGTables& tab,
                                 const GasModel& gas, const Partition& part) {
    const int N = tab.basis.N;
    struct Acc {
        double ek = 0, ens = 0;
    };
    std::vector<Acc> acc(mesh.ncells());
    parallel_map_cells(part, [&](int c) {
        const auto h = mesh.widths(c);
        const double vjac = h[0] * h[1] * h[2] / 8.0;
        double ek = 0, ens = 0;
        for (int p = 0; p < tab.proj.npts; ++p) {
            const EvalPoint e = detail::eval_tabulated(s.cell(c), N, tab.proj, p, h);
            const Vec5 q = e.q.vec();
            const double inv = 1.0 / q[0];
            const double U = q[1] * inv, V = q[2] * inv, W = q[3] * inv;
            ek += tab.proj.wq[p] * 0.5 * (q[1] * U + q[2] * V + q[3] * W);
            auto dvel = [&](int comp, int axis) {
                return (e.dq[axis][comp] - (comp == 1 ? U : comp == 2 ? V : W) * e.dq[axis][0]) *
                       inv;
            };
            const double wx = dvel(3, 1) - dvel(2, 2);
            const double wy = dvel(1, 2) - dvel(3, 0);
            const double wz = dvel(2, 0) - dvel(1, 1);
            ens += tab.proj.wq[p] * 0.5 * q[0] * (wx * wx + wy * wy + wz * wz);
        }
        acc[c] = {vjac * ek, vjac * ens};
    });
    double ek = 0, ens = 0, vol = 0;
    for (int c = 0; c < mesh.ncells(); ++c) {
        ek += acc[c].ek;
        ens += acc[c].ens;
        vol += mesh.volume(c);
    }
    TgvRecord r;
    r.t = s.time;
    r.Ek = ek / vol;
    r.epsZeta = 2.0 * gas.mu_ref * ens / vol;
    return r;
}

/// -dEk/dt by second-order central differences on a uniformly sampled series,
/// one-sided second-order at the endpoints.
inline std::vector<double> dissipation_from_series(const std::vector<double>& Ek, double dt) {
    const size_t n = Ek.size();
    if (n < 3) throw std::invalid_argument("dissipation_from_series: need at least 3 samples");
    std::vector<double> eps(n);
    eps[0] = -(-3.0 * Ek[0] + 4.0 * Ek[1] - Ek[2]) / (2.0 * dt);
    for (size_t i = 1; i + 1 < n; ++i) eps[i] = -(Ek[i + 1] - Ek[i - 1]) / (2.0 * dt);
    eps[n - 1] = -(3.0 * Ek[n - 1] - 4.0 * Ek[n - 2] + Ek[n - 3]) / (2.0 * dt);
    return eps;
}

}  // namespace hgks
