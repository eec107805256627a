#pragma once

#include <atomic>
#include <functional>
#include <vector>

#include "hgks/basis.hpp"
#include "hgks/flux.hpp"
#include "hgks/mesh.hpp"
#include "hgks/quadrature.hpp"
#include "hgks/runtime.hpp"

namespace hgks {

/// Modal coefficients of the conserved variables, cell-major:
/// coeffs[(cell*N + n)*5 + var]. With the unscaled Legendre basis the n = 0
/// coefficient is the cell average.
struct DGState {
    int ncells = 0;
    int N = 0;
    double time = 0.0;
    std::vector<double> coeffs;

    static DGState zeros(int ncells, int N) {
        DGState s;
        s.ncells = ncells;
        s.N = N;
        s.coeffs.assign(static_cast<size_t>(ncells) * N * 5, 0.0);
        return s;
    }

    double* cell(int c) { return coeffs.data() + static_cast<size_t>(c) * N * 5; }
    const double* cell(int c) const { return coeffs.data() + static_cast<size_t>(c) * N * 5; }
    double& coeff(int c, int n, int var) { return coeffs[(static_cast<size_t>(c) * N + n) * 5 + var]; }
    double coeff(int c, int n, int var) const {
        return coeffs[(static_cast<size_t>(c) * N + n) * 5 + var];
    }
};

/// Diagonal mass matrix entries for one cell. Off-diagonal entries vanish by
/// orthogonality of the tensor Legendre basis on box cells.
inline std::vector<double> mass_diag(const std::array<double, 3>& widths, const BasisSet& basis) {
    std::vector<double> m(basis.N);
    const double vol = widths[0] * widths[1] * widths[2];
    for (int n = 0; n < basis.N; ++n) {
        const auto& ix = basis.idx[n];
        m[n] = vol / ((2.0 * ix[0] + 1.0) * (2.0 * ix[1] + 1.0) * (2.0 * ix[2] + 1.0));
    }
    return m;
}

namespace detail {

struct PointBasis {
    // per point: N basis values followed by 3*N reference derivatives
    std::vector<double> B;    // [pt*N + n]
    std::vector<double> dB;   // [(pt*3 + axis)*N + n]
    std::vector<double> wq;   // quadrature weight per point
    std::vector<std::array<double, 3>> ref;  // reference coordinates per point
    int npts = 0;

    void add_point(const BasisSet& basis, double xi, double eta, double zeta, double w) {
        ref.push_back({xi, eta, zeta});
        wq.push_back(w);
        for (int n = 0; n < basis.N; ++n) B.push_back(basis.eval(n, xi, eta, zeta));
        for (int a = 0; a < 3; ++a)
            for (int n = 0; n < basis.N; ++n) dB.push_back(basis.eval_deriv(n, a, xi, eta, zeta));
        ++npts;
    }
    const double* Bp(int p, int N) const { return B.data() + static_cast<size_t>(p) * N; }
    const double* dBp(int p, int axis, int N) const {
        return dB.data() + (static_cast<size_t>(p) * 3 + axis) * N;
    }
};

}  // namespace detail

/// Precomputed basis/quadrature tables on the reference cell. The flux rule
/// uses k points per axis (2 for P2, 3 for P3); projection, error norms and
/// diagnostics use k+2. In the degenerate 2D mode the z direction carries a
/// single midpoint in volume rules.
struct DGTables {
    BasisSet basis;
    int nq_flux;
    int nq_proj;
    detail::PointBasis vol;       // flux-rule volume points
    detail::PointBasis proj;      // (k+2)-rule volume points
    detail::PointBasis face_minus[3];  // face points at axis coordinate -1
    detail::PointBasis face_plus[3];   // face points at axis coordinate +1

    static DGTables make(const BasisSet& basis) {
        DGTables t;
        t.basis = basis;
        t.nq_flux = basis.degree == 2 ? 2 : 3;
        t.nq_proj = basis.degree + 2;
        const QuadRule qf = QuadRule::gauss(t.nq_flux);
        const QuadRule qp = QuadRule::gauss(t.nq_proj);
        const QuadRule q1 = QuadRule::gauss(1);
        const QuadRule& qfz = basis.dim == 3 ? qf : q1;
        const QuadRule& qpz = basis.dim == 3 ? qp : q1;

        for (int i = 0; i < qf.size(); ++i)
            for (int j = 0; j < qf.size(); ++j)
                for (int k = 0; k < qfz.size(); ++k)
                    t.vol.add_point(basis, qf.x[i], qf.x[j], qfz.x[k], qf.w[i] * qf.w[j] * qfz.w[k]);
        for (int i = 0; i < qp.size(); ++i)
            for (int j = 0; j < qp.size(); ++j)
                for (int k = 0; k < qpz.size(); ++k)
                    t.proj.add_point(basis, qp.x[i], qp.x[j], qpz.x[k], qp.w[i] * qp.w[j] * qpz.w[k]);

        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            const QuadRule& rb = (b == 2 && basis.dim == 2) ? q1 : qf;
            const QuadRule& rc = (c == 2 && basis.dim == 2) ? q1 : qf;
            for (int ib = 0; ib < rb.size(); ++ib)
                for (int ic = 0; ic < rc.size(); ++ic) {
                    std::array<double, 3> r{};
                    r[b] = rb.x[ib];
                    r[c] = rc.x[ic];
                    const double w = rb.w[ib] * rc.w[ic];
                    r[a] = -1.0;
                    t.face_minus[a].add_point(basis, r[0], r[1], r[2], w);
                    r[a] = 1.0;
                    t.face_plus[a].add_point(basis, r[0], r[1], r[2], w);
                }
        }
        return t;
    }
};

/// Value and global-frame derivatives of the expansion at one tabulated point.
struct EvalPoint {
    Conserved q;
    std::array<Vec5, 3> dq;
};

namespace detail {

inline EvalPoint eval_tabulated(const double* coeffs, int N, const PointBasis& pb, int p,
                                const std::array<double, 3>& widths) {
    Vec5 val{};
    std::array<Vec5, 3> der{};
    const double* B = pb.Bp(p, N);
    for (int n = 0; n < N; ++n) {
        const double* cn = coeffs + n * 5;
        const double b = B[n];
        for (int v = 0; v < 5; ++v) val[v] += b * cn[v];
    }
    for (int a = 0; a < 3; ++a) {
        const double* dB = pb.dBp(p, a, N);
        const double scale = 2.0 / widths[a];
        Vec5 d{};
        for (int n = 0; n < N; ++n) {
            const double* cn = coeffs + n * 5;
            const double b = dB[n];
            for (int v = 0; v < 5; ++v) d[v] += b * cn[v];
        }
        der[a] = scale * d;
    }
    return {Conserved::from(val), der};
}

}  // namespace detail

/// Evaluate the in-cell expansion (value and all three global derivatives) at
/// an arbitrary reference point; used for one-sided face traces and tests.
inline EvalPoint eval_at(const DGState& s, const Mesh& mesh, const BasisSet& basis, int cell,
                         const std::array<double, 3>& ref) {
    const auto widths = mesh.widths(cell);
    Vec5 val{};
    std::array<Vec5, 3> der{};
    const double* coeffs = s.cell(cell);
    for (int n = 0; n < basis.N; ++n) {
        const double b = basis.eval(n, ref[0], ref[1], ref[2]);
        for (int v = 0; v < 5; ++v) val[v] += b * coeffs[n * 5 + v];
        for (int a = 0; a < 3; ++a) {
            const double db = basis.eval_deriv(n, a, ref[0], ref[1], ref[2]);
            for (int v = 0; v < 5; ++v) der[a][v] += db * coeffs[n * 5 + v] * 2.0 / widths[a];
        }
    }
    return {Conserved::from(val), der};
}

/// One-sided trace and derivatives at face quadrature point `p` of the given
/// face of a cell (side = -1 for the cell's minus face, +1 for plus).
inline EvalPoint trace_and_slopes(const DGState& s, const Mesh& mesh, const DGTables& tab,
                                  int cell, int axis, int side, int p) {
    const auto& pb = side < 0 ? tab.face_minus[axis] : tab.face_plus[axis];
    return detail::eval_tabulated(s.cell(cell), tab.basis.N, pb, p, mesh.widths(cell));
}

/// L2 projection of a pointwise field onto the modal basis.
inline DGState project(const std::function<Conserved(std::array<double, 3>)>& field,
                       const Mesh& mesh, const DGTables& tab, const Partition& part) {
    const int N = tab.basis.N;
    DGState s = DGState::zeros(mesh.ncells(), N);
    std::vector<double> bn(N);
    for (int n = 0; n < N; ++n) {
        const auto& ix = tab.basis.idx[n];
        bn[n] = (2.0 * ix[0] + 1.0) * (2.0 * ix[1] + 1.0) * (2.0 * ix[2] + 1.0) / 8.0;
    }
    parallel_map_cells(part, [&](int c) {
        const auto ctr = mesh.center(c);
        const auto h = mesh.widths(c);
        double* out = s.cell(c);
        for (int p = 0; p < tab.proj.npts; ++p) {
            const auto& r = tab.proj.ref[p];
            const Conserved f = field({ctr[0] + 0.5 * h[0] * r[0], ctr[1] + 0.5 * h[1] * r[1],
                                       ctr[2] + 0.5 * h[2] * r[2]});
            const Vec5 fv = f.vec();
            const double wq = tab.proj.wq[p];
            const double* B = tab.proj.Bp(p, N);
            for (int n = 0; n < N; ++n)
                for (int v = 0; v < 5; ++v) out[n * 5 + v] += wq * B[n] * fv[v];
        }
        for (int n = 0; n < N; ++n)
            for (int v = 0; v < 5; ++v) out[n * 5 + v] *= bn[n];
    });
    return s;
}

struct ErrorNorms {
    double l1, l2, cell_avg;
};

/// Density error norms against an exact field: the L1 and L2 integrals (no
/// normalization) and the cell-average super-convergence norm.
inline ErrorNorms error_norms(const DGState& s, const Mesh& mesh, const DGTables& tab,
                              const std::function<Conserved(std::array<double, 3>)>& exact,
                              const Partition& part) {
    const int N = tab.basis.N;
    struct Acc {
        double l1 = 0, l2 = 0, ec = 0;
    };
    std::vector<Acc> acc(mesh.ncells());
    parallel_map_cells(part, [&](int c) {
        const auto ctr = mesh.center(c);
        const auto h = mesh.widths(c);
        const double vol = h[0] * h[1] * h[2];
        const double* coeffs = s.cell(c);
        double l1 = 0, l2 = 0, avg_exact = 0;
        for (int p = 0; p < tab.proj.npts; ++p) {
            const auto& r = tab.proj.ref[p];
            const double rho_ex = exact({ctr[0] + 0.5 * h[0] * r[0], ctr[1] + 0.5 * h[1] * r[1],
                                         ctr[2] + 0.5 * h[2] * r[2]})
                                      .rho;
            const double* B = tab.proj.Bp(p, N);
            double rho_h = 0;
            for (int n = 0; n < N; ++n) rho_h += B[n] * coeffs[n * 5 + 0];
            const double d = std::abs(rho_ex - rho_h);
            l1 += tab.proj.wq[p] * d;
            l2 += tab.proj.wq[p] * d * d;
            avg_exact += tab.proj.wq[p] * rho_ex;
        }
        avg_exact /= 8.0;
        const double davg = avg_exact - coeffs[0];
        acc[c] = {vol / 8.0 * l1, vol / 8.0 * l2, vol * davg * davg};
    });
    double l1 = 0, l2 = 0, ec = 0;
    for (const auto& a : acc) {  // fixed-order reduction
        l1 += a.l1;
        l2 += a.l2;
        ec += a.ec;
    }
    return {l1, std::sqrt(l2), std::sqrt(ec)};
}

/// Everything the residual kernels need besides the state itself.
struct Scheme {
    BasisSet basis;
    DGTables tab;
    GasModel gas;

    static Scheme make(int degree, int dim, const GasModel& gas) {
        Scheme s;
        s.basis = build_basis(degree, dim);
        s.tab = DGTables::make(s.basis);
        s.gas = gas;
        return s;
    }
};

/// Reused buffers for residual assembly. Interior-face fluxes are computed
/// once in a face-parallel pass, stored here, then gathered per cell, which
/// makes the surface contributions telescope exactly.
struct ResidualWorkspace {
    std::array<std::vector<double>, 3> face;  // [face*(npts*10) + p*10 + (F|Ft)]
    std::vector<double> R, Rt;                // [(cell*N + n)*5 + var]
    Partition cells{1, {{0, 0}}};
    Partition faces{1, {{0, 0}}};
    bool count_fluxes = false;  // debug mode: tally interface flux evaluations
    std::atomic<long> flux_evaluations{0};

    void resize(const Mesh& mesh, const Scheme& sch, int workers) {
        const int ncells = mesh.ncells();
        for (int a = 0; a < 3; ++a)
            face[a].assign(static_cast<size_t>(ncells) * sch.tab.face_minus[a].npts * 10, 0.0);
        R.assign(static_cast<size_t>(ncells) * sch.basis.N * 5, 0.0);
        Rt.assign(static_cast<size_t>(ncells) * sch.basis.N * 5, 0.0);
        cells = Partition::make(ncells, workers);
        faces = Partition::make(3 * ncells, workers);
    }
};

namespace detail {

inline int neighbor_minus(const Mesh& mesh, int c, int axis) {
    auto ijk = mesh.cell_ijk(c);
    const int n = axis == 0 ? mesh.nx : axis == 1 ? mesh.ny : mesh.nz;
    ijk[axis] = (ijk[axis] + n - 1) % n;
    return mesh.cell_index(ijk[0], ijk[1], ijk[2]);
}

inline int neighbor_plus(const Mesh& mesh, int c, int axis) {
    auto ijk = mesh.cell_ijk(c);
    const int n = axis == 0 ? mesh.nx : axis == 1 ? mesh.ny : mesh.nz;
    ijk[axis] = (ijk[axis] + 1) % n;
    return mesh.cell_index(ijk[0], ijk[1], ijk[2]);
}

// Cyclic permutation taking the face normal onto the u axis; exact on
// axis-aligned meshes.
inline FaceTrace to_face_local(const EvalPoint& e, int axis) {
    const int c1 = (axis + 1) % 3, c2 = (axis + 2) % 3;
    FaceTrace t;
    const Vec5 q = e.q.vec();
    t.q = Conserved::from({q[0], q[1 + axis], q[1 + c1], q[1 + c2], q[4]});
    for (int d = 0; d < 3; ++d) {
        const int g = d == 0 ? axis : d == 1 ? c1 : c2;
        const Vec5& s = e.dq[g];
        t.dq[d] = {s[0], s[1 + axis], s[1 + c1], s[1 + c2], s[4]};
    }
    return t;
}

inline Vec5 from_face_local(const Vec5& f, int axis) {
    const int c1 = (axis + 1) % 3, c2 = (axis + 2) % 3;
    Vec5 g;
    g[0] = f[0];
    g[4] = f[4];
    g[1 + axis] = f[1];
    g[1 + c1] = f[2];
    g[1 + c2] = f[3];
    return g;
}

}  // namespace detail

/// Assemble R (from F) and Rt (from dF/dt) for every cell and basis function:
/// R_n = -sum_faces int F.n B_n dGamma + int F.grad(B_n) dOmega.
/// Two barrier-separated phases: interface fluxes over faces, then gather and
/// volume integration over cells. Kinetic-state failures carry the face/cell
/// location via worker_error.
inline void residual(const double* coeffs, const Mesh& mesh, const Scheme& sch, double dt,
                     ResidualWorkspace& ws) {
    const int N = sch.basis.N;
    const int ncells = mesh.ncells();
    const double mu = sch.gas.mu_ref;
    const GasModel& gas = sch.gas;
    const auto cell_coeffs = [&](int c) { return coeffs + static_cast<size_t>(c) * N * 5; };

    // Phase 1: one kinetic flux per interior face quadrature point. Face f of
    // axis a is the minus-a face of cell f.
    parallel_map_cells(ws.faces, [&](int fa) {
        const int axis = fa / ncells;
        const int f = fa % ncells;
        const int cm = detail::neighbor_minus(mesh, f, axis);
        const auto& pbL = sch.tab.face_plus[axis];   // minus-side cell, its plus face
        const auto& pbR = sch.tab.face_minus[axis];  // plus-side cell, its minus face
        const auto hL = mesh.widths(cm);
        const auto hR = mesh.widths(f);
        double* out = ws.face[axis].data() + static_cast<size_t>(f) * pbL.npts * 10;
        for (int p = 0; p < pbL.npts; ++p) {
            const EvalPoint eL = detail::eval_tabulated(cell_coeffs(cm), N, pbL, p, hL);
            const EvalPoint eR = detail::eval_tabulated(cell_coeffs(f), N, pbR, p, hR);
            const FaceTrace tl = detail::to_face_local(eL, axis);
            const FaceTrace tr = detail::to_face_local(eR, axis);
            double tau = 0.0;
            if (mu > 0.0) {
                const double pl = pressure(tl.q, gas);
                const double pr = pressure(tr.q, gas);
                tau = mu / (0.5 * (pl + pr));
            }
            const auto [If, Ih] = interface_flux_integrals(tl, tr, gas, tau, dt);
            const FluxPair fp = flux_linearize(If, Ih, dt);
            const Vec5 F = detail::from_face_local(fp.F, axis);
            const Vec5 Ft = detail::from_face_local(fp.Ft, axis);
            for (int v = 0; v < 5; ++v) {
                out[p * 10 + v] = F[v];
                out[p * 10 + 5 + v] = Ft[v];
            }
        }
        if (ws.count_fluxes) ws.flux_evaluations += pbL.npts;
    });

    // Phase 2: gather face fluxes and add volume fluxes, per cell.
    parallel_map_cells(ws.cells, [&](int c) {
        const auto h = mesh.widths(c);
        double* R = ws.R.data() + static_cast<size_t>(c) * N * 5;
        double* Rt = ws.Rt.data() + static_cast<size_t>(c) * N * 5;
        std::fill(R, R + N * 5, 0.0);
        std::fill(Rt, Rt + N * 5, 0.0);

        for (int axis = 0; axis < 3; ++axis) {
            const int b = (axis + 1) % 3, cc = (axis + 2) % 3;
            const double jac = h[b] * h[cc] / 4.0;
            const auto& pbm = sch.tab.face_minus[axis];
            const auto& pbp = sch.tab.face_plus[axis];
            const int fminus = c;
            const int fplus = detail::neighbor_plus(mesh, c, axis);
            const double* Fm = ws.face[axis].data() + static_cast<size_t>(fminus) * pbm.npts * 10;
            const double* Fp = ws.face[axis].data() + static_cast<size_t>(fplus) * pbm.npts * 10;
            for (int p = 0; p < pbm.npts; ++p) {
                const double wj = pbm.wq[p] * jac;
                const double* Bm = pbm.Bp(p, N);  // this cell's minus face
                const double* Bp = pbp.Bp(p, N);  // this cell's plus face
                for (int n = 0; n < N; ++n) {
                    const double wm = wj * Bm[n], wp = wj * Bp[n];
                    for (int v = 0; v < 5; ++v) {
                        R[n * 5 + v] += wm * Fm[p * 10 + v] - wp * Fp[p * 10 + v];
                        Rt[n * 5 + v] += wm * Fm[p * 10 + 5 + v] - wp * Fp[p * 10 + 5 + v];
                    }
                }
            }
        }

        const double vjac = h[0] * h[1] * h[2] / 8.0;
        const int naxes = sch.basis.dim == 3 ? 3 : 2;
        const auto& pv = sch.tab.vol;
        for (int p = 0; p < pv.npts; ++p) {
            const EvalPoint e = detail::eval_tabulated(cell_coeffs(c), N, pv, p, h);
            const SmoothPoint sp = make_smooth_point(e.q, e.dq, gas);
            const double tau = mu > 0.0 ? mu / pressure(sp.w) : 0.0;
            const double wj = pv.wq[p] * vjac;
            for (int axis = 0; axis < naxes; ++axis) {
                const auto [If, Ih] = smooth_flux_integrals(sp, tau, dt, axis);
                const FluxPair fp = flux_linearize(If, Ih, dt);
                const double* dB = pv.dBp(p, axis, N);
                const double scale = 2.0 / h[axis];
                for (int n = 0; n < N; ++n) {
                    const double w = wj * dB[n] * scale;
                    for (int v = 0; v < 5; ++v) {
                        R[n * 5 + v] += w * fp.F[v];
                        Rt[n * 5 + v] += w * fp.Ft[v];
                    }
                }
            }
        }
    });
}

inline void residual(const DGState& s, const Mesh& mesh, const Scheme& sch, double dt,
                     ResidualWorkspace& ws) {
    residual(s.coeffs.data(), mesh, sch, dt, ws);
}

}  // namespace hgks
