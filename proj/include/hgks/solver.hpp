#pragma once

#include <chrono>

#include "hgks/cases.hpp"
#include "hgks/integrator.hpp"

namespace hgks {

struct RunOptions {
    int degree = 2;
    double cfl = 0.0;  // 0 selects the per-degree default
    std::optional<double> dt_fixed;
    std::optional<double> t_end;  // overrides the case default
    int workers = 1;
    double record_interval = 0.05;  // tgv diagnostic cadence
};

struct RunResult {
    Mesh mesh;
    Scheme scheme;
    DGState state;
    int steps = 0;
    std::vector<TgvRecord> records;  // tgv only
};

/// Problem assembled from a case configuration: mesh, scheme and the
/// projected initial state.
inline RunResult setup_run(const CaseConfig& cfg, const RunOptions& opt) {
    RunResult r;
    r.mesh = build_mesh(cfg);
    r.scheme = Scheme::make(opt.degree, cfg.dim, GasModel::make(cfg.gamma, cfg.viscosity()));
    const Partition part = Partition::make(r.mesh.ncells(), opt.workers);
    r.state = project(initial_field(cfg), r.mesh, r.scheme.tab, part);
    r.state.time = 0.0;
    return r;
}

namespace detail {

/// Divide residual rows by the diagonal mass matrix, per cell.
inline void apply_inverse_mass(const std::vector<double>& R, std::vector<double>& L,
                               const Mesh& mesh, const BasisSet& basis, const Partition& part) {
    const int N = basis.N;
    parallel_map_cells(part, [&](int c) {
        const auto m = mass_diag(mesh.widths(c), basis);
        const double* in = R.data() + static_cast<size_t>(c) * N * 5;
        double* out = L.data() + static_cast<size_t>(c) * N * 5;
        for (int n = 0; n < N; ++n) {
            const double inv = 1.0 / m[n];
            for (int v = 0; v < 5; ++v) out[n * 5 + v] = in[n * 5 + v] * inv;
        }
    });
}

}  // namespace detail

/// March a prepared run to t_end. Calls on_record(state) at t = 0 and then at
/// every record_interval for the tgv case (steps land exactly on record
/// times). Throws invalid_state_error-derived exceptions on blow-up, with the
/// failing step's time appended.
template <class OnRecord>
inline void advance(RunResult& r, const CaseConfig& cfg, const RunOptions& opt,
                    OnRecord&& on_record) {
    StepControl ctrl;
    ctrl.cfl = opt.cfl > 0.0 ? opt.cfl : default_cfl(opt.degree);
    ctrl.t_end = opt.t_end ? *opt.t_end : cfg.t_end;
    ctrl.dt_fixed = opt.dt_fixed;

    const Partition cell_part = Partition::make(r.mesh.ncells(), opt.workers);
    ResidualWorkspace ws;
    ws.resize(r.mesh, r.scheme, opt.workers);
    TwoStageScratch scratch;

    const bool record = cfg.name == "tgv";
    double next_record = opt.record_interval;
    on_record(r);

    double t = r.state.time;
    double step_dt = 0.0;
    const auto eval = [&](const std::vector<double>& q, std::vector<double>& L,
                          std::vector<double>& Lt) {
        L.resize(q.size());
        Lt.resize(q.size());
        residual(q.data(), r.mesh, r.scheme, step_dt, ws);
        detail::apply_inverse_mass(ws.R, L, r.mesh, r.scheme.basis, cell_part);
        detail::apply_inverse_mass(ws.Rt, Lt, r.mesh, r.scheme.basis, cell_part);
    };

    while (t < ctrl.t_end - 1e-14 * ctrl.t_end) {
        double dt = compute_dt(r.state, r.mesh, r.scheme.gas, ctrl, opt.degree);
        dt = std::min(dt, ctrl.t_end - t);
        if (record) dt = std::min(dt, next_record - t);
        step_dt = dt;
        try {
            two_stage_step(r.state.coeffs, dt, eval, scratch);
        } catch (const std::exception& e) {
            throw invalid_state_error(std::string(e.what()) + " at t=" + std::to_string(t));
        }
        t += dt;
        r.state.time = t;
        ++r.steps;
        if (record && t >= next_record - 1e-12) {
            on_record(r);
            next_record += opt.record_interval;
        }
    }
}

inline RunResult run_case(const CaseConfig& cfg, const RunOptions& opt) {
    RunResult r = setup_run(cfg, opt);
    const Partition part = Partition::make(r.mesh.ncells(), opt.workers);
    advance(r, cfg, opt, [&](RunResult& rr) {
        if (cfg.name == "tgv") {
            TgvRecord rec = tgv_diagnostics(rr.state, rr.mesh, rr.scheme.tab, rr.scheme.gas, part);
            rr.records.push_back(rec);
        }
    });
    if (!r.records.empty()) {
        std::vector<double> ek(r.records.size());
        for (size_t i = 0; i < ek.size(); ++i) ek[i] = r.records[i].Ek;
        const auto eps = dissipation_from_series(ek, opt.record_interval);
        for (size_t i = 0; i < ek.size(); ++i) r.records[i].epsEk = eps[i];
    }
    return r;
}

/// Density error norms of a finished run against the case's exact solution.
inline ErrorNorms run_error_norms(const RunResult& r, const CaseConfig& cfg, int workers) {
    const auto exact = exact_field(cfg, r.state.time);
    if (!exact) throw std::invalid_argument("case has no exact solution: " + cfg.name);
    const Partition part = Partition::make(r.mesh.ncells(), workers);
    return error_norms(r.state, r.mesh, r.scheme.tab, exact, part);
}

/// How convergence studies choose time steps. In refined mode the step is
/// anchored at one mesh's CFL step and scaled as dt ~ h^power, so the
/// temporal error refines together with the spatial one; the anchor and
/// power are chosen per study (power 2 exposes the k+1 field orders and the
/// P2 mean super-convergence, power 3 the P3 mean super-convergence, which
/// then refines self-similarly). In nominal mode every mesh runs at its own
/// CFL step, the regime the solver uses in production runs.
struct StudyOptions {
    int degree = 2;
    bool nonuniform = false;
    int workers = 1;
    bool nominal = false;
    double dt_power = 2.0;
    double dt_safety = 0.7;
    size_t anchor_index = 0;
    std::optional<double> cfl;  // overrides the per-degree default
};

struct StudyRow {
    int n;
    ErrorNorms err;
    int steps;
    double dt;
};

inline std::vector<StudyRow> convergence_study(const std::string& case_name,
                                               const std::vector<int>& meshes,
                                               const StudyOptions& sopt) {
    const double cfl = sopt.cfl ? *sopt.cfl : default_cfl(sopt.degree);
    auto cfl_dt = [&](int n) {
        CaseConfig cfg = CaseConfig::named(case_name, n);
        cfg.nonuniform = sopt.nonuniform;
        RunOptions opt;
        opt.degree = sopt.degree;
        opt.workers = sopt.workers;
        RunResult r = setup_run(cfg, opt);
        StepControl ctrl;
        ctrl.cfl = cfl;
        return compute_dt(r.state, r.mesh, r.scheme.gas, ctrl, sopt.degree);
    };

    double anchor_dt = 0.0;
    int anchor_n = 0;
    if (!sopt.nominal) {
        anchor_n = meshes.at(std::min(sopt.anchor_index, meshes.size() - 1));
        anchor_dt = sopt.dt_safety * cfl_dt(anchor_n);
    }

    std::vector<StudyRow> rows;
    for (int n : meshes) {
        CaseConfig cfg = CaseConfig::named(case_name, n);
        cfg.nonuniform = sopt.nonuniform;
        RunOptions opt;
        opt.degree = sopt.degree;
        opt.workers = sopt.workers;
        opt.cfl = cfl;
        if (!sopt.nominal) {
            const double policy = anchor_dt * std::pow(double(anchor_n) / n, sopt.dt_power);
            const double cap = cfl_dt(n);
            opt.dt_fixed = std::min(policy, cap);
        }
        RunResult r = run_case(cfg, opt);
        const ErrorNorms e = run_error_norms(r, cfg, sopt.workers);
        rows.push_back({n, e, r.steps, opt.dt_fixed ? *opt.dt_fixed : 0.0});
    }
    return rows;
}

/// Wall-time scaling table over mesh sizes and worker counts;
/// speedup = time(W=1) / time(W) at the same size.
inline std::vector<ScalingRow> scaling_report(const std::string& case_name,
                                              const std::vector<int>& sizes,
                                              const std::vector<int>& workers, int degree,
                                              std::optional<double> t_end = {}) {
    std::vector<ScalingRow> rows;
    for (int n : sizes) {
        double base = 0.0;
        for (int w : workers) {
            CaseConfig cfg = CaseConfig::named(case_name, n);
            RunOptions opt;
            opt.degree = degree;
            opt.workers = w;
            opt.t_end = t_end;
            RunResult r = setup_run(cfg, opt);
            const auto start = std::chrono::steady_clock::now();
            advance(r, cfg, opt, [](RunResult&) {});
            const auto stop = std::chrono::steady_clock::now();
            const double secs = std::chrono::duration<double>(stop - start).count();
            if (w == 1 || base == 0.0) base = secs;
            rows.push_back({n, w, secs, base / secs});
        }
    }
    return rows;
}

}  // namespace hgks
