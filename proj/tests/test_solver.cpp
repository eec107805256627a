#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgks/io.hpp"
#include "hgks/solver.hpp"

using namespace hgks;

namespace {
const GasModel air = GasModel::make(1.4);

std::array<double, 5> totals(const DGState& s, const Mesh& mesh) {
    std::array<double, 5> t{};
    for (int c = 0; c < mesh.ncells(); ++c) {
        const double vol = mesh.volume(c);
        for (int v = 0; v < 5; ++v) t[v] += vol * s.coeff(c, 0, v);
    }
    return t;
}
}  // namespace

TEST_CASE("conservation: totals are constant over 100 steps") {
    CaseConfig cfg = CaseConfig::named("adv2d", 8);
    RunOptions opt;
    opt.degree = 2;
    opt.workers = 2;
    RunResult r = setup_run(cfg, opt);
    const auto before = totals(r.state, r.mesh);

    StepControl ctrl;
    ctrl.cfl = 0.15;
    const Partition cp = Partition::make(r.mesh.ncells(), 2);
    ResidualWorkspace ws;
    ws.resize(r.mesh, r.scheme, 2);
    TwoStageScratch scratch;
    double step_dt = 0;
    auto eval = [&](const std::vector<double>& q, std::vector<double>& L,
                    std::vector<double>& Lt) {
        L.resize(q.size());
        Lt.resize(q.size());
        residual(q.data(), r.mesh, r.scheme, step_dt, ws);
        detail::apply_inverse_mass(ws.R, L, r.mesh, r.scheme.basis, cp);
        detail::apply_inverse_mass(ws.Rt, Lt, r.mesh, r.scheme.basis, cp);
    };
    for (int s = 0; s < 100; ++s) {
        step_dt = compute_dt(r.state, r.mesh, r.scheme.gas, ctrl, 2);
        two_stage_step(r.state.coeffs, step_dt, eval, scratch);
        const auto now = totals(r.state, r.mesh);
        for (int v = 0; v < 5; ++v)
            CHECK(std::abs(now[v] - before[v]) <=
                  1e-12 * std::max(1.0, std::abs(before[v])) * (s + 1));
    }
}

TEST_CASE("free stream stays steady over steps on a nonuniform mesh") {
    CaseConfig cfg = CaseConfig::named("adv2d", 6);
    cfg.nonuniform = true;
    RunOptions opt;
    opt.degree = 3;
    RunResult r = setup_run(cfg, opt);
    // overwrite with a uniform state
    const Vec5 v = conserved_from_primitive({1.1, 0.4, -0.7, 0.0, 0.6}, air).vec();
    std::fill(r.state.coeffs.begin(), r.state.coeffs.end(), 0.0);
    for (int c = 0; c < r.mesh.ncells(); ++c)
        for (int k = 0; k < 5; ++k) r.state.coeff(c, 0, k) = v[k];
    const std::vector<double> before = r.state.coeffs;

    cfg.t_end = 0.2;
    RunResult rr = r;
    advance(rr, cfg, opt, [](RunResult&) {});
    double dmax = 0;
    for (size_t i = 0; i < before.size(); ++i)
        dmax = std::max(dmax, std::abs(rr.state.coeffs[i] - before[i]));
    CHECK(dmax <= 1e-12);
}

TEST_CASE("a dt -> 0 step leaves the state unchanged") {
    CaseConfig cfg = CaseConfig::named("adv2d", 6);
    RunOptions opt;
    opt.degree = 2;
    RunResult r = setup_run(cfg, opt);
    const std::vector<double> before = r.state.coeffs;

    const Partition cp = Partition::make(r.mesh.ncells(), 1);
    ResidualWorkspace ws;
    ws.resize(r.mesh, r.scheme, 1);
    TwoStageScratch scratch;
    const double dt = 1e-13;
    auto eval = [&](const std::vector<double>& q, std::vector<double>& L,
                    std::vector<double>& Lt) {
        L.resize(q.size());
        Lt.resize(q.size());
        residual(q.data(), r.mesh, r.scheme, dt, ws);
        detail::apply_inverse_mass(ws.R, L, r.mesh, r.scheme.basis, cp);
        detail::apply_inverse_mass(ws.Rt, Lt, r.mesh, r.scheme.basis, cp);
    };
    two_stage_step(r.state.coeffs, dt, eval, scratch);
    double dmax = 0;
    for (size_t i = 0; i < before.size(); ++i)
        dmax = std::max(dmax, std::abs(r.state.coeffs[i] - before[i]));
    CHECK(dmax <= 1e-11);
}

TEST_CASE("tgv run produces complete records with finite dissipation") {
    CaseConfig cfg = CaseConfig::named("tgv", 8);
    RunOptions opt;
    opt.degree = 2;
    opt.workers = 2;
    opt.t_end = 0.3;
    opt.record_interval = 0.05;
    const RunResult r = run_case(cfg, opt);
    CHECK(r.records.size() == 7);  // t = 0, 0.05, ..., 0.3
    CHECK(r.records.front().t == 0.0);
    CHECK(r.records.back().t == doctest::Approx(0.3));
    CHECK(r.records.front().Ek == doctest::Approx(0.125).epsilon(1e-4));
    for (const auto& rec : r.records) {
        CHECK(std::isfinite(rec.epsEk));
        CHECK(rec.epsZeta >= 0.0);
    }
}

TEST_CASE("solver blow-up reports a diagnosable error") {
    CaseConfig cfg = CaseConfig::named("adv2d", 6);
    RunOptions opt;
    opt.degree = 2;
    RunResult r = setup_run(cfg, opt);
    // poison one cell with a negative-pressure state
    r.state.coeff(2, 0, 0) = 1.0;
    r.state.coeff(2, 0, 1) = 10.0;
    r.state.coeff(2, 0, 4) = 1.0;
    cfg.t_end = 0.5;
    try {
        advance(r, cfg, opt, [](RunResult&) {});
        FAIL("expected invalid_state_error");
    } catch (const invalid_state_error& e) {
        CHECK(std::string(e.what()).find("pressure") != std::string::npos);
    } catch (const non_positive_dt&) {
        // also acceptable: the poisoned average may fail dt computation first
    }
}

TEST_CASE("convergence study: nominal and refined policies run") {
    StudyOptions sopt;
    sopt.degree = 2;
    sopt.workers = 2;
    sopt.nominal = true;
    const auto rows = convergence_study("adv2d", {8, 16}, sopt);
    CHECK(rows.size() == 2);
    CHECK(rows[0].err.l1 > rows[1].err.l1);
    const double order = std::log2(rows[0].err.l1 / rows[1].err.l1);
    CHECK(order > 2.8);
    CHECK(order < 3.8);
}
