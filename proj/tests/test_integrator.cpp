#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgks/cases.hpp"
#include "hgks/integrator.hpp"

using namespace hgks;

namespace {
const GasModel air = GasModel::make(1.4);
}

TEST_CASE("compute_dt: rest gas formula") {
    const Mesh mesh = Mesh::make({0.0, 0.1, 0.2}, {0.0, 0.1, 0.2}, {0.0, 0.1, 0.2});
    DGState s = DGState::zeros(mesh.ncells(), 1);
    for (int c = 0; c < mesh.ncells(); ++c) {
        s.coeff(c, 0, 0) = 1.0;
        s.coeff(c, 0, 4) = 1.0 / 0.4;  // p = 1
    }
    StepControl ctrl;
    ctrl.cfl = 0.15;
    const double dt = compute_dt(s, mesh, air, ctrl, 2);
    CHECK(dt == doctest::Approx(0.15 * 0.1 / std::sqrt(1.4)).epsilon(1e-12));
}

TEST_CASE("compute_dt: doubling resolution halves the inviscid step") {
    auto dt_for = [&](int n) {
        CaseConfig cfg = CaseConfig::named("adv3d", n);
        const Mesh mesh = build_mesh(cfg);
        const Scheme sch = Scheme::make(2, 3, air);
        const Partition part = Partition::make(mesh.ncells(), 1);
        const DGState s = project(initial_field(cfg), mesh, sch.tab, part);
        StepControl ctrl;
        ctrl.cfl = 0.15;
        return compute_dt(s, mesh, air, ctrl, 2);
    };
    // the coarser projection sees slightly milder cell-average extremes
    CHECK(dt_for(8) / dt_for(16) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("compute_dt: Taylor-Green step is consistent with the published run") {
    CaseConfig cfg = CaseConfig::named("tgv", 96);
    const Mesh mesh = build_mesh(cfg);
    const GasModel gas = GasModel::make(cfg.gamma, cfg.viscosity());
    const Scheme sch = Scheme::make(2, 3, gas);
    const Partition part = Partition::make(mesh.ncells(), 2);
    const DGState s = project(initial_field(cfg), mesh, sch.tab, part);
    StepControl ctrl;
    ctrl.cfl = 0.15;
    const double dt = compute_dt(s, mesh, gas, ctrl, 2);
    CHECK(dt > 8.86e-4 / 1.5);
    CHECK(dt < 8.86e-4 * 1.5);

    ctrl.cfl = 0.09;
    const double dt3 = compute_dt(s, mesh, gas, ctrl, 3);
    CHECK(dt3 > 5.35e-4 / 1.5);
    CHECK(dt3 < 5.35e-4 * 1.5);
}

TEST_CASE("compute_dt: fixed step override and failure modes") {
    const Mesh mesh = Mesh::make({0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0});
    DGState s = DGState::zeros(1, 1);
    s.coeff(0, 0, 0) = 1.0;
    s.coeff(0, 0, 4) = 2.5;
    StepControl ctrl;
    ctrl.dt_fixed = 0.123;
    CHECK(compute_dt(s, mesh, air, ctrl, 2) == 0.123);
}

TEST_CASE("two-stage step: constant operator advances linearly") {
    std::vector<double> q = {1.0, -2.0};
    TwoStageScratch ws;
    auto eval = [](const std::vector<double>&, std::vector<double>& L, std::vector<double>& Lt) {
        L = {3.0, 0.5};
        Lt = {0.0, 0.0};
    };
    two_stage_step(q, 0.1, eval, ws);
    CHECK(q[0] == doctest::Approx(1.3));
    CHECK(q[1] == doctest::Approx(-1.95));
}

TEST_CASE("two-stage step: reproduces the degree-4 Taylor polynomial for q' = a q") {
    const double alpha = 0.7, dt = 0.3, q0 = 1.3;
    std::vector<double> q = {q0};
    TwoStageScratch ws;
    auto eval = [&](const std::vector<double>& v, std::vector<double>& L,
                    std::vector<double>& Lt) {
        L = {alpha * v[0]};
        Lt = {alpha * alpha * v[0]};
    };
    two_stage_step(q, dt, eval, ws);
    const double x = alpha * dt;
    const double taylor4 = q0 * (1.0 + x + x * x / 2 + x * x * x / 6 + x * x * x * x / 24);
    CHECK(q[0] == doctest::Approx(taylor4).epsilon(1e-15));
}

TEST_CASE("two-stage step: local error decays at fifth order") {
    const double alpha = 0.9, q0 = 1.0;
    auto one_step_err = [&](double dt) {
        std::vector<double> q = {q0};
        TwoStageScratch ws;
        auto eval = [&](const std::vector<double>& v, std::vector<double>& L,
                        std::vector<double>& Lt) {
            L = {alpha * v[0]};
            Lt = {alpha * alpha * v[0]};
        };
        two_stage_step(q, dt, eval, ws);
        return std::abs(q[0] - q0 * std::exp(alpha * dt));
    };
    const double r = one_step_err(0.2) / one_step_err(0.1);
    CHECK(r == doctest::Approx(32.0).epsilon(0.15));
}

TEST_CASE("two-stage step: fourth-order global accuracy on a linear system") {
    // dq/dt = A q with A = [[0, 1], [-1, 0]] (rotation), exact solution known
    auto run = [&](double dt) {
        std::vector<double> q = {1.0, 0.0};
        TwoStageScratch ws;
        auto eval = [](const std::vector<double>& v, std::vector<double>& L,
                       std::vector<double>& Lt) {
            L = {v[1], -v[0]};
            Lt = {-v[0], -v[1]};  // A^2 q
        };
        const double t_end = 2.0;
        const int steps = static_cast<int>(std::round(t_end / dt));
        for (int i = 0; i < steps; ++i) two_stage_step(q, dt, eval, ws);
        return std::hypot(q[0] - std::cos(t_end), q[1] + std::sin(t_end));
    };
    const double ratio = run(0.02) / run(0.01);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("two-stage step: exactly two operator evaluations") {
    std::vector<double> q = {1.0};
    TwoStageScratch ws;
    int calls = 0;
    auto eval = [&](const std::vector<double>& v, std::vector<double>& L,
                    std::vector<double>& Lt) {
        ++calls;
        L = {v[0]};
        Lt = {v[0]};
    };
    two_stage_step(q, 0.1, eval, ws);
    CHECK(calls == 2);
}
