#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <numeric>

#include "hgks/runtime.hpp"
#include "hgks/solver.hpp"

using namespace hgks;

TEST_CASE("partition: covers the index space with disjoint ranges") {
    for (int n : {0, 1, 7, 100, 1001})
        for (int w : {1, 2, 3, 8}) {
            const Partition p = Partition::make(n, w);
            CHECK(static_cast<int>(p.ranges.size()) == w);
            int covered = 0, expect_begin = 0;
            for (const auto& [b, e] : p.ranges) {
                CHECK(b == expect_begin);
                CHECK(e >= b);
                covered += e - b;
                expect_begin = e;
            }
            CHECK(covered == n);
        }
    CHECK_THROWS(Partition::make(4, 0));
}

TEST_CASE("parallel map: identity copy") {
    const int n = 1000;
    std::vector<double> in(n);
    std::iota(in.begin(), in.end(), 0.0);
    const auto out = parallel_map_cells<double>(Partition::make(n, 4), n,
                                                [&](int i) { return in[i]; });
    CHECK(out == in);
}

TEST_CASE("parallel map: more workers than items") {
    const auto out =
        parallel_map_cells<int>(Partition::make(3, 8), 3, [](int i) { return i * i; });
    CHECK(out == std::vector<int>{0, 1, 4});
}

TEST_CASE("parallel map: kernel failures carry the item index") {
    try {
        parallel_map_cells(Partition::make(100, 4), [](int i) {
            if (i == 57) throw std::runtime_error("boom");
        });
        FAIL("expected worker_error");
    } catch (const worker_error& e) {
        CHECK(e.item == 57);
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
}

TEST_CASE("deterministic reduce: exact integer sums and identity on empty input") {
    std::vector<double> ones(1000000, 1.0);
    CHECK(deterministic_sum<double>(ones) == 1000000.0);
    std::vector<double> empty;
    CHECK(deterministic_sum<double>(empty) == 0.0);
}

TEST_CASE("each interior face flux is computed exactly once per residual") {
    CaseConfig cfg = CaseConfig::named("adv3d", 6);
    RunOptions opt;
    opt.degree = 2;
    RunResult r = setup_run(cfg, opt);
    ResidualWorkspace ws;
    ws.resize(r.mesh, r.scheme, 4);
    ws.count_fluxes = true;
    residual(r.state, r.mesh, r.scheme, 1e-3, ws);
    long expected = 0;
    for (int a = 0; a < 3; ++a)
        expected += static_cast<long>(r.mesh.ncells()) * r.scheme.tab.face_minus[a].npts;
    CHECK(ws.flux_evaluations.load() == expected);
    residual(r.state, r.mesh, r.scheme, 1e-3, ws);
    CHECK(ws.flux_evaluations.load() == 2 * expected);
}

TEST_CASE("residual is bitwise identical across worker counts") {
    CaseConfig cfg = CaseConfig::named("adv3d", 8);
    RunOptions opt;
    opt.degree = 2;
    RunResult r = setup_run(cfg, opt);

    std::vector<double> ref_R, ref_Rt;
    for (int w : {1, 2, 4, 8}) {
        ResidualWorkspace ws;
        ws.resize(r.mesh, r.scheme, w);
        residual(r.state, r.mesh, r.scheme, 1e-3, ws);
        if (w == 1) {
            ref_R = ws.R;
            ref_Rt = ws.Rt;
        } else {
            CHECK(std::memcmp(ref_R.data(), ws.R.data(), ref_R.size() * sizeof(double)) == 0);
            CHECK(std::memcmp(ref_Rt.data(), ws.Rt.data(), ref_Rt.size() * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("full solver runs are bitwise identical across worker counts") {
    CaseConfig cfg = CaseConfig::named("adv2d", 8);
    cfg.t_end = 0.25;
    std::vector<double> ref;
    for (int w : {1, 2, 4}) {
        RunOptions opt;
        opt.degree = 2;
        opt.workers = w;
        const RunResult r = run_case(cfg, opt);
        if (w == 1)
            ref = r.state.coeffs;
        else
            CHECK(std::memcmp(ref.data(), r.state.coeffs.data(), ref.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("error norms are identical across worker counts") {
    CaseConfig cfg = CaseConfig::named("adv2d", 8);
    cfg.t_end = 0.25;
    RunOptions opt;
    opt.degree = 2;
    opt.workers = 2;
    const RunResult r = run_case(cfg, opt);
    double ref = 0;
    for (int w : {1, 2, 4, 8}) {
        const ErrorNorms e = run_error_norms(r, cfg, w);
        if (w == 1)
            ref = e.l1;
        else
            CHECK(e.l1 == ref);  // bitwise
    }
}
