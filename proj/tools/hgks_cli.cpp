// Command-line driver: run a case, run a convergence study, or measure
// worker scaling. Exit codes: 0 success, 1 numerical failure, 2 bad
// configuration.
#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hgks/hgks.hpp"

namespace fs = std::filesystem;
using namespace hgks;

namespace {

struct CliFlags {
    std::string config_file;
    std::string case_name, order, mesh, out_dir;
    bool nonuniform = false, emit_fields = false, nominal = false;
    double cfl = -1.0, dt = -1.0, tend = -1.0, dt_power = -1.0;
    int workers = -1;
    size_t anchor = 0;
};

void add_common(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("config", f.config_file, "key=value configuration file");
    cmd->add_option("--case", f.case_name, "adv2d|adv3d|vortex2d|tgv");
    cmd->add_option("--order", f.order, "element degree, p2|p3");
    cmd->add_option("--mesh", f.mesh, "cells per axis (comma list for studies)");
    cmd->add_flag("--nonuniform", f.nonuniform, "sinusoidally perturbed mesh");
    cmd->add_option("--cfl", f.cfl, "Courant number (default 0.15 for p2, 0.09 for p3)");
    cmd->add_option("--dt", f.dt, "fixed time step override");
    cmd->add_option("--tend", f.tend, "final time override");
    cmd->add_option("--workers", f.workers, "worker threads (HGKS_WORKERS also honored)");
    cmd->add_option("--out", f.out_dir, "output directory");
}

RunConfig merge_config(const CLI::App* cmd, const CliFlags& f) {
    RunConfig cfg;
    if (const char* env = std::getenv("HGKS_WORKERS")) cfg.workers = std::atoi(env);
    if (!f.config_file.empty()) load_config_file(cfg, f.config_file);
    if (cmd->count("--case")) cfg.case_name = f.case_name;
    if (cmd->count("--order")) cfg.order = parse_order(f.order);
    if (cmd->count("--mesh")) cfg.mesh = parse_mesh_list(f.mesh);
    if (cmd->count("--nonuniform")) cfg.nonuniform = f.nonuniform;
    if (cmd->count("--cfl")) cfg.cfl = f.cfl;
    if (cmd->count("--dt")) cfg.dt_fixed = f.dt;
    if (cmd->count("--tend")) cfg.t_end = f.tend;
    if (cmd->count("--workers")) cfg.workers = f.workers;
    if (cmd->count("--out")) cfg.out_dir = f.out_dir;
    if (cmd->get_option_no_throw("--emit-fields") && cmd->count("--emit-fields"))
        cfg.emit_fields = f.emit_fields;
    return cfg;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    const fs::path p = fs::path(cfg.out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw config_error("out", "cannot write " + p.string());
    return out;
}

int do_run(const CLI::App* cmd, const CliFlags& f) {
    RunConfig cfg = merge_config(cmd, f);
    cfg.validate();
    CaseConfig cc = CaseConfig::named(cfg.case_name, cfg.mesh.front());
    cc.nonuniform = cfg.nonuniform;
    RunOptions opt;
    opt.degree = cfg.order;
    opt.cfl = cfg.cfl;
    opt.dt_fixed = cfg.dt_fixed;
    opt.t_end = cfg.t_end;
    opt.workers = cfg.workers;

    const RunResult r = run_case(cc, opt);
    if (cc.name == "tgv") {
        auto out = open_out(cfg, "tgv.csv");
        write_tgv_csv(out, r.records);
        std::cout << "tgv: " << r.steps << " steps, Ek(0)=" << fmt17(r.records.front().Ek)
                  << ", Ek(end)=" << fmt17(r.records.back().Ek) << "\n";
    } else {
        const ErrorNorms e = run_error_norms(r, cc, cfg.workers);
        auto out = open_out(cfg, "errors.csv");
        write_errors_csv(out, make_error_table({cfg.mesh.front()}, {e}));
        std::cout << cc.name << " n=" << cfg.mesh.front() << ": " << r.steps
                  << " steps, eL1=" << fmt17(e.l1) << ", eL2=" << fmt17(e.l2)
                  << ", ec=" << fmt17(e.cell_avg) << "\n";
    }
    if (cfg.emit_fields) {
        auto fields = open_out(cfg, "fields.csv");
        write_fields_csv(fields, r, r.scheme.gas);
        auto coeffs = open_out(cfg, "coeffs.csv");
        write_coeffs_csv(coeffs, r);
    }
    return 0;
}

int do_study(const CLI::App* cmd, const CliFlags& f) {
    RunConfig cfg = merge_config(cmd, f);
    cfg.validate(true);
    StudyOptions sopt;
    sopt.degree = cfg.order;
    sopt.nonuniform = cfg.nonuniform;
    sopt.workers = cfg.workers;
    sopt.nominal = f.nominal;
    if (cfg.cfl > 0.0) sopt.cfl = cfg.cfl;
    if (f.dt_power > 0.0) sopt.dt_power = f.dt_power;
    sopt.anchor_index = std::min(f.anchor, cfg.mesh.size() - 1);

    const auto rows = convergence_study(cfg.case_name, cfg.mesh, sopt);
    std::vector<ErrorNorms> errs;
    for (const auto& r : rows) errs.push_back(r.err);
    const auto table = make_error_table(cfg.mesh, errs);
    auto out = open_out(cfg, "errors.csv");
    write_errors_csv(out, table);
    write_errors_csv(std::cout, table);
    return 0;
}

int do_scale(const CLI::App* cmd, const CliFlags& f, const std::string& workers_list) {
    RunConfig cfg = merge_config(cmd, f);
    cfg.validate();
    std::vector<int> workers = {1};
    if (!workers_list.empty()) {
        workers.clear();
        for (int w : parse_mesh_list(workers_list)) workers.push_back(w);
    }
    for (int w : workers)
        if (w < 1) throw config_error("workers", "worker counts must be >= 1");
    std::optional<double> tend;
    if (cfg.t_end) tend = cfg.t_end;
    const auto rows = scaling_report(cfg.case_name, cfg.mesh, workers, cfg.order, tend);
    auto out = open_out(cfg, "scale.csv");
    write_scaling_csv(out, rows);
    write_scaling_csv(std::cout, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discontinuous Galerkin gas-kinetic solver for the compressible "
                 "Euler and Navier-Stokes equations on periodic box meshes"};
    app.require_subcommand(1);

    CliFlags frun, fstudy, fscale;
    std::string workers_list;

    CLI::App* run = app.add_subcommand("run", "run one case and write its outputs");
    add_common(run, frun);
    run->add_flag("--emit-fields", frun.emit_fields, "dump cell averages and modal coefficients");

    CLI::App* study = app.add_subcommand("study", "convergence study over a doubling mesh list");
    add_common(study, fstudy);
    study->add_flag("--nominal", fstudy.nominal, "step at the CFL limit on every mesh");
    study->add_option("--dt-power", fstudy.dt_power,
                      "time refinement exponent dt ~ h^p (default 2)");
    study->add_option("--anchor", fstudy.anchor,
                      "index of the mesh whose CFL step anchors the policy");

    CLI::App* scale = app.add_subcommand("scale", "worker-scaling report");
    add_common(scale, fscale);
    scale->add_option("--scale-workers", workers_list, "comma list of worker counts (default 1)");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return do_run(run, frun);
        if (study->parsed()) return do_study(study, fstudy);
        if (scale->parsed()) return do_scale(scale, fscale, workers_list);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const config_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
