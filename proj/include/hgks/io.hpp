#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hgks/solver.hpp"

namespace hgks {

/// 17 significant digits: round-trip exact for doubles, byte-for-byte
/// deterministic output files.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct config_error : std::runtime_error {
    std::string key;
    config_error(std::string key_, const std::string& msg)
        : std::runtime_error("config error: " + key_ + ": " + msg), key(std::move(key_)) {}
};

/// Validated run configuration shared by the CLI subcommands. `mesh` holds one
/// entry for `run` and a doubling sequence for `study`.
struct RunConfig {
    std::string case_name = "adv2d";
    int order = 2;  // element degree
    std::vector<int> mesh = {16};
    bool nonuniform = false;
    double cfl = 0.0;  // 0 = per-degree default
    std::optional<double> dt_fixed;
    std::optional<double> t_end;
    int workers = 1;
    std::string out_dir = ".";
    bool emit_fields = false;

    void validate(bool study = false) const {
        if (case_name != "adv2d" && case_name != "adv3d" && case_name != "vortex2d" &&
            case_name != "tgv")
            throw config_error("case", "unknown case '" + case_name +
                                           "' (expected adv2d|adv3d|vortex2d|tgv)");
        if (order != 2 && order != 3) throw config_error("order", "must be p2 or p3");
        if (mesh.empty()) throw config_error("mesh", "at least one mesh size required");
        for (int n : mesh)
            if (n < 4) throw config_error("mesh", "need at least 4 cells per axis");
        if (study) {
            if (mesh.size() < 2) throw config_error("mesh", "study needs at least 2 mesh sizes");
            for (size_t i = 1; i < mesh.size(); ++i)
                if (mesh[i] != 2 * mesh[i - 1])
                    throw config_error("mesh", "study meshes must double: " +
                                                   std::to_string(mesh[i - 1]) + " -> " +
                                                   std::to_string(mesh[i]));
        }
        if (nonuniform && case_name != "adv2d" && case_name != "adv3d")
            throw config_error("nonuniform", "only the advection cases support nonuniform meshes");
        if (cfl < 0.0 || cfl > 1.0) throw config_error("cfl", "must be in (0, 1]");
        if (dt_fixed && !(*dt_fixed > 0.0)) throw config_error("dt", "must be positive");
        if (t_end && !(*t_end > 0.0)) throw config_error("tend", "must be positive");
        if (workers < 1) throw config_error("workers", "must be >= 1");
    }
};

inline int parse_order(const std::string& s) {
    if (s == "p2" || s == "2") return 2;
    if (s == "p3" || s == "3") return 3;
    throw config_error("order", "expected p2 or p3, got '" + s + "'");
}

inline std::vector<int> parse_mesh_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw config_error("mesh", "not an integer: '" + item + "'");
        }
    }
    if (out.empty()) throw config_error("mesh", "empty mesh list");
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw config_error(key, "expected a boolean, got '" + s + "'");
}

/// Line-oriented key=value configuration file; '#' starts a comment.
inline void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "case")
            cfg.case_name = value;
        else if (key == "order")
            cfg.order = parse_order(value);
        else if (key == "mesh")
            cfg.mesh = parse_mesh_list(value);
        else if (key == "nonuniform")
            cfg.nonuniform = parse_bool(key, value);
        else if (key == "cfl")
            cfg.cfl = std::stod(value);
        else if (key == "dt")
            cfg.dt_fixed = std::stod(value);
        else if (key == "tend")
            cfg.t_end = std::stod(value);
        else if (key == "workers")
            cfg.workers = std::stoi(value);
        else if (key == "out")
            cfg.out_dir = value;
        else if (key == "emit_fields")
            cfg.emit_fields = parse_bool(key, value);
        else
            throw config_error(key, "unknown key");
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        throw config_error(key, "bad value '" + value + "'");
    }
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos) throw config_error("config", "expected key=value: " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

/// One accuracy-table row; order fields are empty on the first row.
struct ErrorRow {
    int n;
    ErrorNorms e;
    std::optional<double> order_l1, order_l2, order_c;
};

inline std::vector<ErrorRow> make_error_table(const std::vector<int>& meshes,
                                              const std::vector<ErrorNorms>& errs) {
    std::vector<ErrorRow> rows;
    for (size_t i = 0; i < meshes.size(); ++i) {
        ErrorRow r{meshes[i], errs[i], {}, {}, {}};
        if (i > 0) {
            r.order_l1 = std::log2(errs[i - 1].l1 / errs[i].l1);
            r.order_l2 = std::log2(errs[i - 1].l2 / errs[i].l2);
            r.order_c = std::log2(errs[i - 1].cell_avg / errs[i].cell_avg);
        }
        rows.push_back(r);
    }
    return rows;
}

inline void write_errors_csv(std::ostream& os, const std::vector<ErrorRow>& rows) {
    os << "mesh,eL1,orderL1,eL2,orderL2,ec,orderc\n";
    auto opt = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
    for (const auto& r : rows)
        os << r.n << "," << fmt17(r.e.l1) << "," << opt(r.order_l1) << "," << fmt17(r.e.l2) << ","
           << opt(r.order_l2) << "," << fmt17(r.e.cell_avg) << "," << opt(r.order_c) << "\n";
}

inline void write_tgv_csv(std::ostream& os, const std::vector<TgvRecord>& recs) {
    os << "t,Ek,epsEk,epsZeta\n";
    for (const auto& r : recs)
        os << fmt17(r.t) << "," << fmt17(r.Ek) << "," << fmt17(r.epsEk) << ","
           << fmt17(r.epsZeta) << "\n";
}

inline void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows) {
    os << "size,workers,seconds,speedup\n";
    for (const auto& r : rows)
        os << r.size << "," << r.workers << "," << fmt17(r.seconds) << "," << fmt17(r.speedup)
           << "\n";
}

/// Cell-average field dump plus a modal-coefficient sidecar.
inline void write_fields_csv(std::ostream& os, const RunResult& r, const GasModel& gas) {
    os << "i,j,k,x,y,z,rho,u,v,w,p\n";
    const Mesh& m = r.mesh;
    for (int c = 0; c < m.ncells(); ++c) {
        const auto ijk = m.cell_ijk(c);
        const auto ctr = m.center(c);
        const Conserved q{r.state.coeff(c, 0, 0), r.state.coeff(c, 0, 1), r.state.coeff(c, 0, 2),
                          r.state.coeff(c, 0, 3), r.state.coeff(c, 0, 4)};
        const Primitive w = primitive_from_conserved(q, gas);
        os << ijk[0] << "," << ijk[1] << "," << ijk[2] << "," << fmt17(ctr[0]) << ","
           << fmt17(ctr[1]) << "," << fmt17(ctr[2]) << "," << fmt17(w.rho) << "," << fmt17(w.U)
           << "," << fmt17(w.V) << "," << fmt17(w.W) << "," << fmt17(pressure(w)) << "\n";
    }
}

inline void write_coeffs_csv(std::ostream& os, const RunResult& r) {
    os << "cell,n,rho,mx,my,mz,E\n";
    for (int c = 0; c < r.state.ncells; ++c)
        for (int n = 0; n < r.state.N; ++n) {
            os << c << "," << n;
            for (int v = 0; v < 5; ++v) os << "," << fmt17(r.state.coeff(c, n, v));
            os << "\n";
        }
}

}  // namespace hgks
