#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace hgks {

/// Structured box mesh with per-axis node coordinates (strictly increasing;
/// spacing may be nonuniform). All boundaries are periodic.
struct Mesh {
    int nx, ny, nz;
    std::vector<double> xs, ys, zs;  // node coordinates, size n+1 per axis
    std::array<bool, 3> periodic = {true, true, true};

    static Mesh make(std::vector<double> xnodes, std::vector<double> ynodes,
                     std::vector<double> znodes) {
        Mesh m;
        m.nx = static_cast<int>(xnodes.size()) - 1;
        m.ny = static_cast<int>(ynodes.size()) - 1;
        m.nz = static_cast<int>(znodes.size()) - 1;
        m.xs = std::move(xnodes);
        m.ys = std::move(ynodes);
        m.zs = std::move(znodes);
        for (const auto* n : {&m.xs, &m.ys, &m.zs})
            for (size_t i = 1; i < n->size(); ++i)
                if (!((*n)[i] > (*n)[i - 1]))
                    throw std::invalid_argument("Mesh: node coordinates must be strictly increasing");
        return m;
    }

    int ncells() const { return nx * ny * nz; }

    int cell_index(int i, int j, int k) const { return i + nx * (j + ny * k); }

    std::array<int, 3> cell_ijk(int c) const {
        const int i = c % nx;
        const int j = (c / nx) % ny;
        const int k = c / (nx * ny);
        return {i, j, k};
    }

    double dx(int i) const { return xs[i + 1] - xs[i]; }
    double dy(int j) const { return ys[j + 1] - ys[j]; }
    double dz(int k) const { return zs[k + 1] - zs[k]; }
    double xc(int i) const { return 0.5 * (xs[i] + xs[i + 1]); }
    double yc(int j) const { return 0.5 * (ys[j] + ys[j + 1]); }
    double zc(int k) const { return 0.5 * (zs[k] + zs[k + 1]); }

    std::array<double, 3> widths(int c) const {
        const auto ijk = cell_ijk(c);
        return {dx(ijk[0]), dy(ijk[1]), dz(ijk[2])};
    }

    std::array<double, 3> center(int c) const {
        const auto ijk = cell_ijk(c);
        return {xc(ijk[0]), yc(ijk[1]), zc(ijk[2])};
    }

    double volume(int c) const {
        const auto h = widths(c);
        return h[0] * h[1] * h[2];
    }
};

}  // namespace hgks
