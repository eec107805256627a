#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

namespace hgks {

/// Legendre polynomial P_l and derivative on [-1, 1], unscaled (P_l(1) = 1).
inline double legendre(int l, double x) {
    if (l == 0) return 1.0;
    double pm = 1.0, p = x;
    for (int n = 1; n < l; ++n) {
        const double pn = ((2.0 * n + 1.0) * x * p - n * pm) / (n + 1.0);
        pm = p;
        p = pn;
    }
    return p;
}

inline double legendre_deriv(int l, double x) {
    if (l == 0) return 0.0;
    double pm = 1.0, p = x, dm = 0.0, d = 1.0;
    for (int n = 1; n < l; ++n) {
        const double pn = ((2.0 * n + 1.0) * x * p - n * pm) / (n + 1.0);
        const double dn = ((2.0 * n + 1.0) * (p + x * d) - n * dm) / (n + 1.0);
        pm = p;
        p = pn;
        dm = d;
        d = dn;
    }
    return d;
}

struct unsupported_degree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Modal tensor-Legendre basis of total degree <= k on the reference cube,
/// B_n(xi,eta,zeta) = P_{nx}(xi) P_{ny}(eta) P_{nz}(zeta). dim = 2 restricts
/// to nz = 0. Multi-indices are ordered graded-lexicographically.
struct BasisSet {
    int degree;
    int dim;
    int N;
    std::vector<std::array<int, 3>> idx;

    double eval(int n, double xi, double eta, double zeta) const {
        const auto& ix = idx[n];
        return legendre(ix[0], xi) * legendre(ix[1], eta) * legendre(ix[2], zeta);
    }

    /// Derivative with respect to one reference coordinate.
    double eval_deriv(int n, int axis, double xi, double eta, double zeta) const {
        const auto& ix = idx[n];
        const double fx = axis == 0 ? legendre_deriv(ix[0], xi) : legendre(ix[0], xi);
        const double fy = axis == 1 ? legendre_deriv(ix[1], eta) : legendre(ix[1], eta);
        const double fz = axis == 2 ? legendre_deriv(ix[2], zeta) : legendre(ix[2], zeta);
        return fx * fy * fz;
    }
};

inline BasisSet build_basis(int k, int dim) {
    if (k != 2 && k != 3) throw unsupported_degree("build_basis: degree must be 2 or 3");
    if (dim != 2 && dim != 3) throw std::invalid_argument("build_basis: dim must be 2 or 3");
    BasisSet b;
    b.degree = k;
    b.dim = dim;
    const int zmax = dim == 3 ? k : 0;
    for (int nx = 0; nx <= k; ++nx)
        for (int ny = 0; ny <= k; ++ny)
            for (int nz = 0; nz <= zmax; ++nz)
                if (nx + ny + nz <= k) b.idx.push_back({nx, ny, nz});
    std::sort(b.idx.begin(), b.idx.end(), [](const auto& a, const auto& c) {
        const int da = a[0] + a[1] + a[2], dc = c[0] + c[1] + c[2];
        if (da != dc) return da < dc;
        return a < c;
    });
    b.N = static_cast<int>(b.idx.size());
    return b;
}

}  // namespace hgks
