#pragma once

#include "hgks/core.hpp"

namespace hgks {

/// Velocity moments of a unit-density Maxwellian, per axis, plus the
/// internal-variable moments. The u axis carries half-space tables (u>0, u<0)
/// alongside the full ones; positive and negative halves are built from their
/// own base cases so that full = pos + neg is a checkable identity, not a
/// definition.
///
/// The second-order interface flux contracts combinations up to u^6 per axis
/// (slope quadratic x transport u x psi energy quadratic); tables are filled
/// to order 8 to leave margin.
struct MomentTable {
    static constexpr int max_order = 8;

    double u[max_order + 1];
    double upos[max_order + 1];
    double uneg[max_order + 1];
    double v[max_order + 1];
    double w[max_order + 1];
    double xi2, xi4;
};

inline MomentTable maxwellian_moments(const Primitive& prim, const GasModel& gas, int order = 6) {
    if (order > MomentTable::max_order)
        throw std::invalid_argument("maxwellian_moments: order exceeds table capacity");

    MomentTable m;
    const double us = prim.U, vs = prim.V, ws = prim.W;
    const double il = 0.5 / prim.lam;  // 1/(2*lambda)
    const double sql = std::sqrt(prim.lam);
    const double beta = 0.5 * std::exp(-prim.lam * us * us) / std::sqrt(M_PI * prim.lam);

    m.u[0] = 1.0;
    m.u[1] = us;
    m.v[0] = 1.0;
    m.v[1] = vs;
    m.w[0] = 1.0;
    m.w[1] = ws;
    m.upos[0] = 0.5 * std::erfc(-sql * us);
    m.upos[1] = us * m.upos[0] + beta;
    m.uneg[0] = 0.5 * std::erfc(sql * us);
    m.uneg[1] = us * m.uneg[0] - beta;

    for (int n = 2; n <= MomentTable::max_order; ++n) {
        const double c = (n - 1) * il;
        m.u[n] = us * m.u[n - 1] + c * m.u[n - 2];
        m.v[n] = vs * m.v[n - 1] + c * m.v[n - 2];
        m.w[n] = ws * m.w[n - 1] + c * m.w[n - 2];
        m.upos[n] = us * m.upos[n - 1] + c * m.upos[n - 2];
        m.uneg[n] = us * m.uneg[n - 1] + c * m.uneg[n - 2];
    }

    m.xi2 = gas.K * il;
    m.xi4 = gas.K * (gas.K + 2.0) * il * il;
    return m;
}

enum class Half { none, positive, negative };

namespace detail {
inline const double* u_table(const MomentTable& m, Half h) {
    switch (h) {
        case Half::positive: return m.upos;
        case Half::negative: return m.uneg;
        default: return m.u;
    }
}
inline double xi_factor(const MomentTable& m, int s) {
    return s == 0 ? 1.0 : s == 1 ? m.xi2 : m.xi4;
}
}  // namespace detail

/// < u^i v^j w^k xi^{2s} psi > over the (possibly half-space) unit-density
/// Maxwellian, psi = (1, u, v, w, (u^2+v^2+w^2+xi^2)/2).
inline Vec5 psi_moment(const MomentTable& m, int i, int j, int k, int s = 0, Half h = Half::none) {
    const double* mu = detail::u_table(m, h);
    const double x0 = detail::xi_factor(m, s);
    const double x1 = detail::xi_factor(m, s + 1);
    const double vj = m.v[j], wk = m.w[k];
    const double base = mu[i] * vj * wk;
    return {base * x0,
            mu[i + 1] * vj * wk * x0,
            mu[i] * m.v[j + 1] * wk * x0,
            mu[i] * vj * m.w[k + 1] * x0,
            0.5 * ((mu[i + 2] * vj * wk + mu[i] * m.v[j + 2] * wk + mu[i] * vj * m.w[k + 2]) * x0 +
                   base * x1)};
}

}  // namespace hgks
