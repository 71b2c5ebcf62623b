#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "splitdg/dg_rhs.hpp"

namespace splitdg {

/// Neumaier compensated sum; order of additions fixed by the caller.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Tensor LGL quadrature weights omega_i omega_j omega_k.
inline std::vector<double> volume_weights(const NodeSet& ns) {
    const int n1 = ns.size();
    std::vector<double> w(n1 * n1 * n1);
    for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n1; ++j)
            for (int i = 0; i < n1; ++i)
                w[i + n1 * (j + n1 * k)] = ns.weights[i] * ns.weights[j] * ns.weights[k];
    return w;
}

/// Collocated quadrature of f(U) J over the whole mesh.
template <class F>
double integrate(const NodeSet& ns, const SolutionField& sol, F&& f) {
    const auto w = volume_weights(ns);
    const int np = sol.nodes_per_element();
    CompensatedSum s;
    for (std::size_t g = 0; g < sol.size(); ++g) s.add(w[g % np] * sol.jac[g] * f(sol.state(g)));
    return s.value();
}

inline double global_kinetic_energy(const NodeSet& ns, const SolutionField& sol) {
    return integrate(ns, sol, [](const Vec5& q) { return kinetic_energy_density(q); });
}

inline double global_entropy(const NodeSet& ns, const SolutionField& sol, const GasModel& gas) {
    return integrate(ns, sol, [&](const Vec5& q) {
        primitive_from_conserved(q, gas);
        return entropy_density(q, gas);
    });
}

inline double global_internal_energy(const NodeSet& ns, const SolutionField& sol) {
    return integrate(ns, sol, [](const Vec5& q) { return q[4] - kinetic_energy_density(q); });
}

inline double global_total_energy(const NodeSet& ns, const SolutionField& sol) {
    return integrate(ns, sol, [](const Vec5& q) { return q[4]; });
}

inline double global_volume(const NodeSet& ns, const SolutionField& sol) {
    return integrate(ns, sol, [](const Vec5&) { return 1.0; });
}

/// Entropy rate sum <d(JU)/dt, W> - <dJ/dt, W.U - s> from the operator's full right-hand side.
inline double semidiscrete_entropy_rate(SplitFormDG& op, const SolutionField& sol, const MeshGeometry& geo) {
    SolutionField rhs;
    op.evaluate(sol, geo, rhs);
    const auto w = volume_weights(op.ops().nodes);
    const int np = sol.nodes_per_element();
    const GasModel& gas = op.config().gas;
    CompensatedSum s;
    for (std::size_t g = 0; g < sol.size(); ++g) {
        const Vec5 q = sol.state(g);
        const Vec5 ev = entropy_variables(q, gas);
        const double phi = dot5(ev, q) - entropy_density(q, gas);
        s.add(w[g % np] * (dot5(rhs.ju[g], ev) - rhs.jac[g] * phi));
    }
    return s.value();
}

/// Per-element terms of the discrete kinetic and internal energy balances.
struct EnergyBalance {
    double residual = 0.0;      // sum_e |kinetic rate - balance right-hand side|
    double scale = 0.0;         // sum_e sum_nodes omega |R_U . V| (componentwise)
    double kinetic_rate = 0.0;  // sum_e <R_U, V>
    double total_rate = 0.0;    // sum_e <R_U, e_5>
    double internal_rate = 0.0; // total - kinetic
    double pressure_work = 0.0; // volume pressure-work term with the split correction
    double surface_term = 0.0;  // surface integrand of the internal energy equation
    double internal_residual = 0.0;  // sum_e |internal rate - (pressure work + surface)|
    double velocity_defect = 0.0;    // face integral of |G1* (avg(u^2) - avg(u)^2)|
    double pressure_defect = 0.0;    // face integral of |avg(u).sn| |avg(rho) avg(p/rho) - avg(p)|

    double relative_residual() const { return scale > 0.0 ? residual / scale : residual; }
};

/// Evaluates both sides of the per-element kinetic energy identity for Jameson-type fluxes.
/// The pressure trace is the surface kind's own momentum pressure mean.
inline EnergyBalance energy_balance(SplitFormDG& op, const SolutionField& sol, const MeshGeometry& geo) {
    SolutionField rhs;
    op.euler_rhs(sol, geo, rhs);
    const auto& ops = op.ops();
    const auto& nodes = op.flux_nodes();
    const auto& states = op.states();
    const SchemeConfig& cfg = op.config();
    const int n1 = ops.nodes.size();
    const int np = n1 * n1 * n1;
    const long ne = sol.num_elements;
    const auto w = volume_weights(ops.nodes);
    std::vector<double> fw(n1 * n1);
    for (int b = 0; b < n1; ++b)
        for (int a = 0; a < n1; ++a) fw[a + n1 * b] = ops.nodes.weights[a] * ops.nodes.weights[b];

    std::vector<double> lhs(ne, 0.0), vol(ne, 0.0), surf(ne, 0.0), tot(ne, 0.0), pw(ne, 0.0),
        isurf(ne, 0.0);
    EnergyBalance out;
    std::vector<double> p(np), dp(np), pa(np), dpa(np), ja(np), dja(np), jau(np), djau(np);
    for (long e = 0; e < ne; ++e) {
        const long base = e * np;
        double l = 0.0, t = 0.0, sc = 0.0;
        for (int q = 0; q < np; ++q) {
            const Vec5 v = kinetic_variables(states[base + q]);
            const Vec5& r = rhs.ju[base + q];
            l += w[q] * dot5(r, v);
            t += w[q] * r[4];
            for (int c = 0; c < 5; ++c) sc += w[q] * std::abs(r[c] * v[c]);
            p[q] = nodes[base + q].p;
        }
        lhs[e] = l;
        tot[e] = t;
        out.scale += sc;
        double vterm = 0.0, pwork = 0.0;
        for (int d = 0; d < 3; ++d) {
            apply_along(ops.deriv, d, p.data(), dp.data());
            for (int q = 0; q < np; ++q) {
                const Vec3& a = geo.ja[base + q][d];
                jau[q] = dot(a, nodes[base + q].u);
            }
            apply_along(ops.deriv, d, jau.data(), djau.data());
            for (int c = 0; c < 3; ++c) {
                for (int q = 0; q < np; ++q) {
                    ja[q] = geo.ja[base + q][d][c];
                    pa[q] = p[q] * ja[q];
                }
                apply_along(ops.deriv, d, ja.data(), dja.data());
                apply_along(ops.deriv, d, pa.data(), dpa.data());
                for (int q = 0; q < np; ++q) {
                    const double uc = nodes[base + q].u[c];
                    const double full = dp[q] * ja[q] + p[q] * dja[q] + dpa[q];
                    const double split = 0.5 * (p[q] * dja[q] + dpa[q] - dp[q] * ja[q]);
                    vterm += w[q] * full * uc;
                    pwork += w[q] * split * uc;
                }
            }
            for (int q = 0; q < np; ++q) pwork -= w[q] * p[q] * djau[q];
        }
        vol[e] = -0.5 * vterm;
        pw[e] = pwork;
    }

    const int nf = n1 * n1;
    for (long e = 0; e < ne; ++e) {
        for (int d = 0; d < 3; ++d) {
            const long e2 = op.topology().neighbor(e, d, 1);
            for (int k = 0; k < nf; ++k) {
                const long gl = e * np + op.face_hi(d)[k];
                const long gr = e2 * np + op.face_lo(d)[k];
                const Vec3& sn = geo.ja[gl][d];
                const Vec3 snr{-sn[0], -sn[1], -sn[2]};
                const FluxNode& nl = nodes[gl];
                const FluxNode& nr = nodes[gr];
                const Vec5 gs = surface_flux(cfg.surface_flux, cfg.dissipation, nl, nr, states[gl], states[gr],
                                             geo.nu[gl], geo.nu[gr], sn, cfg.gas);
                const double pstar = momentum_pressure_mean(cfg.surface_flux, nl, nr);
                const double ubar2 = velocity_norm_average(nl.u, nr.u);
                const double wf = fw[k];
                // element e sees outward sn, neighbor sees -sn
                surf[e] += wf * (0.5 * ubar2 * gs[0] + (pstar - nl.p) * dot(sn, nl.u));
                surf[e2] += wf * (0.5 * ubar2 * (-gs[0]) + (pstar - nr.p) * dot(snr, nr.u));
                isurf[e] -= wf * (gs[4] - 0.5 * ubar2 * gs[0] - pstar * dot(sn, nl.u));
                isurf[e2] -= wf * (-gs[4] + 0.5 * ubar2 * gs[0] - pstar * dot(snr, nr.u));
                double du = 0.0;
                Vec3 ua{};
                for (int c = 0; c < 3; ++c) {
                    ua[c] = avg(nl.u[c], nr.u[c]);
                    du += ua[c] * ua[c];
                }
                du = avg(nl.usq, nr.usq) - du;
                out.velocity_defect += wf * std::abs(gs[0] * du);
                out.pressure_defect += wf * std::abs(dot(ua, sn)) *
                                       std::abs(avg(nl.rho, nr.rho) * avg(nl.p_rho, nr.p_rho) - avg(nl.p, nr.p));
            }
        }
    }

    CompensatedSum kin, tr, res, ires, pws, ss;
    for (long e = 0; e < ne; ++e) {
        const double rhs_e = vol[e] - surf[e];
        res.add(std::abs(lhs[e] - rhs_e));
        kin.add(lhs[e]);
        tr.add(tot[e]);
        pws.add(pw[e]);
        ss.add(isurf[e]);
        ires.add(std::abs((tot[e] - lhs[e]) - (pw[e] + isurf[e])));
    }
    out.residual = res.value();
    out.kinetic_rate = kin.value();
    out.total_rate = tr.value();
    out.internal_rate = out.total_rate - out.kinetic_rate;
    out.pressure_work = pws.value();
    out.surface_term = ss.value();
    out.internal_residual = ires.value();
    return out;
}

/// Relative residual of the per-element kinetic energy identity.
inline double kinetic_balance_residual(SplitFormDG& op, const SolutionField& sol, const MeshGeometry& geo) {
    return energy_balance(op, sol, geo).relative_residual();
}

/// Largest |J_discrete - J_analytic| over all nodes.
inline double max_jacobian_error(const SolutionField& sol, const MeshGeometry& geo) {
    double m = 0.0;
    for (std::size_t g = 0; g < sol.size(); ++g) m = std::max(m, std::abs(sol.jac[g] - geo.jac[g]));
    return m;
}

/// Smallest pointwise stress contraction sum_ij du_i/dx_j sigma_ij over all nodes.
inline double min_viscous_quadratic_form(SplitFormDG& op, const SolutionField& sol, const MeshGeometry& geo) {
    const auto q = op.lift_gradients(sol, geo);
    const GasModel& gas = op.config().gas;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < sol.size(); ++g) {
        const Vec5 w = entropy_variables(op.flux_nodes()[g], gas.gamma);
        const auto pg = primitive_gradient_from_entropy(w, q[g], gas);
        m = std::min(m, viscous_quadratic_form(pg, gas.mu));
    }
    return m;
}

/// One row of the time series output.
struct DiagnosticsRecord {
    double time = 0.0;
    double kinetic_energy = 0.0;
    double entropy = 0.0;
    double internal_energy = 0.0;
    double total_energy = 0.0;
    double dsdt = 0.0;
    double ke_balance_residual = 0.0;
    double max_jacobian_error = 0.0;
};

inline DiagnosticsRecord record_diagnostics(SplitFormDG& op, const SolutionField& sol, const MeshGeometry& geo) {
    DiagnosticsRecord r;
    const auto& ns = op.ops().nodes;
    r.time = geo.time;
    r.kinetic_energy = global_kinetic_energy(ns, sol);
    r.entropy = global_entropy(ns, sol, op.config().gas);
    r.internal_energy = global_internal_energy(ns, sol);
    r.total_energy = global_total_energy(ns, sol);
    r.dsdt = semidiscrete_entropy_rate(op, sol, geo);
    r.ke_balance_residual = kinetic_balance_residual(op, sol, geo);
    r.max_jacobian_error = max_jacobian_error(sol, geo);
    return r;
}

}  // namespace splitdg
