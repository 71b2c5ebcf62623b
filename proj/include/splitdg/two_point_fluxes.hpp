#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "splitdg/gas_dynamics.hpp"

namespace splitdg {

enum class FluxKind { PI, KG, KTK, M_KTK, RA, CH, M_CH };

inline constexpr std::array<FluxKind, 7> kAllFluxKinds{FluxKind::PI, FluxKind::KG,  FluxKind::KTK,
                                                       FluxKind::M_KTK, FluxKind::RA, FluxKind::CH,
                                                       FluxKind::M_CH};

inline std::string_view flux_name(FluxKind k) {
    switch (k) {
        case FluxKind::PI: return "pi";
        case FluxKind::KG: return "kg";
        case FluxKind::KTK: return "ktk";
        case FluxKind::M_KTK: return "m_ktk";
        case FluxKind::RA: return "ra";
        case FluxKind::CH: return "ch";
        case FluxKind::M_CH: return "m_ch";
    }
    return "?";
}

inline FluxKind parse_flux_kind(std::string_view s) {
    std::string t(s);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto k : kAllFluxKinds) {
        if (flux_name(k) == t) return k;
    }
    throw std::invalid_argument("unknown flux kind '" + std::string(s) + "'");
}

/// Kinds whose formulas satisfy the entropy-conservation condition.
inline bool claims_entropy_conservation(FluxKind k) { return k == FluxKind::RA || k == FluxKind::CH; }

/// Kinds whose momentum rows are mass flux times avg(u) plus avg(p).
inline bool claims_jameson(FluxKind k) { return k != FluxKind::CH; }

/// Uses a logarithmic density mean.
constexpr bool uses_log_mean(FluxKind k) {
    return k == FluxKind::RA || k == FluxKind::CH || k == FluxKind::M_CH;
}

inline double avg(double a, double b) { return 0.5 * (a + b); }

/// Logarithmic mean given precomputed logarithms of both arguments.
inline double log_mean(double a, double b, double log_a, double log_b) {
    const double s = a + b;
    const double z = (a - b) / s;
    const double f = z * z;
    if (f < 1e-4) {
        return 0.5 * s / (1.0 + f * (1.0 / 3.0 + f * (1.0 / 5.0 + f * (1.0 / 7.0))));
    }
    return (a - b) / (log_a - log_b);
}

inline double log_mean(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("log_mean: arguments must be positive");
    return log_mean(a, b, std::log(a), std::log(b));
}

/// Nodal quantities reused by every two-point flux evaluation.
struct FluxNode {
    double rho;
    Vec3 u;
    double p;
    double e;       // specific internal energy
    double usq;     // |u|^2
    double beta;    // rho / p
    double p_rho;   // p / rho
    double log_rho;
    double log_beta;
};

inline FluxNode make_flux_node(const Vec5& q, const GasModel& gas, long element = -1, int node = -1) {
    const auto w = primitive_from_conserved(q, gas, element, node);
    FluxNode n{};
    n.rho = w.rho;
    n.u = w.u;
    n.p = w.p;
    n.e = w.e;
    n.usq = dot(w.u, w.u);
    n.beta = w.rho / w.p;
    n.p_rho = w.p / w.rho;
    n.log_rho = std::log(w.rho);
    n.log_beta = std::log(n.beta);
    return n;
}

/// Sum over directions of 2 avg(u_i)^2 - avg(u_i^2).
inline double velocity_norm_average(const Vec3& ul, const Vec3& ur) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double a = avg(ul[i], ur[i]);
        s += 2.0 * a * a - avg(ul[i] * ul[i], ur[i] * ur[i]);
    }
    return s;
}

/// Two-point ALE flux contracted with the direction vector a: sum_i a_i G_i.
/// With a = e_i this is the Cartesian flux G_i.
template <FluxKind kind>
inline Vec5 two_point_flux(const FluxNode& l, const FluxNode& r, const Vec3& nul,
                           const Vec3& nur, const Vec3& a, double gamma) {
    const Vec3 ubar{avg(l.u[0], r.u[0]), avg(l.u[1], r.u[1]), avg(l.u[2], r.u[2])};
    const double un = dot(ubar, a);
    const double nun = avg(dot(nul, a), dot(nur, a));
    const double rel = un - nun;
    double rho_mean, p_mom;
    const double p_avg = avg(l.p, r.p);
    if constexpr (uses_log_mean(kind)) {
        rho_mean = log_mean(l.rho, r.rho, l.log_rho, r.log_rho);
    } else {
        rho_mean = avg(l.rho, r.rho);
    }
    if constexpr (kind == FluxKind::CH) {
        p_mom = avg(l.rho, r.rho) / avg(l.beta, r.beta);
    } else {
        p_mom = p_avg;
    }
    const double mass = rho_mean * rel;
    double energy = 0.0;
    if constexpr (kind == FluxKind::PI) {
        energy = mass * (avg(l.e, r.e) + 0.5 * avg(l.usq, r.usq)) +
                 avg(l.rho, r.rho) * avg(l.p_rho, r.p_rho) * un;
    } else if constexpr (kind == FluxKind::KG) {
        energy = mass * (avg(l.e, r.e) + 0.5 * avg(l.usq, r.usq)) + p_avg * un;
    } else if constexpr (kind == FluxKind::KTK) {
        energy = mass * (avg(l.e, r.e) + 0.5 * velocity_norm_average(l.u, r.u)) + 2.0 * p_avg * un -
                 avg(l.p * dot(l.u, a), r.p * dot(r.u, a));
    } else if constexpr (kind == FluxKind::M_KTK) {
        energy = mass * (avg(l.e, r.e) + 0.5 * velocity_norm_average(l.u, r.u)) + p_avg * un;
    } else {
        // 1 / logmean(1/e) with 1/e = (gamma-1) rho/p
        const double e_mean = 1.0 / ((gamma - 1.0) * log_mean(l.beta, r.beta, l.log_beta, r.log_beta));
        energy = mass * (e_mean + 0.5 * velocity_norm_average(l.u, r.u));
        if constexpr (kind == FluxKind::RA) {
            energy += 2.0 * p_avg * un - avg(l.p * dot(l.u, a), r.p * dot(r.u, a));
        } else {
            energy += avg(l.rho, r.rho) / avg(l.beta, r.beta) * un;
        }
    }
    return {mass, mass * ubar[0] + p_mom * a[0], mass * ubar[1] + p_mom * a[1],
            mass * ubar[2] + p_mom * a[2], energy};
}

/// Runtime dispatch of the flux kind.
inline Vec5 two_point_flux(FluxKind kind, const FluxNode& l, const FluxNode& r, const Vec3& nul,
                           const Vec3& nur, const Vec3& a, double gamma) {
    switch (kind) {
        case FluxKind::PI: return two_point_flux<FluxKind::PI>(l, r, nul, nur, a, gamma);
        case FluxKind::KG: return two_point_flux<FluxKind::KG>(l, r, nul, nur, a, gamma);
        case FluxKind::KTK: return two_point_flux<FluxKind::KTK>(l, r, nul, nur, a, gamma);
        case FluxKind::M_KTK: return two_point_flux<FluxKind::M_KTK>(l, r, nul, nur, a, gamma);
        case FluxKind::RA: return two_point_flux<FluxKind::RA>(l, r, nul, nur, a, gamma);
        case FluxKind::CH: return two_point_flux<FluxKind::CH>(l, r, nul, nur, a, gamma);
        case FluxKind::M_CH: return two_point_flux<FluxKind::M_CH>(l, r, nul, nur, a, gamma);
    }
    throw std::invalid_argument("two_point_flux: unknown flux kind");
}

/// Pressure mean appearing in the momentum rows of the given kind.
inline double momentum_pressure_mean(FluxKind kind, const FluxNode& l, const FluxNode& r) {
    if (kind == FluxKind::CH) return avg(l.rho, r.rho) / avg(l.beta, r.beta);
    return avg(l.p, r.p);
}

/// One side of a flux pair: conserved state plus mesh velocity.
struct StateSample {
    Vec5 q;
    Vec3 nu;
};

/// Cartesian flux G_dir for a pair of conserved states.
inline Vec5 two_point_flux(FluxKind kind, const StateSample& l, const StateSample& r, int dir,
                           const GasModel& gas) {
    Vec3 a{0.0, 0.0, 0.0};
    a[dir] = 1.0;
    return two_point_flux(kind, make_flux_node(l.q, gas), make_flux_node(r.q, gas), l.nu, r.nu, a,
                          gas.gamma);
}

/// Relative deviation of G(u, u, nu, nu) from F(u) - nu u.
inline double check_consistency(FluxKind kind, const StateSample& s, int dir, const GasModel& gas) {
    const Vec5 g = two_point_flux(kind, s, s, dir, gas);
    Vec5 f = euler_flux(s.q, dir, gas);
    for (int v = 0; v < 5; ++v) f[v] -= s.nu[dir] * s.q[v];
    double err = 0.0, scale = 0.0;
    for (int v = 0; v < 5; ++v) {
        err = std::max(err, std::abs(g[v] - f[v]));
        scale = std::max(scale, std::abs(f[v]));
    }
    return err / std::max(scale, 1e-300);
}

/// Relative Tadmor residual jump(w)^T G - (jump(rho u_i) - avg(nu_i) jump(rho)).
inline double check_tadmor(FluxKind kind, const StateSample& l, const StateSample& r, int dir,
                           const GasModel& gas) {
    const Vec5 g = two_point_flux(kind, l, r, dir, gas);
    const Vec5 wl = entropy_variables(l.q, gas);
    const Vec5 wr = entropy_variables(r.q, gas);
    double lhs = 0.0, scale = 0.0;
    for (int v = 0; v < 5; ++v) {
        lhs += (wr[v] - wl[v]) * g[v];
        scale += std::abs((wr[v] - wl[v]) * g[v]);
    }
    const double jm = r.q[1 + dir] - l.q[1 + dir];
    const double jr = avg(l.nu[dir], r.nu[dir]) * (r.q[0] - l.q[0]);
    scale += std::abs(jm) + std::abs(jr);
    const double res = lhs - (jm - jr);
    return scale > 0.0 ? std::abs(res) / scale : 0.0;
}

/// Momentum-row residuals G^{v+1} - (G^1 avg(u_v) + avg(p) delta), relative to the flux size.
inline Vec3 check_jameson(FluxKind kind, const StateSample& l, const StateSample& r, int dir,
                          const GasModel& gas) {
    const FluxNode nl = make_flux_node(l.q, gas), nr = make_flux_node(r.q, gas);
    const Vec5 g = two_point_flux(kind, l, r, dir, gas);
    const double pbar = avg(nl.p, nr.p);
    Vec3 res{};
    for (int v = 0; v < 3; ++v) {
        const double ref = g[0] * avg(nl.u[v], nr.u[v]) + (v == dir ? pbar : 0.0);
        const double scale = std::max({std::abs(g[1 + v]), std::abs(ref), 1e-300});
        res[v] = (g[1 + v] - ref) / scale;
    }
    return res;
}

/// Absolute momentum-row residuals (no scaling).
inline Vec3 jameson_defect(FluxKind kind, const StateSample& l, const StateSample& r, int dir,
                           const GasModel& gas) {
    const FluxNode nl = make_flux_node(l.q, gas), nr = make_flux_node(r.q, gas);
    const Vec5 g = two_point_flux(kind, l, r, dir, gas);
    const double pbar = avg(nl.p, nr.p);
    Vec3 res{};
    for (int v = 0; v < 3; ++v) {
        res[v] = g[1 + v] - (g[0] * avg(nl.u[v], nr.u[v]) + (v == dir ? pbar : 0.0));
    }
    return res;
}

}  // namespace splitdg
