#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "splitdg/gas_dynamics.hpp"
#include "splitdg/moving_geometry.hpp"
#include "splitdg/sbp_basis.hpp"
#include "splitdg/two_point_fluxes.hpp"

namespace splitdg {

enum class Dissipation { None, EntropyRusanov };

inline std::string_view dissipation_name(Dissipation d) {
    return d == Dissipation::None ? "none" : "entropy_rusanov";
}

inline Dissipation parse_dissipation(std::string_view s) {
    if (s == "none" || s == "off") return Dissipation::None;
    if (s == "entropy_rusanov" || s == "on") return Dissipation::EntropyRusanov;
    throw std::invalid_argument("unknown surface dissipation '" + std::string(s) + "'");
}

struct SchemeConfig {
    FluxKind volume_flux = FluxKind::PI;
    FluxKind surface_flux = FluxKind::PI;
    Dissipation dissipation = Dissipation::None;
    bool viscous = false;
    GasModel gas;
};

/// Evolved unknowns: J*U and the discrete Jacobian J at every node.
struct SolutionField {
    int degree = 0;
    long num_elements = 0;
    std::vector<Vec5> ju;
    std::vector<double> jac;

    SolutionField() = default;
    SolutionField(int n, long ne)
        : degree(n), num_elements(ne),
          ju(static_cast<std::size_t>(ne) * (n + 1) * (n + 1) * (n + 1), Vec5{}),
          jac(ju.size(), 0.0) {}

    int nodes_per_element() const { return (degree + 1) * (degree + 1) * (degree + 1); }
    std::size_t size() const { return jac.size(); }
    Vec5 state(std::size_t g) const { return (1.0 / jac[g]) * ju[g]; }
};

/// Lifted entropy-variable gradients: grad[g][d] = dW/dx_d at node g.
using GradientField = std::vector<std::array<Vec5, 3>>;

using SourceFn = std::function<Vec5(const Vec3& x, double t)>;

/// F(q) . a - (nu . a) q from precomputed nodal quantities.
inline Vec5 ale_flux(const FluxNode& n, const Vec5& q, const Vec3& nu, const Vec3& a) {
    const double un = dot(n.u, a);
    const double vn = dot(nu, a);
    const double r = un - vn;
    return {q[0] * r, q[1] * r + n.p * a[0], q[2] * r + n.p * a[1], q[3] * r + n.p * a[2],
            q[4] * r + n.p * un};
}

inline Vec5 entropy_variables(const FluxNode& n, double gamma) {
    // log(p rho^-gamma) = -(gamma-1) log rho - log(rho/p)
    const double vs = -(gamma - 1.0) * n.log_rho - n.log_beta;
    return {(gamma - vs) / (gamma - 1.0) - 0.5 * n.beta * n.usq, n.beta * n.u[0], n.beta * n.u[1],
            n.beta * n.u[2], -n.beta};
}

/// Interface flux contracted with sn = s * n (outward for the left state),
/// optionally with entropy-scaled Rusanov dissipation.
inline Vec5 surface_flux(FluxKind kind, Dissipation diss, const FluxNode& l, const FluxNode& r,
                         const Vec5& ql, const Vec5& qr, const Vec3& nul, const Vec3& nur,
                         const Vec3& sn, const GasModel& gas) {
    Vec5 g = two_point_flux(kind, l, r, nul, nur, sn, gas.gamma);
    if (diss == Dissipation::None) return g;
    const double s = norm(sn);
    const Vec3 n{sn[0] / s, sn[1] / s, sn[2] / s};
    const double cl = std::sqrt(gas.gamma * l.p / l.rho);
    const double cr = std::sqrt(gas.gamma * r.p / r.rho);
    const double lam = std::max(std::abs(dot(l.u, n) - dot(nul, n)) + cl,
                                std::abs(dot(r.u, n) - dot(nur, n)) + cr);
    const Vec5 wl = entropy_variables(l, gas.gamma);
    const Vec5 wr = entropy_variables(r, gas.gamma);
    const Mat5 a0 = entropy_jacobian(0.5 * (ql + qr), gas);
    const Vec5 h = mat_vec(a0, wr - wl);
    for (int v = 0; v < 5; ++v) g[v] -= 0.5 * s * lam * h[v];
    return g;
}

/// Split-form ALE DGSEM operator on a structured periodic hexahedral mesh.
class SplitFormDG {
public:
    SplitFormDG(const OperatorSet& ops, const MeshTopology& topo, const SchemeConfig& cfg)
        : ops_(ops), topo_(topo), cfg_(cfg) {
        const int n = ops.nodes.degree;
        n1_ = n + 1;
        np_ = n1_ * n1_ * n1_;
        for (int d = 0; d < 3; ++d) {
            face_lo_[d] = face_nodes(n, MeshTopology::face_id(d, 0));
            face_hi_[d] = face_nodes(n, MeshTopology::face_id(d, 1));
        }
        inv_w_end_ = 1.0 / ops.nodes.weights[n];
        inv_w_begin_ = 1.0 / ops.nodes.weights[0];
        d2_.resize(n1_ * n1_);
        for (int i = 0; i < n1_; ++i)
            for (int m = 0; m < n1_; ++m) d2_[i * n1_ + m] = 2.0 * ops.deriv(i, m);
    }

    const SchemeConfig& config() const { return cfg_; }
    SchemeConfig& config() { return cfg_; }
    const OperatorSet& ops() const { return ops_; }
    const MeshTopology& topology() const { return topo_; }

    /// Nodal flux quantities; throws PositivityError with the failing location.
    void prepare(const SolutionField& sol) {
        const std::size_t n = sol.size();
        nodes_.resize(n);
        states_.resize(n);
        for (std::size_t g = 0; g < n; ++g) {
            if (!(sol.jac[g] > 0.0)) {
                throw PositivityError("non-positive discrete Jacobian at element " +
                                          std::to_string(g / np_) + " node " + std::to_string(g % np_),
                                      static_cast<long>(g / np_), static_cast<int>(g % np_));
            }
            states_[g] = sol.state(g);
            nodes_[g] = make_flux_node(states_[g], cfg_.gas, static_cast<long>(g / np_),
                                       static_cast<int>(g % np_));
        }
    }

    /// Full right-hand side: advective split form, GCL, viscous terms and optional source.
    void evaluate(const SolutionField& sol, const MeshGeometry& geo, SolutionField& rhs,
                  const SourceFn* source = nullptr) {
        euler_rhs(sol, geo, rhs);
        if (cfg_.viscous && cfg_.gas.mu > 0.0) {
            lift_gradients_prepared(sol, geo, grad_);
            add_viscous_rhs(geo, grad_, rhs);
        }
        if (source && *source) {
            for (std::size_t g = 0; g < sol.size(); ++g) {
                rhs.ju[g] += sol.jac[g] * (*source)(geo.x[g], geo.time);
            }
        }
    }

    /// Advective part and the GCL right-hand side.
    void euler_rhs(const SolutionField& sol, const MeshGeometry& geo, SolutionField& rhs) {
        prepare(sol);
        init_rhs(sol, rhs);
        volume_terms(cfg_.volume_flux, geo, rhs, true);
        surface_terms(geo, rhs, true, true);
    }

    /// d J / d tau alone.
    std::vector<double> gcl_rhs(const SolutionField& sol, const MeshGeometry& geo) {
        SolutionField r;
        euler_rhs(sol, geo, r);
        return r.jac;
    }

    /// -D . G# contribution only (no surface terms), for the given kind.
    std::vector<Vec5> split_volume_divergence(FluxKind kind, const SolutionField& sol,
                                              const MeshGeometry& geo) {
        prepare(sol);
        SolutionField r;
        init_rhs(sol, r);
        volume_terms(kind, geo, r, false);
        for (auto& v : r.ju) v = -1.0 * v;
        return r.ju;
    }

    GradientField lift_gradients(const SolutionField& sol, const MeshGeometry& geo) {
        prepare(sol);
        GradientField q;
        lift_gradients_prepared(sol, geo, q);
        return q;
    }

    /// Viscous contribution alone.
    std::vector<Vec5> viscous_rhs(const SolutionField& sol, const MeshGeometry& geo) {
        prepare(sol);
        SolutionField r;
        init_rhs(sol, r);
        if (cfg_.gas.mu > 0.0) {
            GradientField q;
            lift_gradients_prepared(sol, geo, q);
            add_viscous_rhs(geo, q, r);
        }
        return r.ju;
    }

    const std::vector<FluxNode>& flux_nodes() const { return nodes_; }
    const std::vector<Vec5>& states() const { return states_; }
    const GradientField& last_gradients() const { return grad_; }
    const std::vector<int>& face_lo(int d) const { return face_lo_[d]; }
    const std::vector<int>& face_hi(int d) const { return face_hi_[d]; }

private:
    void init_rhs(const SolutionField& sol, SolutionField& rhs) const {
        rhs.degree = sol.degree;
        rhs.num_elements = sol.num_elements;
        rhs.ju.assign(sol.size(), Vec5{});
        rhs.jac.assign(sol.size(), 0.0);
    }

    void volume_terms(FluxKind kind, const MeshGeometry& geo, SolutionField& rhs, bool gcl) const {
        switch (kind) {
            case FluxKind::PI: return volume_terms<FluxKind::PI>(geo, rhs, gcl);
            case FluxKind::KG: return volume_terms<FluxKind::KG>(geo, rhs, gcl);
            case FluxKind::KTK: return volume_terms<FluxKind::KTK>(geo, rhs, gcl);
            case FluxKind::M_KTK: return volume_terms<FluxKind::M_KTK>(geo, rhs, gcl);
            case FluxKind::RA: return volume_terms<FluxKind::RA>(geo, rhs, gcl);
            case FluxKind::CH: return volume_terms<FluxKind::CH>(geo, rhs, gcl);
            case FluxKind::M_CH: return volume_terms<FluxKind::M_CH>(geo, rhs, gcl);
        }
    }

    template <FluxKind kind>
    void volume_terms(const MeshGeometry& geo, SolutionField& rhs, bool gcl) const {
        const double gamma = cfg_.gas.gamma;
        const long ne = rhs.num_elements;
        for (long e = 0; e < ne; ++e) {
            const long base = e * np_;
            for (int d = 0; d < 3; ++d) {
                const int stride = d == 0 ? 1 : (d == 1 ? n1_ : n1_ * n1_);
                for (int b = 0; b < n1_; ++b) {
                    for (int a = 0; a < n1_; ++a) {
                        int start;
                        if (d == 0) start = n1_ * (a + n1_ * b);
                        else if (d == 1) start = a + n1_ * n1_ * b;
                        else start = a + n1_ * b;
                        for (int i = 0; i < n1_; ++i) {
                            const long gi = base + start + i * stride;
                            for (int m = i; m < n1_; ++m) {
                                const double dim = d2_[i * n1_ + m];
                                if (m == i && dim == 0.0) continue;
                                const long gm = base + start + m * stride;
                                const Vec3& ji = geo.ja[gi][d];
                                const Vec3& jm = geo.ja[gm][d];
                                const Vec3 am{0.5 * (ji[0] + jm[0]), 0.5 * (ji[1] + jm[1]),
                                              0.5 * (ji[2] + jm[2])};
                                const Vec5 f = two_point_flux<kind>(nodes_[gi], nodes_[gm], geo.nu[gi], geo.nu[gm], am, gamma);
                                for (int v = 0; v < 5; ++v) rhs.ju[gi][v] -= dim * f[v];
                                double vt = 0.0;
                                if (gcl) {
                                    const Vec3& ni = geo.nu[gi];
                                    const Vec3& nm = geo.nu[gm];
                                    vt = 0.5 * (ni[0] + nm[0]) * am[0] + 0.5 * (ni[1] + nm[1]) * am[1] +
                                         0.5 * (ni[2] + nm[2]) * am[2];
                                    rhs.jac[gi] += dim * vt;
                                }
                                if (m != i) {
                                    const double dmi = d2_[m * n1_ + i];
                                    for (int v = 0; v < 5; ++v) rhs.ju[gm][v] -= dmi * f[v];
                                    if (gcl) rhs.jac[gm] += dmi * vt;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    void surface_terms(const MeshGeometry& geo, SolutionField& rhs, bool add_u, bool add_gcl) const {
        const long ne = rhs.num_elements;
        const int nf = n1_ * n1_;
        for (long e = 0; e < ne; ++e) {
            for (int d = 0; d < 3; ++d) {
                const long e2 = topo_.neighbor(e, d, 1);
                const long bl = e * np_, br = e2 * np_;
                for (int k = 0; k < nf; ++k) {
                    const long gl = bl + face_hi_[d][k];
                    const long gr = br + face_lo_[d][k];
                    const Vec3& sn = geo.ja[gl][d];
                    const Vec3& jr = geo.ja[gr][d];
                    const Vec3& nul = geo.nu[gl];
                    const Vec3& nur = geo.nu[gr];
                    if (add_u) {
                        const Vec5 gs = surface_flux(cfg_.surface_flux, cfg_.dissipation, nodes_[gl],
                                                     nodes_[gr], states_[gl], states_[gr], nul, nur, sn,
                                                     cfg_.gas);
                        const Vec5 fl = ale_flux(nodes_[gl], states_[gl], nul, sn);
                        const Vec5 fr = ale_flux(nodes_[gr], states_[gr], nur, jr);
                        for (int v = 0; v < 5; ++v) {
                            rhs.ju[gl][v] -= inv_w_end_ * (gs[v] - fl[v]);
                            rhs.ju[gr][v] += inv_w_begin_ * (gs[v] - fr[v]);
                        }
                    }
                    if (add_gcl) {
                        const double vs = 0.5 * ((nul[0] + nur[0]) * sn[0] + (nul[1] + nur[1]) * sn[1] +
                                                 (nul[2] + nur[2]) * sn[2]);
                        rhs.jac[gl] += inv_w_end_ * (vs - dot(sn, nul));
                        rhs.jac[gr] -= inv_w_begin_ * (vs - dot(jr, nur));
                    }
                }
            }
        }
    }

    void lift_gradients_prepared(const SolutionField& sol, const MeshGeometry& geo, GradientField& q) {
        const std::size_t n = sol.size();
        const double gamma = cfg_.gas.gamma;
        w_.resize(n);
        for (std::size_t g = 0; g < n; ++g) w_[g] = entropy_variables(nodes_[g], gamma);
        q.assign(n, std::array<Vec5, 3>{});
        const long ne = sol.num_elements;
        for (long e = 0; e < ne; ++e) {
            const long base = e * np_;
            for (int p = 0; p < np_; ++p) {
                const int ijk[3] = {p % n1_, (p / n1_) % n1_, p / (n1_ * n1_)};
                for (int d = 0; d < 3; ++d) {
                    const int stride = d == 0 ? 1 : (d == 1 ? n1_ : n1_ * n1_);
                    const int i = ijk[d];
                    const int start = p - i * stride;
                    Vec5 dw{};
                    for (int m = 0; m < n1_; ++m) {
                        const double dim = ops_.deriv(i, m);
                        const Vec5& wm = w_[base + start + m * stride];
                        for (int v = 0; v < 5; ++v) dw[v] += dim * wm[v];
                    }
                    const Vec3& a = geo.ja[base + p][d];
                    for (int b = 0; b < 3; ++b)
                        for (int v = 0; v < 5; ++v) q[base + p][b][v] += a[b] * dw[v];
                }
            }
        }
        const int nf = n1_ * n1_;
        for (long e = 0; e < ne; ++e) {
            for (int d = 0; d < 3; ++d) {
                const long e2 = topo_.neighbor(e, d, 1);
                for (int k = 0; k < nf; ++k) {
                    const long gl = e * np_ + face_hi_[d][k];
                    const long gr = e2 * np_ + face_lo_[d][k];
                    const Vec3& sn = geo.ja[gl][d];
                    const Vec3& jr = geo.ja[gr][d];
                    const Vec5 wa = 0.5 * (w_[gl] + w_[gr]);
                    for (int b = 0; b < 3; ++b) {
                        for (int v = 0; v < 5; ++v) {
                            q[gl][b][v] += inv_w_end_ * (sn[b] * wa[v] - sn[b] * w_[gl][v]);
                            q[gr][b][v] -= inv_w_begin_ * (sn[b] * wa[v] - jr[b] * w_[gr][v]);
                        }
                    }
                }
            }
        }
        for (std::size_t g = 0; g < n; ++g) {
            const double inv = 1.0 / sol.jac[g];
            for (int b = 0; b < 3; ++b)
                for (int v = 0; v < 5; ++v) q[g][b][v] *= inv;
        }
    }

    void add_viscous_rhs(const MeshGeometry& geo, const GradientField& q, SolutionField& rhs) {
        const std::size_t n = rhs.size();
        fv_.resize(n);
        for (std::size_t g = 0; g < n; ++g) {
            const auto pg = primitive_gradient_from_entropy(w_[g], q[g], cfg_.gas);
            fv_[g] = viscous_flux(nodes_[g].u, pg, cfg_.gas);
        }
        const long ne = rhs.num_elements;
        std::vector<Vec5> ft(static_cast<std::size_t>(np_));
        for (long e = 0; e < ne; ++e) {
            const long base = e * np_;
            for (int d = 0; d < 3; ++d) {
                for (int p = 0; p < np_; ++p) {
                    const Vec3& a = geo.ja[base + p][d];
                    const auto& f = fv_[base + p];
                    for (int v = 0; v < 5; ++v) ft[p][v] = a[0] * f[0][v] + a[1] * f[1][v] + a[2] * f[2][v];
                }
                const int stride = d == 0 ? 1 : (d == 1 ? n1_ : n1_ * n1_);
                for (int p = 0; p < np_; ++p) {
                    const int i = (p / stride) % n1_;
                    const int start = p - i * stride;
                    Vec5 s{};
                    for (int m = 0; m < n1_; ++m) {
                        const double dim = ops_.deriv(i, m);
                        for (int v = 0; v < 5; ++v) s[v] += dim * ft[start + m * stride][v];
                    }
                    rhs.ju[base + p] += s;
                }
            }
        }
        const int nf = n1_ * n1_;
        for (long e = 0; e < ne; ++e) {
            for (int d = 0; d < 3; ++d) {
                const long e2 = topo_.neighbor(e, d, 1);
                for (int k = 0; k < nf; ++k) {
                    const long gl = e * np_ + face_hi_[d][k];
                    const long gr = e2 * np_ + face_lo_[d][k];
                    const Vec3& sn = geo.ja[gl][d];
                    const Vec3& jr = geo.ja[gr][d];
                    for (int v = 0; v < 5; ++v) {
                        double fl = 0.0, fr = 0.0, fs = 0.0;
                        for (int b = 0; b < 3; ++b) {
                            fl += sn[b] * fv_[gl][b][v];
                            fr += jr[b] * fv_[gr][b][v];
                            fs += sn[b] * 0.5 * (fv_[gl][b][v] + fv_[gr][b][v]);
                        }
                        rhs.ju[gl][v] += inv_w_end_ * (fs - fl);
                        rhs.ju[gr][v] -= inv_w_begin_ * (fs - fr);
                    }
                }
            }
        }
    }

    OperatorSet ops_;
    MeshTopology topo_;
    SchemeConfig cfg_;
    int n1_ = 0;
    int np_ = 0;
    std::array<std::vector<int>, 3> face_lo_, face_hi_;
    double inv_w_end_ = 0.0, inv_w_begin_ = 0.0;
    std::vector<double> d2_;
    std::vector<FluxNode> nodes_;
    std::vector<Vec5> states_;
    std::vector<Vec5> w_;
    std::vector<std::array<Vec5, 3>> fv_;
    GradientField grad_;
};

}  // namespace splitdg
