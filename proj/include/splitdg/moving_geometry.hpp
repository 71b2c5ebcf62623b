#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "splitdg/gas_dynamics.hpp"
#include "splitdg/sbp_basis.hpp"

namespace splitdg {

enum class MotionKind { Static, StandingWave, BlendedRigid };

/// Analytic mesh motion law applied to undeformed positions x0.
struct MeshMotion {
    MotionKind kind = MotionKind::Static;
    double amplitude = 0.05;  // standing wave amplitude relative to L
    Vec3 length{2.0, 2.0, 2.0};
    // blended rigid body motion: x = x0 + p(|x0 - center|) h(t), h(t) = h_amp sin(2 pi f t)
    Vec3 center{0.0, 0.0, 0.0};
    double r1 = 0.25;
    double r2 = 0.75;
    Vec3 h_amp{0.0, 0.1, 0.0};
    double frequency = 1.0;
};

/// Cubic blending weight: 1 inside r1, 0 outside r2.
inline double blend_weight(double r, double r1, double r2) {
    if (!(r1 < r2)) throw std::invalid_argument("blend_weight: requires r1 < r2");
    if (r <= r1) return 1.0;
    if (r >= r2) return 0.0;
    const double s = (r - r1) / (r2 - r1);
    return 2.0 * s * s * s - 3.0 * s * s + 1.0;
}

/// Spatial shape of the standing wave at x0; the displacement is a(t) times this.
inline double standing_wave_shape(const MeshMotion& m, const Vec3& x0) {
    const double tp = 2.0 * std::numbers::pi;
    return std::sin(tp * x0[0] / m.length[0]) * std::sin(tp * x0[1] / m.length[1]) *
           std::sin(tp * x0[2] / m.length[2]);
}

/// Scalar spatial factor of the displacement at shape_point (shape or blend weight).
inline double motion_weight(const MeshMotion& m, const Vec3& shape_point) {
    switch (m.kind) {
        case MotionKind::Static: return 0.0;
        case MotionKind::StandingWave: return standing_wave_shape(m, shape_point);
        case MotionKind::BlendedRigid: {
            const Vec3 d{shape_point[0] - m.center[0], shape_point[1] - m.center[1],
                         shape_point[2] - m.center[2]};
            return blend_weight(norm(d), m.r1, m.r2);
        }
    }
    return 0.0;
}

/// Constant displacement direction D; the displacement at time t is weight * phase(t) * D.
inline Vec3 motion_direction(const MeshMotion& m) {
    switch (m.kind) {
        case MotionKind::Static: return {0.0, 0.0, 0.0};
        case MotionKind::StandingWave:
            return {m.amplitude * m.length[0], m.amplitude * m.length[1], m.amplitude * m.length[2]};
        case MotionKind::BlendedRigid: return m.h_amp;
    }
    return {0.0, 0.0, 0.0};
}

/// Scalar phase s(t) in [-1, 1] and its time derivative.
inline std::pair<double, double> motion_phase(const MeshMotion& m, double t) {
    const double om = 2.0 * std::numbers::pi * (m.kind == MotionKind::BlendedRigid ? m.frequency : 1.0);
    if (m.kind == MotionKind::Static) return {0.0, 0.0};
    return {std::sin(om * t), om * std::cos(om * t)};
}

/// Time factors: x = x0 + weight * disp, v = weight * vel.
inline void motion_factors(const MeshMotion& m, double t, Vec3& disp, Vec3& vel) {
    const Vec3 dir = motion_direction(m);
    const auto [s, ds] = motion_phase(m, t);
    for (int k = 0; k < 3; ++k) {
        disp[k] = s * dir[k];
        vel[k] = ds * dir[k];
    }
}

/// Position and velocity of the material point x0 at time t.
/// shape_point is where the spatial displacement shape is sampled; it
/// differs from x0 only by whole periods.
inline std::pair<Vec3, Vec3> evaluate_motion(const MeshMotion& m, const Vec3& x0, double t,
                                             const Vec3& shape_point) {
    Vec3 disp, vel;
    motion_factors(m, t, disp, vel);
    const double w = motion_weight(m, shape_point);
    Vec3 x, v;
    for (int k = 0; k < 3; ++k) {
        x[k] = x0[k] + w * disp[k];
        v[k] = w * vel[k];
    }
    return {x, v};
}

inline std::pair<Vec3, Vec3> evaluate_motion(const MeshMotion& m, const Vec3& x0, double t) {
    return evaluate_motion(m, x0, t, x0);
}

/// Structured periodic block of K1 x K2 x K3 hexahedra.
struct MeshTopology {
    std::array<int, 3> k{1, 1, 1};

    long num_elements() const { return static_cast<long>(k[0]) * k[1] * k[2]; }

    std::array<int, 3> element_index(long e) const {
        return {static_cast<int>(e % k[0]), static_cast<int>((e / k[0]) % k[1]),
                static_cast<int>(e / (static_cast<long>(k[0]) * k[1]))};
    }
    long element_id(const std::array<int, 3>& idx) const {
        return idx[0] + static_cast<long>(k[0]) * (idx[1] + static_cast<long>(k[1]) * idx[2]);
    }
    /// Neighbor across face (dir, side); side 1 is the xi = +1 face.
    long neighbor(long e, int dir, int side) const {
        auto idx = element_index(e);
        idx[dir] = (idx[dir] + (side == 1 ? 1 : k[dir] - 1)) % k[dir];
        return element_id(idx);
    }
    /// Face id 2*dir + side; the matching face of the neighbor has the opposite side.
    static int face_id(int dir, int side) { return 2 * dir + side; }
    static int opposite_face(int face) { return face ^ 1; }
};

/// Geometry of all elements at one instant; arrays indexed by global node e*(N+1)^3 + local.
struct MeshGeometry {
    int degree = 0;
    long num_elements = 0;
    double time = 0.0;
    std::vector<Vec3> x;                 // physical node positions
    std::vector<Vec3> nu;                // mesh velocity
    std::vector<std::array<Vec3, 3>> ja; // volume weighted contravariant vectors Ja^i
    std::vector<double> jac;             // Jacobian of the polynomial mapping

    int nodes_per_element() const { return (degree + 1) * (degree + 1) * (degree + 1); }
};

struct FaceNormals {
    std::vector<Vec3> n;
    std::vector<double> s;
};

/// Local node indices on face (dir, side), ordered with the lower tangential index fastest.
inline std::vector<int> face_nodes(int degree, int face) {
    const int n1 = degree + 1;
    const int dir = face / 2, side = face % 2;
    const int fix = side == 1 ? degree : 0;
    const int t1 = dir == 0 ? 1 : 0;
    const int t2 = dir == 2 ? 1 : 2;
    std::vector<int> out;
    out.reserve(n1 * n1);
    for (int b = 0; b < n1; ++b) {
        for (int a = 0; a < n1; ++a) {
            std::array<int, 3> ijk{};
            ijk[dir] = fix;
            ijk[t1] = a;
            ijk[t2] = b;
            out.push_back(ijk[0] + n1 * (ijk[1] + n1 * ijk[2]));
        }
    }
    return out;
}

/// Outward unit normals and surface scaling on a face of element e.
inline FaceNormals face_normals(const MeshGeometry& g, long e, int face) {
    const int dir = face / 2;
    const double sign = face % 2 == 1 ? 1.0 : -1.0;
    const long base = e * g.nodes_per_element();
    FaceNormals out;
    for (int loc : face_nodes(g.degree, face)) {
        const Vec3& a = g.ja[base + loc][dir];
        const double s = norm(a);
        if (!(s > 0.0)) throw std::runtime_error("face_normals: degenerate face");
        out.s.push_back(s);
        out.n.push_back({sign * a[0] / s, sign * a[1] / s, sign * a[2] / s});
    }
    return out;
}

/// sum_i nhat^i (Ja^i . nu) at every node of a face.
inline std::vector<double> contravariant_normal_velocity(const MeshGeometry& g, long e, int face) {
    const int dir = face / 2;
    const double sign = face % 2 == 1 ? 1.0 : -1.0;
    const long base = e * g.nodes_per_element();
    std::vector<double> out;
    for (int loc : face_nodes(g.degree, face)) {
        out.push_back(sign * dot(g.ja[base + loc][dir], g.nu[base + loc]));
    }
    return out;
}

/// Applies the 1D matrix d (n1 x n1) along direction dir of a tensor field.
inline void apply_along(const Matrix& d, int dir, const double* in, double* out) {
    const int n1 = d.n;
    const int stride = dir == 0 ? 1 : (dir == 1 ? n1 : n1 * n1);
    const int blocks = n1 * n1 / stride;
    // flat index = a + i * stride + c * stride * n1
    for (int c = 0; c < blocks; ++c) {
        for (int a = 0; a < stride; ++a) {
            const int base = a + c * stride * n1;
            for (int i = 0; i < n1; ++i) {
                const double* row = &d.a[static_cast<std::size_t>(i) * n1];
                double s = 0.0;
                for (int m = 0; m < n1; ++m) s += row[m] * in[base + m * stride];
                out[base + i * stride] = s;
            }
        }
    }
}

/// Curl-form metric terms and Jacobian from nodal positions of one element.
/// x holds three component arrays of (N+1)^3 values each.
inline void build_metrics(const OperatorSet& ops, const std::array<std::vector<double>, 3>& x,
                          std::array<Vec3, 3>* ja, double* jac) {
    const int n1 = ops.nodes.size();
    const int np = n1 * n1 * n1;
    // dx[m][j] = d X_m / d xi^j
    thread_local std::array<std::array<std::vector<double>, 3>, 3> dx;
    thread_local std::vector<double> v, tmp;
    for (int m = 0; m < 3; ++m) {
        for (int j = 0; j < 3; ++j) {
            dx[m][j].resize(np);
            apply_along(ops.deriv, j, x[m].data(), dx[m][j].data());
        }
    }
    v.resize(np);
    tmp.resize(np);
    for (int p = 0; p < np; ++p) ja[p] = {Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0}};
    for (int n = 0; n < 3; ++n) {
        const int m = (n + 1) % 3, l = (n + 2) % 3;
        // Ja^i_n = -(curl_xi v)_i with v_j = X_l dX_m/dxi^j
        for (int j = 0; j < 3; ++j) {
            for (int p = 0; p < np; ++p) v[p] = x[l][p] * dx[m][j][p];
            // v_j enters (curl v)_i for i != j with derivative along k, (i, j, k) a permutation
            for (int k = 0; k < 3; ++k) {
                if (k == j) continue;
                const int i = 3 - j - k;
                // (curl v)_i = d v_{i+2} / d xi^{i+1} - d v_{i+1} / d xi^{i+2}
                const double sign = (j == (i + 2) % 3) ? 1.0 : -1.0;
                apply_along(ops.deriv, k, v.data(), tmp.data());
                for (int p = 0; p < np; ++p) ja[p][i][n] -= sign * tmp[p];
            }
        }
    }
    for (int p = 0; p < np; ++p) {
        const Vec3 a1{dx[0][0][p], dx[1][0][p], dx[2][0][p]};
        const Vec3 a2{dx[0][1][p], dx[1][1][p], dx[2][1][p]};
        const Vec3 a3{dx[0][2][p], dx[1][2][p], dx[2][2][p]};
        const Vec3 c{a2[1] * a3[2] - a2[2] * a3[1], a2[2] * a3[0] - a2[0] * a3[2],
                     a2[0] * a3[1] - a2[1] * a3[0]};
        jac[p] = dot(a1, c);
    }
}

/// Periodic box [origin, origin + length] split into K1 x K2 x K3 elements whose
/// geometry of degree ngeo follows an analytic motion law.
class MovingMesh {
public:
    MovingMesh(const OperatorSet& ops, const MeshTopology& topo, const MeshMotion& motion,
               const Vec3& origin, int ngeo)
        : ops_(ops), topo_(topo), motion_(motion), origin_(origin) {
        const int n = ops.nodes.degree;
        if (ngeo < 1 || ngeo > n) ngeo = n;
        ngeo_ = ngeo;
        geo_nodes_ = build_nodeset(ngeo).nodes;
        interp_ = interpolation_matrix(geo_nodes_, ops.nodes.nodes);
        for (int d = 0; d < 3; ++d) h_[d] = motion.length[d] / topo.k[d];
        precompute_lattice();
        precompute_metrics();
    }

    const OperatorSet& ops() const { return ops_; }
    const MeshTopology& topology() const { return topo_; }
    const MeshMotion& motion() const { return motion_; }
    const Vec3& origin() const { return origin_; }
    int ngeo() const { return ngeo_; }

    /// Undeformed position of the geometry lattice point (element index, local geo index) per axis.
    double lattice_coordinate(int dir, int elem, int j) const {
        return origin_[dir] + (elem + 0.5 * (geo_nodes_[j] + 1.0)) * h_[dir];
    }

    MeshGeometry build(double t) const {
        MeshGeometry g;
        build(t, g);
        return g;
    }

    void build(double t, MeshGeometry& g) const {
        const int n = ops_.nodes.degree;
        const int np = (n + 1) * (n + 1) * (n + 1);
        const long ne = topo_.num_elements();
        g.degree = n;
        g.num_elements = ne;
        g.time = t;
        g.x.resize(ne * np);
        g.nu.resize(ne * np);
        g.ja.resize(ne * np);
        g.jac.resize(ne * np);
        Vec3 disp, vel;
        motion_factors(motion_, t, disp, vel);
        const auto lw = phase_weights(motion_phase(motion_, t).first);
        for (long e = 0; e < ne; ++e) {
            const long base = e * np;
            for (int p = 0; p < np; ++p) {
                const double w = weight_[base + p];
                for (int d = 0; d < 3; ++d) {
                    g.x[base + p][d] = x0_[base + p][d] + w * disp[d];
                    g.nu[base + p][d] = w * vel[d];
                }
            }
            for (int p = 0; p < np; ++p) {
                const long q = base + p;
                std::array<Vec3, 3> ja{};
                double jac = 0.0;
                for (int j = 0; j < kPhaseSamples; ++j) {
                    const double c = lw[j];
                    if (c == 0.0) continue;
                    for (int i = 0; i < 3; ++i)
                        for (int k = 0; k < 3; ++k) ja[i][k] += c * ja_samples_[j][q][i][k];
                    jac += c * jac_samples_[j][q];
                }
                g.ja[q] = ja;
                g.jac[q] = jac;
                if (!(g.jac[base + p] > 0.0)) {
                    std::ostringstream os;
                    os << "non-positive Jacobian " << g.jac[base + p] << " in element " << e
                       << " node " << p << " at t=" << t;
                    throw PositivityError(os.str(), e, p);
                }
            }
        }
    }

private:
    // Metrics are quadratic and the Jacobian cubic in the phase s, so Lagrange
    // interpolation through these samples reproduces them up to roundoff.
    static constexpr int kPhaseSamples = 5;
    static constexpr std::array<double, kPhaseSamples> kPhaseNodes{-1.0, -0.5, 0.0, 0.5, 1.0};

    static std::array<double, kPhaseSamples> phase_weights(double s) {
        std::array<double, kPhaseSamples> l{};
        for (int j = 0; j < kPhaseSamples; ++j) {
            if (s == kPhaseNodes[j]) {
                l.fill(0.0);
                l[j] = 1.0;
                return l;
            }
            double v = 1.0;
            for (int m = 0; m < kPhaseSamples; ++m)
                if (m != j) v *= (s - kPhaseNodes[m]) / (kPhaseNodes[j] - kPhaseNodes[m]);
            l[j] = v;
        }
        return l;
    }

    void precompute_metrics() {
        const int np = ops_.nodes.size() * ops_.nodes.size() * ops_.nodes.size();
        const long ne = topo_.num_elements();
        const Vec3 dir = motion_direction(motion_);
        std::array<std::vector<double>, 3> sx;
        for (auto& c : sx) c.resize(np);
        for (int j = 0; j < kPhaseSamples; ++j) {
            if (motion_.kind == MotionKind::Static && kPhaseNodes[j] != 0.0) continue;
            ja_samples_[j].resize(ne * np);
            jac_samples_[j].resize(ne * np);
            for (long e = 0; e < ne; ++e) {
                const long base = e * np;
                for (int p = 0; p < np; ++p)
                    for (int d = 0; d < 3; ++d)
                        sx[d][p] = x0_[base + p][d] + weight_[base + p] * (kPhaseNodes[j] * dir[d]);
                build_metrics(ops_, sx, &ja_samples_[j][base], &jac_samples_[j][base]);
            }
        }
    }

    // Undeformed positions and motion weights sampled on the geometry lattice and
    // interpolated to the solution nodes. The weight is sampled at the canonical
    // periodic image so shared lattice points get bitwise identical displacements.
    void precompute_lattice() {
        const int n1 = ops_.nodes.size();
        const int np = n1 * n1 * n1;
        const int g1 = ngeo_ + 1;
        const int gp = g1 * g1 * g1;
        const long ne = topo_.num_elements();
        x0_.resize(ne * np);
        weight_.resize(ne * np);
        std::array<std::vector<double>, 3> gx, sx;
        std::vector<double> gw(gp), sw(np);
        for (int c = 0; c < 3; ++c) {
            gx[c].resize(gp);
            sx[c].resize(np);
        }
        for (long e = 0; e < ne; ++e) {
            const auto idx = topo_.element_index(e);
            for (int c3 = 0; c3 < g1; ++c3) {
                for (int c2 = 0; c2 < g1; ++c2) {
                    for (int c1 = 0; c1 < g1; ++c1) {
                        const std::array<int, 3> loc{c1, c2, c3};
                        Vec3 xs;
                        const int p = c1 + g1 * (c2 + g1 * c3);
                        for (int d = 0; d < 3; ++d) {
                            gx[d][p] = lattice_coordinate(d, idx[d], loc[d]);
                            int ce = idx[d], cj = loc[d];
                            if (cj == ngeo_) {
                                ce = (ce + 1) % topo_.k[d];
                                cj = 0;
                            }
                            xs[d] = lattice_coordinate(d, ce, cj);
                        }
                        gw[p] = motion_weight(motion_, xs);
                    }
                }
            }
            for (int d = 0; d < 3; ++d) interpolate_tensor(gx[d], sx[d]);
            interpolate_tensor(gw, sw);
            const long base = e * np;
            for (int p = 0; p < np; ++p) {
                x0_[base + p] = {sx[0][p], sx[1][p], sx[2][p]};
                weight_[base + p] = sw[p];
            }
        }
    }

    // (ngeo+1)^3 -> (N+1)^3 tensor interpolation
    void interpolate_tensor(const std::vector<double>& in, std::vector<double>& out) const {
        const int n1 = ops_.nodes.size();
        const int g1 = ngeo_ + 1;
        std::vector<double> a(n1 * g1 * g1), b(n1 * n1 * g1);
        for (int k = 0; k < g1; ++k)
            for (int j = 0; j < g1; ++j)
                for (int i = 0; i < n1; ++i) {
                    double s = 0.0;
                    for (int m = 0; m < g1; ++m) s += interp_[i * g1 + m] * in[m + g1 * (j + g1 * k)];
                    a[i + n1 * (j + g1 * k)] = s;
                }
        for (int k = 0; k < g1; ++k)
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < n1; ++i) {
                    double s = 0.0;
                    for (int m = 0; m < g1; ++m) s += interp_[j * g1 + m] * a[i + n1 * (m + g1 * k)];
                    b[i + n1 * (j + n1 * k)] = s;
                }
        for (int k = 0; k < n1; ++k)
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < n1; ++i) {
                    double s = 0.0;
                    for (int m = 0; m < g1; ++m) s += interp_[k * g1 + m] * b[i + n1 * (j + n1 * m)];
                    out[i + n1 * (j + n1 * k)] = s;
                }
    }

    OperatorSet ops_;
    MeshTopology topo_;
    MeshMotion motion_;
    Vec3 origin_;
    Vec3 h_{};
    int ngeo_ = 1;
    std::vector<double> geo_nodes_;
    std::vector<double> interp_;
    std::vector<Vec3> x0_;
    std::vector<double> weight_;
    std::array<std::vector<std::array<Vec3, 3>>, kPhaseSamples> ja_samples_;
    std::array<std::vector<double>, kPhaseSamples> jac_samples_;
};

}  // namespace splitdg
