#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace splitdg {

using Vec3 = std::array<double, 3>;
using Vec5 = std::array<double, 5>;
using Mat5 = std::array<std::array<double, 5>, 5>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec5& operator+=(Vec5& a, const Vec5& b) {
    for (int v = 0; v < 5; ++v) a[v] += b[v];
    return a;
}
inline Vec5& operator-=(Vec5& a, const Vec5& b) {
    for (int v = 0; v < 5; ++v) a[v] -= b[v];
    return a;
}
inline Vec5 operator+(Vec5 a, const Vec5& b) { return a += b; }
inline Vec5 operator-(Vec5 a, const Vec5& b) { return a -= b; }
inline Vec5 operator*(double s, Vec5 a) {
    for (auto& x : a) x *= s;
    return a;
}
inline double dot5(const Vec5& a, const Vec5& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] + a[4] * b[4];
}

/// Thermodynamic and transport constants of a calorically perfect gas.
struct GasModel {
    double gamma = 1.4;
    double mu = 0.0;
    double prandtl = 0.72;
    double gas_constant = 1.0;

    double heat_conductivity() const {
        return gamma * mu * gas_constant / ((gamma - 1.0) * prandtl);
    }
};

/// Thrown when density or pressure is not positive. Carries the location if known.
class PositivityError : public std::runtime_error {
public:
    PositivityError(const std::string& what, long element = -1, int node = -1)
        : std::runtime_error(what), element_(element), node_(node) {}

    long element() const { return element_; }
    int node() const { return node_; }

private:
    long element_;
    int node_;
};

struct Primitive {
    double rho;
    Vec3 u;
    double p;
    double e;  // specific internal energy
    double T;
};

inline Primitive primitive_from_conserved(const Vec5& q, const GasModel& gas,
                                          long element = -1, int node = -1) {
    Primitive w{};
    w.rho = q[0];
    if (!(w.rho > 0.0)) {
        std::ostringstream os;
        os << "non-positive density " << w.rho << " at element " << element << " node " << node;
        throw PositivityError(os.str(), element, node);
    }
    w.u = {q[1] / w.rho, q[2] / w.rho, q[3] / w.rho};
    w.e = q[4] / w.rho - 0.5 * dot(w.u, w.u);
    w.p = (gas.gamma - 1.0) * w.rho * w.e;
    if (!(w.p > 0.0)) {
        std::ostringstream os;
        os << "non-positive pressure " << w.p << " at element " << element << " node " << node;
        throw PositivityError(os.str(), element, node);
    }
    w.T = w.p / (gas.gas_constant * w.rho);
    return w;
}

inline Vec5 conserved_from_primitive(double rho, const Vec3& u, double p, const GasModel& gas) {
    return {rho, rho * u[0], rho * u[1], rho * u[2],
            p / (gas.gamma - 1.0) + 0.5 * rho * dot(u, u)};
}

inline double pressure(const Vec5& q, const GasModel& gas) {
    return (gas.gamma - 1.0) * (q[4] - 0.5 * (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]) / q[0]);
}

/// Advective flux in Cartesian direction dir (0, 1, 2).
inline Vec5 euler_flux(const Vec5& q, int dir, const GasModel& gas) {
    const auto w = primitive_from_conserved(q, gas);
    const double un = w.u[dir];
    Vec5 f{q[0] * un, q[1] * un, q[2] * un, q[3] * un, (q[4] + w.p) * un};
    f[1 + dir] += w.p;
    return f;
}

/// Flux contracted with an arbitrary vector a: sum_i a_i f_i.
inline Vec5 euler_flux_normal(const Vec5& q, const Vec3& a, const GasModel& gas) {
    const auto w = primitive_from_conserved(q, gas);
    const double un = dot(w.u, a);
    return {q[0] * un, q[1] * un + w.p * a[0], q[2] * un + w.p * a[1], q[3] * un + w.p * a[2],
            (q[4] + w.p) * un};
}

/// Contravariant ALE flux Ja . f - (Ja . nu) q for one contravariant direction.
inline Vec5 contravariant_flux(const Vec5& q, const Vec3& ja, const Vec3& nu, const GasModel& gas) {
    Vec5 g = euler_flux_normal(q, ja, gas);
    const double vn = dot(ja, nu);
    for (int v = 0; v < 5; ++v) g[v] -= vn * q[v];
    return g;
}

/// Physical entropy s = -rho * log(p rho^-gamma) / (gamma - 1).
inline double entropy_density(const Vec5& q, const GasModel& gas) {
    const double p = pressure(q, gas);
    return -q[0] * (std::log(p) - gas.gamma * std::log(q[0])) / (gas.gamma - 1.0);
}

inline Vec5 entropy_variables(const Vec5& q, const GasModel& gas) {
    const auto w = primitive_from_conserved(q, gas);
    const double g = gas.gamma;
    const double vs = std::log(w.p) - g * std::log(w.rho);
    const double beta = w.rho / w.p;
    return {(g - vs) / (g - 1.0) - 0.5 * beta * dot(w.u, w.u), beta * w.u[0], beta * w.u[1],
            beta * w.u[2], -beta};
}

inline Vec5 conserved_from_entropy(const Vec5& w, const GasModel& gas) {
    const double g = gas.gamma;
    const double beta = -w[4];
    if (!(beta > 0.0)) throw PositivityError("entropy variable w5 must be negative");
    const Vec3 u{w[1] / beta, w[2] / beta, w[3] / beta};
    // w1 = (g - vs)/(g-1) - beta|u|^2/2, vs = log p - g log rho, p = rho/beta
    const double vs = g - (g - 1.0) * (w[0] + 0.5 * beta * dot(u, u));
    // log p - g log rho = vs, log p = log rho - log beta
    const double log_rho = (-std::log(beta) - vs) / (g - 1.0);
    const double rho = std::exp(log_rho);
    return conserved_from_primitive(rho, u, rho / beta, gas);
}

/// Kinetic variables v = [-|u|^2/2, u, 0].
inline Vec5 kinetic_variables(const Vec5& q) {
    const Vec3 u{q[1] / q[0], q[2] / q[0], q[3] / q[0]};
    return {-0.5 * dot(u, u), u[0], u[1], u[2], 0.0};
}

inline double kinetic_energy_density(const Vec5& q) {
    return 0.5 * (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]) / q[0];
}

inline double sound_speed(const Primitive& w, const GasModel& gas) {
    return std::sqrt(gas.gamma * w.p / w.rho);
}

inline double max_wave_speed(const Vec5& q, const Vec3& nu, const GasModel& gas) {
    const auto w = primitive_from_conserved(q, gas);
    const Vec3 r{w.u[0] - nu[0], w.u[1] - nu[1], w.u[2] - nu[2]};
    return norm(r) + sound_speed(w, gas);
}

/// Inverse entropy Hessian du/dw, symmetric positive definite.
inline Mat5 entropy_jacobian(const Vec5& q, const GasModel& gas) {
    const auto w = primitive_from_conserved(q, gas);
    const double rho = w.rho, p = w.p, E = q[4];
    const double H = (E + p) / rho;
    const double a2 = gas.gamma * p / rho;
    const Vec3& u = w.u;
    Mat5 m{};
    m[0][0] = rho;
    for (int i = 0; i < 3; ++i) {
        m[0][1 + i] = m[1 + i][0] = rho * u[i];
        for (int j = 0; j < 3; ++j) m[1 + i][1 + j] = rho * u[i] * u[j] + (i == j ? p : 0.0);
        m[1 + i][4] = m[4][1 + i] = rho * u[i] * H;
    }
    m[0][4] = m[4][0] = E;
    m[4][4] = rho * H * H - a2 * p / (gas.gamma - 1.0);
    return m;
}

inline Vec5 mat_vec(const Mat5& m, const Vec5& x) {
    Vec5 y{};
    for (int i = 0; i < 5; ++i) {
        double s = 0.0;
        for (int j = 0; j < 5; ++j) s += m[i][j] * x[j];
        y[i] = s;
    }
    return y;
}

/// Velocity and temperature gradients; grad_u[i][j] = du_i/dx_j.
struct PrimitiveGradient {
    std::array<Vec3, 3> grad_u{};
    Vec3 grad_T{};
};

/// Viscous flux f^v_j for the three Cartesian directions.
inline std::array<Vec5, 3> viscous_flux(const Vec3& u, const PrimitiveGradient& g, const GasModel& gas) {
    const double mu = gas.mu;
    const double kappa = gas.heat_conductivity();
    const double div = g.grad_u[0][0] + g.grad_u[1][1] + g.grad_u[2][2];
    std::array<Vec5, 3> f{};
    for (int i = 0; i < 3; ++i) {
        double work = 0.0;
        f[i][0] = 0.0;
        for (int j = 0; j < 3; ++j) {
            double sigma = mu * (g.grad_u[j][i] + g.grad_u[i][j]);
            if (i == j) sigma -= 2.0 / 3.0 * mu * div;
            f[i][1 + j] = sigma;
            work += u[j] * sigma;
        }
        f[i][4] = work + kappa * g.grad_T[i];
    }
    return f;
}

/// Stress contraction sum_ij du_i/dx_j sigma_ij; non-negative for mu >= 0.
inline double viscous_quadratic_form(const PrimitiveGradient& g, double mu) {
    const double div = g.grad_u[0][0] + g.grad_u[1][1] + g.grad_u[2][2];
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double sigma = mu * (g.grad_u[j][i] + g.grad_u[i][j]);
            if (i == j) sigma -= 2.0 / 3.0 * mu * div;
            s += g.grad_u[i][j] * sigma;
        }
    }
    return s;
}

/// Chain rule from entropy-variable gradients to velocity and temperature gradients.
/// gw[d] holds dW/dx_d.
inline PrimitiveGradient primitive_gradient_from_entropy(const Vec5& w, const std::array<Vec5, 3>& gw,
                                                         const GasModel& gas) {
    PrimitiveGradient g;
    const double w5 = w[4];
    const double inv = 1.0 / w5;
    const double inv2 = inv * inv;
    for (int d = 0; d < 3; ++d) {
        for (int i = 0; i < 3; ++i) g.grad_u[i][d] = -gw[d][1 + i] * inv + w[1 + i] * gw[d][4] * inv2;
        g.grad_T[d] = gw[d][4] * inv2 / gas.gas_constant;
    }
    return g;
}

}  // namespace splitdg
