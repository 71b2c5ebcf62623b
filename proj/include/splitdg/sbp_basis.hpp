#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace splitdg {

inline constexpr int kMaxDegree = 15;

/// Legendre polynomial P_N and its derivative at x.
inline void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    double d0 = 0.0, d1 = 1.0;
    if (n == 0) {
        p = 1.0;
        dp = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        const double d2 = d0 + (2 * k - 1) * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    p = p1;
    dp = d1;
}

/// Legendre-Gauss-Lobatto nodes and weights on [-1, 1].
struct NodeSet {
    int degree = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return degree + 1; }
};

inline NodeSet build_nodeset(int n) {
    if (n < 1 || n > kMaxDegree) {
        throw std::invalid_argument("LGL degree must be in [1, 15]");
    }
    NodeSet ns;
    ns.degree = n;
    ns.nodes.assign(n + 1, 0.0);
    ns.weights.assign(n + 1, 0.0);
    ns.nodes[0] = -1.0;
    ns.nodes[n] = 1.0;
    // interior nodes are the roots of P'_N; Newton on q = P'_N using
    // (1-x^2) P''_N = 2x P'_N - N(N+1) P_N
    for (int j = 1; j < n; ++j) {
        double x = -std::cos(std::numbers::pi * j / n);
        for (int it = 0; it < 50; ++it) {
            double p, dp;
            legendre(n, x, p, dp);
            const double ddp = (2.0 * x * dp - n * (n + 1) * p) / (1.0 - x * x);
            const double dx = dp / ddp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        ns.nodes[j] = x;
    }
    // symmetrize so that mirrored nodes are exact negatives
    for (int j = 0; j <= n / 2; ++j) {
        const double s = 0.5 * (ns.nodes[n - j] - ns.nodes[j]);
        ns.nodes[j] = -s;
        ns.nodes[n - j] = s;
    }
    if (n % 2 == 0) ns.nodes[n / 2] = 0.0;
    for (int j = 0; j <= n; ++j) {
        double p, dp;
        legendre(n, ns.nodes[j], p, dp);
        ns.weights[j] = 2.0 / (n * (n + 1) * p * p);
    }
    return ns;
}

/// Barycentric weights for the node set.
inline std::vector<double> barycentric_weights(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (k != j) w[j] *= (x[j] - x[k]);
        }
        w[j] = 1.0 / w[j];
    }
    return w;
}

/// Dense row-major square matrix of size n.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Mass, derivative, SBP and boundary matrices on a node set.
struct OperatorSet {
    NodeSet nodes;
    Matrix mass;
    Matrix deriv;
    Matrix sbp;
    Matrix boundary;
};

inline Matrix derivative_matrix(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    const auto w = barycentric_weights(x);
    Matrix d(n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            d(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
            diag -= d(i, j);
        }
        d(i, i) = diag;
    }
    return d;
}

inline OperatorSet build_operators(const NodeSet& ns) {
    const int n = ns.size();
    OperatorSet ops;
    ops.nodes = ns;
    ops.mass = Matrix(n);
    ops.boundary = Matrix(n);
    ops.deriv = derivative_matrix(ns.nodes);
    ops.sbp = Matrix(n);
    for (int i = 0; i < n; ++i) {
        ops.mass(i, i) = ns.weights[i];
        for (int j = 0; j < n; ++j) ops.sbp(i, j) = ns.weights[i] * ops.deriv(i, j);
    }
    ops.boundary(0, 0) = -1.0;
    ops.boundary(n - 1, n - 1) = 1.0;
    return ops;
}

/// Values of all Lagrange basis polynomials on nodes x at point t.
inline std::vector<double> lagrange_all(const std::vector<double>& x, double t) {
    const std::size_t n = x.size();
    std::vector<double> l(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (t == x[j]) {
            l[j] = 1.0;
            return l;
        }
    }
    const auto w = barycentric_weights(x);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        l[j] = w[j] / (t - x[j]);
        s += l[j];
    }
    for (auto& v : l) v /= s;
    return l;
}

inline double lagrange_eval(const NodeSet& ns, int j, double x) {
    if (x < -1.0 || x > 1.0) throw std::domain_error("lagrange_eval: point outside [-1, 1]");
    if (j < 0 || j > ns.degree) throw std::out_of_range("lagrange_eval: basis index");
    return lagrange_all(ns.nodes, x)[j];
}

/// Rectangular interpolation matrix from nodes x to points t (rows = points).
inline std::vector<double> interpolation_matrix(const std::vector<double>& x,
                                                const std::vector<double>& t) {
    std::vector<double> m;
    m.reserve(x.size() * t.size());
    for (double ti : t) {
        const auto l = lagrange_all(x, ti);
        m.insert(m.end(), l.begin(), l.end());
    }
    return m;
}

/// Evaluates the tensor-product interpolant of nodal values at a reference point.
/// Values are ordered with the first index fastest.
inline double interpolate_nodal(const NodeSet& ns, const std::vector<double>& values,
                                double xi1, double xi2, double xi3) {
    const int n = ns.size();
    if (static_cast<int>(values.size()) != n * n * n) {
        throw std::invalid_argument("interpolate_nodal: expected (N+1)^3 values");
    }
    const auto l1 = lagrange_all(ns.nodes, xi1);
    const auto l2 = lagrange_all(ns.nodes, xi2);
    const auto l3 = lagrange_all(ns.nodes, xi3);
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            double row = 0.0;
            for (int i = 0; i < n; ++i) row += l1[i] * values[i + n * (j + n * k)];
            s += l3[k] * l2[j] * row;
        }
    }
    return s;
}

/// Gauss-Legendre points and weights, used for supersampled error norms.
inline void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    for (int j = 0; j < m; ++j) {
        double t = -std::cos(std::numbers::pi * (j + 0.75) / (m + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            legendre(m, t, p, dp);
            const double dt = p / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p, dp;
        legendre(m, t, p, dp);
        x[j] = t;
        w[j] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace splitdg
