#include <cmath>

#include <gtest/gtest.h>

#include "splitdg/sbp_basis.hpp"

using namespace splitdg;

TEST(NodeSet, LinearIsEndpoints) {
    const auto ns = build_nodeset(1);
    ASSERT_EQ(ns.size(), 2);
    EXPECT_DOUBLE_EQ(ns.nodes[0], -1.0);
    EXPECT_DOUBLE_EQ(ns.nodes[1], 1.0);
    EXPECT_DOUBLE_EQ(ns.weights[0], 1.0);
    EXPECT_DOUBLE_EQ(ns.weights[1], 1.0);
}

TEST(NodeSet, QuadraticAndCubic) {
    const auto n2 = build_nodeset(2);
    EXPECT_NEAR(n2.nodes[1], 0.0, 1e-16);
    EXPECT_NEAR(n2.weights[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(n2.weights[1], 4.0 / 3.0, 1e-15);
    const auto n3 = build_nodeset(3);
    EXPECT_NEAR(n3.nodes[1], -1.0 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(n3.nodes[2], 1.0 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(n3.weights[0], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(n3.weights[1], 5.0 / 6.0, 1e-15);
}

TEST(NodeSet, ExactForDegree2NMinus1) {
    for (int n = 1; n <= kMaxDegree; ++n) {
        const auto ns = build_nodeset(n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int j = 0; j <= n; ++j) s += ns.weights[j] * std::pow(ns.nodes[j], k);
            const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
            EXPECT_NEAR(s, exact, 1e-13) << "N=" << n << " k=" << k;
        }
        for (int j = 0; j <= n; ++j) EXPECT_EQ(ns.nodes[j], -ns.nodes[n - j]);
    }
}

TEST(NodeSet, RejectsOutOfRange) {
    EXPECT_THROW(build_nodeset(0), std::invalid_argument);
    EXPECT_THROW(build_nodeset(16), std::invalid_argument);
}

TEST(Operators, LinearDerivative) {
    const auto ops = build_operators(build_nodeset(1));
    EXPECT_DOUBLE_EQ(ops.deriv(0, 0), -0.5);
    EXPECT_DOUBLE_EQ(ops.deriv(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(ops.deriv(1, 0), -0.5);
    EXPECT_DOUBLE_EQ(ops.deriv(1, 1), 0.5);
    EXPECT_DOUBLE_EQ(ops.sbp(0, 0) * 2, -1.0);
    EXPECT_DOUBLE_EQ(ops.sbp(1, 1) * 2, 1.0);
    EXPECT_DOUBLE_EQ(ops.sbp(0, 1) + ops.sbp(1, 0), 0.0);
}

TEST(Operators, SummationByParts) {
    for (int n = 1; n <= kMaxDegree; ++n) {
        const auto ops = build_operators(build_nodeset(n));
        double err = 0.0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                err = std::max(err, std::abs(ops.sbp(i, j) + ops.sbp(j, i) - ops.boundary(i, j)));
        EXPECT_LT(err, n <= 8 ? 1e-13 : 1e-12) << "N=" << n;
    }
}

TEST(Operators, DifferentiatesPolynomialsExactly) {
    const int n = 6;
    const auto ops = build_operators(build_nodeset(n));
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; i <= n; ++i) {
            double s = 0.0;
            for (int j = 0; j <= n; ++j) s += ops.deriv(i, j) * std::pow(ops.nodes.nodes[j], k);
            const double exact = k == 0 ? 0.0 : k * std::pow(ops.nodes.nodes[i], k - 1);
            EXPECT_NEAR(s, exact, 1e-12);
        }
    }
}

TEST(Lagrange, CardinalAndQuadratic) {
    const auto ns = build_nodeset(2);
    EXPECT_DOUBLE_EQ(lagrange_eval(ns, 1, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(lagrange_eval(ns, 0, 0.0), 0.0);
    EXPECT_NEAR(lagrange_eval(ns, 1, 0.5), 0.75, 1e-15);
    EXPECT_THROW(lagrange_eval(ns, 0, 1.5), std::domain_error);
}

TEST(Interpolation, TensorProduct) {
    const auto ns = build_nodeset(3);
    const int n1 = ns.size();
    std::vector<double> c(n1 * n1 * n1, 2.5), lin(c.size()), high(c.size());
    for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n1; ++j)
            for (int i = 0; i < n1; ++i) {
                lin[i + n1 * (j + n1 * k)] = ns.nodes[i];
                high[i + n1 * (j + n1 * k)] = std::pow(ns.nodes[i], 4);
            }
    EXPECT_NEAR(interpolate_nodal(ns, c, 0.13, -0.7, 0.4), 2.5, 1e-14);
    EXPECT_NEAR(interpolate_nodal(ns, lin, 0.3, 0.2, -0.9), 0.3, 1e-14);
    EXPECT_GT(std::abs(interpolate_nodal(ns, high, 0.3, 0.0, 0.0) - std::pow(0.3, 4)), 1e-3);
}

TEST(GaussLegendre, IntegratesDegree2MMinus1) {
    std::vector<double> x, w;
    gauss_legendre(13, x, w);
    for (int k = 0; k <= 25; ++k) {
        double s = 0.0;
        for (int j = 0; j < 13; ++j) s += w[j] * std::pow(x[j], k);
        EXPECT_NEAR(s, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-14);
    }
}
