#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "splitdg/gas_dynamics.hpp"

using namespace splitdg;

namespace {

Vec5 random_state(std::mt19937_64& rng, const GasModel& gas) {
    std::uniform_real_distribution<double> pos(0.1, 10.0), vel(-2.0, 2.0);
    return conserved_from_primitive(pos(rng), {vel(rng), vel(rng), vel(rng)}, pos(rng), gas);
}

}  // namespace

TEST(Primitive, FromConserved) {
    const GasModel gas;
    const auto w = primitive_from_conserved({1, 1, 0, 0, 3}, gas);
    EXPECT_DOUBLE_EQ(w.u[0], 1.0);
    EXPECT_NEAR(w.p, 1.0, 1e-15);
    EXPECT_NEAR(w.e, 2.5, 1e-15);
    const auto w2 = primitive_from_conserved({2, 0, 0, 0, 2}, gas);
    EXPECT_NEAR(w2.p, 0.8, 1e-15);
    EXPECT_NEAR(w2.e, 1.0, 1e-15);
    EXPECT_THROW(primitive_from_conserved({1, 0, 0, 0, 0}, gas), PositivityError);
    EXPECT_THROW(primitive_from_conserved({-1, 0, 0, 0, 1}, gas), PositivityError);
}

TEST(EulerFlux, Examples) {
    const GasModel gas;
    const Vec5 f = euler_flux({1, 1, 0, 0, 3}, 0, gas);
    const Vec5 expect{1, 2, 0, 0, 4};
    for (int v = 0; v < 5; ++v) EXPECT_NEAR(f[v], expect[v], 1e-15);
    const Vec5 q = conserved_from_primitive(1.3, {0.0, 0.4, 0.0}, 2.0, gas);
    const Vec5 g = euler_flux({q[0], 0.0, q[2], 0.0, q[4]}, 0, gas);
    EXPECT_EQ(g[0], 0.0);
    EXPECT_NEAR(g[1], pressure(q, gas), 1e-15);
    EXPECT_EQ(g[2], 0.0);
}

TEST(EulerFlux, ContravariantMatchesMatrixContraction) {
    const GasModel gas;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int s = 0; s < 50; ++s) {
        const Vec5 q = random_state(rng, gas);
        const Vec3 ja{u(rng), u(rng), u(rng)}, nu{u(rng), u(rng), u(rng)};
        const Vec5 g = contravariant_flux(q, ja, nu, gas);
        Vec5 ref{};
        for (int d = 0; d < 3; ++d) ref += ja[d] * euler_flux(q, d, gas);
        for (int v = 0; v < 5; ++v) ref[v] -= dot(ja, nu) * q[v];
        for (int v = 0; v < 5; ++v) EXPECT_NEAR(g[v], ref[v], 1e-13 * (1 + std::abs(ref[v])));
    }
    const Vec5 q = conserved_from_primitive(1.0, {0.3, -0.1, 0.2}, 1.0, gas);
    EXPECT_NEAR(contravariant_flux(q, {1, 0, 0}, {0.3, -0.1, 0.2}, gas)[0], 0.0, 1e-16);
}

TEST(EntropyVariables, RestState) {
    const GasModel gas;
    const Vec5 w = entropy_variables(conserved_from_primitive(1.0, {0, 0, 0}, 1.0, gas), gas);
    EXPECT_NEAR(w[0], 3.5, 1e-15);
    EXPECT_NEAR(w[4], -1.0, 1e-15);
}

TEST(EntropyVariables, RoundTripAndIdentity) {
    const GasModel gas;
    std::mt19937_64 rng(11);
    for (int s = 0; s < 1000; ++s) {
        const Vec5 q = random_state(rng, gas);
        const Vec5 w = entropy_variables(q, gas);
        const Vec5 back = conserved_from_entropy(w, gas);
        for (int v = 0; v < 5; ++v) EXPECT_NEAR(back[v], q[v], 1e-12 * (1 + std::abs(q[v])));
        // w . q - s - rho vanishes for the physical entropy pair
        EXPECT_NEAR(dot5(w, q) - entropy_density(q, gas) - q[0], 0.0, 1e-11 * (1 + std::abs(q[4])));
    }
}

TEST(EntropyJacobian, MatchesFiniteDifferenceOfInverseMap) {
    const GasModel gas;
    std::mt19937_64 rng(3);
    for (int s = 0; s < 20; ++s) {
        const Vec5 q = random_state(rng, gas);
        const Vec5 w = entropy_variables(q, gas);
        const Mat5 a0 = entropy_jacobian(q, gas);
        for (int j = 0; j < 5; ++j) {
            const double h = 1e-6 * std::max(1.0, std::abs(w[j]));
            Vec5 wp = w, wm = w;
            wp[j] += h;
            wm[j] -= h;
            const Vec5 qp = conserved_from_entropy(wp, gas), qm = conserved_from_entropy(wm, gas);
            for (int i = 0; i < 5; ++i) {
                const double fd = (qp[i] - qm[i]) / (2 * h);
                EXPECT_NEAR(a0[i][j], fd, 1e-5 * (1 + std::abs(fd)));
            }
        }
    }
}

TEST(ViscousFlux, Examples) {
    GasModel gas;
    gas.mu = 1.0;
    PrimitiveGradient zero;
    const auto f0 = viscous_flux({1, 2, 3}, zero, gas);
    for (const auto& f : f0)
        for (double v : f) EXPECT_EQ(v, 0.0);
    PrimitiveGradient shear;
    shear.grad_u[0][1] = 1.0;
    const auto fs = viscous_flux({0, 0, 0}, shear, gas);
    EXPECT_DOUBLE_EQ(fs[1][1], 1.0);  // sigma_21
    EXPECT_DOUBLE_EQ(fs[0][2], 1.0);  // sigma_12
    EXPECT_DOUBLE_EQ(fs[0][1], 0.0);
    PrimitiveGradient dil;
    for (int i = 0; i < 3; ++i) dil.grad_u[i][i] = 1.0;
    const auto fd = viscous_flux({0, 0, 0}, dil, gas);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(fd[i][1 + i], 0.0, 1e-15);
}

TEST(ViscousFlux, QuadraticFormNonNegative) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 3.0);
    for (int s = 0; s < 1000; ++s) {
        PrimitiveGradient g;
        for (auto& r : g.grad_u)
            for (double& v : r) v = n(rng);
        EXPECT_GE(viscous_quadratic_form(g, 0.7), -1e-13);
    }
}

TEST(ViscousFlux, GradientChainRule) {
    const GasModel gas;
    // W varies along x only; compare with finite differences of u and T
    auto state = [&](double x) { return conserved_from_primitive(1 + 0.2 * x, {0.3 * x, 0.1, -x}, 2 + x, gas); };
    const double x = 0.4, h = 1e-6;
    const Vec5 w = entropy_variables(state(x), gas);
    const Vec5 wp = entropy_variables(state(x + h), gas), wm = entropy_variables(state(x - h), gas);
    std::array<Vec5, 3> gw{};
    for (int v = 0; v < 5; ++v) gw[0][v] = (wp[v] - wm[v]) / (2 * h);
    const auto g = primitive_gradient_from_entropy(w, gw, gas);
    EXPECT_NEAR(g.grad_u[0][0], 0.3, 1e-7);
    EXPECT_NEAR(g.grad_u[1][0], 0.0, 1e-7);
    EXPECT_NEAR(g.grad_u[2][0], -1.0, 1e-7);
    // T = p / rho
    const double dt = (1.0 * (1 + 0.2 * x) - 0.2 * (2 + x)) / ((1 + 0.2 * x) * (1 + 0.2 * x));
    EXPECT_NEAR(g.grad_T[0], dt, 1e-7);
}

TEST(WaveSpeed, Examples) {
    const GasModel gas;
    EXPECT_NEAR(max_wave_speed(conserved_from_primitive(1, {0.5, 0, 0}, 1, gas), {0.5, 0, 0}, gas),
                std::sqrt(1.4), 1e-15);
    EXPECT_NEAR(max_wave_speed(conserved_from_primitive(1, {1, 0, 0}, 1, gas), {0, 0, 0}, gas),
                1 + std::sqrt(1.4), 1e-15);
    const double c1 = max_wave_speed(conserved_from_primitive(1, {0, 0, 0}, 1, gas), {0, 0, 0}, gas);
    const double c4 = max_wave_speed(conserved_from_primitive(1, {0, 0, 0}, 4, gas), {0, 0, 0}, gas);
    EXPECT_NEAR(c4, 2 * c1, 1e-15);
}
