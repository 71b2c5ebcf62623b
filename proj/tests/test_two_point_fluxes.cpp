#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "splitdg/harness.hpp"

using namespace splitdg;

namespace {

StateSample sample(double rho, const Vec3& u, double p, const Vec3& nu, const GasModel& gas) {
    return {conserved_from_primitive(rho, u, p, gas), nu};
}

}  // namespace

TEST(LogMean, Values) {
    EXPECT_DOUBLE_EQ(log_mean(3.0, 3.0), 3.0);
    EXPECT_NEAR(log_mean(1.0, std::exp(1.0)), std::exp(1.0) - 1.0, 1e-15);
    EXPECT_NEAR(log_mean(1.0, 1.0 + 1e-12), 1.0 + 5e-13, 1e-15);
    EXPECT_THROW(log_mean(-1.0, 2.0), std::domain_error);
}

TEST(LogMean, SeriesBranchIsContinuous) {
    // 1e-4 threshold on zeta^2 sits at b/a ~ 1.02
    for (double r : {1.0199, 1.0201, 1.02, 1.05, 1.001}) {
        const double a = 0.7, b = 0.7 * r;
        const double exact = (b - a) / std::log(b / a);
        EXPECT_NEAR(log_mean(a, b), exact, 2e-15 * exact) << r;
    }
}

TEST(VelocityNormAverage, Examples) {
    EXPECT_DOUBLE_EQ(velocity_norm_average({1, 2, 3}, {1, 2, 3}), 14.0);
    EXPECT_DOUBLE_EQ(velocity_norm_average({1, 0, 0}, {-1, 0, 0}), -1.0);
    EXPECT_DOUBLE_EQ(velocity_norm_average({1, 0, 0}, {3, 0, 0}), 3.0);
}

TEST(TwoPointFlux, ConsistentWithEulerFlux) {
    const GasModel gas;
    const auto s = sample(1.0, {1, 0, 0}, 1.0, {0, 0, 0}, gas);
    const Vec5 expect{1, 2, 0, 0, 4};
    for (auto k : kAllFluxKinds) {
        const Vec5 g = two_point_flux(k, s, s, 0, gas);
        for (int v = 0; v < 5; ++v) EXPECT_NEAR(g[v], expect[v], 1e-14) << flux_name(k);
        const auto m = sample(1.2, {0.3, -0.4, 0.1}, 2.0, {0.3, -0.4, 0.1}, gas);
        for (int d = 0; d < 3; ++d) EXPECT_NEAR(two_point_flux(k, m, m, d, gas)[0], 0.0, 1e-16);
    }
}

TEST(TwoPointFlux, ChandrashekarVariants) {
    const GasModel gas;
    std::mt19937_64 rng(1);
    for (int s = 0; s < 50; ++s) {
        const auto [l, r] = random_state_pair(rng, gas);
        const int dir = s % 3;
        const Vec5 ch = two_point_flux(FluxKind::CH, l, r, dir, gas);
        const Vec5 mch = two_point_flux(FluxKind::M_CH, l, r, dir, gas);
        const FluxNode nl = make_flux_node(l.q, gas), nr = make_flux_node(r.q, gas);
        const double shift = avg(nl.rho, nr.rho) / avg(nl.beta, nr.beta) - avg(nl.p, nr.p);
        EXPECT_EQ(ch[0], mch[0]);
        for (int v = 0; v < 3; ++v) {
            EXPECT_NEAR(ch[1 + v] - mch[1 + v], v == dir ? shift : 0.0, 1e-12 * (1 + std::abs(ch[1 + v])));
        }
        EXPECT_EQ(ch[4], mch[4]);
    }
}

TEST(TwoPointFlux, TadmorCondition) {
    const GasModel gas;
    std::mt19937_64 rng(2);
    double pi_max = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const auto [l, r] = random_state_pair(rng, gas);
        EXPECT_LT(check_tadmor(FluxKind::CH, l, r, s % 3, gas), 1e-11);
        EXPECT_LT(check_tadmor(FluxKind::RA, l, r, s % 3, gas), 1e-11);
        pi_max = std::max(pi_max, check_tadmor(FluxKind::PI, l, r, s % 3, gas));
        EXPECT_EQ(check_tadmor(FluxKind::KG, l, l, s % 3, gas), 0.0);
    }
    EXPECT_GT(pi_max, 1e-4);
}

TEST(TwoPointFlux, JamesonCondition) {
    const GasModel gas;
    std::mt19937_64 rng(3);
    for (int s = 0; s < 1000; ++s) {
        const auto [l, r] = random_state_pair(rng, gas);
        for (auto k : kAllFluxKinds) {
            if (!claims_jameson(k)) continue;
            const Vec3 res = check_jameson(k, l, r, s % 3, gas);
            for (double v : res) EXPECT_LT(std::abs(v), 1e-13) << flux_name(k);
        }
    }
    const auto l = sample(1, {0.2, 0.1, 0}, 1, {0, 0, 0}, gas);
    const auto r = sample(1, {-0.3, 0.4, 0.2}, 2, {0, 0, 0}, gas);
    EXPECT_NEAR(jameson_defect(FluxKind::CH, l, r, 0, gas)[0], -1.0 / 6.0, 1e-14);
    const Vec3 eq = jameson_defect(FluxKind::CH, l, l, 1, gas);
    for (double v : eq) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(TwoPointFlux, SymmetryIsBitwise) {
    const GasModel gas;
    std::mt19937_64 rng(4);
    for (int s = 0; s < 2000; ++s) {
        const auto [l, r] = random_state_pair(rng, gas);
        for (auto k : kAllFluxKinds) {
            const Vec5 a = two_point_flux(k, l, r, s % 3, gas);
            const Vec5 b = two_point_flux(k, r, l, s % 3, gas);
            for (int v = 0; v < 5; ++v) ASSERT_EQ(a[v], b[v]) << flux_name(k);
        }
    }
}

TEST(TwoPointFlux, ContractionIsLinearInDirection) {
    const GasModel gas;
    std::mt19937_64 rng(5);
    for (int s = 0; s < 100; ++s) {
        const auto [l, r] = random_state_pair(rng, gas);
        const FluxNode nl = make_flux_node(l.q, gas), nr = make_flux_node(r.q, gas);
        const Vec3 a{0.3, -1.2, 0.7};
        for (auto k : kAllFluxKinds) {
            const Vec5 g = two_point_flux(k, nl, nr, l.nu, r.nu, a, gas.gamma);
            Vec5 ref{};
            for (int d = 0; d < 3; ++d) ref += a[d] * two_point_flux(k, l, r, d, gas);
            for (int v = 0; v < 5; ++v) EXPECT_NEAR(g[v], ref[v], 1e-12 * (1 + std::abs(ref[v])));
        }
    }
}

TEST(FluxNames, RoundTrip) {
    for (auto k : kAllFluxKinds) EXPECT_EQ(parse_flux_kind(flux_name(k)), k);
    EXPECT_EQ(parse_flux_kind("CH"), FluxKind::CH);
    EXPECT_THROW(parse_flux_kind("roe"), std::invalid_argument);
}
