#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "splitdg/harness.hpp"

namespace splitdg::testing {

inline MeshMotion standing_wave(double length, double amplitude = 0.05) {
    MeshMotion m;
    m.kind = MotionKind::StandingWave;
    m.amplitude = amplitude;
    m.length = {length, length, length};
    return m;
}

inline MeshMotion static_box(double length) {
    MeshMotion m;
    m.length = {length, length, length};
    return m;
}

inline MeshTopology cube(int k) {
    MeshTopology t;
    t.k = {k, k, k};
    return t;
}

/// J U and J = J_analytic from a pointwise state.
inline SolutionField sample_field(const MeshGeometry& geo, const std::function<Vec5(const Vec3&)>& f) {
    SolutionField sol(geo.degree, geo.num_elements);
    for (std::size_t g = 0; g < sol.size(); ++g) {
        sol.jac[g] = geo.jac[g];
        sol.ju[g] = sol.jac[g] * f(geo.x[g]);
    }
    return sol;
}

/// Smooth positive state with random Fourier coefficients, periodic on [0, L]^3.
inline std::function<Vec5(const Vec3&)> random_smooth_state(std::mt19937_64& rng, double length,
                                                            const GasModel& gas) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<double, 20> a{};
    for (auto& v : a) v = u(rng);
    const double k = 2.0 * std::numbers::pi / length;
    return [a, k, gas](const Vec3& x) {
        auto wave = [&](int o) {
            return a[o] * std::sin(k * x[0] + a[o + 1]) + a[o + 2] * std::cos(k * x[1] + a[o + 3]) *
                                                              std::sin(k * x[2] + 0.5 * a[o + 1]);
        };
        const double rho = 1.0 + 0.3 * wave(0);
        const Vec3 vel{0.5 * wave(4), 0.5 * wave(8), 0.5 * wave(12)};
        const double p = 2.0 + 0.5 * wave(16);
        return conserved_from_primitive(rho, vel, p, gas);
    };
}

}  // namespace splitdg::testing
