#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitdg/dg_rhs.hpp"
#include "splitdg/diagnostics.hpp"

namespace splitdg {

/// Five-stage fourth-order two-register scheme RK4(3)5[2R+]C of Kennedy, Carpenter and Lewis (2000).
/// The Butcher matrix has a_{i,i-1} = sub[i-1] on the subdiagonal and a_{i,j} = b_j below it.
struct RkScheme {
    static constexpr int stages = 5;
    static constexpr std::array<double, 4> sub{
        970286171893.0 / 4311952581923.0, 6584761158862.0 / 12103376702013.0,
        2251764453980.0 / 15575788980749.0, 26877169314380.0 / 34165994151039.0};
    static constexpr std::array<double, 5> b{
        1153189308089.0 / 22510343858157.0, 1772645290293.0 / 4653164025191.0,
        -1672844663538.0 / 4480602732383.0, 2114624349019.0 / 3568978502595.0,
        5198255086312.0 / 14908931495163.0};

    /// Stage abscissae c_i = sum_j a_{i,j}.
    static constexpr std::array<double, 5> c() {
        std::array<double, 5> out{};
        double acc = 0.0;
        for (int i = 1; i < stages; ++i) {
            out[i] = acc + sub[i - 1];
            acc += b[i - 1];
        }
        return out;
    }
};

/// Any state that supports y += s * x over matching shapes.
template <class State>
using RhsFunction = std::function<void(const State& y, double t, State& dydt)>;

inline void axpy(SolutionField& y, double s, const SolutionField& x) {
    for (std::size_t g = 0; g < y.size(); ++g) {
        for (int v = 0; v < 5; ++v) y.ju[g][v] += s * x.ju[g][v];
        y.jac[g] += s * x.jac[g];
    }
}

template <class Vec>
inline void axpy(Vec& y, double s, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

/// One step of the two-register scheme. The stage right-hand side is evaluated
/// at t + c_i dt; registers hold the accumulated solution and the stage input.
template <class State>
void advance(State& y, const RhsFunction<State>& rhs, double t, double dt) {
    constexpr auto c = RkScheme::c();
    State stage = y;
    State k;
    for (int i = 0; i < RkScheme::stages; ++i) {
        try {
            rhs(stage, t + c[i] * dt, k);
        } catch (const PositivityError& err) {
            throw PositivityError(std::string(err.what()) + " (RK stage " + std::to_string(i) + ", t=" +
                                      std::to_string(t) + ")",
                                  err.element(), err.node());
        }
        if (i + 1 < RkScheme::stages) {
            stage = y;
            axpy(stage, RkScheme::sub[i] * dt, k);
        }
        axpy(y, RkScheme::b[i] * dt, k);
    }
}

/// Element size (sum of omega J)^(1/3) per element.
inline std::vector<double> element_sizes(const NodeSet& ns, const SolutionField& sol) {
    const auto w = volume_weights(ns);
    const int np = sol.nodes_per_element();
    std::vector<double> h(sol.num_elements);
    for (long e = 0; e < sol.num_elements; ++e) {
        double v = 0.0;
        for (int q = 0; q < np; ++q) v += w[q] * sol.jac[e * np + q];
        h[e] = std::cbrt(v);
    }
    return h;
}

/// Largest |u - nu| + c over all nodes.
inline double max_signal_speed(const SolutionField& sol, const MeshGeometry& geo, const GasModel& gas) {
    double lam = 0.0;
    for (std::size_t g = 0; g < sol.size(); ++g) {
        lam = std::max(lam, max_wave_speed(sol.state(g), geo.nu[g], gas));
    }
    return lam;
}

/// CFL time step C min(h) / ((2N+1) lambda_max), capped by dt_max when dt_max > 0.
inline double compute_dt(const NodeSet& ns, const SolutionField& sol, const MeshGeometry& geo,
                         const GasModel& gas, double cfl, double dt_max = 0.0) {
    const auto h = element_sizes(ns, sol);
    const double hmin = *std::min_element(h.begin(), h.end());
    const double lam = max_signal_speed(sol, geo, gas);
    double dt = std::numeric_limits<double>::infinity();
    if (lam > 0.0) dt = cfl * hmin / ((2 * ns.degree + 1) * lam);
    if (dt_max > 0.0) dt = std::min(dt, dt_max);
    if (!std::isfinite(dt)) throw std::runtime_error("compute_dt: zero signal speed and no dt_max cap");
    return dt;
}

}  // namespace splitdg
