#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitdg/diagnostics.hpp"
#include "splitdg/dg_rhs.hpp"
#include "splitdg/gas_dynamics.hpp"
#include "splitdg/moving_geometry.hpp"
#include "splitdg/sbp_basis.hpp"
#include "splitdg/time_march.hpp"
#include "splitdg/two_point_fluxes.hpp"

namespace splitdg {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Experiment { Convergence, Tgv, FluxCheck };

inline Experiment parse_experiment(const std::string& s) {
    if (s == "convergence") return Experiment::Convergence;
    if (s == "tgv") return Experiment::Tgv;
    if (s == "flux_check" || s == "flux-check") return Experiment::FluxCheck;
    throw ConfigError("unknown experiment '" + s + "'");
}

inline std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Convergence: return "convergence";
        case Experiment::Tgv: return "tgv";
        case Experiment::FluxCheck: return "flux_check";
    }
    return "?";
}

struct RunConfig {
    Experiment experiment = Experiment::Tgv;
    int degree = 3;
    std::array<int, 3> elements{8, 8, 8};
    double domain_length = 2.0 * std::numbers::pi;
    MotionKind motion = MotionKind::StandingWave;
    double motion_amplitude = 0.05;
    int ngeo = 2;
    GasModel gas;
    FluxKind volume_flux = FluxKind::PI;
    FluxKind surface_flux = FluxKind::PI;
    Dissipation dissipation = Dissipation::None;
    bool viscous = false;
    double re = 0.0;  // 0 means inviscid unless mu is set
    double mach = 0.1;
    double cfl = 0.5;
    double t_end = 13.0;
    double dt_max = 0.0;
    double sample_dt = 0.1;
    std::uint64_t seed = 42;
    int samples = 10000;
    std::vector<FluxKind> kinds;  // flux_check filter, empty means all
    std::vector<int> levels{2, 4, 8};
    std::string output;

    double p0() const { return 1.0 / (gas.gamma * mach * mach); }
};

/// Defaults that depend on the experiment.
inline RunConfig default_config(Experiment e) {
    RunConfig c;
    c.experiment = e;
    if (e == Experiment::Convergence) {
        c.domain_length = 2.0;
        c.cfl = 0.1;
        c.t_end = 5.0;
        c.dissipation = Dissipation::EntropyRusanov;
        c.elements = {2, 2, 2};
        c.output = "convergence.csv";
    } else if (e == Experiment::Tgv) {
        c.output = "tgv.csv";
    } else {
        c.output = "flux_check.csv";
    }
    return c;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': " + v);
    }
}

inline long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for '" + key + "': " + v);
    }
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid switch for '" + key + "': " + v);
}

}  // namespace detail

/// Applies one key = value setting. Keys use underscores; dashes are accepted.
inline void apply_setting(RunConfig& c, std::string key, const std::string& raw) {
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string v = detail::trim(raw);
    try {
        if (key == "experiment") {
            c.experiment = parse_experiment(v);
        } else if (key == "degree" || key == "n") {
            c.degree = static_cast<int>(detail::to_long(key, v));
        } else if (key == "elements") {
            const auto parts = detail::split_list(v);
            if (parts.size() == 1) {
                const int k = static_cast<int>(detail::to_long(key, parts[0]));
                c.elements = {k, k, k};
            } else if (parts.size() == 3) {
                for (int d = 0; d < 3; ++d) c.elements[d] = static_cast<int>(detail::to_long(key, parts[d]));
            } else {
                throw ConfigError("elements expects K or K1,K2,K3");
            }
        } else if (key == "domain_length") {
            c.domain_length = detail::to_double(key, v);
        } else if (key == "motion") {
            if (v == "static") c.motion = MotionKind::Static;
            else if (v == "standing_wave") c.motion = MotionKind::StandingWave;
            else throw ConfigError("motion must be static or standing_wave");
        } else if (key == "motion_amplitude" || key == "amplitude") {
            c.motion_amplitude = detail::to_double(key, v);
        } else if (key == "ngeo") {
            c.ngeo = static_cast<int>(detail::to_long(key, v));
        } else if (key == "gamma") {
            c.gas.gamma = detail::to_double(key, v);
        } else if (key == "mu") {
            c.gas.mu = detail::to_double(key, v);
        } else if (key == "prandtl") {
            c.gas.prandtl = detail::to_double(key, v);
        } else if (key == "gas_constant") {
            c.gas.gas_constant = detail::to_double(key, v);
        } else if (key == "volume_flux") {
            c.volume_flux = parse_flux_kind(v);
        } else if (key == "surface_flux") {
            c.surface_flux = parse_flux_kind(v);
        } else if (key == "surface_dissipation" || key == "dissipation") {
            c.dissipation = parse_dissipation(v);
        } else if (key == "viscous") {
            c.viscous = detail::to_bool(key, v);
        } else if (key == "re") {
            c.re = detail::to_double(key, v);
        } else if (key == "mach" || key == "ma") {
            c.mach = detail::to_double(key, v);
        } else if (key == "cfl") {
            c.cfl = detail::to_double(key, v);
        } else if (key == "t_end") {
            c.t_end = detail::to_double(key, v);
        } else if (key == "dt_max") {
            c.dt_max = detail::to_double(key, v);
        } else if (key == "sample_dt") {
            c.sample_dt = detail::to_double(key, v);
        } else if (key == "seed") {
            c.seed = static_cast<std::uint64_t>(detail::to_long(key, v));
        } else if (key == "samples") {
            c.samples = static_cast<int>(detail::to_long(key, v));
        } else if (key == "kind" || key == "kinds") {
            c.kinds.clear();
            for (const auto& s : detail::split_list(v)) c.kinds.push_back(parse_flux_kind(s));
        } else if (key == "levels") {
            c.levels.clear();
            for (const auto& s : detail::split_list(v)) c.levels.push_back(static_cast<int>(detail::to_long(key, s)));
        } else if (key == "output") {
            c.output = v;
        } else {
            throw ConfigError("unknown configuration key '" + key + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

/// Parses flat "key = value" lines with '#' comments.
inline std::vector<std::pair<std::string, std::string>> parse_config_text(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        out.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config_text(f);
}

/// Checks ranges and combinations; derives mu from Re for viscous TGV runs.
inline void validate(RunConfig& c) {
    if (c.degree < 1 || c.degree > kMaxDegree) throw ConfigError("degree must be in [1, 15]");
    for (int k : c.elements)
        if (k < 1) throw ConfigError("element counts must be positive");
    if (!(c.domain_length > 0.0)) throw ConfigError("domain_length must be positive");
    if (c.ngeo < 1) throw ConfigError("ngeo must be at least 1");
    c.ngeo = std::min(c.ngeo, c.degree);
    if (!(c.gas.gamma > 1.0)) throw ConfigError("gamma must exceed 1");
    if (c.gas.mu < 0.0) throw ConfigError("mu must be non-negative");
    if (!(c.gas.prandtl > 0.0)) throw ConfigError("prandtl must be positive");
    if (!(c.gas.gas_constant > 0.0)) throw ConfigError("gas_constant must be positive");
    if (!(c.cfl > 0.0)) throw ConfigError("cfl must be positive");
    if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
    if (c.dt_max < 0.0) throw ConfigError("dt_max must be non-negative");
    if (!(c.sample_dt > 0.0)) throw ConfigError("sample_dt must be positive");
    if (!(c.mach > 0.0)) throw ConfigError("mach must be positive");
    if (c.re < 0.0) throw ConfigError("re must be non-negative");
    if (c.samples < 1) throw ConfigError("samples must be positive");
    if (std::abs(c.motion_amplitude) >= 0.25) throw ConfigError("motion_amplitude too large for a valid mesh");
    if (c.experiment == Experiment::FluxCheck && (c.viscous || c.re > 0.0)) {
        throw ConfigError("viscous settings are not valid for flux_check");
    }
    if (c.experiment == Experiment::Convergence) {
        if (c.levels.empty()) throw ConfigError("levels must not be empty");
        for (int k : c.levels)
            if (k < 1) throw ConfigError("levels must be positive");
    }
    if (c.re > 0.0) {
        c.viscous = true;
        c.gas.mu = 1.0 / c.re;  // rho = 1, |u0| = 1, L = 1
    }
    if (c.viscous && !(c.gas.mu > 0.0)) throw ConfigError("viscous = on requires mu > 0 or re > 0");
}

/// Exact manufactured state; phase pi (x1 + x2 + x3 - 0.6 t).
inline Vec5 manufactured_state(const Vec3& x, double t) {
    const double g = 2.0 + 0.1 * std::sin(std::numbers::pi * (x[0] + x[1] + x[2] - 0.6 * t));
    return {g, g, g, g, g * g};
}

/// Residual of the manufactured state in the Euler equations.
inline Vec5 manufactured_source(const Vec3& x, double t, double gamma) {
    const double ph = std::numbers::pi * (x[0] + x[1] + x[2] - 0.6 * t);
    const double g = 2.0 + 0.1 * std::sin(ph);
    const double gp = 0.1 * std::numbers::pi * std::cos(ph);
    const double gm = gamma - 1.0;
    const double mom = gp * (2.4 + gm * (2.0 * g - 1.5));
    return {2.4 * gp, mom, mom, mom, gp * (4.8 * g + 3.0 * gm * (2.0 * g - 1.5))};
}

/// Taylor-Green vortex initial state with rho = 1.
inline Vec5 tgv_state(const Vec3& x, double p0, const GasModel& gas) {
    const Vec3 u{std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]),
                 -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]), 0.0};
    const double p = p0 + (std::cos(2 * x[0]) + std::cos(2 * x[1])) * (std::cos(2 * x[2]) + 2.0) / 16.0;
    return conserved_from_primitive(1.0, u, p, gas);
}

/// Mesh, operator and evolving solution for one run.
class Simulation {
public:
    Simulation(const OperatorSet& ops, const MeshTopology& topo, const MeshMotion& motion, const Vec3& origin,
               int ngeo, const SchemeConfig& scheme)
        : ops_(ops), mesh_(ops_, topo, motion, origin, ngeo), op_(ops_, topo, scheme),
          sol_(ops.nodes.degree, topo.num_elements()) {
        mesh_.build(0.0, geo_);
    }

    /// Sets J U from a pointwise initial condition and J from the mapping at t.
    void initialize(const std::function<Vec5(const Vec3&)>& u0, double t = 0.0) {
        time_ = t;
        mesh_.build(t, geo_);
        for (std::size_t g = 0; g < sol_.size(); ++g) {
            sol_.jac[g] = geo_.jac[g];
            sol_.ju[g] = sol_.jac[g] * u0(geo_.x[g]);
        }
    }

    void set_source(SourceFn s) { source_ = std::move(s); }

    /// Evaluates the right-hand side with geometry rebuilt at time t.
    void rhs(const SolutionField& y, double t, SolutionField& dydt) {
        mesh_.build(t, stage_geo_);
        op_.evaluate(y, stage_geo_, dydt, source_ ? &source_ : nullptr);
    }

    double stable_dt(double cfl, double dt_max) const {
        return compute_dt(ops_.nodes, sol_, geo_, op_.config().gas, cfl, dt_max);
    }

    void step(double dt) {
        RhsFunction<SolutionField> f = [this](const SolutionField& y, double t, SolutionField& k) { rhs(y, t, k); };
        advance(sol_, f, time_, dt);
        time_ += dt;
        mesh_.build(time_, geo_);
    }

    /// Advances to t_end with CFL steps; the last step lands on t_end.
    /// on_step is called after every step.
    void run_to(double t_end, double cfl, double dt_max, const std::function<void()>& on_step = {}) {
        while (time_ < t_end) {
            double dt = stable_dt(cfl, dt_max);
            bool last = false;
            if (time_ + dt >= t_end) {
                dt = t_end - time_;
                last = true;
            }
            step(dt);
            if (last) time_ = t_end;
            ++steps_;
            if (on_step) on_step();
        }
    }

    double time() const { return time_; }
    long steps() const { return steps_; }
    SolutionField& solution() { return sol_; }
    const SolutionField& solution() const { return sol_; }
    const MeshGeometry& geometry() const { return geo_; }
    SplitFormDG& op() { return op_; }
    const MovingMesh& mesh() const { return mesh_; }
    const OperatorSet& ops() const { return ops_; }

private:
    OperatorSet ops_;
    MovingMesh mesh_;
    SplitFormDG op_;
    SolutionField sol_;
    MeshGeometry geo_, stage_geo_;
    SourceFn source_;
    double time_ = 0.0;
    long steps_ = 0;
};

inline SchemeConfig scheme_from(const RunConfig& c) {
    SchemeConfig s;
    s.volume_flux = c.volume_flux;
    s.surface_flux = c.surface_flux;
    s.dissipation = c.dissipation;
    s.viscous = c.viscous;
    s.gas = c.gas;
    return s;
}

inline MeshMotion motion_from(const RunConfig& c) {
    MeshMotion m;
    m.kind = c.motion;
    m.amplitude = c.motion_amplitude;
    m.length = {c.domain_length, c.domain_length, c.domain_length};
    return m;
}

/// L2 norm of the density error over the domain volume using m^3 Gauss points per element.
inline double density_l2_error(const Simulation& sim, const std::function<double(const Vec3&)>& exact, int m = 13) {
    const auto& ns = sim.ops().nodes;
    const int n1 = ns.size();
    const int np = n1 * n1 * n1;
    std::vector<double> xg, wg;
    gauss_legendre(m, xg, wg);
    const auto im = interpolation_matrix(ns.nodes, xg);  // m x n1
    const auto& sol = sim.solution();
    const auto& geo = sim.geometry();
    auto interp3 = [&](const std::vector<double>& in, std::vector<double>& out) {
        std::vector<double> a(m * n1 * n1), b(m * m * n1);
        for (int k = 0; k < n1; ++k)
            for (int j = 0; j < n1; ++j)
                for (int i = 0; i < m; ++i) {
                    double s = 0.0;
                    for (int q = 0; q < n1; ++q) s += im[i * n1 + q] * in[q + n1 * (j + n1 * k)];
                    a[i + m * (j + n1 * k)] = s;
                }
        for (int k = 0; k < n1; ++k)
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < m; ++i) {
                    double s = 0.0;
                    for (int q = 0; q < n1; ++q) s += im[j * n1 + q] * a[i + m * (q + n1 * k)];
                    b[i + m * (j + m * k)] = s;
                }
        out.assign(m * m * m, 0.0);
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < m; ++i) {
                    double s = 0.0;
                    for (int q = 0; q < n1; ++q) s += im[k * n1 + q] * b[i + m * (j + m * q)];
                    out[i + m * (j + m * k)] = s;
                }
    };
    CompensatedSum err, vol;
    std::vector<double> rho(np), jac(np), x0(np), x1(np), x2(np);
    std::vector<double> rg, jg, xg0, xg1, xg2;
    for (long e = 0; e < sol.num_elements; ++e) {
        const long base = e * np;
        for (int q = 0; q < np; ++q) {
            rho[q] = sol.ju[base + q][0] / sol.jac[base + q];
            jac[q] = geo.jac[base + q];
            x0[q] = geo.x[base + q][0];
            x1[q] = geo.x[base + q][1];
            x2[q] = geo.x[base + q][2];
        }
        interp3(rho, rg);
        interp3(jac, jg);
        interp3(x0, xg0);
        interp3(x1, xg1);
        interp3(x2, xg2);
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < m; ++i) {
                    const int q = i + m * (j + m * k);
                    const double w = wg[i] * wg[j] * wg[k] * jg[q];
                    const double d = rg[q] - exact({xg0[q], xg1[q], xg2[q]});
                    err.add(w * d * d);
                    vol.add(w);
                }
    }
    return std::sqrt(err.value() / vol.value());
}

struct ConvergenceRow {
    int elements = 0;
    double h = 0.0;
    double l2_rho = 0.0;
    double order = std::nan("");
    long steps = 0;
};

/// Manufactured-solution run on each level; orders from consecutive rows.
inline std::vector<ConvergenceRow> run_convergence(const RunConfig& c,
                                                   const std::function<void(const ConvergenceRow&)>& progress = {}) {
    const OperatorSet ops = build_operators(build_nodeset(c.degree));
    std::vector<ConvergenceRow> rows;
    const double half = 0.5 * c.domain_length;
    for (int k : c.levels) {
        MeshTopology topo;
        topo.k = {k, k, k};
        Simulation sim(ops, topo, motion_from(c), {-half, -half, -half}, c.ngeo, scheme_from(c));
        sim.initialize([](const Vec3& x) { return manufactured_state(x, 0.0); });
        const double gamma = c.gas.gamma;
        sim.set_source([gamma](const Vec3& x, double t) { return manufactured_source(x, t, gamma); });
        sim.run_to(c.t_end, c.cfl, c.dt_max);
        ConvergenceRow r;
        r.elements = k;
        r.h = c.domain_length / k;
        const double t = sim.time();
        r.l2_rho = density_l2_error(sim, [t](const Vec3& x) { return manufactured_state(x, t)[0]; });
        r.steps = sim.steps();
        if (!rows.empty()) r.order = std::log(rows.back().l2_rho / r.l2_rho) / std::log(rows.back().h / r.h);
        rows.push_back(r);
        if (progress) progress(r);
    }
    return rows;
}

inline void write_config_header(std::ostream& os, const RunConfig& c) {
    os << "# experiment=" << experiment_name(c.experiment) << " degree=" << c.degree << " elements="
       << c.elements[0] << "," << c.elements[1] << "," << c.elements[2] << " ngeo=" << c.ngeo << "\n";
    os << "# volume_flux=" << flux_name(c.volume_flux) << " surface_flux=" << flux_name(c.surface_flux)
       << " surface_dissipation=" << dissipation_name(c.dissipation) << " viscous=" << (c.viscous ? "on" : "off")
       << "\n";
    os << "# gamma=" << c.gas.gamma << " mu=" << c.gas.mu << " prandtl=" << c.gas.prandtl
       << " gas_constant=" << c.gas.gas_constant << " mach=" << c.mach << " cfl=" << c.cfl
       << " t_end=" << c.t_end << "\n";
    os << "# element size h = (sum of omega J)^(1/3); CFL dt = cfl*min(h)/((2N+1)*max(|u-nu|+c))\n";
}

inline void write_convergence_csv(std::ostream& os, const RunConfig& c, const std::vector<ConvergenceRow>& rows) {
    write_config_header(os, c);
    os << "h,l2_rho,order\n";
    os << std::setprecision(15);
    for (const auto& r : rows) {
        os << r.h << "," << r.l2_rho << ",";
        if (!std::isnan(r.order)) os << r.order;
        os << "\n";
    }
}

/// Inviscid or viscous TGV on [0, 2 pi]^3, sampled every sample_dt.
inline std::vector<DiagnosticsRecord> run_tgv(const RunConfig& c,
                                              const std::function<void(const DiagnosticsRecord&)>& on_sample = {},
                                              const std::function<void(Simulation&)>& on_sample_sim = {}) {
    const OperatorSet ops = build_operators(build_nodeset(c.degree));
    MeshTopology topo;
    topo.k = c.elements;
    Simulation sim(ops, topo, motion_from(c), {0.0, 0.0, 0.0}, c.ngeo, scheme_from(c));
    const double p0 = c.p0();
    const GasModel gas = c.gas;
    sim.initialize([p0, gas](const Vec3& x) { return tgv_state(x, p0, gas); });
    std::vector<DiagnosticsRecord> out;
    auto sample = [&]() {
        out.push_back(record_diagnostics(sim.op(), sim.solution(), sim.geometry()));
        if (on_sample_sim) on_sample_sim(sim);
        if (on_sample) on_sample(out.back());
    };
    sample();
    const long nsamples = std::max(1L, std::lround(c.t_end / c.sample_dt));
    for (long s = 1; s <= nsamples; ++s) {
        const double target = s == nsamples ? c.t_end : s * c.sample_dt;
        sim.run_to(target, c.cfl, c.dt_max);
        sample();
    }
    return out;
}

inline void write_tgv_header(std::ostream& os, const RunConfig& c) {
    write_config_header(os, c);
    os << "time,kinetic_energy,entropy,internal_energy,total_energy,dSdt,ke_balance_residual,max_jacobian_error\n";
}

inline void write_tgv_row(std::ostream& os, const DiagnosticsRecord& r) {
    os << std::setprecision(16) << r.time << "," << r.kinetic_energy << "," << r.entropy << ","
       << r.internal_energy << "," << r.total_energy << "," << r.dsdt << "," << r.ke_balance_residual << ","
       << r.max_jacobian_error << "\n";
}

struct FluxCheckRow {
    FluxKind kind;
    std::string predicate;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double threshold = 0.0;
    bool claimed = false;
    bool pass = true;
};

/// Random admissible pair: rho, p in [0.1, 10], |u|, |nu| <= 3.
inline std::pair<StateSample, StateSample> random_state_pair(std::mt19937_64& rng, const GasModel& gas) {
    std::uniform_real_distribution<double> pos(0.1, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto ball = [&](double radius) {
        Vec3 d{normal(rng), normal(rng), normal(rng)};
        const double n = std::max(norm(d), 1e-300);
        const double r = radius * std::cbrt(unit(rng));
        return Vec3{r * d[0] / n, r * d[1] / n, r * d[2] / n};
    };
    auto one = [&]() {
        const double rho = pos(rng), p = pos(rng);
        const Vec3 u = ball(3.0);
        StateSample s;
        s.q = conserved_from_primitive(rho, u, p, gas);
        s.nu = ball(3.0);
        return s;
    };
    StateSample l = one();
    StateSample r = one();
    return {l, r};
}

inline std::vector<FluxCheckRow> run_flux_check(const RunConfig& c) {
    const auto kinds = c.kinds.empty() ? std::vector<FluxKind>(kAllFluxKinds.begin(), kAllFluxKinds.end()) : c.kinds;
    std::vector<FluxCheckRow> rows;
    for (FluxKind k : kinds) {
        std::mt19937_64 rng(c.seed);
        FluxCheckRow sym{k, "symmetry", 0, 0, 0.0, true, true};
        FluxCheckRow con{k, "consistency", 0, 0, 1e-13, true, true};
        FluxCheckRow tad{k, "tadmor", 0, 0, 1e-11, claims_entropy_conservation(k), true};
        FluxCheckRow jam{k, "jameson", 0, 0, 1e-13, claims_jameson(k), true};
        for (int s = 0; s < c.samples; ++s) {
            const auto [l, r] = random_state_pair(rng, c.gas);
            const int dir = s % 3;
            const Vec5 a = two_point_flux(k, l, r, dir, c.gas);
            const Vec5 b = two_point_flux(k, r, l, dir, c.gas);
            double asym = 0.0;
            for (int v = 0; v < 5; ++v) asym = std::max(asym, std::abs(a[v] - b[v]));
            const double cs = check_consistency(k, l, dir, c.gas);
            const double td = check_tadmor(k, l, r, dir, c.gas);
            const Vec3 jr = check_jameson(k, l, r, dir, c.gas);
            const double jm = std::max({std::abs(jr[0]), std::abs(jr[1]), std::abs(jr[2])});
            sym.max_residual = std::max(sym.max_residual, asym);
            sym.mean_residual += asym;
            con.max_residual = std::max(con.max_residual, cs);
            con.mean_residual += cs;
            tad.max_residual = std::max(tad.max_residual, td);
            tad.mean_residual += td;
            jam.max_residual = std::max(jam.max_residual, jm);
            jam.mean_residual += jm;
        }
        for (auto* row : {&sym, &con, &tad, &jam}) {
            row->mean_residual /= c.samples;
            row->pass = row->predicate == "symmetry" ? row->max_residual == 0.0 : row->max_residual < row->threshold;
            rows.push_back(*row);
        }
    }
    return rows;
}

inline void write_flux_check_csv(std::ostream& os, const std::vector<FluxCheckRow>& rows) {
    os << "kind,predicate,max_residual,mean_residual,threshold,claimed,pass\n";
    os << std::setprecision(6);
    for (const auto& r : rows) {
        os << flux_name(r.kind) << "," << r.predicate << "," << r.max_residual << "," << r.mean_residual << ","
           << r.threshold << "," << (r.claimed ? "yes" : "no") << "," << (r.pass ? "yes" : "no") << "\n";
    }
}

}  // namespace splitdg
