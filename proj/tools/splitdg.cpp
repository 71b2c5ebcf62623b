#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "splitdg/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPositivity = 3;
constexpr int kExitPredicate = 4;

const std::vector<std::pair<std::string, std::string>> kKeys{
    {"degree", "polynomial degree N"},
    {"elements", "elements per direction, K or Kx,Ky,Kz"},
    {"domain-length", "periodic box edge length"},
    {"motion", "static | standing_wave"},
    {"motion-amplitude", "mesh displacement amplitude relative to the box"},
    {"ngeo", "geometry degree (clamped to N)"},
    {"gamma", "ratio of specific heats"},
    {"mu", "dynamic viscosity"},
    {"prandtl", "Prandtl number"},
    {"gas-constant", "specific gas constant R"},
    {"volume-flux", "pi | kg | ktk | m_ktk | ra | ch | m_ch"},
    {"surface-flux", "two-point flux used at interfaces"},
    {"dissipation", "none | entropy_rusanov"},
    {"viscous", "true | false"},
    {"re", "Reynolds number; sets mu = 1/re and enables viscous terms"},
    {"mach", "reference Mach number (TGV background pressure)"},
    {"cfl", "CFL constant"},
    {"t-end", "final time"},
    {"dt-max", "upper bound on the time step (0 = none)"},
    {"sample-dt", "diagnostic sampling interval"},
    {"seed", "random seed for flux-check"},
    {"samples", "number of random state pairs for flux-check"},
    {"kind", "comma-separated flux kinds for flux-check"},
    {"levels", "comma-separated K values for convergence"},
    {"output", "CSV path, - for stdout"}};

struct Command {
    splitdg::Experiment experiment;
    CLI::App* app = nullptr;
    std::string config_file;
    std::map<std::string, std::string> values;
};

void add_options(Command& cmd) {
    cmd.app->add_option("--config", cmd.config_file, "key = value configuration file (flags win)");
    for (const auto& [k, help] : kKeys) cmd.app->add_option("--" + k, cmd.values[k], help);
}

splitdg::RunConfig resolve(const Command& cmd) {
    auto cfg = splitdg::default_config(cmd.experiment);
    if (!cmd.config_file.empty()) {
        for (const auto& [k, v] : splitdg::load_config_file(cmd.config_file)) {
            if (k == "experiment" && splitdg::parse_experiment(v) != cmd.experiment) {
                throw splitdg::ConfigError("config file experiment '" + v + "' does not match the subcommand");
            }
            splitdg::apply_setting(cfg, k, v);
        }
    }
    for (const auto& [k, help] : kKeys) {
        if (cmd.app->count("--" + k) > 0) splitdg::apply_setting(cfg, k, cmd.values.at(k));
    }
    splitdg::validate(cfg);
    return cfg;
}

std::unique_ptr<std::ostream> open_output(const std::string& path) {
    if (path == "-") return std::make_unique<std::ostream>(std::cout.rdbuf());
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw splitdg::ConfigError("cannot open output '" + path + "'");
    return f;
}

std::string scheme_label(const splitdg::RunConfig& c) {
    return std::string("volume_flux=") + std::string(splitdg::flux_name(c.volume_flux)) +
           " surface_flux=" + std::string(splitdg::flux_name(c.surface_flux)) +
           " dissipation=" + std::string(splitdg::dissipation_name(c.dissipation));
}

int cmd_convergence(const splitdg::RunConfig& cfg) {
    auto out = open_output(cfg.output);
    const auto rows = splitdg::run_convergence(cfg, [](const splitdg::ConvergenceRow& r) {
        std::cerr << "K=" << r.elements << "^3 h=" << r.h << " l2_rho=" << r.l2_rho << " steps=" << r.steps
                  << "\n";
    });
    splitdg::write_convergence_csv(*out, cfg, rows);
    return kExitOk;
}

int cmd_tgv(const splitdg::RunConfig& cfg) {
    auto out = open_output(cfg.output);
    splitdg::write_tgv_header(*out, cfg);
    splitdg::run_tgv(cfg, [&](const splitdg::DiagnosticsRecord& r) {
        splitdg::write_tgv_row(*out, r);
        out->flush();
    });
    return kExitOk;
}

int cmd_flux_check(const splitdg::RunConfig& cfg) {
    auto out = open_output(cfg.output);
    const auto rows = splitdg::run_flux_check(cfg);
    splitdg::write_flux_check_csv(*out, rows);
    int code = kExitOk;
    for (const auto& r : rows) {
        if (r.claimed && !r.pass) {
            std::cerr << "claimed predicate failed: " << splitdg::flux_name(r.kind) << " " << r.predicate
                      << " max=" << r.max_residual << "\n";
            code = kExitPredicate;
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split-form DG solver for the Euler and Navier-Stokes equations on moving meshes"};
    app.require_subcommand(1);
    std::vector<Command> cmds{
        {splitdg::Experiment::Convergence, app.add_subcommand("convergence", "manufactured-solution study")},
        {splitdg::Experiment::Tgv, app.add_subcommand("tgv", "Taylor-Green vortex diagnostics")},
        {splitdg::Experiment::FluxCheck, app.add_subcommand("flux-check", "two-point flux predicate report")}};
    for (auto& c : cmds) add_options(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    splitdg::RunConfig cfg;
    const Command* cmd = nullptr;
    for (const auto& c : cmds)
        if (c.app->parsed()) cmd = &c;
    try {
        cfg = resolve(*cmd);
    } catch (const std::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        switch (cfg.experiment) {
            case splitdg::Experiment::Convergence: return cmd_convergence(cfg);
            case splitdg::Experiment::Tgv: return cmd_tgv(cfg);
            case splitdg::Experiment::FluxCheck: return cmd_flux_check(cfg);
        }
    } catch (const splitdg::PositivityError& e) {
        std::cerr << "instability: " << e.what() << " [" << scheme_label(cfg) << "]\n";
        return kExitPositivity;
    } catch (const splitdg::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
