// relmachine: command-line front end for the SWAP machine model.
//
// Exit codes: 0 success, 1 verify failure, 2 invalid configuration,
// 3 numeric domain error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relmachine/commands.hpp"
#include "relmachine/verify.hpp"

namespace {

using relmachine::cli::RunConfig;
using relmachine::cli::RunReport;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::vector<std::string> overrides;
    std::string speeds;
    int grid = 0;
};

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--config", o.config_path, "key = value configuration file");
    sub->add_option("--out", o.out_path, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--set", o.overrides, "override a config key (key=value), repeatable");
    sub->add_option("--speeds", o.speeds, "qubit speeds as vA,vB");
    sub->add_option("--grid", o.grid, "number of sweep points (verify: random grid size)");
}

RunConfig build_config(const CommonOptions& o, bool grid_is_count) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : RunConfig::load(o.config_path);
    for (const auto& s : o.overrides) cfg.set_assignment(s);
    if (!o.speeds.empty()) {
        const auto comma = o.speeds.find(',');
        if (comma == std::string::npos) {
            throw relmachine::cli::ConfigError("--speeds expects vA,vB");
        }
        cfg.set("speed_A", o.speeds.substr(0, comma));
        cfg.set("speed_B", o.speeds.substr(comma + 1));
    }
    if (o.grid != 0) cfg.set(grid_is_count ? "count" : "grid", std::to_string(o.grid));
    return cfg;
}

void emit(const RunReport& report, const CommonOptions& o) {
    auto write = [&](std::ostream& os) {
        if (o.format == "json") {
            relmachine::cli::write_json(os, report);
        } else {
            relmachine::cli::write_csv(os, report);
        }
    };
    if (o.out_path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(o.out_path);
    if (!f) throw relmachine::cli::ConfigError("cannot open output file " + o.out_path);
    write(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit SWAP machine with inertially moving detectors"};
    app.require_subcommand(1);

    CommonOptions opts;
    bool inject_fault = false;
    std::uint64_t seed = relmachine::verify::Options{}.seed;

    auto* point = app.add_subcommand("point", "statistics and bounds at one operating point");
    auto* fig1 = app.add_subcommand("fig1", "noise-to-signal ratio vs TUR bounds along omega_B/omega_A");
    auto* fig2 = app.add_subcommand("fig2", "ratio R = Sigma * SNR along the dimensionless gaps");
    auto* fig3 = app.add_subcommand("fig3", "cooling power and COP at maximum figure of merit");
    auto* optimize = app.add_subcommand("optimize", "refrigerator figure-of-merit optimum");
    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    for (auto* sub : {point, fig1, fig2, fig3, optimize, verify}) add_common(sub, opts);
    verify->add_flag("--inject-fault", inject_fault, "flip the sign of the mean work (harness self-test)");
    verify->add_option("--seed", seed, "random grid seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            const RunConfig cfg = build_config(opts, false);
            cfg.require_known({"grid", "seed"}, "verify");
            relmachine::verify::Options vo;
            vo.grid = relmachine::cli::require_count(cfg, "grid", vo.grid, 1);
            vo.seed = static_cast<std::uint64_t>(cfg.number_or("seed", static_cast<double>(seed)));
            vo.inject_fault = inject_fault;
            const auto result = relmachine::verify::run(vo);
            relmachine::verify::print(std::cout, result);
            return result.passed() ? 0 : 1;
        }
        const RunConfig cfg = build_config(opts, true);
        RunReport report;
        if (point->parsed()) {
            report = relmachine::cli::cmd_point(cfg);
        } else if (fig1->parsed()) {
            report = relmachine::cli::cmd_sweep_fig1(cfg);
        } else if (fig2->parsed()) {
            report = relmachine::cli::cmd_sweep_fig2(cfg);
        } else if (fig3->parsed()) {
            report = relmachine::cli::cmd_refrigerator(cfg);
        } else {
            report = relmachine::cli::cmd_optimize(cfg);
        }
        emit(report, opts);
    } catch (const relmachine::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const relmachine::DomainError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const relmachine::ConvergenceError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
