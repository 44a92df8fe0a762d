#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "heatctl/config.hpp"
#include "heatctl/report.hpp"
#include "heatctl/tasks.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string csv_dir;
    std::optional<double> tol;
    std::optional<std::size_t> modes;
    std::optional<std::uint64_t> seed;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool config_required) {
    auto* c = cmd->add_option("--config", opts.config_path,
                              "Path to the scenario config (JSON)");
    if (config_required) c->required();
    cmd->add_option("--out", opts.out_path,
                    "Write the report JSON here instead of stdout");
    cmd->add_option("--csv", opts.csv_dir,
                    "Directory for trajectory CSV output");
    cmd->add_option("--tol", opts.tol,
                    "Absolute singular-value cutoff overriding the relative policy");
    cmd->add_option("--modes", opts.modes, "Override domain.modes");
    cmd->add_option("--seed", opts.seed, "Seed for randomized suites");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw heatctl::ConfigError("--config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(heatctl::ScenarioConfig cfg, const CommonOpts& opts) {
    if (opts.tol) cfg.rank_absolute = *opts.tol;
    if (opts.modes) cfg.domain.modes = *opts.modes;
    if (opts.seed) cfg.seed = *opts.seed;

    const heatctl::TaskOutcome outcome = heatctl::run_task(cfg);

    const std::string text = outcome.report.to_string();
    if (opts.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.out_path);
        if (!out)
            throw heatctl::ConfigError("--out",
                                       "cannot write '" + opts.out_path + "'");
        out << text;
    }
    if (!opts.csv_dir.empty() && outcome.trajectory_csv) {
        std::filesystem::create_directories(opts.csv_dir);
        const auto path = std::filesystem::path(opts.csv_dir) / "trajectory.csv";
        std::ofstream csv(path);
        if (!csv)
            throw heatctl::ConfigError("--csv",
                                       "cannot write '" + path.string() + "'");
        csv << *outcome.trajectory_csv;
    }
    if (cfg.task == heatctl::Task::reproduce && !outcome.reproduce_ok) {
        std::cerr << "reproduce: at least one assertion failed" << std::endl;
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controllability toolbox for impulse-controlled coupled heat "
                 "equations: rank tests, critical impulse windows, spectral "
                 "simulation, and minimum-norm steering"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* help;
        heatctl::Task task;
        bool needs_config;
    };
    const SubSpec subs[] = {
        {"analyze", "Rank tests, critical window, and sampled-instant ranks",
         heatctl::Task::analyze, true},
        {"simulate", "Run the impulse system and record the trajectory",
         heatctl::Task::simulate, true},
        {"steer-approx", "Minimum-norm approximate steering to a target state",
         heatctl::Task::steer_approx, true},
        {"steer-null", "Explicit null control (control region = whole domain)",
         heatctl::Task::steer_null, true},
        {"steer-ode", "Minimum-norm impulse steering of the coupling ODE",
         heatctl::Task::steer_ode, true},
        {"reproduce", "Run a named built-in scenario suite with assertions",
         heatctl::Task::reproduce, false},
    };

    CommonOpts opts;
    std::string reproduce_name;
    heatctl::RotationObstructionParams rparams;

    for (const auto& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        add_common_flags(cmd, opts, sub.needs_config);
        if (sub.task == heatctl::Task::reproduce) {
            cmd->add_option("name", reproduce_name,
                            "Scenario name (example-2.3 | example-5.2)");
            cmd->add_option("--a", rparams.a, "Rotation pair parameter a");
            cmd->add_option("--b", rparams.b, "Rotation pair parameter b");
            cmd->add_option("--c", rparams.c, "Input vector entry c");
            cmd->add_option("--d", rparams.d, "Input vector entry d");
            cmd->add_option("--T", rparams.horizon, "Horizon");
        }
    }

    CLI11_PARSE(app, argc, argv);

    try {
        heatctl::Task task = heatctl::Task::analyze;
        bool needs_config = true;
        for (const auto& sub : subs) {
            if (app.got_subcommand(sub.name)) {
                task = sub.task;
                needs_config = sub.needs_config;
                break;
            }
        }

        heatctl::ScenarioConfig cfg;
        if (!opts.config_path.empty()) {
            cfg = heatctl::parse_config_text(read_file(opts.config_path));
        } else if (needs_config) {
            throw heatctl::ConfigError("--config", "required for this subcommand");
        } else {
            cfg.task = heatctl::Task::reproduce;
            cfg.reproduce_params = rparams;
            if (opts.modes) cfg.reproduce_params.modes = *opts.modes;
        }
        if (task == heatctl::Task::reproduce && !reproduce_name.empty())
            cfg.reproduce_name = reproduce_name;
        if (cfg.task != task)
            throw heatctl::ConfigError(
                "task", "config says '" + heatctl::task_name(cfg.task) +
                            "' but the subcommand is '" + heatctl::task_name(task) +
                            "'");
        if (cfg.task == heatctl::Task::reproduce && cfg.reproduce_name.empty())
            throw heatctl::ConfigError("reproduce.name",
                                       "give a scenario name (example-2.3 | "
                                       "example-5.2)");
        return run(std::move(cfg), opts);
    } catch (const heatctl::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << std::endl;
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
