// radiance: motion-induced vacuum radiation simulator (1D mirrors and
// cavities): dissipative forces, emitted energy-density pulse trains,
// photon-number spectra and an experiment-scale planner.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <numbers>
#include <string>

#include "radiance/crosscheck.hpp"
#include "radiance/parallel.hpp"
#include "radiance/planner.hpp"
#include "radiance/runner.hpp"
#include "radiance/scenario.hpp"

int main(int argc, char** argv) {
    using namespace radiance;

    CLI::App app{"radiance: moving-mirror vacuum radiation simulator"};
    app.set_version_flag("--version", std::string(kVersion));

    std::size_t threads = 0;
    std::string out_dir = ".";
    bool quiet = false;
    app.add_option("--threads", threads, "worker threads (RADIANCE_THREADS overrides)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_flag("--quiet", quiet, "suppress progress output");

    std::string scenario_path;
    CLI::App* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();

    std::string suite;
    CLI::App* crosscheck = app.add_subcommand("crosscheck", "run a verification suite");
    std::string suites_help = "suite name (";
    for (const auto& name : crosscheck_suites())
        suites_help += name + " ";
    suites_help.back() = ')';
    crosscheck->add_option("suite", suite, suites_help)->required();

    CLI::App* plan_cmd = app.add_subcommand("plan", "experiment-scale feasibility numbers");
    double plan_finesse = 0.0, plan_omega = 0.0, plan_velocity = 0.0, plan_temperature = 0.0;
    double plan_optical = 0.0;
    bool plan_resonant = false;
    plan_cmd->add_option("--finesse", plan_finesse, "cavity finesse")->required();
    plan_cmd->add_option("--omega", plan_omega, "mechanical angular frequency [rad/s]")
        ->required();
    plan_cmd->add_option("--velocity", plan_velocity, "peak mirror velocity [m/s]")->required();
    plan_cmd->add_option("--temperature", plan_temperature, "field temperature [K]")->required();
    plan_cmd->add_option("--optical-omega", plan_optical,
                         "optical line for the thermal check [rad/s] (default: --omega)");
    plan_cmd->add_flag("--resonant", plan_resonant,
                       "assert the drive sits on an odd multiple of pi/tau");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    if (threads > 0)
        set_default_thread_count(threads);

    try {
        if (*run) {
            const Scenario scenario = load_scenario(scenario_path);
            const RunResult result = run_scenario(scenario, out_dir, quiet);
            return result.checks_passed ? 0 : 1;
        }
        if (*crosscheck) {
            const CheckReport report = run_crosscheck(suite);
            std::fputs(format_report(report).c_str(), stdout);
            return report.all_pass() ? 0 : 1;
        }
        if (*plan_cmd) {
            const ExperimentPlan result =
                plan(plan_finesse, plan_omega, plan_velocity, plan_temperature,
                     UnitSystem::si(), plan_optical, plan_resonant);
            std::printf("finesse              %.6g\n", result.finesse);
            std::printf("mech omega [rad/s]   %.6g\n", result.mech_omega);
            std::printf("peak velocity [m/s]  %.6g\n", result.peak_velocity);
            std::printf("eta                  %.6g\n", result.eta);
            std::printf("amplitude [m]        %.6g\n", result.amplitude);
            std::printf("acceleration [m/s^2] %.6g\n", result.acceleration);
            std::printf("photon rate [1/s]    %.6g\n", result.photon_rate);
            std::printf("thermal occupation   %.6g\n", result.thermal_occupation);
            std::printf("vacuum ok            %s\n", result.vacuum_ok ? "yes" : "no");
            for (const auto& warning : result.warnings)
                std::printf("warning: %s\n", warning.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    }
    return 0;
}
