#include "radiance/runner.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "radiance/crosscheck.hpp"
#include "radiance/force.hpp"
#include "radiance/planner.hpp"
#include "radiance/radiation.hpp"
#include "radiance/raymap.hpp"
#include "radiance/spectrum.hpp"

namespace radiance {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Atomic text write: stage to <path>.tmp, then rename into place.
void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open output file " + tmp.string());
        out << content;
        if (!out.good())
            throw Error("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string csv_header(const Scenario& scenario, const std::string& columns) {
    std::ostringstream out;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, scenario_hash(scenario));
    out << "# " << kVersion << "\n";
    out << "# scenario: " << scenario.name << "\n";
    out << "# scenario_hash: " << hash << "\n";
    out << "# units: " << scenario.units_name << "\n";
    out << "# mode: " << scenario.mode << "\n";
    out << "# columns: " << columns << "\n";
    out << columns << "\n";
    return out.str();
}

std::vector<double> scenario_grid(const Scenario::Grid& grid) {
    std::vector<double> g(grid.samples);
    for (std::size_t i = 0; i < grid.samples; ++i)
        g[i] = grid.min + (grid.max - grid.min) * static_cast<double>(i) /
                              static_cast<double>(grid.samples - 1);
    return g;
}

MeasurementWindow build_window(const Scenario& scenario, const Trajectory& motion) {
    const double amp = motion.displacement_amplitude();
    if (amp <= 0.0)
        throw PhysicsError("spectrum window needs an oscillating source (amplitude > 0)");
    const double mech_period =
        2.0 * std::numbers::pi * amp / motion.peak_velocity();
    return MeasurementWindow::periods(scenario.window->periods, mech_period,
                                      scenario.window->samples, scenario.window->shape,
                                      scenario.window->taper);
}

json sidecar_common(const Scenario& scenario, const std::vector<std::string>& files) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, scenario_hash(scenario));
    json side;
    side["version"] = kVersion;
    side["scenario"] = scenario.raw;
    side["scenario_hash"] = hash;
    side["outputs"] = files;
    return side;
}

RunResult run_force(const Scenario& scenario, const fs::path& dir) {
    const auto grid = scenario_grid(*scenario.grid);
    const double theta = theta_from_temperature(scenario.temperature, scenario.units);
    const auto force = dissipative_force_time(*scenario.trajectory, theta, scenario.units, grid);

    std::ostringstream csv;
    csv << csv_header(scenario, "t,q,force");
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv << format_value(grid[i]) << "," << format_value(scenario.trajectory->position(grid[i]))
            << "," << format_value(force[i]) << "\n";

    const fs::path csv_path = dir / (scenario.output_basename + ".csv");
    write_atomic(csv_path, csv.str());

    RunResult result;
    result.files_written.push_back(csv_path.string());
    json side = sidecar_common(scenario, result.files_written);
    side["derived"]["theta"] = theta;
    const fs::path side_path = dir / (scenario.output_basename + ".json");
    write_atomic(side_path, side.dump(2) + "\n");
    result.files_written.push_back(side_path.string());
    return result;
}

RunResult run_flux(const Scenario& scenario, const fs::path& dir) {
    const auto grid = scenario_grid(*scenario.grid);
    FluxSeries right, left;
    json derived;
    if (scenario.mode == "single-mirror-flux") {
        right = flux_single_mirror(*scenario.trajectory, grid, scenario.units, Side::Right);
        left = flux_single_mirror(*scenario.trajectory, grid, scenario.units, Side::Left);
    } else {
        const CavityConfig& cav = *scenario.cavity;
        const int n_max = scenario.paths_n_max >= 0
                              ? scenario.paths_n_max
                              : default_n_max(cav, scenario.paths_residual);
        double eps = scenario.eps_split;
        if (eps <= 0.0) {
            const double amp = cav.motion().displacement_amplitude();
            eps = amp > 0.0 ? 2.0 * std::numbers::pi * amp / cav.motion().peak_velocity() / 200.0
                            : cav.tau() / 200.0;
        }
        const CavityEmission em = cavity_emission(cav, grid, n_max, eps);
        right = em.right;
        left = em.left;
        derived["n_max"] = n_max;
        derived["epsilon_split"] = eps;
        derived["finesse"] = cav.finesse();
        derived["eta"] = cav.eta();
        derived["tau"] = cav.tau();
    }

    std::ostringstream csv;
    csv << csv_header(scenario, "u,flux_right,flux_left,flux_total");
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv << format_value(grid[i]) << "," << format_value(right.flux[i]) << ","
            << format_value(left.flux[i]) << "," << format_value(right.flux[i] + left.flux[i])
            << "\n";

    const fs::path csv_path = dir / (scenario.output_basename + ".csv");
    write_atomic(csv_path, csv.str());

    RunResult result;
    result.files_written.push_back(csv_path.string());
    json side = sidecar_common(scenario, result.files_written);
    side["derived"] = derived;
    const fs::path side_path = dir / (scenario.output_basename + ".json");
    write_atomic(side_path, side.dump(2) + "\n");
    result.files_written.push_back(side_path.string());
    return result;
}

RunResult run_spectrum(const Scenario& scenario, const fs::path& dir) {
    const Trajectory& motion =
        scenario.cavity ? scenario.cavity->motion() : *scenario.trajectory;
    const MeasurementWindow win = build_window(scenario, motion);
    const SpectrumResult spec =
        scenario.cavity ? photon_spectrum(*scenario.cavity, win, scenario.spectrum_options)
                        : photon_spectrum(*scenario.trajectory, win, scenario.spectrum_options);

    std::ostringstream csv;
    csv << csv_header(scenario, "omega,dN_domega,comb_k,comb_N_k");
    for (std::size_t j = 0; j < spec.omega_grid.size(); ++j)
        csv << format_value(spec.omega_grid[j]) << "," << format_value(spec.density[j]) << ",,\n";
    for (const auto& line : spec.comb_lines)
        csv << format_value(line.omega) << ",," << line.k << "," << format_value(line.photons)
            << "\n";

    const fs::path csv_path = dir / (scenario.output_basename + ".csv");
    write_atomic(csv_path, csv.str());

    RunResult result;
    result.files_written.push_back(csv_path.string());
    json side = sidecar_common(scenario, result.files_written);
    side["derived"]["total_photons"] = spec.total;
    side["derived"]["window_T"] = win.T;
    side["derived"]["truncation_residual"] = spec.truncation_residual;
    if (scenario.cavity) {
        side["derived"]["tau"] = spec.tau;
        side["derived"]["finesse"] = scenario.cavity->finesse();
        side["derived"]["eta"] = scenario.cavity->eta();
    }
    const fs::path side_path = dir / (scenario.output_basename + ".json");
    write_atomic(side_path, side.dump(2) + "\n");
    result.files_written.push_back(side_path.string());
    return result;
}

RunResult run_plan(const Scenario& scenario, const fs::path& dir) {
    const auto& p = *scenario.plan;
    const ExperimentPlan plan_result =
        plan(p.finesse, p.mech_omega, p.velocity, p.temperature, scenario.units,
             p.optical_omega, p.resonant);

    std::ostringstream csv;
    csv << csv_header(scenario, "quantity,value");
    csv << "finesse," << format_value(plan_result.finesse) << "\n";
    csv << "mech_omega," << format_value(plan_result.mech_omega) << "\n";
    csv << "peak_velocity," << format_value(plan_result.peak_velocity) << "\n";
    csv << "eta," << format_value(plan_result.eta) << "\n";
    csv << "amplitude," << format_value(plan_result.amplitude) << "\n";
    csv << "acceleration," << format_value(plan_result.acceleration) << "\n";
    csv << "photon_rate," << format_value(plan_result.photon_rate) << "\n";
    csv << "thermal_occupation," << format_value(plan_result.thermal_occupation) << "\n";
    csv << "vacuum_ok," << (plan_result.vacuum_ok ? 1 : 0) << "\n";

    const fs::path csv_path = dir / (scenario.output_basename + ".csv");
    write_atomic(csv_path, csv.str());

    RunResult result;
    result.files_written.push_back(csv_path.string());
    json side = sidecar_common(scenario, result.files_written);
    side["derived"]["warnings"] = plan_result.warnings;
    const fs::path side_path = dir / (scenario.output_basename + ".json");
    write_atomic(side_path, side.dump(2) + "\n");
    result.files_written.push_back(side_path.string());
    return result;
}

RunResult run_crosscheck_mode(const Scenario& scenario, const fs::path& dir, bool quiet) {
    const CheckReport report = run_crosscheck(scenario.crosscheck_suite);
    const std::string text = format_report(report);
    if (!quiet)
        std::fputs(text.c_str(), stdout);

    std::ostringstream csv;
    csv << csv_header(scenario, "check,measured,lo,hi,pass");
    for (const auto& row : report.rows)
        csv << "\"" << row.name << "\"," << format_value(row.measured) << ","
            << format_value(row.lo) << "," << format_value(row.hi) << "," << (row.pass ? 1 : 0)
            << "\n";
    const fs::path csv_path = dir / (scenario.output_basename + ".csv");
    write_atomic(csv_path, csv.str());

    RunResult result;
    result.files_written.push_back(csv_path.string());
    result.checks_passed = report.all_pass();
    return result;
}

}  // namespace

RunResult run_scenario(const Scenario& scenario, const std::string& out_dir, bool quiet) {
    const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    fs::create_directories(dir);

    RunResult result;
    if (scenario.mode == "force")
        result = run_force(scenario, dir);
    else if (scenario.mode == "single-mirror-flux" || scenario.mode == "cavity-energy")
        result = run_flux(scenario, dir);
    else if (scenario.mode == "spectrum")
        result = run_spectrum(scenario, dir);
    else if (scenario.mode == "plan")
        result = run_plan(scenario, dir);
    else if (scenario.mode == "crosscheck")
        result = run_crosscheck_mode(scenario, dir, quiet);
    else
        throw SchemaError("unknown mode \"" + scenario.mode + "\"");

    if (!quiet)
        for (const auto& file : result.files_written)
            std::printf("wrote %s\n", file.c_str());
    return result;
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const SchemaError*>(&error))
        return 2;
    if (dynamic_cast<const PhysicsError*>(&error))
        return 3;
    if (dynamic_cast<const NumericsError*>(&error))
        return 4;
    return 1;
}

}  // namespace radiance
