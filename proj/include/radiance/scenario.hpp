#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "radiance/cavity.hpp"
#include "radiance/spectrum.hpp"
#include "radiance/trajectory.hpp"
#include "radiance/units.hpp"

namespace radiance {

/// Parsed scenario file (schema 1).  Validation is strict: unknown keys are
/// rejected with the offending key named, and every referenced physical
/// type re-checks its own invariants while being built.
struct Scenario {
    std::string name;
    std::string mode;  // force | single-mirror-flux | cavity-energy | spectrum | plan | crosscheck
    UnitSystem units = UnitSystem::natural();
    std::string units_name = "natural";

    std::optional<Trajectory> trajectory;
    std::optional<CavityConfig> cavity;

    struct Grid {
        double min = 0.0;
        double max = 1.0;
        std::size_t samples = 1024;
    };
    std::optional<Grid> grid;

    struct Window {
        int periods = 0;
        std::size_t samples = 0;
        WindowShape shape = WindowShape::Tapered;
        double taper = 0.1;
    };
    std::optional<Window> window;

    SpectrumOptions spectrum_options;
    int paths_n_max = -1;
    double paths_residual = 1e-10;
    double eps_split = 0.0;  // 0 = auto
    double temperature = 0.0;

    struct PlanParams {
        double finesse = 0.0;
        double mech_omega = 0.0;
        double velocity = 0.0;
        double temperature = 0.0;
        double optical_omega = 0.0;
        bool resonant = false;
    };
    std::optional<PlanParams> plan;

    std::string crosscheck_suite;
    std::string output_basename;

    nlohmann::json raw;  // canonical echo for hashing and the sidecar
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

/// FNV-1a 64 of the canonical (sorted-key) dump; identifies a scenario in
/// output headers.
std::uint64_t scenario_hash(const Scenario& scenario);

}  // namespace radiance
