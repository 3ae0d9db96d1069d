#include "radiance/scenario.hpp"

#include <fstream>
#include <set>

#include "radiance/mirror.hpp"

namespace radiance {

namespace {

using nlohmann::json;

void require_object(const json& node, const std::string& context) {
    if (!node.is_object())
        throw SchemaError(context + " must be an object");
}

void reject_unknown_keys(const json& node, const std::string& context,
                         const std::set<std::string>& allowed) {
    for (const auto& item : node.items())
        if (!allowed.count(item.key()))
            throw SchemaError("unknown key \"" + item.key() + "\" in " + context);
}

double get_number(const json& node, const std::string& key, const std::string& context) {
    if (!node.contains(key))
        throw SchemaError("missing key \"" + key + "\" in " + context);
    if (!node.at(key).is_number())
        throw SchemaError("key \"" + key + "\" in " + context + " must be a number");
    return node.at(key).get<double>();
}

double get_number_or(const json& node, const std::string& key, const std::string& context,
                     double fallback) {
    if (!node.contains(key))
        return fallback;
    if (!node.at(key).is_number())
        throw SchemaError("key \"" + key + "\" in " + context + " must be a number");
    return node.at(key).get<double>();
}

std::string get_string(const json& node, const std::string& key, const std::string& context) {
    if (!node.contains(key))
        throw SchemaError("missing key \"" + key + "\" in " + context);
    if (!node.at(key).is_string())
        throw SchemaError("key \"" + key + "\" in " + context + " must be a string");
    return node.at(key).get<std::string>();
}

Trajectory parse_trajectory(const json& node, const std::string& context, double c) {
    require_object(node, context);
    const std::string kind = get_string(node, "kind", context);
    if (kind == "static") {
        reject_unknown_keys(node, context, {"kind", "q0"});
        return Trajectory::make_static(get_number_or(node, "q0", context, 0.0), c);
    }
    if (kind == "uniform-velocity") {
        reject_unknown_keys(node, context, {"kind", "q0", "v"});
        return Trajectory::uniform_velocity(get_number_or(node, "q0", context, 0.0),
                                            get_number(node, "v", context), c);
    }
    if (kind == "uniform-acceleration") {
        reject_unknown_keys(node, context, {"kind", "alpha", "t_center", "x_vertex"});
        return Trajectory::uniform_acceleration(get_number(node, "alpha", context),
                                                get_number_or(node, "t_center", context, 0.0),
                                                get_number_or(node, "x_vertex", context, 0.0), c);
    }
    if (kind == "sinusoid") {
        reject_unknown_keys(node, context, {"kind", "q0", "amplitude", "omega", "phase"});
        return Trajectory::sinusoid(get_number_or(node, "q0", context, 0.0),
                                    get_number(node, "amplitude", context),
                                    get_number(node, "omega", context),
                                    get_number_or(node, "phase", context, 0.0), c);
    }
    if (kind == "sampled") {
        reject_unknown_keys(node, context, {"kind", "t0", "dt", "values"});
        if (!node.contains("values") || !node.at("values").is_array())
            throw SchemaError("key \"values\" in " + context + " must be an array of numbers");
        std::vector<double> values;
        for (const auto& v : node.at("values")) {
            if (!v.is_number())
                throw SchemaError("key \"values\" in " + context + " must contain only numbers");
            values.push_back(v.get<double>());
        }
        return Trajectory::sampled(get_number(node, "t0", context),
                                   get_number(node, "dt", context), std::move(values), c);
    }
    throw SchemaError("unknown trajectory kind \"" + kind + "\" in " + context);
}

CavityConfig parse_cavity(const json& node, const UnitSystem& units) {
    require_object(node, "cavity");
    reject_unknown_keys(node, "cavity", {"length", "finesse", "r1", "r2", "motion"});
    const double length = get_number(node, "length", "cavity");
    Mirror m1, m2;
    if (node.contains("finesse")) {
        if (node.contains("r1") || node.contains("r2"))
            throw SchemaError("cavity: give either \"finesse\" or \"r1\"/\"r2\", not both");
        m1 = m2 = mirror_for_finesse(get_number(node, "finesse", "cavity"));
    } else {
        m1 = Mirror::from_reflectivity(get_number(node, "r1", "cavity"));
        m2 = Mirror::from_reflectivity(get_number(node, "r2", "cavity"));
    }
    if (!node.contains("motion"))
        throw SchemaError("missing key \"motion\" in cavity");
    Trajectory motion = parse_trajectory(node.at("motion"), "cavity.motion", units.c);
    return CavityConfig(m1, m2, length, std::move(motion), units);
}

}  // namespace

Scenario parse_scenario(const json& doc) {
    require_object(doc, "scenario");
    reject_unknown_keys(doc, "scenario",
                        {"schema", "name", "mode", "units", "trajectory", "cavity", "grid",
                         "window", "spectrum", "paths", "epsilon_split", "temperature", "plan",
                         "crosscheck", "output"});
    if (!doc.contains("schema") || !doc.at("schema").is_number_integer() ||
        doc.at("schema").get<int>() != 1)
        throw SchemaError("scenario requires \"schema\": 1");

    Scenario s;
    s.raw = doc;
    s.name = get_string(doc, "name", "scenario");
    s.mode = get_string(doc, "mode", "scenario");
    const std::set<std::string> modes = {"force",    "single-mirror-flux", "cavity-energy",
                                         "spectrum", "plan",               "crosscheck"};
    if (!modes.count(s.mode))
        throw SchemaError("unknown mode \"" + s.mode + "\" in scenario");

    if (doc.contains("units")) {
        const std::string units = get_string(doc, "units", "scenario");
        if (units == "natural")
            s.units = UnitSystem::natural();
        else if (units == "si")
            s.units = UnitSystem::si();
        else
            throw SchemaError("unknown units preset \"" + units + "\" (natural | si)");
        s.units_name = units;
    }

    if (doc.contains("trajectory"))
        s.trajectory = parse_trajectory(doc.at("trajectory"), "trajectory", s.units.c);
    if (doc.contains("cavity"))
        s.cavity = parse_cavity(doc.at("cavity"), s.units);

    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        require_object(g, "grid");
        reject_unknown_keys(g, "grid", {"min", "max", "samples"});
        Scenario::Grid grid;
        grid.min = get_number(g, "min", "grid");
        grid.max = get_number(g, "max", "grid");
        grid.samples = static_cast<std::size_t>(get_number_or(g, "samples", "grid", 1024));
        if (!(grid.max > grid.min) || grid.samples < 8)
            throw SchemaError("grid requires max > min and samples >= 8");
        s.grid = grid;
    }

    if (doc.contains("window")) {
        const json& w = doc.at("window");
        require_object(w, "window");
        reject_unknown_keys(w, "window", {"periods", "samples", "shape", "taper"});
        Scenario::Window win;
        win.periods = static_cast<int>(get_number(w, "periods", "window"));
        win.samples = static_cast<std::size_t>(get_number(w, "samples", "window"));
        if (w.contains("shape")) {
            const std::string shape = get_string(w, "shape", "window");
            if (shape == "rectangular")
                win.shape = WindowShape::Rectangular;
            else if (shape == "tapered")
                win.shape = WindowShape::Tapered;
            else
                throw SchemaError("unknown window shape \"" + shape + "\"");
        }
        win.taper = get_number_or(w, "taper", "window", 0.1);
        s.window = win;
    }

    if (doc.contains("spectrum")) {
        const json& sp = doc.at("spectrum");
        require_object(sp, "spectrum");
        reject_unknown_keys(sp, "spectrum", {"omega_max", "omega_pair_max", "n_max", "residual"});
        s.spectrum_options.omega_max = get_number_or(sp, "omega_max", "spectrum", 0.0);
        s.spectrum_options.omega_pair_max = get_number_or(sp, "omega_pair_max", "spectrum", 0.0);
        s.spectrum_options.n_max =
            static_cast<int>(get_number_or(sp, "n_max", "spectrum", -1.0));
        s.spectrum_options.residual_target = get_number_or(sp, "residual", "spectrum", 1e-8);
    }

    if (doc.contains("paths")) {
        const json& p = doc.at("paths");
        require_object(p, "paths");
        reject_unknown_keys(p, "paths", {"n_max", "residual"});
        s.paths_n_max = static_cast<int>(get_number_or(p, "n_max", "paths", -1.0));
        s.paths_residual = get_number_or(p, "residual", "paths", 1e-10);
    }

    s.eps_split = get_number_or(doc, "epsilon_split", "scenario", 0.0);

    if (doc.contains("temperature")) {
        const json& t = doc.at("temperature");
        require_object(t, "temperature");
        reject_unknown_keys(t, "temperature", {"T_field"});
        s.temperature = get_number(t, "T_field", "temperature");
        if (s.temperature < 0.0)
            throw PhysicsError("temperature.T_field must be >= 0");
    }

    if (doc.contains("plan")) {
        const json& p = doc.at("plan");
        require_object(p, "plan");
        reject_unknown_keys(
            p, "plan",
            {"finesse", "mech_omega", "velocity", "temperature", "optical_omega", "resonant"});
        Scenario::PlanParams plan;
        plan.finesse = get_number(p, "finesse", "plan");
        plan.mech_omega = get_number(p, "mech_omega", "plan");
        plan.velocity = get_number(p, "velocity", "plan");
        plan.temperature = get_number(p, "temperature", "plan");
        plan.optical_omega = get_number_or(p, "optical_omega", "plan", 0.0);
        if (p.contains("resonant")) {
            if (!p.at("resonant").is_boolean())
                throw SchemaError("key \"resonant\" in plan must be a boolean");
            plan.resonant = p.at("resonant").get<bool>();
        }
        s.plan = plan;
    }

    if (doc.contains("crosscheck")) {
        const json& c = doc.at("crosscheck");
        require_object(c, "crosscheck");
        reject_unknown_keys(c, "crosscheck", {"suite"});
        s.crosscheck_suite = get_string(c, "suite", "crosscheck");
    }

    s.output_basename = doc.contains("output") ? get_string(doc, "output", "scenario") : s.name;
    if (s.output_basename.empty())
        throw SchemaError("scenario needs a non-empty \"name\" or \"output\"");

    // Mode-specific requirements.
    if (s.mode == "force" || s.mode == "single-mirror-flux") {
        if (!s.trajectory)
            throw SchemaError("mode \"" + s.mode + "\" requires a \"trajectory\" section");
        if (!s.grid)
            throw SchemaError("mode \"" + s.mode + "\" requires a \"grid\" section");
    }
    if (s.mode == "cavity-energy") {
        if (!s.cavity)
            throw SchemaError("mode \"cavity-energy\" requires a \"cavity\" section");
        if (!s.grid)
            throw SchemaError("mode \"cavity-energy\" requires a \"grid\" section");
    }
    if (s.mode == "spectrum") {
        if (static_cast<bool>(s.trajectory) == static_cast<bool>(s.cavity))
            throw SchemaError(
                "mode \"spectrum\" requires exactly one of \"trajectory\" or \"cavity\"");
        if (!s.window)
            throw SchemaError("mode \"spectrum\" requires a \"window\" section");
        const Trajectory& motion = s.cavity ? s.cavity->motion() : *s.trajectory;
        if (motion.kind() != TrajectoryKind::Sinusoid)
            throw SchemaError("mode \"spectrum\" requires a sinusoid motion (the window spans "
                              "an integer number of mechanical periods)");
    }
    if (s.mode == "plan" && !s.plan)
        throw SchemaError("mode \"plan\" requires a \"plan\" section");
    if (s.mode == "crosscheck" && s.crosscheck_suite.empty())
        throw SchemaError("mode \"crosscheck\" requires a \"crosscheck\" section");

    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open scenario file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

std::uint64_t scenario_hash(const Scenario& scenario) {
    const std::string dump = scenario.raw.dump();  // nlohmann orders keys
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace radiance
