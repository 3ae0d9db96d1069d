#pragma once

#include <string>
#include <vector>

namespace radiance {

/// One measured quantity checked against an inclusive interval.
struct CheckRow {
    std::string name;
    double measured = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;

    static CheckRow in_range(std::string name, double measured, double lo, double hi);
    static CheckRow below(std::string name, double measured, double hi);
};

struct CheckReport {
    std::string suite;
    std::vector<CheckRow> rows;
    bool all_pass() const;
};

namespace checks {

// Inertial and uniformly accelerated mirrors against the sinusoid flux scale.
CheckReport analytic_limits();
// Perturbative momentum flux against the dissipative-force form.
CheckReport force_matching();
// Frequency response against the analytic susceptibility at theta = 0 and 3.
CheckReport susceptibility_fft();
// Single-mirror photon number against the perturbative rate, calibration
// point plus re-runs at doubled amplitude and frequency.
CheckReport eq6_calibration();
// Resonant finesse enhancement and detuning suppression of the cavity.
CheckReport finesse_enhancement();
// Emission comb of the cavity at Omega = 5 pi / tau, eta = 0.9.
CheckReport comb_selection();
// Pulse peak/width/spacing trends across eta at fixed finesse.
CheckReport pulse_shaping();
// Path-sum vs homographic transfer functions, plus the radiated-energy vs
// photon-rate agreement between the two engines.
CheckReport engine_agreement();
// Experiment-scale feasibility numbers.
CheckReport planner_numbers();

}  // namespace checks

/// CLI crosscheck suites (subsets of the checks above).
std::vector<std::string> crosscheck_suites();
CheckReport run_crosscheck(const std::string& suite);  // SchemaError if unknown

/// Render a report as an aligned pass/fail table.
std::string format_report(const CheckReport& report);

}  // namespace radiance
