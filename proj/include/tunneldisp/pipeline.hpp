#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tunneldisp/analysis.hpp"
#include "tunneldisp/stationary_phase.hpp"

namespace tunneldisp {

/// Invalid or ill-posed configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::string out_dir;
    std::string case_label = "custom";
    std::vector<double> snapshot_taus; // extra |Psi|^2 dumps
};

/// Everything the experiment produces for one case.
struct CaseResult {
    std::string label;
    CaseConfig config;
    DerivedParams derived;
    BranchTrace trace;
    std::vector<BranchKinematics> numerical;  // branch T, branch R
    std::vector<SPPrediction> predicted;      // branch T, branch R
    double T_mean = 0.0;   // fit-window mean of T(tau)  (the "T(%)" figure)
    double T_spread = 0.0; // max-min of T(tau) over the window
    double norm_min = 0.0; // min of T+R over the window
};

/// Runs one case end to end: validate -> coefficients -> snapshots over the
/// fit window -> kinematics fit -> stationary-phase predictions. Throws
/// ConfigError when validate() reports violations, AliasingError when the
/// fit window (or a requested snapshot) reaches tau_max. When options is
/// given, artifacts are written while the snapshots stream (manifest.json,
/// norms.csv, trace.csv, kinematics.csv, tk_curve.csv, density dumps).
CaseResult run_case(const CaseConfig& config, const std::string& label,
                    const std::optional<RunOptions>& options = std::nullopt);

/// Compares a run directory against the bundled expected values
/// (per-case displacement/velocity/transmission tables) and prints a
/// deterministic pass/fail summary. Returns 0 when every check for every
/// case present passes, 1 when a tolerance fails, 2 when inputs are missing.
int report(const std::string& out_dir, std::ostream& out);

} // namespace tunneldisp
