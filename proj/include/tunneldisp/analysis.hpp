#pragma once

#include <vector>

#include "tunneldisp/evolver.hpp"

namespace tunneldisp {

/// Branch probabilities at one time: T over x > d/2, R over x < -d/2.
struct BranchNorms {
    double T;
    double R;
};

/// Conditional mean lab-frame positions per branch, computed on the CoM grid
/// with weights x_b = X - alpha*x, x_p = X + beta*x (no resampling).
/// A branch whose norm is below the threshold is marked unavailable.
struct ConditionalMeans {
    double xb_T = 0.0, xb_R = 0.0;
    double xp_T = 0.0, xp_R = 0.0;
    bool T_available = false, R_available = false;
};

/// Time series of branch norms and conditional means over the fit window.
struct BranchTrace {
    std::vector<double> taus;
    std::vector<double> T_norm, R_norm;
    std::vector<double> xb_T, xb_R, xp_T, xp_R;
};

/// Displacement/velocity of both particles for one branch, either measured
/// (source "numerical", with least-squares fit diagnostics) or predicted
/// (source "stationary_phase").
struct BranchKinematics {
    Branch branch;
    std::string source;
    double dxb, vb;
    double dxp, vp;
    double fit_rms_b = 0.0, fit_rms_p = 0.0;
};

/// Marginal probability densities of the lab positions, rebinned from the
/// CoM grid into uniform bins of width L/N covering [-L, L).
struct Marginals {
    double x_lo;
    double bin_width;
    std::vector<double> P_p, P_b; // probability per bin (not density)
};

BranchNorms branch_norms(const WaveField& field);

ConditionalMeans conditional_means(const WaveField& field, double norm_threshold = 1e-6);

/// Appends one snapshot's observables to the trace.
void append_snapshot(BranchTrace& trace, const WaveField& field);

/// Ordinary least-squares line through the conditional means over the trace;
/// v = slope, displacement = intercept minus the (virtual) initial position:
/// tunneling measures against (xb0, xp0), reflection against the virtual
/// positions x_b,v = 2 alpha xp0 + (beta-alpha) xb0 and
/// x_p,v = (alpha-beta) xp0 + 2 beta xb0.
/// Throws std::invalid_argument for fewer than 5 samples.
std::vector<BranchKinematics> extract_kinematics(const BranchTrace& trace,
                                                 const CaseConfig& config);

Marginals marginals(const WaveField& field);

/// Interaction-time estimates: (dxb/(alpha*v0), dphi_t(k0)/v0).
std::pair<double, double> interaction_time(const BranchKinematics& tunneling,
                                           const CaseConfig& config);

/// Virtual initial positions seen by the backscattered branch.
double virtual_xb(const CaseConfig& config);
double virtual_xp(const CaseConfig& config);

/// Simple OLS helper (exposed for tests): returns {intercept, slope, rms}.
struct LineFit {
    double intercept, slope, rms;
};
LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y);

} // namespace tunneldisp
