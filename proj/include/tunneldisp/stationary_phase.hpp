#pragma once

#include <utility>

#include "tunneldisp/config.hpp"

namespace tunneldisp {

/// Asymptotic (stationary-phase) prediction for one branch.
struct SPPrediction {
    Branch branch;
    double K_max, k_max; // maximizing wavenumbers
    double dxb, dxp;     // displacements
    double vb, vp;       // asymptotic velocities (units of v0)
};

/// Maximizing wavenumbers of the scattered packet.
///
/// K_max = K0: the CoM marginal of |C|^2 is unaffected by the scattering
/// amplitudes (they carry no K dependence). k_max maximizes the relative-
/// wavenumber marginal density times the amplitude magnitude,
/// rho(k)*|t_k| (branch T) or rho(k)*|r_k| (branch R) with
/// rho(k) = exp(-(k-k0)^2/(2 sigma_k^2)), over k0 +- 8 sigma_k; bracket scan
/// plus golden-section refinement to 1e-10*k0.
///
/// Near a transmission maximum |r| vanishes close to k0 and the reflection
/// weight is bimodal with nearly degenerate lobes; among local maxima within
/// a factor 0.75 of the global one, the largest-k lobe is taken (the faster
/// recoil branch).
std::pair<double, double> find_kmax(const CaseConfig& config, Branch branch);

/// Full prediction:
///   branch T: dxb =  alpha*dphi_t(k_max), dxp = -beta*dphi_t(k_max),
///             vb = alpha*beta*K_max/k0 - alpha*k_max/k0,
///             vp = alpha*beta*K_max/k0 + beta*k_max/k0;
///   branch R: dxb = -alpha*dphi_r(k'_max), dxp = +beta*dphi_r(k'_max),
///             velocities with k_max -> -k'_max.
SPPrediction predict(const CaseConfig& config, Branch branch);

} // namespace tunneldisp
