#pragma once

#include <complex>

#include "tunneldisp/config.hpp"

namespace tunneldisp {

/// Closed-form free evolution (eta = 0) of the initial packet. The CoM-frame
/// dispersion (alpha beta K^2 + k^2)/(2 k0) equals (beta k_p^2 + alpha
/// k_b^2)/(2 k0) in lab wavenumbers, so the packet stays a product of two 1D
/// dispersing Gaussians; this evaluates that product exactly.
std::complex<double> free_packet(const CaseConfig& config, double X, double x, double tau);

/// Brute-force evaluation of Psi(X, x, tau) by composite 16-point
/// Gauss-Legendre quadrature of the eigenstate expansion over the +-8 sigma
/// spectral windows (the same truncation the evolver applies), with the
/// region-appropriate eigenstate branch. Cells are doubled per axis until
/// successive estimates differ by < tol; throws std::runtime_error with the
/// last two estimates on non-convergence. Requires |x| > d/2.
std::complex<double> direct_eval(const CaseConfig& config, double X, double x, double tau,
                                 double tol = 1e-9);

} // namespace tunneldisp
