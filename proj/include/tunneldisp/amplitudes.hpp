#pragma once

#include <complex>
#include <string>

#include "tunneldisp/config.hpp"

namespace tunneldisp {

/// Reflection/transmission data of the resonant double-delta interaction
/// V(x) = V0 [delta(x+d/2) + delta(x-d/2)] at one relative wavenumber.
struct ScatterAmplitude {
    double k;               // relative wavenumber
    std::complex<double> r; // reflection amplitude
    std::complex<double> t; // transmission amplitude
    double phi_t;           // phase of t, in (-pi, pi]
    double phi_r;           // phase of r, in (-pi, pi]
    double dphi_t;          // d(phi_t)/dk, analytic
    double dphi_r;          // d(phi_r)/dk, analytic (equals dphi_t away from |r|=0)
};

/// Closed-form amplitudes. The dimensionless coupling is lambda = eta/k.
/// Throws std::invalid_argument for k <= 0 (the eigenbasis is k in (0,inf)).
ScatterAmplitude amplitude(double k, double eta, double d, Convention convention);

/// T(k) = |t_k|^2. Convention independent.
double transmission_probability(double k, double eta, double d);

/// d(phi_t)/dk via the analytic logarithmic derivative of the denominator;
/// no phase unwrapping involved. Paper-convention value = global value + d.
double phase_derivative(double k, double eta, double d, Convention convention);

/// dT/dk at fixed (eta, d), analytic.
double transmission_slope(double k, double eta, double d);

/// Feature of the transmission curve T(k) that the barrier width can be
/// tuned to place k0 on.
enum class TransmissionFeature {
    FirstMin,
    FirstMax,
    FirstRisingInflection,
    FirstFallingInflection,
};

TransmissionFeature feature_from_string(const std::string& s);
std::string to_string(TransmissionFeature f);

/// Smallest width d > 0 such that k0 sits on the requested feature of
/// k -> T(k; eta, d). Bracket scan over k0*d in (0, 2*pi], bisection to
/// |delta d| < 1e-10. Throws std::runtime_error when the feature does not
/// occur in the scan range.
double find_width(double eta, double k0, TransmissionFeature feature);

/// Writes a CSV of (k, T, phi_t, dphi_t) sampled uniformly on [k_lo, k_hi].
void write_tk_curve_csv(const std::string& path, double eta, double d,
                        Convention convention, double k_lo, double k_hi, int samples);

} // namespace tunneldisp
