#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tunneldisp/config.hpp"

namespace tunneldisp {

/// Square spectral/spatial grid descriptor. Spatial samples are
/// x_j = j*L/N - L/2; spectral samples use the standard wrap-around order
/// dk * {0, 1, ..., N/2-1, -N/2, ..., -1}.
struct SpectralGrid {
    double L = 100.0;
    std::int64_t N = 4096;

    double dk() const { return 2.0 * M_PI / L; }
    double dx() const { return L / static_cast<double>(N); }
    /// Signed frequency of wrap-around bin i (same convention on both axes).
    double freq(std::int64_t i) const {
        return dk() * static_cast<double>(i < N / 2 ? i : i - N);
    }
    /// Bin index of the signed frequency nearest to kappa (wrap-around).
    std::int64_t bin(double kappa) const;
    /// Spatial coordinate of sample j.
    double coord(std::int64_t j) const { return dx() * static_cast<double>(j) - L / 2.0; }

    bool operator==(const SpectralGrid&) const = default;
};

/// Spectral coefficients C(K_i, k_j) of the initial two-particle Gaussian,
/// stored row-major as values[i*N + j] (K along rows, k contiguous).
///
/// C(K,k) = A exp( -(k_p-k_p0)^2/(4 s_kp^2) - k_b^2/(4 s_kb^2)
///                 - i k_p x_p0 - i k_b x_b0 ),
/// with (k_p,k_b) the lab wavenumbers of (K,k) and A = sqrt(8 pi s_xp s_xb),
/// which makes sum |C|^2 dK dk / (2 pi)^2 = 1 (unit-norm reconstruction).
/// Entries with k <= 0 are zero (right-mover eigenbasis), as are entries
/// outside the +-8 sigma windows around (K0, k0).
struct CoefficientField {
    SpectralGrid grid;
    CaseConfig config;
    DerivedParams derived;
    std::vector<std::complex<double>> values;

    /// Inclusive bin ranges [first,last] of the nonzero k columns and K rows
    /// (positive-k window only; both are single contiguous index blocks
    /// because the windows never straddle the Nyquist wrap).
    std::int64_t k_first = 0, k_last = -1;
    std::int64_t K_first = 0, K_last = -1;

    std::complex<double>& at(std::int64_t i, std::int64_t j) { return values[i * grid.N + j]; }
    const std::complex<double>& at(std::int64_t i, std::int64_t j) const {
        return values[i * grid.N + j];
    }
};

/// Closed-form evaluation of C at arbitrary (K, k), including the window /
/// k>0 truncation applied on the grid (so quadrature oracles see the same
/// function the evolver sums).
std::complex<double> coefficient(const CaseConfig& config, const DerivedParams& derived,
                                 double K, double k);

/// Builds the coefficient field on the grid implied by config (L, N).
/// Throws std::invalid_argument when the grid undersamples the packet
/// (spacing coarser than sigma_k/4).
CoefficientField coefficient_field(const CaseConfig& config);

/// Weight of the dropped left-mover components:
/// (sum_{k>0} |C(K,-k)|^2) / (sum_{k>0} |C(K,k)|^2), evaluated from the
/// closed form on the grid. ~e^{-2 k0^2/sigma_k^2}; underflows to 0 for the
/// presets.
double left_mover_diagnostic(const CoefficientField& field);

/// Closed-form initial wave packet (product of two lab-frame Gaussians)
/// evaluated at CoM coordinates: Psi0(X,x) = psi_p(x_p) psi_b(x_b).
std::complex<double> initial_wavefunction(const CaseConfig& config, double X, double x);

} // namespace tunneldisp
