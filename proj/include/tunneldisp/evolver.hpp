#pragma once

#include <stdexcept>

#include "tunneldisp/initial_state.hpp"

namespace tunneldisp {

/// Requested time at or beyond the aliasing threshold L^2 k0 / (2 pi N).
struct AliasingError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Two-particle wave function sampled on the (X, x) grid at one time.
/// values[m*N + n] = Psi(X_m, x_n) with X_m = m*dx - L/2, x_n = n*dx - L/2.
/// The gap |x| <= d/2 is identically zero (the eigenstates are not evaluated
/// inside the interaction region).
struct WaveField {
    SpectralGrid grid;
    CaseConfig config; // parameters the field was synthesized with
    double tau = 0.0;
    std::vector<std::complex<double>> values;

    std::complex<double>& at(std::int64_t m, std::int64_t n) { return values[m * grid.N + n]; }
    const std::complex<double>& at(std::int64_t m, std::int64_t n) const {
        return values[m * grid.N + n];
    }
};

/// Synthesizes Psi(X, x, tau) from the eigenstate expansion by two pruned 2D
/// inverse DFTs (incident+reflected share one spectrum: the reflected term is
/// reindexed to the empty k<0 bins). Dispersion omega = (alpha beta K^2 +
/// k^2)/(2 k0); continuous-transform normalization dK dk/(2 pi)^2.
///
/// eta/d/convention may differ from coeffs.config (e.g. the free limit
/// eta=0, d=0 synthesized from an interacting preset's packet); the values
/// actually used are recorded in the returned field's config.
WaveField evolve(const CoefficientField& coeffs, double eta, double d,
                 Convention convention, double tau);

/// Convenience overload using coeffs.config for the interaction parameters.
WaveField evolve(const CoefficientField& coeffs, double tau);

/// Writes |Psi|^2 as flat row-major float64 preceded by a 64-byte text header
/// ("tunneldisp-density N=<N> L=<L> tau=<tau> dtype=f8", space padded).
void write_density(const WaveField& field, const std::string& path);

} // namespace tunneldisp
