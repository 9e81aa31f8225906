#include "tunneldisp/initial_state.hpp"

#include <cmath>
#include <stdexcept>

#include "tunneldisp/frame.hpp"

namespace tunneldisp {

namespace {
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};
} // namespace

std::int64_t SpectralGrid::bin(double kappa) const {
    std::int64_t i = static_cast<std::int64_t>(std::llround(kappa / dk())) % N;
    if (i < 0) i += N;
    return i;
}

std::complex<double> coefficient(const CaseConfig& c, const DerivedParams& p,
                                 double K, double k) {
    if (k <= 0.0) return 0.0;
    const double kp0 = c.k0 / p.beta;
    const double K0 = p.K0;
    if (std::abs(K - K0) > 8.0 * p.sigma_K || std::abs(k - c.k0) > 8.0 * p.sigma_k)
        return 0.0;

    const FrameTransform frame(c.alpha);
    const auto [kp, kb] = frame.com_to_lab_wavenumbers(K, k);
    const double A = std::sqrt(8.0 * M_PI * c.sigma_xp * c.sigma_xb);
    const double qp = kp - kp0;
    const double qb = kb; // barrier at rest: k_b0 = 0
    const double mag = -qp * qp * c.sigma_xp * c.sigma_xp - qb * qb * c.sigma_xb * c.sigma_xb;
    return A * std::exp(mag) * std::exp(-I * (kp * c.xp0 + kb * c.xb0));
}

CoefficientField coefficient_field(const CaseConfig& c) {
    const DerivedParams p = derive(c);
    SpectralGrid grid{c.L, c.N};
    if (grid.dk() > p.sigma_k / 4.0)
        throw std::invalid_argument("grid spacing 2*pi/L coarser than sigma_k/4: "
                                    "spectral Gaussian would be undersampled");

    CoefficientField f;
    f.grid = grid;
    f.config = c;
    f.derived = p;
    f.values.assign(static_cast<std::size_t>(c.N) * c.N, 0.0);

    // Window bounds as signed bin indices (the windows stay well inside the
    // +-Nyquist range for any config that passes the sampling check).
    const auto lo_bin = [&](double kappa) {
        return static_cast<std::int64_t>(std::ceil(kappa / grid.dk()));
    };
    const auto hi_bin = [&](double kappa) {
        return static_cast<std::int64_t>(std::floor(kappa / grid.dk()));
    };
    std::int64_t ks = lo_bin(std::max(c.k0 - 8.0 * p.sigma_k, grid.dk() / 2.0));
    std::int64_t ke = hi_bin(c.k0 + 8.0 * p.sigma_k);
    std::int64_t Ks = lo_bin(p.K0 - 8.0 * p.sigma_K);
    std::int64_t Ke = hi_bin(p.K0 + 8.0 * p.sigma_K);
    const std::int64_t nyq = c.N / 2 - 1;
    ks = std::max<std::int64_t>(ks, 1); // k <= 0 is truncated, not an error
    if (ke > nyq || Ks < -c.N / 2 + 1 || Ke > nyq)
        throw std::invalid_argument(
            "packet spectral window exceeds the grid's Nyquist range "
            "(increase N or decrease L)");
    if (ks > ke)
        throw std::invalid_argument("packet carries no k > 0 support on this grid");

    for (std::int64_t si = Ks; si <= Ke; ++si) {
        const std::int64_t i = si >= 0 ? si : si + c.N;
        const double K = grid.dk() * static_cast<double>(si);
        for (std::int64_t j = ks; j <= ke; ++j) {
            const double k = grid.dk() * static_cast<double>(j);
            f.at(i, j) = coefficient(c, p, K, k);
        }
    }
    f.k_first = ks;
    f.k_last = ke;
    f.K_first = Ks;
    f.K_last = Ke;
    return f;
}

double left_mover_diagnostic(const CoefficientField& f) {
    const auto& c = f.config;
    const auto& p = f.derived;
    const FrameTransform frame(c.alpha);
    const double kp0 = c.k0 / p.beta;
    // Evaluate the unwindowed Gaussian magnitude so the ratio is meaningful
    // even where the grid field was truncated to zero.
    const auto density = [&](double K, double k) {
        const auto [kp, kb] = frame.com_to_lab_wavenumbers(K, k);
        const double qp = kp - kp0;
        const double e = -2.0 * (qp * qp * c.sigma_xp * c.sigma_xp +
                                 kb * kb * c.sigma_xb * c.sigma_xb);
        return std::exp(e);
    };
    double pos = 0.0, neg = 0.0;
    const auto& g = f.grid;
    for (std::int64_t si = -g.N / 2 + 1; si < g.N / 2; ++si) {
        const double K = g.dk() * static_cast<double>(si);
        for (std::int64_t j = 1; j < g.N / 2; ++j) {
            const double k = g.dk() * static_cast<double>(j);
            pos += density(K, k);
            neg += density(K, -k);
        }
    }
    return neg / pos;
}

std::complex<double> initial_wavefunction(const CaseConfig& c, double X, double x) {
    const FrameTransform frame(c.alpha);
    const auto [xp, xb] = frame.com_to_lab(X, x);
    const double kp0 = c.k0 / frame.beta;
    const auto gauss = [](double y, double y0, double sigma, double k00) {
        const double norm = std::pow(2.0 * M_PI * sigma * sigma, -0.25);
        return norm * std::exp(-(y - y0) * (y - y0) / (4.0 * sigma * sigma)) *
               std::exp(I * k00 * (y - y0));
    };
    return gauss(xp, c.xp0, c.sigma_xp, kp0) * gauss(xb, c.xb0, c.sigma_xb, 0.0);
}

} // namespace tunneldisp
