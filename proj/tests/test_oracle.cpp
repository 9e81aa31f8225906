#include <cmath>
#include <complex>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tunneldisp/frame.hpp"
#include "tunneldisp/initial_state.hpp"
#include "tunneldisp/oracle.hpp"

using namespace tunneldisp;
using tunneldisp::testing::small_case;

TEST_CASE("free packet reduces to the initial wavefunction at tau = 0") {
    const CaseConfig c = small_case();
    for (double X : {-0.4, -1.0 / 3.0, -0.2}) {
        for (double x : {-1.5, -1.0, -0.6}) {
            CHECK(std::abs(free_packet(c, X, x, 0.0) - initial_wavefunction(c, X, x)) < 1e-12);
        }
    }
}

TEST_CASE("free packet moves ballistically and disperses per particle") {
    const CaseConfig c = small_case();
    const FrameTransform fr(c.alpha);
    const double tau = 6.0;

    // Centroid: projectile at xp0 + tau, barrier frozen at xb0; the local
    // maximum of |Psi| sits there.
    const double xp_c = c.xp0 + tau, xb_c = c.xb0;
    const auto at = [&](double xp, double xb) {
        const auto [X, x] = fr.lab_to_com(xp, xb);
        return std::abs(free_packet(c, X, x, tau));
    };
    const double peak = at(xp_c, xb_c);
    for (double eps : {-0.02, 0.02}) {
        CHECK(peak > at(xp_c + eps, xb_c));
        CHECK(peak > at(xp_c, xb_c + eps));
    }

    // Spread law along the barrier coordinate: with hbar/m_b = alpha/k0 the
    // density is Gaussian with sigma(tau)^2 = sigma^2 + (sigma_kb alpha tau / k0)^2.
    const DerivedParams p = derive(c);
    const double a = c.alpha / c.k0;
    const double var_tau = c.sigma_xb * c.sigma_xb +
                           std::pow(p.sigma_kb * a * tau, 2.0);
    const double s = 0.3;
    const double ratio = std::pow(at(xp_c, xb_c + s) / peak, 2.0);
    CHECK(ratio == doctest::Approx(std::exp(-s * s / (2.0 * var_tau))).epsilon(1e-10));

    // Norm is conserved: check the peak density decays exactly as the product
    // of the two width factors.
    const double var_p = c.sigma_xp * c.sigma_xp +
                         std::pow(p.sigma_kp * ((1.0 - c.alpha) / c.k0) * tau, 2.0);
    const double expected_peak2 =
        1.0 / (2.0 * M_PI * std::sqrt(var_p * var_tau));
    CHECK(peak * peak == doctest::Approx(expected_peak2).epsilon(1e-10));
}

TEST_CASE("direct quadrature agrees with the closed free form when eta = 0") {
    CaseConfig c = small_case();
    c.eta = 0.0;
    c.d = 0.0;
    c.convention = Convention::Global;
    const FrameTransform fr(c.alpha);
    const double tau = 4.0;
    for (double xp : {2.6, 3.0, 3.4}) {
        const auto [X, x] = fr.lab_to_com(xp, 0.05);
        const auto q = direct_eval(c, X, x, tau);
        const auto f = free_packet(c, X, x, tau);
        // The quadrature integrates the +-8 sigma / k > 0 truncated spectrum,
        // so agreement is limited by the ~1e-8 spectral tail.
        CHECK(std::abs(q - f) < 1e-7);
    }
}

TEST_CASE("direct quadrature rejects points inside the interaction gap") {
    const CaseConfig c = small_case();
    CHECK_THROWS_AS(direct_eval(c, 0.0, 0.0, 1.0), std::invalid_argument);
}
