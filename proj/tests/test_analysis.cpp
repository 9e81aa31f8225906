#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tunneldisp/analysis.hpp"
#include "tunneldisp/initial_state.hpp"

using namespace tunneldisp;
using tunneldisp::testing::small_case;

namespace {

// A synthetic field with two real Gaussian lobes of known weights and
// centers, one per branch, placed away from the gap.
WaveField synthetic_field(double wT, double xT, double XT, double wR, double xR, double XR) {
    WaveField f;
    f.grid = SpectralGrid{32.0, 256};
    f.config = CaseConfig{};
    f.config.L = 32.0;
    f.config.N = 256;
    f.config.d = 0.2;
    f.tau = 0.0;
    f.values.assign(256 * 256, 0.0);
    const double s = 0.8;
    const double cell = f.grid.dx() * f.grid.dx();
    for (std::int64_t m = 0; m < 256; ++m) {
        for (std::int64_t n = 0; n < 256; ++n) {
            const double X = f.grid.coord(m), x = f.grid.coord(n);
            if (std::abs(x) <= f.config.d / 2.0) continue;
            double dens = 0.0;
            if (x > 0.0)
                dens = wT / (2.0 * M_PI * s * s) *
                       std::exp(-((X - XT) * (X - XT) + (x - xT) * (x - xT)) / (2.0 * s * s));
            else
                dens = wR / (2.0 * M_PI * s * s) *
                       std::exp(-((X - XR) * (X - XR) + (x - xR) * (x - xR)) / (2.0 * s * s));
            f.at(m, n) = std::sqrt(dens);
        }
    }
    (void)cell;
    return f;
}

} // namespace

TEST_CASE("branch norms and conditional means on a synthetic two-lobe field") {
    // T lobe: weight 0.6 at (X, x) = (2, 6); R lobe: weight 0.4 at (1, -7).
    const WaveField f = synthetic_field(0.6, 6.0, 2.0, 0.4, -7.0, 1.0);
    const auto norms = branch_norms(f);
    CHECK(norms.T == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(norms.R == doctest::Approx(0.4).epsilon(1e-6));

    const double a = f.config.alpha, b = 1.0 - a;
    const auto means = conditional_means(f);
    REQUIRE(means.T_available);
    REQUIRE(means.R_available);
    // x_b = X - alpha x, x_p = X + beta x at the lobe centers.
    CHECK(means.xb_T == doctest::Approx(2.0 - a * 6.0).epsilon(1e-6));
    CHECK(means.xp_T == doctest::Approx(2.0 + b * 6.0).epsilon(1e-6));
    CHECK(means.xb_R == doctest::Approx(1.0 - a * (-7.0)).epsilon(1e-6));
    CHECK(means.xp_R == doctest::Approx(1.0 + b * (-7.0)).epsilon(1e-6));
}

TEST_CASE("conditional means flag starved branches") {
    const WaveField f = synthetic_field(1.0, 6.0, 2.0, 0.0, -7.0, 1.0);
    const auto means = conditional_means(f);
    CHECK(means.T_available);
    CHECK_FALSE(means.R_available);
}

TEST_CASE("marginals conserve probability and locate the lobes") {
    const WaveField f = synthetic_field(0.5, 6.0, 2.0, 0.5, -7.0, 1.0);
    const auto m = marginals(f);
    CHECK(m.bin_width == doctest::Approx(f.grid.dx()));
    double sum_p = 0.0, sum_b = 0.0;
    double mean_p = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < m.P_p.size(); ++i) {
        const double x = m.x_lo + (static_cast<double>(i) + 0.5) * m.bin_width;
        sum_p += m.P_p[i];
        sum_b += m.P_b[i];
        mean_p += m.P_p[i] * x;
        mean_b += m.P_b[i] * x;
    }
    CHECK(sum_p == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sum_b == doctest::Approx(1.0).epsilon(1e-6));
    const double a = f.config.alpha, b = 1.0 - a;
    // Mixture means of the two lobes mapped to lab coordinates. Estimating the
    // mean from bin centers quantizes each sample by up to half a bin.
    CHECK(std::abs(mean_p - (0.5 * (2.0 + b * 6.0) + 0.5 * (1.0 + b * (-7.0)))) <
          0.5 * m.bin_width);
    CHECK(std::abs(mean_b - (0.5 * (2.0 - a * 6.0) + 0.5 * (1.0 - a * (-7.0)))) <
          0.5 * m.bin_width);
}

TEST_CASE("line fit is exact on noiseless data and rejects short series") {
    const std::vector<double> t = {8.0, 8.5, 9.0, 9.5, 10.0, 10.5};
    std::vector<double> y;
    for (double ti : t) y.push_back(0.37 - 0.002 * ti);
    const LineFit fit = fit_line(t, y);
    CHECK(fit.intercept == doctest::Approx(0.37).epsilon(1e-12));
    CHECK(fit.slope == doctest::Approx(-0.002).epsilon(1e-10));
    CHECK(fit.rms < 1e-13);

    BranchTrace trace;
    trace.taus = {1.0, 2.0, 3.0, 4.0};
    trace.T_norm = trace.R_norm = {0.5, 0.5, 0.5, 0.5};
    trace.xb_T = trace.xb_R = trace.xp_T = trace.xp_R = {0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(extract_kinematics(trace, CaseConfig{}), std::invalid_argument);
}

TEST_CASE("kinematics extraction measures against initial and virtual origins") {
    CaseConfig c; // alpha = 1/3, xp0 = -1, xb0 = 0
    // Synthetic linear trajectories: tunneling barrier at xb0 + 0.02 + 0.001*tau,
    // reflected barrier at virtual_xb + 0.03 + 0.7*tau, etc.
    BranchTrace trace;
    for (int i = 0; i <= 10; ++i) {
        const double tau = 8.0 + 0.4 * i;
        trace.taus.push_back(tau);
        trace.T_norm.push_back(0.5);
        trace.R_norm.push_back(0.5);
        trace.xb_T.push_back(c.xb0 + 0.02 + 0.001 * tau);
        trace.xp_T.push_back(c.xp0 - 0.01 + 1.0 * tau);
        trace.xb_R.push_back(virtual_xb(c) + 0.03 + 0.7 * tau);
        trace.xp_R.push_back(virtual_xp(c) - 0.04 - 0.3 * tau);
    }
    const auto kin = extract_kinematics(trace, c);
    REQUIRE(kin.size() == 2);
    const auto& T = kin[0];
    const auto& R = kin[1];
    CHECK(T.branch == Branch::Transmission);
    CHECK(T.source == "numerical");
    CHECK(T.dxb == doctest::Approx(0.02).epsilon(1e-10));
    CHECK(T.vb == doctest::Approx(0.001).epsilon(1e-8));
    CHECK(T.dxp == doctest::Approx(-0.01).epsilon(1e-8));
    CHECK(T.vp == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(R.branch == Branch::Reflection);
    CHECK(R.dxb == doctest::Approx(0.03).epsilon(1e-8));
    CHECK(R.vb == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(R.dxp == doctest::Approx(-0.04).epsilon(1e-8));
    CHECK(R.fit_rms_b < 1e-12);
}

TEST_CASE("virtual initial positions") {
    CaseConfig c; // alpha = 1/3
    // x_b,v = 2 alpha xp0 + (beta - alpha) xb0; x_p,v = (alpha - beta) xp0 + 2 beta xb0.
    CHECK(virtual_xb(c) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(virtual_xp(c) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    c.alpha = 0.5;
    // Equal masses: the particles exactly swap ballistic roles.
    CHECK(virtual_xb(c) == doctest::Approx(c.xp0).epsilon(1e-12));
    CHECK(virtual_xp(c) == doctest::Approx(c.xb0).epsilon(1e-12));
}

TEST_CASE("interaction time estimates") {
    CaseConfig c = small_case();
    BranchKinematics kin;
    kin.branch = Branch::Transmission;
    kin.source = "numerical";
    kin.dxb = 0.02;
    const auto [from_dxb, from_phase] = interaction_time(kin, c);
    CHECK(from_dxb == doctest::Approx(0.02 / c.alpha));
    CHECK(from_phase == doctest::Approx(5.799494e-2).epsilon(1e-6));
}
