#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tunneldisp/stationary_phase.hpp"

using namespace tunneldisp;
using tunneldisp::testing::matches_sig_figs;

TEST_CASE("free limit: the packet maximum is undeflected") {
    CaseConfig c = preset("case2");
    c.eta = 0.0;
    c.d = 0.0;
    c.convention = Convention::Global;
    const auto [K, k] = find_kmax(c, Branch::Transmission);
    CHECK(K == doctest::Approx(derive(c).K0).epsilon(1e-12));
    CHECK(k == doctest::Approx(c.k0).epsilon(1e-8));
    const SPPrediction p = predict(c, Branch::Transmission);
    CHECK(std::abs(p.vb) < 1e-8);
    CHECK(p.vp == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(p.dxb) < 1e-12);
    CHECK(std::abs(p.dxp) < 1e-12);
}

TEST_CASE("transmission extrema pin k_max to k0; the barrier keeps no velocity") {
    for (const char* name : {"case1", "case2", "case3", "case4"}) {
        const CaseConfig c = preset(name);
        const auto [K, k] = find_kmax(c, Branch::Transmission);
        CHECK(K == doctest::Approx(derive(c).K0).epsilon(1e-12));
        // T(k) is stationary at k0, so the weighted maximum barely moves.
        CHECK(std::abs(k - c.k0) / c.k0 < 1e-3);
        const SPPrediction p = predict(c, Branch::Transmission);
        CHECK(std::abs(p.vb) < 1e-4);
    }
}

TEST_CASE("displacements obey the mass-factor ratio") {
    for (const char* name : {"case1", "case2", "case5", "case6"}) {
        const CaseConfig c = preset(name);
        const double beta = 1.0 - c.alpha;
        for (Branch b : {Branch::Transmission, Branch::Reflection}) {
            const SPPrediction p = predict(c, b);
            CHECK(p.dxp == doctest::Approx(-(beta / c.alpha) * p.dxb).epsilon(1e-12));
        }
    }
}

TEST_CASE("reflection recoil speed is close to 2 alpha") {
    for (const char* name : {"case1", "case2", "case3", "case4"}) {
        const CaseConfig c = preset(name);
        const SPPrediction p = predict(c, Branch::Reflection);
        // vb_R = alpha (K_max beta + k'_max) / k0 ~ 2 alpha.
        CHECK(p.vb == doctest::Approx(2.0 * c.alpha).epsilon(0.05));
        // Projectile recedes: vp_R = alpha - beta * k'_max/k0 < 0 here.
        CHECK(p.vp < 0.0);
    }
}

TEST_CASE("tunneling displacement table") {
    const struct {
        const char* name;
        double dxb, vb;
    } rows[] = {
        {"case1", 5.74e-4, 0.0},
        {"case2", 1.93e-2, 0.0},
        {"case3", 7.74e-4, 0.0},
        {"case4", 2.61e-2, 0.0},
        {"case5", 4.16e-2, -1.59e-3},
        {"case6", 4.65e-2, 1.32e-3},
    };
    for (const auto& r : rows) {
        const SPPrediction p = predict(preset(r.name), Branch::Transmission);
        CHECK_MESSAGE(matches_sig_figs(p.dxb, r.dxb, 3), r.name, " dxb=", p.dxb);
        if (r.vb == 0.0) {
            CHECK(std::abs(p.vb) < 1e-4);
        } else {
            CHECK_MESSAGE(matches_sig_figs(p.vb, r.vb, 3), r.name, " vb=", p.vb);
        }
    }
}

TEST_CASE("reflection displacement table") {
    const struct {
        const char* name;
        double dxb;
    } rows[] = {
        {"case1", -5.74e-4}, {"case2", -1.93e-2}, {"case3", -7.14e-4},
        {"case4", -2.45e-2}, {"case5", -3.93e-2}, {"case6", -4.11e-2},
    };
    for (const auto& r : rows) {
        const SPPrediction p = predict(preset(r.name), Branch::Reflection);
        CHECK_MESSAGE(matches_sig_figs(p.dxb, r.dxb, 3), r.name, " dxb=", p.dxb);
    }
}

TEST_CASE("barrier-at-a-minimum cases are antisymmetric between branches") {
    for (const char* name : {"case1", "case2"}) {
        const CaseConfig c = preset(name);
        const SPPrediction t = predict(c, Branch::Transmission);
        const SPPrediction r = predict(c, Branch::Reflection);
        CHECK(r.dxb == doctest::Approx(-t.dxb).epsilon(0.02));
    }
}

TEST_CASE("inflection cases skew k_max away from k0") {
    // Rising T(k): transmission favors k > k0, so the tunneling barrier
    // velocity is negative; falling T(k) gives the opposite sign.
    const SPPrediction rise = predict(preset("case5"), Branch::Transmission);
    CHECK(rise.k_max > preset("case5").k0);
    CHECK(rise.vb < 0.0);
    const SPPrediction fall = predict(preset("case6"), Branch::Transmission);
    CHECK(fall.k_max < preset("case6").k0);
    CHECK(fall.vb > 0.0);
}
