#include <random>

#include "doctest.h"
#include "tunneldisp/frame.hpp"

using tunneldisp::FrameTransform;

TEST_CASE("frame transforms round trip and are contragredient") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::uniform_real_distribution<double> ua(0.01, 0.99);

    for (int i = 0; i < 1000; ++i) {
        const FrameTransform f(ua(rng));
        const double xp = u(rng), xb = u(rng), kp = u(rng), kb = u(rng);

        const auto [X, x] = f.lab_to_com(xp, xb);
        const auto [xp2, xb2] = f.com_to_lab(X, x);
        CHECK(xp2 == doctest::Approx(xp).epsilon(1e-12));
        CHECK(xb2 == doctest::Approx(xb).epsilon(1e-12));

        const auto [K, k] = f.lab_to_com_wavenumbers(kp, kb);
        const auto [kp2, kb2] = f.com_to_lab_wavenumbers(K, k);
        CHECK(kp2 == doctest::Approx(kp).epsilon(1e-12));
        CHECK(kb2 == doctest::Approx(kb).epsilon(1e-12));

        // Phase invariance K*X + k*x == kp*xp + kb*xb.
        CHECK(K * X + k * x == doctest::Approx(kp * xp + kb * xb).epsilon(1e-11));
    }
}

TEST_CASE("frame transform fixed examples") {
    const FrameTransform f(1.0 / 3.0);
    const auto [X, x] = f.lab_to_com(-1.0, 0.0);
    CHECK(X == doctest::Approx(-1.0 / 3.0));
    CHECK(x == doctest::Approx(-1.0));
    const auto [K, k] = f.lab_to_com_wavenumbers(150.0, 0.0);
    CHECK(K == doctest::Approx(150.0));
    CHECK(k == doctest::Approx(100.0));
}
