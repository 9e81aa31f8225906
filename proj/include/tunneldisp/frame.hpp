#pragma once

#include <utility>

namespace tunneldisp {

/// Lab <-> center-of-mass coordinate and wavenumber maps for masses in the
/// ratio alpha : beta (alpha + beta = 1).
///
/// Positions:    X = alpha*xp + beta*xb,   x = xp - xb
/// Wavenumbers:  K = kp + kb,              k = beta*kp - alpha*kb
///
/// The position map has unit-magnitude Jacobian and the wavenumber map is its
/// contragredient: K*X + k*x == kp*xp + kb*xb identically.
struct FrameTransform {
    double alpha;
    double beta;

    explicit FrameTransform(double alpha_) : alpha(alpha_), beta(1.0 - alpha_) {}

    std::pair<double, double> lab_to_com(double xp, double xb) const {
        return {alpha * xp + beta * xb, xp - xb};
    }
    std::pair<double, double> com_to_lab(double X, double x) const {
        return {X + beta * x, X - alpha * x};
    }
    std::pair<double, double> lab_to_com_wavenumbers(double kp, double kb) const {
        return {kp + kb, beta * kp - alpha * kb};
    }
    std::pair<double, double> com_to_lab_wavenumbers(double K, double k) const {
        return {alpha * K + k, beta * K - k};
    }
};

} // namespace tunneldisp
