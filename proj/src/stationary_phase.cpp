#include "tunneldisp/stationary_phase.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tunneldisp/amplitudes.hpp"

namespace tunneldisp {

namespace {

double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = f(c1), f2 = f(c2);
    int iter = 0;
    while (hi - lo > tol) {
        if (++iter > 200)
            throw std::runtime_error("find_kmax: golden-section refinement did not converge; "
                                     "best iterate k = " + std::to_string(0.5 * (lo + hi)));
        if (f1 < f2) {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = f(c2);
        } else {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = f(c1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::pair<double, double> find_kmax(const CaseConfig& c, Branch branch) {
    const DerivedParams p = derive(c);
    const double k0 = c.k0, sk = p.sigma_k;
    // log of the k-marginal density times the amplitude magnitude
    const auto weight = [&](double k) {
        double mag;
        if (c.eta == 0.0) {
            mag = branch == Branch::Transmission ? 1.0 : 0.0;
        } else {
            const auto a = amplitude(k, c.eta, c.d, c.convention);
            mag = std::abs(branch == Branch::Transmission ? a.t : a.r);
        }
        return -(k - k0) * (k - k0) / (2.0 * sk * sk) + std::log(mag + 1e-300);
    };

    const double lo = std::max(k0 - 8.0 * sk, 1e-6 * k0);
    const double hi = k0 + 8.0 * sk;
    const int n = 20000;
    const double step = (hi - lo) / n;

    // Bracket every local maximum of the scan, then refine each.
    struct Mode {
        double k, logw;
    };
    std::vector<Mode> modes;
    double fm1 = weight(lo), f0 = weight(lo + step);
    for (int i = 2; i <= n; ++i) {
        const double fp1 = weight(lo + i * step);
        if (f0 >= fm1 && f0 > fp1) {
            const double a = lo + (i - 2) * step, b = lo + i * step;
            const double k = golden_max(weight, a, b, 1e-10 * k0);
            modes.push_back({k, weight(k)});
        }
        fm1 = f0;
        f0 = fp1;
    }
    if (modes.empty()) {
        // weight monotone over the window (can only happen at an endpoint)
        modes.push_back(weight(lo) > weight(hi) ? Mode{lo, weight(lo)} : Mode{hi, weight(hi)});
    }

    double best = modes.front().logw;
    for (const auto& m : modes) best = std::max(best, m.logw);
    // Near-degenerate modes (reflection at a transmission maximum is bimodal
    // around the |r| zero): take the largest-k one within factor 0.75.
    const double cutoff = best + std::log(0.75);
    double k_max = modes.front().k;
    for (const auto& m : modes)
        if (m.logw >= cutoff && m.k > k_max) k_max = m.k;

    return {p.K0, k_max};
}

SPPrediction predict(const CaseConfig& c, Branch branch) {
    const auto [K_max, k_max] = find_kmax(c, branch);
    const double alpha = c.alpha, beta = 1.0 - c.alpha;
    const double dphi =
        c.eta == 0.0 ? (c.convention == Convention::Paper ? c.d : 0.0)
                     : phase_derivative(k_max, c.eta, c.d, c.convention);
    SPPrediction out;
    out.branch = branch;
    out.K_max = K_max;
    out.k_max = k_max;
    const double vcm = alpha * beta * K_max / c.k0;
    if (branch == Branch::Transmission) {
        out.dxb = alpha * dphi;
        out.dxp = -beta * dphi;
        out.vb = vcm - alpha * k_max / c.k0;
        out.vp = vcm + beta * k_max / c.k0;
    } else {
        out.dxb = -alpha * dphi;
        out.dxp = beta * dphi;
        out.vb = vcm + alpha * k_max / c.k0;
        out.vp = vcm - beta * k_max / c.k0;
    }
    return out;
}

} // namespace tunneldisp
