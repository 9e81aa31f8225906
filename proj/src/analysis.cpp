#include "tunneldisp/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "tunneldisp/amplitudes.hpp"

namespace tunneldisp {

namespace {

/// Accumulates probability and position-weighted sums over both half-planes
/// in one sweep. The gap |x| <= d/2 holds zeros, so no explicit exclusion is
/// needed beyond the branch split at x = 0.
struct BranchSums {
    double prob_T = 0.0, prob_R = 0.0;
    double X_T = 0.0, X_R = 0.0; // sum of X |Psi|^2
    double x_T = 0.0, x_R = 0.0; // sum of x |Psi|^2
};

BranchSums accumulate(const WaveField& f) {
    const auto& g = f.grid;
    BranchSums s;
    const double cell = g.dx() * g.dx();
    for (std::int64_t m = 0; m < g.N; ++m) {
        const double X = g.coord(m);
        double pT = 0.0, pR = 0.0, xT = 0.0, xR = 0.0;
        const std::complex<double>* row = &f.values[m * g.N];
        for (std::int64_t n = 0; n < g.N; ++n) {
            const double p = std::norm(row[n]);
            if (p == 0.0) continue;
            const double x = g.coord(n);
            if (x > 0.0) {
                pT += p;
                xT += p * x;
            } else {
                pR += p;
                xR += p * x;
            }
        }
        s.prob_T += cell * pT;
        s.prob_R += cell * pR;
        s.X_T += cell * pT * X;
        s.X_R += cell * pR * X;
        s.x_T += cell * xT;
        s.x_R += cell * xR;
    }
    return s;
}

} // namespace

BranchNorms branch_norms(const WaveField& field) {
    const auto s = accumulate(field);
    return {s.prob_T, s.prob_R};
}

ConditionalMeans conditional_means(const WaveField& field, double norm_threshold) {
    const auto s = accumulate(field);
    const double alpha = field.config.alpha;
    const double beta = 1.0 - alpha;
    ConditionalMeans m;
    if (s.prob_T > norm_threshold) {
        m.T_available = true;
        m.xb_T = (s.X_T - alpha * s.x_T) / s.prob_T;
        m.xp_T = (s.X_T + beta * s.x_T) / s.prob_T;
    }
    if (s.prob_R > norm_threshold) {
        m.R_available = true;
        m.xb_R = (s.X_R - alpha * s.x_R) / s.prob_R;
        m.xp_R = (s.X_R + beta * s.x_R) / s.prob_R;
    }
    return m;
}

void append_snapshot(BranchTrace& trace, const WaveField& field) {
    const auto s = accumulate(field);
    const double alpha = field.config.alpha;
    const double beta = 1.0 - alpha;
    trace.taus.push_back(field.tau);
    trace.T_norm.push_back(s.prob_T);
    trace.R_norm.push_back(s.prob_R);
    const double eps = 1e-300; // branches are never empty inside the fit window
    trace.xb_T.push_back((s.X_T - alpha * s.x_T) / (s.prob_T + eps));
    trace.xp_T.push_back((s.X_T + beta * s.x_T) / (s.prob_T + eps));
    trace.xb_R.push_back((s.X_R - alpha * s.x_R) / (s.prob_R + eps));
    trace.xp_R.push_back((s.X_R + beta * s.x_R) / (s.prob_R + eps));
}

LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 2)
        throw std::invalid_argument("fit_line needs >= 2 equally sized samples");
    const double n = static_cast<double>(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double det = n * stt - st * st;
    if (det == 0.0) throw std::invalid_argument("degenerate abscissae in fit_line");
    LineFit f;
    f.slope = (n * sty - st * sy) / det;
    f.intercept = (sy * stt - st * sty) / det;
    double ss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * t[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

double virtual_xb(const CaseConfig& c) {
    const double beta = 1.0 - c.alpha;
    return 2.0 * c.alpha * c.xp0 + (beta - c.alpha) * c.xb0;
}

double virtual_xp(const CaseConfig& c) {
    const double beta = 1.0 - c.alpha;
    return (c.alpha - beta) * c.xp0 + 2.0 * beta * c.xb0;
}

std::vector<BranchKinematics> extract_kinematics(const BranchTrace& trace,
                                                 const CaseConfig& config) {
    if (trace.taus.size() < 5)
        throw std::invalid_argument("extract_kinematics needs at least 5 trace samples");

    const auto fb_T = fit_line(trace.taus, trace.xb_T);
    const auto fp_T = fit_line(trace.taus, trace.xp_T);
    const auto fb_R = fit_line(trace.taus, trace.xb_R);
    const auto fp_R = fit_line(trace.taus, trace.xp_R);

    BranchKinematics T;
    T.branch = Branch::Transmission;
    T.source = "numerical";
    T.vb = fb_T.slope;
    T.vp = fp_T.slope;
    T.dxb = fb_T.intercept - config.xb0;
    T.dxp = fp_T.intercept - config.xp0;
    T.fit_rms_b = fb_T.rms;
    T.fit_rms_p = fp_T.rms;

    BranchKinematics R;
    R.branch = Branch::Reflection;
    R.source = "numerical";
    R.vb = fb_R.slope;
    R.vp = fp_R.slope;
    R.dxb = fb_R.intercept - virtual_xb(config);
    R.dxp = fp_R.intercept - virtual_xp(config);
    R.fit_rms_b = fb_R.rms;
    R.fit_rms_p = fp_R.rms;

    return {T, R};
}

Marginals marginals(const WaveField& field) {
    const auto& g = field.grid;
    const double alpha = field.config.alpha;
    const double beta = 1.0 - alpha;
    Marginals out;
    out.bin_width = g.dx();
    out.x_lo = -g.L;
    const std::size_t nbins = static_cast<std::size_t>(2 * g.N);
    out.P_p.assign(nbins, 0.0);
    out.P_b.assign(nbins, 0.0);
    const double cell = g.dx() * g.dx();
    for (std::int64_t m = 0; m < g.N; ++m) {
        const double X = g.coord(m);
        for (std::int64_t n = 0; n < g.N; ++n) {
            const double p = std::norm(field.at(m, n));
            if (p == 0.0) continue;
            const double x = g.coord(n);
            const double xp = X + beta * x;
            const double xb = X - alpha * x;
            const auto bin = [&](double y) {
                auto b = static_cast<std::int64_t>(std::floor((y - out.x_lo) / out.bin_width));
                return std::min<std::int64_t>(std::max<std::int64_t>(b, 0), 2 * g.N - 1);
            };
            out.P_p[bin(xp)] += cell * p;
            out.P_b[bin(xb)] += cell * p;
        }
    }
    return out;
}

std::pair<double, double> interaction_time(const BranchKinematics& tunneling,
                                           const CaseConfig& config) {
    const double dt_est = tunneling.dxb / config.alpha; // v0 = 1
    const double dt_phi = phase_derivative(config.k0, config.eta, config.d, config.convention);
    return {dt_est, dt_phi};
}

} // namespace tunneldisp
