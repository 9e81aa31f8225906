#include "tunneldisp/amplitudes.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace tunneldisp {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// Denominator of t_k in the paper convention and its k-derivative,
// with lambda = eta/k:
//   D(k) = (1 + 2 i lambda) e^{-ikd} + 2 i lambda^2 sin(kd)
struct Denominator {
    cplx D;
    cplx dD;
};

Denominator denominator(double k, double eta, double d) {
    const double lam = eta / k;
    const cplx e = std::exp(-I * k * d);
    const double s = std::sin(k * d);
    const double c = std::cos(k * d);
    Denominator out;
    out.D = (1.0 + 2.0 * I * lam) * e + 2.0 * I * lam * lam * s;
    out.dD = (-2.0 * I * eta / (k * k)) * e
           + (1.0 + 2.0 * I * lam) * (-I * d) * e
           + 2.0 * I * (-2.0 * eta * eta / (k * k * k) * s + lam * lam * d * c);
    return out;
}

void require_positive_k(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("amplitude requires k > 0");
}

} // namespace

ScatterAmplitude amplitude(double k, double eta, double d, Convention convention) {
    require_positive_k(k);
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (d < 0.0) throw std::invalid_argument("d must be >= 0");

    const auto [D, dD] = denominator(k, eta, d);
    const double lam = eta / k;
    const double s = std::sin(k * d);
    const double c = std::cos(k * d);

    cplx t = 1.0 / D;
    cplx r = 2.0 * lam * (c + lam * s) / (I * D);
    if (convention == Convention::Global) {
        const cplx e = std::exp(-I * k * d);
        t *= e;
        r *= e;
    }

    ScatterAmplitude a;
    a.k = k;
    a.t = t;
    a.r = r;
    a.phi_t = std::arg(t);
    a.phi_r = std::arg(r);
    a.dphi_t = phase_derivative(k, eta, d, convention);
    a.dphi_r = a.dphi_t; // symmetric potential: phases differ by a constant
    return a;
}

double transmission_probability(double k, double eta, double d) {
    require_positive_k(k);
    const auto [D, dD] = denominator(k, eta, d);
    (void)dD;
    return 1.0 / std::norm(D);
}

double phase_derivative(double k, double eta, double d, Convention convention) {
    require_positive_k(k);
    const auto [D, dD] = denominator(k, eta, d);
    const double paper = -std::imag(dD / D);
    return convention == Convention::Paper ? paper : paper - d;
}

double transmission_slope(double k, double eta, double d) {
    require_positive_k(k);
    const auto [D, dD] = denominator(k, eta, d);
    // T = 1/|D|^2  =>  dT/dk = -2 Re(dD * conj(D)) / |D|^4
    const double n = std::norm(D);
    return -2.0 * std::real(dD * std::conj(D)) / (n * n);
}

TransmissionFeature feature_from_string(const std::string& s) {
    if (s == "first_min") return TransmissionFeature::FirstMin;
    if (s == "first_max") return TransmissionFeature::FirstMax;
    if (s == "first_rising_inflection") return TransmissionFeature::FirstRisingInflection;
    if (s == "first_falling_inflection") return TransmissionFeature::FirstFallingInflection;
    throw std::invalid_argument("unknown transmission feature '" + s + "'");
}

std::string to_string(TransmissionFeature f) {
    switch (f) {
        case TransmissionFeature::FirstMin: return "first_min";
        case TransmissionFeature::FirstMax: return "first_max";
        case TransmissionFeature::FirstRisingInflection: return "first_rising_inflection";
        case TransmissionFeature::FirstFallingInflection: return "first_falling_inflection";
    }
    return "?";
}

namespace {

// Curvature of T in k at fixed d, by central difference of the analytic slope.
double transmission_curvature(double k, double eta, double d) {
    const double h = 1e-4 * k;
    return (transmission_slope(k + h, eta, d) - transmission_slope(k - h, eta, d)) / (2.0 * h);
}

double bisect(double lo, double hi, double flo, const auto& f) {
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double find_width(double eta, double k0, TransmissionFeature feature) {
    if (!(eta > 0.0) || !(k0 > 0.0))
        throw std::invalid_argument("find_width requires eta > 0 and k0 > 0");

    const bool want_extremum = feature == TransmissionFeature::FirstMin ||
                               feature == TransmissionFeature::FirstMax;
    const auto g = [&](double d) {
        return want_extremum ? transmission_slope(k0, eta, d)
                             : transmission_curvature(k0, eta, d);
    };
    const auto classified = [&](double d) {
        switch (feature) {
            case TransmissionFeature::FirstMin:
                return transmission_curvature(k0, eta, d) > 0.0;
            case TransmissionFeature::FirstMax:
                return transmission_curvature(k0, eta, d) < 0.0;
            case TransmissionFeature::FirstRisingInflection:
                return transmission_slope(k0, eta, d) > 0.0;
            case TransmissionFeature::FirstFallingInflection:
                return transmission_slope(k0, eta, d) < 0.0;
        }
        return false;
    };

    const int steps = 10000;
    const double du = 2.0 * M_PI / steps; // scan u = k0*d over (0, 2*pi]
    double d_prev = du / k0;
    double g_prev = g(d_prev);
    for (int i = 2; i <= steps; ++i) {
        const double d_next = i * du / k0;
        const double g_next = g(d_next);
        if (g_prev == 0.0 && classified(d_prev)) return d_prev;
        if ((g_prev > 0.0) != (g_next > 0.0)) {
            const double root = bisect(d_prev, d_next, g_prev, g);
            if (classified(root)) return root;
        }
        d_prev = d_next;
        g_prev = g_next;
    }
    throw std::runtime_error("find_width: feature " + to_string(feature) +
                             " not found for k0*d in (0, 2*pi]");
}

void write_tk_curve_csv(const std::string& path, double eta, double d,
                        Convention convention, double k_lo, double k_hi, int samples) {
    if (samples < 2) throw std::invalid_argument("tk curve needs at least 2 samples");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "k,T,phi_t,dphi_t\n" << std::setprecision(17);
    for (int i = 0; i < samples; ++i) {
        const double k = k_lo + (k_hi - k_lo) * i / (samples - 1);
        const auto a = amplitude(k, eta, d, convention);
        out << k << ',' << std::norm(a.t) << ',' << a.phi_t << ',' << a.dphi_t << '\n';
    }
}

} // namespace tunneldisp
