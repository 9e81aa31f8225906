#include "tunneldisp/evolver.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "tunneldisp/amplitudes.hpp"

namespace tunneldisp {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

/// One pruned 2D inverse DFT: transform along K (strided) only over the
/// column blocks that carry spectrum, then along k (contiguous) for every
/// row. `work` must already hold the spectrum (zero elsewhere).
void synthesize(std::vector<cplx>& work, std::int64_t N,
                const std::vector<std::pair<std::int64_t, std::int64_t>>& col_blocks) {
    auto* data = reinterpret_cast<fftw_complex*>(work.data());
    const int n = static_cast<int>(N);
    for (const auto& [a, b] : col_blocks) {
        const int howmany = static_cast<int>(b - a + 1);
        fftw_plan p = fftw_plan_many_dft(1, &n, howmany, data + a, nullptr, n, 1,
                                         data + a, nullptr, n, 1, FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(p);
        fftw_destroy_plan(p);
    }
    fftw_plan rows = fftw_plan_many_dft(1, &n, n, data, nullptr, 1, n,
                                        data, nullptr, 1, n, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(rows);
    fftw_destroy_plan(rows);
}

} // namespace

WaveField evolve(const CoefficientField& coeffs, double eta, double d,
                 Convention convention, double tau) {
    const auto& g = coeffs.grid;
    const std::int64_t N = g.N;
    if (coeffs.values.size() != static_cast<std::size_t>(N) * N)
        throw std::invalid_argument("coefficient field does not match its grid");
    if (coeffs.k_first > coeffs.k_last)
        throw std::invalid_argument("coefficient field is empty");
    if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
    const double tau_max = tau_max_threshold(g.L, N, coeffs.config.k0);
    if (tau >= tau_max)
        throw AliasingError("tau = " + std::to_string(tau) +
                            " reaches the aliasing threshold tau_max = " +
                            std::to_string(tau_max));

    const CaseConfig& c = coeffs.config;
    const double ab = c.alpha * (1.0 - c.alpha);

    // Per-row and per-column dispersion phases: omega separates as
    // alpha*beta*K^2/(2 k0) + k^2/(2 k0). The half-domain origin shift
    // (X_m, x_n start at -L/2) folds in as (-1)^(i+j).
    std::vector<cplx> rowphase(static_cast<std::size_t>(N), 0.0);
    for (std::int64_t si = coeffs.K_first; si <= coeffs.K_last; ++si) {
        const std::int64_t i = si >= 0 ? si : si + N;
        const double K = g.dk() * static_cast<double>(si);
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        rowphase[i] = sign * std::exp(-I * (ab * K * K * tau / (2.0 * c.k0)));
    }
    std::vector<cplx> col_inc(static_cast<std::size_t>(N), 0.0);
    std::vector<cplx> col_ref(static_cast<std::size_t>(N), 0.0);
    std::vector<cplx> col_trn(static_cast<std::size_t>(N), 0.0);
    for (std::int64_t j = coeffs.k_first; j <= coeffs.k_last; ++j) {
        const double k = g.dk() * static_cast<double>(j);
        const cplx disp = std::exp(-I * (k * k * tau / (2.0 * c.k0)));
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        col_inc[j] = sign * disp;
        if (eta > 0.0) {
            const auto a = amplitude(k, eta, d, convention);
            col_trn[j] = sign * disp * a.t;
            // reflected component lands in the -k bin; N even keeps parity
            col_ref[j] = sign * disp * a.r;
        } else {
            col_trn[j] = sign * disp; // free limit: t -> 1 (global) and the
                                      // paper convention's e^{ikd} with d
        }
    }
    if (eta == 0.0 && convention == Convention::Paper && d > 0.0) {
        for (std::int64_t j = coeffs.k_first; j <= coeffs.k_last; ++j) {
            const double k = g.dk() * static_cast<double>(j);
            col_trn[j] *= std::exp(I * k * d);
        }
    }

    const double norm = 1.0 / (g.L * g.L); // dK dk / (2 pi)^2
    const double halfgap = d / 2.0;

    WaveField out;
    out.grid = g;
    out.config = c;
    out.config.eta = eta;
    out.config.d = d;
    out.config.convention = convention;
    out.tau = tau;
    out.values.assign(static_cast<std::size_t>(N) * N, 0.0);

    std::vector<cplx> work(static_cast<std::size_t>(N) * N);

    // --- left region: incident + reflected share one spectrum -------------
    std::memset(work.data(), 0, work.size() * sizeof(cplx));
    for (std::int64_t si = coeffs.K_first; si <= coeffs.K_last; ++si) {
        const std::int64_t i = si >= 0 ? si : si + N;
        const cplx rp = rowphase[i];
        const cplx* src = &coeffs.values[i * N];
        cplx* dst = &work[i * N];
        for (std::int64_t j = coeffs.k_first; j <= coeffs.k_last; ++j) {
            const cplx cij = src[j];
            dst[j] = rp * col_inc[j] * cij;
            if (eta > 0.0) dst[N - j] = rp * col_ref[j] * cij;
        }
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> blocks = {
        {coeffs.k_first, coeffs.k_last}};
    if (eta > 0.0) blocks.push_back({N - coeffs.k_last, N - coeffs.k_first});
    synthesize(work, N, blocks);
    for (std::int64_t m = 0; m < N; ++m) {
        const cplx* src = &work[m * N];
        cplx* dst = &out.values[m * N];
        for (std::int64_t n = 0; n < N; ++n) {
            const double x = g.coord(n);
            if (x < -halfgap) dst[n] = norm * src[n];
        }
    }

    // --- right region: transmitted ----------------------------------------
    std::memset(work.data(), 0, work.size() * sizeof(cplx));
    for (std::int64_t si = coeffs.K_first; si <= coeffs.K_last; ++si) {
        const std::int64_t i = si >= 0 ? si : si + N;
        const cplx rp = rowphase[i];
        const cplx* src = &coeffs.values[i * N];
        cplx* dst = &work[i * N];
        for (std::int64_t j = coeffs.k_first; j <= coeffs.k_last; ++j)
            dst[j] = rp * col_trn[j] * src[j];
    }
    synthesize(work, N, {{coeffs.k_first, coeffs.k_last}});
    for (std::int64_t m = 0; m < N; ++m) {
        const cplx* src = &work[m * N];
        cplx* dst = &out.values[m * N];
        for (std::int64_t n = 0; n < N; ++n) {
            const double x = g.coord(n);
            if (x > halfgap || (d == 0.0 && x == 0.0)) dst[n] = norm * src[n];
        }
    }
    return out;
}

WaveField evolve(const CoefficientField& coeffs, double tau) {
    const auto& c = coeffs.config;
    return evolve(coeffs, c.eta, c.d, c.convention, tau);
}

void write_density(const WaveField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    char header[64];
    std::memset(header, ' ', sizeof(header));
    const int written =
        std::snprintf(header, sizeof(header), "tunneldisp-density N=%lld L=%.9g tau=%.9g dtype=f8",
                      static_cast<long long>(field.grid.N), field.grid.L, field.tau);
    if (written < 0 || written >= static_cast<int>(sizeof(header)))
        throw std::runtime_error("density header does not fit in 64 bytes");
    header[written] = ' '; // undo snprintf's terminator, keep space padding
    out.write(header, sizeof(header));
    std::vector<double> row(field.grid.N);
    for (std::int64_t m = 0; m < field.grid.N; ++m) {
        for (std::int64_t n = 0; n < field.grid.N; ++n) row[n] = std::norm(field.at(m, n));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(double)));
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace tunneldisp
