#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tunneldisp {

/// Phase convention of the scattering amplitudes.
/// `Paper` keeps the residual e^{ikd} factor in t_k (t -> e^{ikd} as the
/// interaction strength goes to zero); `Global` removes it so that the free
/// limit is t = 1. Magnitudes are identical, phase derivatives differ by
/// exactly d.
enum class Convention { Paper, Global };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

/// Outcome branch of the scattering experiment: the projectile ends up on
/// the far side of the barrier particle (transmission/tunneling, x > 0) or
/// bounces back (reflection, x < 0).
enum class Branch { Transmission, Reflection };

std::string to_string(Branch b); // "T" / "R"
Branch branch_from_string(const std::string& s);

/// All free parameters of one scattering experiment, in the dimensionless
/// unit system: length = initial mean separation, time = nominal collision
/// time, mass = reduced mass.
struct CaseConfig {
    double alpha = 1.0 / 3.0;   // projectile mass fraction m_p / (m_p + m_b)
    double eta = 24.0;          // interaction strength V0*mu*l/hbar^2
    double k0 = 50.0;           // mean relative wavenumber
    double d = 6.552e-2;        // interaction width
    double sigma_xp = 0.2;      // initial projectile position spread
    double sigma_xb = 0.2;      // initial barrier position spread
    double xp0 = -1.0;          // initial mean projectile position
    double xb0 = 0.0;           // initial mean barrier position
    double L = 100.0;           // spatial domain side
    std::int64_t N = 4096;      // grid points per axis (power of two)
    double tau_fit_start = 8.0; // analysis window start
    double tau_fit_end = 12.0;  // analysis window end
    double dtau = 0.1;          // analysis time step
    Convention convention = Convention::Paper;
};

/// Quantities derived from a CaseConfig.
struct DerivedParams {
    double beta;     // barrier mass fraction, 1 - alpha
    double sigma_kp; // projectile wavenumber spread, 1/(2 sigma_xp)
    double sigma_kb; // barrier wavenumber spread, 1/(2 sigma_xb)
    double K0;       // mean total wavenumber (barrier at rest): k0/beta
    double sigma_K;  // CoM-frame total-wavenumber spread
    double sigma_k;  // CoM-frame relative-wavenumber spread
    double sigma_X;  // CoM position spread
    double sigma_x;  // relative position spread
    double tau_max;  // aliasing threshold
};

/// One violated well-posedness condition, with both sides of the inequality.
struct Violation {
    std::string condition; // human-readable description
    double lhs;
    double rhs; // the bound that lhs must not exceed
};

/// Checks the two well-posedness conditions: the particles must start
/// spatially separated and the projectile must be faster than the barrier,
/// both with a 3-sigma margin. Returns an empty list when the configuration
/// is well posed.
std::vector<Violation> validate(const CaseConfig& config);

/// Computes all derived parameters. Throws std::invalid_argument for
/// alpha outside (0,1) or other structurally invalid fields.
DerivedParams derive(const CaseConfig& config);

/// Latest time before the fastest resolvable spectral component wraps
/// around the periodic domain: L^2 k0 / (2 pi N).
double tau_max_threshold(double L, std::int64_t N, double k0);

/// Built-in presets case1..case6.
const std::vector<std::string>& preset_names();
CaseConfig preset(const std::string& name);

/// Parses a flat "key = value" config file. Keys are exactly the CaseConfig
/// field names; unknown keys and malformed lines are errors.
CaseConfig parse_config_file(const std::string& path);
CaseConfig parse_config_text(const std::string& text);

} // namespace tunneldisp
