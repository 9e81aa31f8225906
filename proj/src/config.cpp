#include "tunneldisp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tunneldisp {

std::string to_string(Convention c) {
    return c == Convention::Paper ? "paper" : "global";
}

Convention convention_from_string(const std::string& s) {
    if (s == "paper") return Convention::Paper;
    if (s == "global") return Convention::Global;
    throw std::invalid_argument("unknown convention '" + s + "' (expected paper|global)");
}

std::string to_string(Branch b) {
    return b == Branch::Transmission ? "T" : "R";
}

Branch branch_from_string(const std::string& s) {
    if (s == "T") return Branch::Transmission;
    if (s == "R") return Branch::Reflection;
    throw std::invalid_argument("unknown branch '" + s + "' (expected T|R)");
}

static bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

static void check_structural(const CaseConfig& c) {
    if (!(c.alpha > 0.0 && c.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(c.eta >= 0.0)) throw std::invalid_argument("eta must be >= 0");
    if (!(c.k0 > 0.0)) throw std::invalid_argument("k0 must be > 0");
    if (!(c.d >= 0.0)) throw std::invalid_argument("d must be >= 0");
    if (!(c.sigma_xp > 0.0 && c.sigma_xb > 0.0))
        throw std::invalid_argument("position spreads must be > 0");
    if (!(c.L > 0.0)) throw std::invalid_argument("L must be > 0");
    if (!is_power_of_two(c.N)) throw std::invalid_argument("N must be a power of two");
    if (!(c.xp0 < c.xb0)) throw std::invalid_argument("projectile must start left of barrier (xp0 < xb0)");
    if (std::abs((c.xb0 - c.xp0) - 1.0) > 1e-12)
        throw std::invalid_argument("xb0 - xp0 must equal 1 (unit of length is the initial separation)");
    if (!(c.dtau > 0.0) || !(c.tau_fit_end > c.tau_fit_start))
        throw std::invalid_argument("analysis window must be nonempty with dtau > 0");
}

std::vector<Violation> validate(const CaseConfig& c) {
    check_structural(c);
    std::vector<Violation> out;

    const double sep = c.xb0 - c.xp0;
    const double pos_lhs = std::hypot(c.sigma_xp, c.sigma_xb);
    if (pos_lhs > sep / 3.0)
        out.push_back({"initial position overlap: sqrt(sigma_xp^2+sigma_xb^2) <= (xb0-xp0)/3",
                       pos_lhs, sep / 3.0});

    const double beta = 1.0 - c.alpha;
    const double sigma_vp = beta * (1.0 / (2.0 * c.sigma_xp)) / c.k0;
    const double sigma_vb = c.alpha * (1.0 / (2.0 * c.sigma_xb)) / c.k0;
    const double vel_lhs = std::hypot(sigma_vp, sigma_vb);
    const double v_rel = 1.0; // v_p0 - v_b0 fixed to unity by the unit choice
    if (vel_lhs > v_rel / 3.0)
        out.push_back({"velocity ordering: sqrt(sigma_vp^2+sigma_vb^2) <= (v_p0-v_b0)/3",
                       vel_lhs, v_rel / 3.0});
    return out;
}

DerivedParams derive(const CaseConfig& c) {
    check_structural(c);
    DerivedParams p{};
    p.beta = 1.0 - c.alpha;
    p.sigma_kp = 1.0 / (2.0 * c.sigma_xp);
    p.sigma_kb = 1.0 / (2.0 * c.sigma_xb);
    p.K0 = c.k0 / p.beta;
    p.sigma_K = std::hypot(p.sigma_kp, p.sigma_kb);
    p.sigma_k = std::hypot(p.beta * p.sigma_kp, c.alpha * p.sigma_kb);
    p.sigma_X = std::hypot(c.alpha * c.sigma_xp, p.beta * c.sigma_xb);
    p.sigma_x = std::hypot(c.sigma_xp, c.sigma_xb);
    p.tau_max = tau_max_threshold(c.L, c.N, c.k0);
    return p;
}

double tau_max_threshold(double L, std::int64_t N, double k0) {
    if (!(L > 0.0) || N <= 0 || !(k0 > 0.0))
        throw std::invalid_argument("tau_max requires positive L, N, k0");
    return L * L * k0 / (2.0 * M_PI * static_cast<double>(N));
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"case1", "case2", "case3",
                                                   "case4", "case5", "case6"};
    return names;
}

CaseConfig preset(const std::string& name) {
    CaseConfig c; // shared defaults: k0=50, sigma=0.2, xp0=-1, xb0=0, L=100, N=4096
    if (name == "case1") {
        c.alpha = 1.0 / 101.0; c.eta = 24.0; c.d = 6.552e-2;
    } else if (name == "case2") {
        c.alpha = 1.0 / 3.0; c.eta = 24.0; c.d = 6.552e-2;
    } else if (name == "case3") {
        c.alpha = 1.0 / 101.0; c.eta = 24.0; c.d = 4.037e-2;
    } else if (name == "case4") {
        c.alpha = 1.0 / 3.0; c.eta = 24.0; c.d = 4.037e-2;
    } else if (name == "case5") {
        c.alpha = 1.0 / 3.0; c.eta = 48.0; c.d = 4.154e-2;
    } else if (name == "case6") {
        c.alpha = 1.0 / 3.0; c.eta = 48.0; c.d = 5.060e-2;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return c;
}

static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

CaseConfig parse_config_text(const std::string& text) {
    CaseConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        auto num = [&]() {
            std::size_t pos = 0;
            double v = std::stod(val, &pos);
            if (pos != val.size())
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed number '" + val + "'");
            return v;
        };
        if (key == "alpha") c.alpha = num();
        else if (key == "eta") c.eta = num();
        else if (key == "k0") c.k0 = num();
        else if (key == "d") c.d = num();
        else if (key == "sigma_xp") c.sigma_xp = num();
        else if (key == "sigma_xb") c.sigma_xb = num();
        else if (key == "xp0") c.xp0 = num();
        else if (key == "xb0") c.xb0 = num();
        else if (key == "L") c.L = num();
        else if (key == "N") c.N = static_cast<std::int64_t>(num());
        else if (key == "tau_fit_start") c.tau_fit_start = num();
        else if (key == "tau_fit_end") c.tau_fit_end = num();
        else if (key == "dtau") c.dtau = num();
        else if (key == "convention") c.convention = convention_from_string(val);
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    return c;
}

CaseConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace tunneldisp
