#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "tunneldisp/evolver.hpp"
#include "tunneldisp/pipeline.hpp"

using namespace tunneldisp;

namespace {

std::vector<double> parse_tau_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void apply_fit_window(CaseConfig& c, const std::string& spec) {
    double a, b, step;
    char c1, c2;
    std::istringstream ss(spec);
    if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':')
        throw std::invalid_argument("--fit-window expects start:end:step");
    c.tau_fit_start = a;
    c.tau_fit_end = b;
    c.dtau = step;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-particle tunneling displacement experiments"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    auto* run = app.add_subcommand("run", "run one case and write its artifacts");
    std::string case_name, config_path, out_dir = "out", snapshots, convention, fit_window;
    run->add_option("case,--case", case_name, "preset name (case1..case6)");
    run->add_option("--config", config_path, "key=value config file");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--snapshots", snapshots, "comma-separated tau values for density dumps");
    run->add_option("--convention", convention, "amplitude convention: paper|global");
    run->add_option("--fit-window", fit_window, "start:end:step for the kinematics fit");

    // --- report ------------------------------------------------------------
    auto* rep = app.add_subcommand("report", "check a run directory against reference values");
    std::string report_dir;
    rep->add_option("dir", report_dir, "directory holding kinematics.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            CaseConfig config;
            std::string label;
            if (!case_name.empty() && !config_path.empty()) {
                std::cerr << "error: give either a preset name or --config, not both\n";
                return 2;
            } else if (!case_name.empty()) {
                config = preset(case_name);
                label = case_name;
            } else if (!config_path.empty()) {
                config = parse_config_file(config_path);
                label = "custom";
            } else {
                std::cerr << "error: a preset name or --config is required\n";
                return 2;
            }
            if (!convention.empty()) config.convention = convention_from_string(convention);
            if (!fit_window.empty()) apply_fit_window(config, fit_window);

            RunOptions opts;
            opts.out_dir = out_dir;
            opts.case_label = label;
            if (!snapshots.empty()) opts.snapshot_taus = parse_tau_list(snapshots);

            const CaseResult r = run_case(config, label, opts);
            std::cout << "case " << label << ": T(fit-window mean) = " << 100.0 * r.T_mean
                      << "%, artifacts in " << out_dir << "\n";
            return 0;
        }
        return report(report_dir, std::cout);
    } catch (const AliasingError& e) {
        std::cerr << "aliasing error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
