#include "fibercouple/cli.hpp"

#include "fibercouple/config.hpp"
#include "fibercouple/coupling.hpp"
#include "fibercouple/pair_rate.hpp"
#include "fibercouple/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace fibercouple::cli {

std::string format_csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

namespace {

std::string report_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void print_field(std::ostream& out, const char* key, double v) {
    out << key << " = " << report_number(v) << '\n';
}

void print_defaults(std::ostream& out, const RunConfig& cfg) {
    if (cfg.image_distance_defaulted) out << "note: image_distance = focal_length (default)\n";
    if (cfg.lens_distance_defaulted) out << "note: lens_distance = focal_length (default)\n";
    if (cfg.fiber_mode_radius_defaulted) {
        out << "note: fiber_mode_radius = optimal radius for target 0.95 (default)\n";
    }
}

void warn_regime(std::ostream& err, const OpticalSystem& sys) {
    const double ratio = paraxial_validity(sys, sys.wavenumber_degenerate());
    if (ratio > kParaxialWarningThreshold) {
        err << "warning: k*^2 w0^4 / f^2 = " << report_number(ratio) << " exceeds "
            << kParaxialWarningThreshold << "; the closed-form rate is outside its regime\n";
    }
}

int cmd_coupling(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto& sys = cfg.system;
    const double k = sys.wavenumber_degenerate();
    const auto c = coupling_closed(sys, k);
    print_field(out, "wavenumber_rad_per_m", k);
    print_field(out, "fiber_mode_radius_m", sys.fiber_mode_radius());
    print_field(out, "beta_abs", std::abs(c.beta));
    print_field(out, "beta_arg_rad", std::arg(c.beta));
    print_field(out, "a_k_per_m2", c.a_k);
    print_field(out, "b_k_per_m2", c.b_k);
    print_field(out, "y", c.y);
    print_field(out, "paraxial_ratio", paraxial_validity(sys, k));
    print_defaults(out, cfg);
    warn_regime(err, sys);
    return kExitOk;
}

struct CurveArgs {
    double w0_min = 0.0;
    double w0_max = 0.0;
    int steps = 41;
    std::string out_path;
};

int cmd_curve(const RunConfig& cfg, const CurveArgs& args, std::ostream& out, std::ostream& err) {
    if (!(args.w0_min > 0.0) || !(args.w0_min < args.w0_max) || args.steps < 2) {
        err << "error: curve needs 0 < --w0-min < --w0-max and --steps >= 2\n";
        return kExitUsage;
    }
    const std::string path = !args.out_path.empty() ? args.out_path : cfg.output_path.value_or("");

    RateCurve curve;
    try {
        curve = sweep_rate_curve(cfg.system, cfg.source, args.w0_min, args.w0_max, args.steps,
                                 cfg.quadrature);
    } catch (const SweepError& e) {
        err << "error: numerical failure in " << e.what() << '\n';
        return kExitNumerical;
    }

    std::ostringstream csv;
    csv << kCurveHeader << '\n';
    for (const auto& r : curve.rows) {
        csv << format_csv_number(r.w0) << ',' << format_csv_number(r.y) << ','
            << format_csv_number(r.c_closed) << ',' << format_csv_number(r.c_numeric) << ','
            << format_csv_number(r.rel_err) << '\n';
    }

    if (path.empty()) {
        out << csv.str();
        return kExitOk;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot write '" << path << "'\n";
        return kExitIo;
    }
    file << csv.str();
    file.flush();
    if (!file) {
        err << "error: write to '" << path << "' failed\n";
        return kExitIo;
    }
    out << "wrote " << curve.rows.size() << " rows to " << path << '\n';
    return kExitOk;
}

int cmd_optimize(const RunConfig& cfg, double target, std::ostream& out, std::ostream& err) {
    if (!(target > 0.0 && target < 1.0)) {
        err << "error: --target must lie in (0, 1)\n";
        return kExitUsage;
    }
    const auto& sys = cfg.system;
    const double w0 = optimal_fiber_radius(sys, target);
    print_field(out, "target_fraction", target);
    print_field(out, "y_target", optimal_focusing_parameter(target));
    print_field(out, "w0_optimal_m", w0);
    print_field(out, "coefficient", w0 / rayleigh_width(sys));
    return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto report = run_validation(cfg.system, cfg.source, cfg.quadrature);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    for (const auto& c : report.checks) {
        if (!c.note.empty()) err << "note: " << c.name << ": " << c.note << '\n';
    }
    write_report(out, report);
    return report.passed() ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-mode fiber coupling of collinear type-I photon pairs"};
    app.name("fibercouple");
    app.require_subcommand(1);

    std::string config_path;
    CurveArgs curve_args;
    double target = 0.0;

    auto* coupling = app.add_subcommand("coupling", "Coupling coefficient at the degenerate wavenumber");
    auto* curve = app.add_subcommand("curve", "Tabulate closed vs numeric pair rate over fiber radii");
    auto* optimize = app.add_subcommand("optimize", "Fiber radius reaching a target fraction of the plateau");
    auto* validate = app.add_subcommand("validate", "Run every closed-form vs numeric cross-check");
    for (auto* sub : {coupling, curve, optimize, validate}) {
        sub->add_option("--config", config_path, "Configuration file")->required();
    }
    curve->add_option("--w0-min", curve_args.w0_min, "Smallest fiber mode radius (m)")->required();
    curve->add_option("--w0-max", curve_args.w0_max, "Largest fiber mode radius (m)")->required();
    curve->add_option("--steps", curve_args.steps, "Number of grid points")->capture_default_str();
    curve->add_option("--out", curve_args.out_path, "CSV output path (overrides output_path)");
    optimize->add_option("--target", target, "Target fraction of the plateau rate")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    std::optional<RunConfig> cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*coupling) return cmd_coupling(*cfg, out, err);
        if (*curve) return cmd_curve(*cfg, curve_args, out, err);
        if (*optimize) return cmd_optimize(*cfg, target, out, err);
        return cmd_validate(*cfg, out, err);
    } catch (const ConvergenceError& e) {
        err << "error: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace fibercouple::cli
