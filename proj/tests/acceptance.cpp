// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
// Each criterion is computed here from the library primitives rather than by
// replaying the validate report.

#include "fibercouple/coupling.hpp"
#include "fibercouple/numerics.hpp"
#include "fibercouple/optics_model.hpp"
#include "fibercouple/pair_rate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace fibercouple;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

OpticalSystem reference_system(double w0 = 1.885e-6) {
    return OpticalSystem(OpticalSystemParams{0.8e-6, 0.01, 0.002, 0.01, 0.05, w0});
}

SourceParams reference_source() { return SourceParams{1e-3, 100e-6, 1e-9, 0.0, 1.6, 1e12}; }

double relative_spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    return (*hi - *lo) / mean;
}

Outcome criterion_1() {
    const auto sys = reference_system();
    const double y = y_parameter(sys.with_fiber_mode_radius(rayleigh_width(sys)));
    const double c = count_rate_closed(y);
    return {std::abs(y - 2.0) < 1e-12 && std::abs(c - 0.5590) <= 5e-4,
            fmt("y=%.12f C=%.6f expected 0.5590 +- 5e-4", y, c)};
}

Outcome criterion_2() {
    const auto sys = reference_system();
    const double w0 = optimal_fiber_radius(sys, 0.95);
    const double coefficient = w0 * kPi * sys.aperture_radius() / (sys.focal_length() * sys.wavelength());
    const double y = y_parameter(sys.with_fiber_mode_radius(w0));
    const bool ok = std::abs(coefficient - 1.477) <= 1e-3 && std::abs(y - 4.363) <= 1e-3 &&
                    std::abs(1.5 - coefficient) < 0.025 && std::abs(4.4 - y) < 0.04;
    return {ok, fmt("coefficient=%.6f (1.477 +- 1e-3, |1.5-c|<0.025) y=%.6f (4.363 +- 1e-3, |4.4-y|<0.04)",
                    coefficient, y)};
}

Outcome criterion_3() {
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> dist(0.0, 30.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double y = dist(rng);
        worst = std::max(worst, std::abs(count_rate_expansion(y) - std::pow(1.0 - std::exp(-y), 4)));
    }
    return {worst <= 1e-12, fmt("max |expansion - (1-e^-y)^4| = %.3e over 200 samples, limit 1e-12", worst)};
}

Outcome criterion_4() {
    const auto base = reference_system();
    const double k = base.wavenumber_degenerate();
    std::vector<Complex> ratios;
    // Log-spaced grid, w0 in [0.6, 4] um and R in [0.6, 4] mm.
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double w0 = 0.6e-6 * std::pow(4.0 / 0.6, i / 4.0);
            const double R = 0.6e-3 * std::pow(4.0 / 0.6, j / 4.0);
            const auto sys = base.with_fiber_mode_radius(w0).with_aperture_radius(R);
            ratios.push_back(coupling_overlap_numeric(sys, k) / coupling_closed(sys, k).beta);
        }
    }
    std::vector<double> moduli;
    double phase_lo = 0.0;
    double phase_hi = 0.0;
    for (const auto& r : ratios) {
        moduli.push_back(std::abs(r));
        const double phase = std::arg(r / ratios.front());
        phase_lo = std::min(phase_lo, phase);
        phase_hi = std::max(phase_hi, phase);
    }
    const double modulus_spread = relative_spread(moduli);
    const double phase_spread = phase_hi - phase_lo;
    return {modulus_spread < 1e-4 && phase_spread < 1e-3,
            fmt("modulus spread %.3e (< 1e-4), phase spread %.3e rad (< 1e-3), |ratio| = %.6f",
                modulus_spread, phase_spread, moduli.front())};
}

Outcome criterion_5() {
    const auto sys = reference_system();
    const auto src = reference_source();
    const double closed = count_rate_closed(y_parameter(sys));
    const double numeric = count_rate_numeric(ab_coefficients(sys, src), src.bandwidth);
    const double err = std::abs(numeric - closed) / closed;
    double worst = 0.0;
    for (double w0_um : {0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0}) {
        const auto at = sys.with_fiber_mode_radius(w0_um * 1e-6);
        const double c = count_rate_closed(y_parameter(at));
        worst = std::max(worst, std::abs(count_rate_full_numeric(at, src) - c) / c);
    }
    return {err < 1e-3 && worst < 2e-2,
            fmt("rate rel err %.3e (< 1e-3), full-numeric worst rel err %.3e (< 2e-2) on w0 in [0.5, 4] um",
                err, worst)};
}

Outcome criterion_6() {
    const auto sys = reference_system();
    const auto src = reference_source();
    const double base = count_rate_full_numeric(sys, src);
    auto pump = src;
    pump.pump_waist *= 10.0;
    auto crystal = src;
    crystal.crystal_length *= 10.0;
    const double d_pump = std::abs(count_rate_full_numeric(sys, pump) - base) / base;
    const double d_crystal = std::abs(count_rate_full_numeric(sys, crystal) - base) / base;
    return {d_pump < 1e-6 && d_crystal < 1e-6,
            fmt("10x pump waist %.3e, 10x crystal length %.3e (each < 1e-6)", d_pump, d_crystal)};
}

Outcome criterion_7() {
    const auto sys = reference_system();
    const double k = sys.wavenumber_degenerate();
    const double R = sys.aperture_radius();
    const double f = sys.focal_length();
    const double axial = std::abs(incident_mode(sys, k, 0.0, 0.0));
    const double expected = kPi * R * R / (k * f);
    const double axial_err = std::abs(axial - expected) / expected;
    // 3.8317 is the J1 zero to five significant figures. The ring position is
    // checked to that precision and the null is measured at the located ring;
    // at the rounded radius itself the field slope leaves about 1.3e-6.
    const double ring = first_dark_ring_radius(sys, k);
    const double coefficient = ring * k * R / f;
    const double dark = std::abs(incident_mode(sys, k, ring, 0.0)) / axial;
    const double at_rounded = std::abs(incident_mode(sys, k, 3.8317 * f / (k * R), 0.0)) / axial;
    return {axial_err <= 1e-9 && std::abs(coefficient - 3.8317) < 5e-5 && dark < 1e-6,
            fmt("axial rel err %.3e (<= 1e-9), ring at %.7f f/(kR) (3.8317 +- 5e-5), "
                "|field| there %.3e of axial (< 1e-6; %.3e at the rounded radius)",
                axial_err, coefficient, dark, at_rounded)};
}

Outcome criterion_8() {
    const auto sys = reference_system();
    double worst = 0.0;
    for (double t : {0.5, 0.9, 0.95, 0.99}) {
        const double w0 = optimal_fiber_radius(sys, t);
        worst = std::max(worst, std::abs(count_rate_closed(y_parameter(sys.with_fiber_mode_radius(w0))) - t));
    }
    const double w = optimal_fiber_radius(sys, 0.95);
    const double scale_f = optimal_fiber_radius(sys.with_focal_length(3.0 * sys.focal_length()), 0.95) / w;
    const double scale_l = optimal_fiber_radius(sys.with_wavelength(1.7 * sys.wavelength()), 0.95) / w;
    const double scale_r = optimal_fiber_radius(sys.with_aperture_radius(2.5 * sys.aperture_radius()), 0.95) / w;
    const double scaling = std::max({std::abs(scale_f / 3.0 - 1.0), std::abs(scale_l / 1.7 - 1.0),
                                     std::abs(scale_r * 2.5 - 1.0)});
    return {worst <= 1e-9 && scaling <= 1e-13,
            fmt("max |C(y*) - t| = %.3e (<= 1e-9), scaling deviation %.3e", worst, scaling)};
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
    };
    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    for (const auto& [id, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failures;
        std::printf("[%s] criterion %d: %s\n", o.passed ? "PASS" : "FAIL", id, o.detail.c_str());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failures,
                criteria.size(), seconds);
    return failures == 0 ? 0 : 1;
}
