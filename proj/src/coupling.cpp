#include "fibercouple/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fibercouple {

namespace {

void require_wavenumber(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("coupling requires a finite wavenumber k > 0");
    }
}

// d'^2 + k^2 w0^4
double mode_denominator(const OpticalSystem& sys, double k) {
    const double dp = sys.image_distance();
    const double w2 = sys.fiber_mode_radius() * sys.fiber_mode_radius();
    return dp * dp + k * k * w2 * w2;
}

Complex closed_prefactor(const OpticalSystem& sys, double k) {
    const double dp = sys.image_distance();
    const double w0 = sys.fiber_mode_radius();
    const double w2 = w0 * w0;
    const Complex numerator(w2 * dp * dp, k * w2 * w2 * dp);
    return numerator / (k * dp * w0 * mode_denominator(sys, k));
}

}  // namespace

double focusing_parameter(double k, double w0, double aperture_radius, double focal_length) {
    const double s = k * w0 * aperture_radius / focal_length;
    return 0.5 * s * s;
}

double y_parameter(const OpticalSystem& sys) {
    return focusing_parameter(sys.wavenumber_degenerate(), sys.fiber_mode_radius(),
                              sys.aperture_radius(), sys.focal_length());
}

double coupling_decay_rate(const OpticalSystem& sys, double k) {
    require_wavenumber(k);
    const double w2 = sys.fiber_mode_radius() * sys.fiber_mode_radius();
    return k * k * w2 / (2.0 * mode_denominator(sys, k));
}

double coupling_chirp_rate(const OpticalSystem& sys, double k) {
    require_wavenumber(k);
    const double dp = sys.image_distance();
    const double f = sys.focal_length();
    const double w2 = sys.fiber_mode_radius() * sys.fiber_mode_radius();
    // The defocus term is written as a difference quotient so it is exactly
    // zero when d' == f.
    const double defocus = (f - dp) / (2.0 * dp * f) * k;
    return defocus - k * k * k * w2 * w2 / (2.0 * dp * mode_denominator(sys, k));
}

CouplingResult coupling_closed(const OpticalSystem& sys, double k) {
    CouplingResult out;
    out.a_k = coupling_decay_rate(sys, k);
    out.b_k = coupling_chirp_rate(sys, k);
    out.y = y_parameter(sys);

    const double R2 = sys.aperture_radius() * sys.aperture_radius();
    const Complex s(-out.a_k, out.b_k);
    // 1 - exp(s R^2), via expm1 so small apertures keep their precision
    const Complex sr = s * R2;
    const Complex em1 = std::expm1(sr.real()) * std::polar(1.0, sr.imag()) +
                        Complex(-2.0 * std::pow(std::sin(0.5 * sr.imag()), 2), std::sin(sr.imag()));
    out.beta = closed_prefactor(sys, k) * (-em1) / s;
    return out;
}

Complex coupling_plateau(const OpticalSystem& sys, double k) {
    const Complex s(-coupling_decay_rate(sys, k), coupling_chirp_rate(sys, k));
    return closed_prefactor(sys, k) / s;
}

Complex coupling_overlap_numeric(const OpticalSystem& sys, double k, const QuadratureSpec& spec) {
    require_wavenumber(k);
    const double w0 = sys.fiber_mode_radius();
    const double rho_max = std::max(8.0 * w0, 4.0 * first_dark_ring_radius(sys, k));

    // Integrate over s = rho / rho_max with the integrand divided by the
    // overlap of a flat field at the focused axial value, so both the
    // integrand and the result are O(1) and abs_tol keeps its meaning.
    const double R = sys.aperture_radius();
    const double scale = (kPi * R * R / (k * sys.image_distance())) * (w0 * std::sqrt(kPi));
    const double jacobian = rho_max * rho_max;
    QuadratureSpec inner = spec;
    inner.abs_tol = spec.abs_tol * 1e-2;
    inner.rel_tol = spec.rel_tol * 1e-2;

    const auto result = integrate_polar(
        [&](double s, double theta) {
            const double x = s * rho_max * std::cos(theta);
            const double y = s * rho_max * std::sin(theta);
            return incident_mode(sys, k, x, y, inner) * (fiber_mode(sys, x, y) * jacobian / scale);
        },
        1.0, spec);
    return result.value * scale;
}

}  // namespace fibercouple
