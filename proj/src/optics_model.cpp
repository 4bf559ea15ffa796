#include "fibercouple/optics_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace fibercouple {

namespace {

void require_positive(std::string_view name, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be a finite positive length (got " << value << ")";
        throw std::invalid_argument(msg.str());
    }
}

double first_j1_zero() {
    static const double root = find_root(bessel_j1, 3.0, 4.5, 1e-15);
    return root;
}

}  // namespace

OpticalSystem::OpticalSystem(const OpticalSystemParams& p) : p_(p) {
    require_positive("wavelength", p.wavelength);
    require_positive("focal_length", p.focal_length);
    require_positive("aperture_radius", p.aperture_radius);
    require_positive("image_distance", p.image_distance);
    require_positive("lens_distance", p.lens_distance);
    require_positive("fiber_mode_radius", p.fiber_mode_radius);
    wavenumber_ = kTwoPi / p.wavelength;
}

bool OpticalSystem::at_focal_plane() const noexcept {
    return std::abs(p_.image_distance - p_.focal_length) <= 1e-12 * p_.focal_length;
}

OpticalSystem OpticalSystem::with_fiber_mode_radius(double w0) const {
    auto p = p_;
    p.fiber_mode_radius = w0;
    return OpticalSystem(p);
}

OpticalSystem OpticalSystem::with_aperture_radius(double r) const {
    auto p = p_;
    p.aperture_radius = r;
    return OpticalSystem(p);
}

OpticalSystem OpticalSystem::with_focal_length(double f) const {
    auto p = p_;
    p.focal_length = f;
    return OpticalSystem(p);
}

OpticalSystem OpticalSystem::with_wavelength(double lambda) const {
    auto p = p_;
    p.wavelength = lambda;
    return OpticalSystem(p);
}

OpticalSystem OpticalSystem::with_image_distance(double d) const {
    auto p = p_;
    p.image_distance = d;
    return OpticalSystem(p);
}

OpticalSystem OpticalSystem::with_lens_distance(double d) const {
    auto p = p_;
    p.lens_distance = d;
    return OpticalSystem(p);
}

void SourceParams::validate() const {
    auto fail = [](std::string_view what) { throw std::invalid_argument(std::string(what)); };
    if (!(crystal_length > 0.0)) fail("crystal_length must be positive");
    if (!(pump_waist > 0.0)) fail("pump_waist must be positive");
    if (!(bandwidth > 0.0)) fail("bandwidth must be positive");
    if (!(group_index > 0.0)) fail("group_index must be positive");
    if (!(cone_angle >= 0.0)) fail("cone_angle must be non-negative");
    if (!(dispersion_coeff >= 0.0)) fail("dispersion_coeff must be non-negative");
    if (!(light_speed > 0.0)) fail("light_speed must be positive");
    for (double v : {crystal_length, pump_waist, dispersion_coeff, cone_angle, group_index,
                     bandwidth, light_speed}) {
        if (!std::isfinite(v)) fail("source parameters must be finite");
    }
}

double fiber_mode(const OpticalSystem& sys, double x, double y) {
    const double w0 = sys.fiber_mode_radius();
    return std::exp(-(x * x + y * y) / (2.0 * w0 * w0)) / (w0 * std::sqrt(kPi));
}

Complex incident_mode(const OpticalSystem& sys, double k, double x, double y,
                      const QuadratureSpec& spec) {
    if (!(k > 0.0)) throw std::invalid_argument("incident_mode requires k > 0");
    const double dp = sys.image_distance();
    const double f = sys.focal_length();
    const double R = sys.aperture_radius();
    const double rho2 = x * x + y * y;
    const double rho = std::sqrt(rho2);

    // Radial integral in t = r / R so the quadrature sees an O(1) integrand.
    const double bessel_scale = k * rho * R / dp;
    const double chirp = (k / (2.0 * dp) - k / (2.0 * f)) * R * R;
    const auto radial = integrate_1d(
        [&](double t) {
            return t * bessel_j0(bessel_scale * t) * std::polar(1.0, chirp * t * t);
        },
        0.0, 1.0, spec);

    const Complex prefactor = std::polar(1.0, k * (dp + sys.lens_distance())) /
                              Complex(0.0, k * dp) * std::polar(1.0, k * rho2 / (2.0 * dp));
    return prefactor * (kTwoPi * R * R) * radial.value;
}

double paraxial_ratio(double k, double w0, double focal_length) {
    const double w2 = w0 * w0;
    return k * k * w2 * w2 / (focal_length * focal_length);
}

double paraxial_validity(const OpticalSystem& sys, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("paraxial_validity requires k > 0");
    return paraxial_ratio(k, sys.fiber_mode_radius(), sys.focal_length());
}

double first_dark_ring_radius(const OpticalSystem& sys, double k) {
    return first_j1_zero() * sys.image_distance() / (k * sys.aperture_radius());
}

}  // namespace fibercouple
