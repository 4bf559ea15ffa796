#pragma once

// Physical parameter sets and the two transverse mode functions that enter the
// fiber overlap: the field diffracted by a circular lens aperture onto the
// image plane, and the Gaussian fundamental mode of a single-mode fiber.
//
// All lengths are SI metres. Mode functions carry units of 1/m so that their
// product integrated over the plane is dimensionless.

#include "fibercouple/numerics.hpp"

namespace fibercouple {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct OpticalSystemParams {
    double wavelength = 0.0;         // in-medium wavelength
    double focal_length = 0.0;
    double aperture_radius = 0.0;    // illuminated radius of the lens
    double image_distance = 0.0;     // lens to fiber face
    double lens_distance = 0.0;      // crystal centre to lens
    double fiber_mode_radius = 0.0;
};

/// Lens, aperture and fiber geometry. Every length is strictly positive and the
/// degenerate wavenumber is always 2 pi / wavelength.
class OpticalSystem {
public:
    explicit OpticalSystem(const OpticalSystemParams& p);

    double wavelength() const noexcept { return p_.wavelength; }
    double wavenumber_degenerate() const noexcept { return wavenumber_; }
    double focal_length() const noexcept { return p_.focal_length; }
    double aperture_radius() const noexcept { return p_.aperture_radius; }
    double image_distance() const noexcept { return p_.image_distance; }
    double lens_distance() const noexcept { return p_.lens_distance; }
    double fiber_mode_radius() const noexcept { return p_.fiber_mode_radius; }
    const OpticalSystemParams& params() const noexcept { return p_; }

    /// True when the fiber face sits in the back focal plane (d' = f), to a
    /// relative tolerance of 1e-12.
    bool at_focal_plane() const noexcept;

    OpticalSystem with_fiber_mode_radius(double w0) const;
    OpticalSystem with_aperture_radius(double r) const;
    OpticalSystem with_focal_length(double f) const;
    OpticalSystem with_wavelength(double lambda) const;
    OpticalSystem with_image_distance(double d) const;
    OpticalSystem with_lens_distance(double d) const;

private:
    OpticalSystemParams p_;
    double wavenumber_;
};

struct SourceParams {
    double crystal_length = 0.0;    // m
    double pump_waist = 0.0;        // m
    double dispersion_coeff = 0.0;  // s/m
    double cone_angle = 0.0;        // rad, 0 is collinear
    double group_index = 0.0;
    double bandwidth = 0.0;         // rad/s, width of the Gaussian filter
    double light_speed = kSpeedOfLight;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Normalised Gaussian fiber mode, (1 / (w0 sqrt(pi))) exp(-(x^2 + y^2) / (2 w0^2)).
double fiber_mode(const OpticalSystem& sys, double x, double y);

/// Field at (x, y) in the image plane produced by a unit plane wave of
/// wavenumber k filling the aperture, evaluated through the Bessel-reduced
/// radial integral. The global phase exp(ik(d' + d)) is kept.
Complex incident_mode(const OpticalSystem& sys, double k, double x, double y,
                      const QuadratureSpec& spec = {});

/// k^2 w0^4 / f^2; the closed-form rate is only trustworthy when this is small.
double paraxial_validity(const OpticalSystem& sys, double k);
double paraxial_ratio(double k, double w0, double focal_length);

/// Radius of the first dark ring of the focal-plane diffraction pattern.
double first_dark_ring_radius(const OpticalSystem& sys, double k);

}  // namespace fibercouple
