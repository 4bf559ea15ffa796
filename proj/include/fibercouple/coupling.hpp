#pragma once

// Fiber coupling coefficient: the overlap of the aperture-diffracted field with
// the Gaussian fiber mode, both as a closed-form Gaussian reduction and by
// direct two-dimensional quadrature.

#include "fibercouple/numerics.hpp"
#include "fibercouple/optics_model.hpp"

namespace fibercouple {

struct CouplingResult {
    Complex beta;      // closed-form value, defined up to one global constant
    double a_k = 0.0;  // 1/m^2, Gaussian decay rate of the aperture integral
    double b_k = 0.0;  // 1/m^2, residual chirp of the aperture integral
    double y = 0.0;    // focusing parameter of the system
};

/// y = k*^2 w0^2 R^2 / (2 f^2).
double y_parameter(const OpticalSystem& sys);
double focusing_parameter(double k, double w0, double aperture_radius, double focal_length);

double coupling_decay_rate(const OpticalSystem& sys, double k);
double coupling_chirp_rate(const OpticalSystem& sys, double k);

CouplingResult coupling_closed(const OpticalSystem& sys, double k);

/// Large-aperture limit of coupling_closed: the same expression with the
/// aperture factor 1 - exp((-A + iB) R^2) replaced by 1.
Complex coupling_plateau(const OpticalSystem& sys, double k);

/// Overlap integral of incident_mode and fiber_mode over the image plane by
/// polar quadrature. The disk is truncated at max(8 w0, 4 x first dark ring);
/// beyond 8 w0 the fiber mode has fallen by exp(-32), so the neglected tail is
/// below 1e-13 of the overlap for any field bounded by its axial value.
Complex coupling_overlap_numeric(const OpticalSystem& sys, double k,
                                 const QuadratureSpec& spec = {});

}  // namespace fibercouple
