#pragma once

// Two-photon detection amplitude and pair count rate for collinear type-I
// down-conversion coupled into two identical single-mode fibers placed in the
// focal plane of the collection lens.
//
// Rates are always fractions of the plateau reached when the fiber mode is
// much wider than the focal spot; absolute fluxes are not modelled.

#include "fibercouple/coupling.hpp"
#include "fibercouple/numerics.hpp"
#include "fibercouple/optics_model.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibercouple {

/// Exponent of the aperture factor expanded to first order in the
/// signal-idler detuning x: a + b x.
struct AbCoefficients {
    Complex a;  // dimensionless
    Complex b;  // seconds
};

enum class AbConvention {
    /// a and b taken from the exact decay and chirp rates and their
    /// first-order dispersion derivative. Re(a) = -y in the paraxial regime.
    derived,
    /// The literal printed expressions, which carry one power of k* fewer than
    /// `derived`. Kept for comparison only.
    as_printed,
};

class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Transverse pump factor exp(-w_p^2 nu^2 (w1 - w2)^2 sin^2(theta) / 4).
double pump_spectral_factor(const SourceParams& src, double omega1, double omega2);

/// sinc(delta_kz * L / 2) with sinc(0) = 1.
double phase_matching_sinc(double delta_kz, double crystal_length);

/// Requires the fiber in the focal plane; throws ConfigurationError otherwise.
AbCoefficients ab_coefficients(const OpticalSystem& sys, const SourceParams& src,
                               AbConvention convention = AbConvention::derived);

/// Detuning integral of exp(-i x tau) exp(-x^2 / Delta^2) (1 - exp(a + b x))^2.
Complex pair_amplitude(const AbCoefficients& ab, double bandwidth, double tau,
                       const QuadratureSpec& spec = {});

/// tau-integrated |amplitude|^2 reduced to a single detuning integral,
/// normalised by its a -> -inf, b -> 0 limit.
double count_rate_numeric(const AbCoefficients& ab, double bandwidth,
                          const QuadratureSpec& spec = {});

/// Closed-form rate 1 - 4e^-y + 6e^-2y - 4e^-3y + e^-4y, in [0, 1).
double count_rate_closed(double y);

/// The five-term expansion evaluated literally, for any y.
double count_rate_expansion(double y);

/// Focusing parameter at which count_rate_closed reaches target_fraction.
double optimal_focusing_parameter(double target_fraction);

/// Smallest fiber mode radius whose closed-form rate reaches target_fraction
/// of the plateau. Throws std::domain_error unless 0 < target_fraction < 1.
double optimal_fiber_radius(const OpticalSystem& sys, double target_fraction);

/// The Rayleigh width f lambda / (pi R) of the aperture's focal spot.
double rayleigh_width(const OpticalSystem& sys);

/// Rate computed from the product of closed-form coupling coefficients at the
/// signal and idler wavenumbers k* +- n_g x / c, with the pump and
/// phase-matching factors included, bypassing the a, b expansion entirely.
double count_rate_full_numeric(const OpticalSystem& sys, const SourceParams& src,
                               const QuadratureSpec& spec = {});

struct RateRow {
    double w0 = 0.0;
    double y = 0.0;
    double c_closed = 0.0;
    double c_numeric = 0.0;
    double rel_err = 0.0;
};

struct RateCurve {
    std::vector<RateRow> rows;
};

/// Raised by sweep_rate_curve when one grid point fails; identifies the row.
class SweepError : public std::runtime_error {
public:
    SweepError(std::size_t row, double w0, const std::string& cause);

    std::size_t row() const noexcept { return row_; }
    double w0() const noexcept { return w0_; }

private:
    std::size_t row_;
    double w0_;
};

RateCurve sweep_rate_curve(const OpticalSystem& sys, const SourceParams& src, double w0_min,
                           double w0_max, int steps, const QuadratureSpec& spec = {});

}  // namespace fibercouple
