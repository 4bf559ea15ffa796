#include "fibercouple/pair_rate.hpp"

#include <cmath>
#include <sstream>

namespace fibercouple {

namespace {

void require_bandwidth(double bandwidth) {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw std::invalid_argument("bandwidth must be finite and positive");
    }
}

void require_focal_plane(const OpticalSystem& sys, const char* who) {
    if (!sys.at_focal_plane()) {
        std::ostringstream msg;
        msg << who << " requires the fiber in the focal plane (image_distance "
            << sys.image_distance() << " m != focal_length " << sys.focal_length() << " m)";
        throw ConfigurationError(msg.str());
    }
}

// Detuning is integrated in units of the filter bandwidth, u = x / Delta.
// exp(-u^2) and exp(-2u^2) are Gaussians of sigma 1/sqrt(2) and 1/2.
const double kAmplitudeHalfWidth = gaussian_truncation_radius(1.0 / std::sqrt(2.0));
const double kRateHalfWidth = gaussian_truncation_radius(0.5);

}  // namespace

double pump_spectral_factor(const SourceParams& src, double omega1, double omega2) {
    const double s = std::sin(src.cone_angle);
    const double arg = src.pump_waist * src.dispersion_coeff * (omega1 - omega2) * s;
    return std::exp(-0.25 * arg * arg);
}

double phase_matching_sinc(double delta_kz, double crystal_length) {
    if (!(crystal_length > 0.0)) {
        throw std::invalid_argument("phase_matching_sinc requires crystal_length > 0");
    }
    const double u = 0.5 * delta_kz * crystal_length;
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
    return std::sin(u) / u;
}

AbCoefficients ab_coefficients(const OpticalSystem& sys, const SourceParams& src,
                               AbConvention convention) {
    require_focal_plane(sys, "ab_coefficients");
    src.validate();

    const double k = sys.wavenumber_degenerate();
    const double f = sys.focal_length();
    const double w2 = sys.fiber_mode_radius() * sys.fiber_mode_radius();
    const double R2 = sys.aperture_radius() * sys.aperture_radius();
    const double dk_dx = src.group_index / src.light_speed;

    if (convention == AbConvention::as_printed) {
        const Complex a(-k * w2 / (2.0 * f * f), -k * w2 * w2 / (2.0 * f * f * f));
        const Complex b(-k * w2 * dk_dx / (f * f), -3.0 * dk_dx * k * w2 * w2 / (2.0 * f * f * f));
        return {a * R2, b * R2};
    }

    const double dp = sys.image_distance();
    const double denom = dp * dp + k * k * w2 * w2;
    const double dA_dk = k * w2 * dp * dp / (denom * denom);
    const double dB_dk = (f - dp) / (2.0 * dp * f) -
                         (3.0 * k * k * w2 * w2 * dp * dp + k * k * k * k * w2 * w2 * w2 * w2) /
                             (2.0 * dp * denom * denom);

    const Complex a(-coupling_decay_rate(sys, k), coupling_chirp_rate(sys, k));
    const Complex b(-dA_dk, dB_dk);
    return {a * R2, b * (R2 * dk_dx)};
}

Complex pair_amplitude(const AbCoefficients& ab, double bandwidth, double tau,
                       const QuadratureSpec& spec) {
    require_bandwidth(bandwidth);
    const Complex b_scaled = ab.b * bandwidth;
    const double phase_rate = bandwidth * tau;
    const auto r = integrate_1d(
        [&](double u) {
            const Complex aperture = 1.0 - std::exp(ab.a + b_scaled * u);
            return std::polar(std::exp(-u * u), -phase_rate * u) * aperture * aperture;
        },
        -kAmplitudeHalfWidth, kAmplitudeHalfWidth, spec);
    return r.value * bandwidth;
}

double count_rate_numeric(const AbCoefficients& ab, double bandwidth, const QuadratureSpec& spec) {
    require_bandwidth(bandwidth);
    const Complex b_scaled = ab.b * bandwidth;
    const auto r = integrate_1d(
        [&](double u) {
            const double m = std::norm(1.0 - std::exp(ab.a + b_scaled * u));
            return Complex(std::exp(-2.0 * u * u) * m * m);
        },
        -kRateHalfWidth, kRateHalfWidth, spec);
    return r.value.real() / std::sqrt(0.5 * kPi);
}

double count_rate_expansion(double y) {
    const double e = std::exp(-y);
    return 1.0 - 4.0 * e + 6.0 * e * e - 4.0 * e * e * e + e * e * e * e;
}

double count_rate_closed(double y) {
    if (!(y >= 0.0)) throw std::domain_error("count_rate_closed requires y >= 0");
    // The expansion loses all digits to cancellation as y -> 0; there the
    // equivalent fourth power of 1 - e^-y is evaluated instead.
    if (y < 0.5) return std::pow(-std::expm1(-y), 4);
    return count_rate_expansion(y);
}

double optimal_focusing_parameter(double target_fraction) {
    if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
        std::ostringstream msg;
        msg << "target fraction must lie in (0, 1), got " << target_fraction;
        throw std::domain_error(msg.str());
    }
    // count_rate_closed(64) rounds to 1, so [0, 64] brackets every target.
    return find_root([&](double y) { return count_rate_closed(y) - target_fraction; }, 0.0, 64.0,
                     1e-14);
}

double optimal_fiber_radius(const OpticalSystem& sys, double target_fraction) {
    const double y = optimal_focusing_parameter(target_fraction);
    return std::sqrt(2.0 * y) * sys.focal_length() /
           (sys.wavenumber_degenerate() * sys.aperture_radius());
}

double rayleigh_width(const OpticalSystem& sys) {
    return sys.focal_length() * sys.wavelength() / (kPi * sys.aperture_radius());
}

double count_rate_full_numeric(const OpticalSystem& sys, const SourceParams& src,
                               const QuadratureSpec& spec) {
    require_focal_plane(sys, "count_rate_full_numeric");
    src.validate();

    const double k0 = sys.wavenumber_degenerate();
    const double dk_du = src.group_index * src.bandwidth / src.light_speed;
    const double reference = std::norm(coupling_plateau(sys, k0));
    // Collinear, zero-mismatch phase matching.
    const double sinc2 = std::pow(phase_matching_sinc(0.0, src.crystal_length), 2);

    auto weight = [&](double u) {
        const double pump = pump_spectral_factor(src, u * src.bandwidth, -u * src.bandwidth);
        return std::exp(-2.0 * u * u) * pump * pump * sinc2;
    };

    const auto coupled = integrate_1d(
        [&](double u) {
            const double signal = std::norm(coupling_closed(sys, k0 + dk_du * u).beta) / reference;
            const double idler = std::norm(coupling_closed(sys, k0 - dk_du * u).beta) / reference;
            return Complex(weight(u) * signal * idler);
        },
        -kRateHalfWidth, kRateHalfWidth, spec);
    const auto plateau = integrate_1d(
        [&](double u) {
            const double signal = std::norm(coupling_plateau(sys, k0 + dk_du * u)) / reference;
            const double idler = std::norm(coupling_plateau(sys, k0 - dk_du * u)) / reference;
            return Complex(weight(u) * signal * idler);
        },
        -kRateHalfWidth, kRateHalfWidth, spec);
    return coupled.value.real() / plateau.value.real();
}

SweepError::SweepError(std::size_t row, double w0, const std::string& cause)
    : std::runtime_error([&] {
          std::ostringstream msg;
          msg << "row " << row << " (w0 = " << w0 << " m): " << cause;
          return msg.str();
      }()),
      row_(row),
      w0_(w0) {}

RateCurve sweep_rate_curve(const OpticalSystem& sys, const SourceParams& src, double w0_min,
                           double w0_max, int steps, const QuadratureSpec& spec) {
    if (!(w0_min > 0.0) || !(w0_min < w0_max) || !std::isfinite(w0_max)) {
        throw std::invalid_argument("sweep needs 0 < w0_min < w0_max");
    }
    if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");

    RateCurve curve;
    curve.rows.reserve(static_cast<std::size_t>(steps));
    const double step = (w0_max - w0_min) / (steps - 1);
    for (int i = 0; i < steps; ++i) {
        const double w0 = (i == steps - 1) ? w0_max : w0_min + i * step;
        try {
            const auto at = sys.with_fiber_mode_radius(w0);
            RateRow row;
            row.w0 = w0;
            row.y = y_parameter(at);
            row.c_closed = count_rate_closed(row.y);
            row.c_numeric = count_rate_numeric(ab_coefficients(at, src), src.bandwidth, spec);
            row.rel_err = std::abs(row.c_numeric - row.c_closed) / row.c_closed;
            curve.rows.push_back(row);
        } catch (const std::exception& e) {
            throw SweepError(static_cast<std::size_t>(i), w0, e.what());
        }
    }
    return curve;
}

}  // namespace fibercouple
