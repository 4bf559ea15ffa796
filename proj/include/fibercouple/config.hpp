#pragma once

// Flat `key = value` run configuration. Units are part of every key name.
//
//   wavelength_m, focal_length_m, aperture_radius_m          required
//   crystal_length_m, pump_waist_m, dispersion_coeff_s_per_m  required
//   cone_angle_rad, group_index, bandwidth_rad_per_s          required
//   image_distance_m       optional, defaults to focal_length_m
//   lens_distance_m        optional, defaults to focal_length_m
//   fiber_mode_radius_m    optional, defaults to the 95% optimal radius
//   abs_tol, rel_tol, max_subdivisions, output_path           optional
//
// `#` starts a comment. Unknown or repeated keys are errors.

#include "fibercouple/numerics.hpp"
#include "fibercouple/optics_model.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fibercouple {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    OpticalSystem system;
    SourceParams source;
    QuadratureSpec quadrature;
    std::optional<std::string> output_path;

    bool image_distance_defaulted = false;
    bool lens_distance_defaulted = false;
    bool fiber_mode_radius_defaulted = false;
};

/// Target fraction used to pick the fiber radius when none is configured.
inline constexpr double kDefaultTargetFraction = 0.95;

RunConfig parse_config(std::istream& in, std::string_view origin = "<config>");
RunConfig parse_config_text(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace fibercouple
