#include "fibercouple/config.hpp"

#include "fibercouple/pair_rate.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace fibercouple {

namespace {

constexpr std::array<std::string_view, 9> kRequiredKeys = {
    "wavelength_m",   "focal_length_m",           "aperture_radius_m",
    "crystal_length_m", "pump_waist_m",            "dispersion_coeff_s_per_m",
    "cone_angle_rad", "group_index",              "bandwidth_rad_per_s",
};

constexpr std::array<std::string_view, 7> kOptionalKeys = {
    "image_distance_m", "lens_distance_m", "fiber_mode_radius_m", "abs_tol",
    "rel_tol",          "max_subdivisions", "output_path",
};

bool known_key(std::string_view key) {
    return std::find(kRequiredKeys.begin(), kRequiredKeys.end(), key) != kRequiredKeys.end() ||
           std::find(kOptionalKeys.begin(), kOptionalKeys.end(), key) != kOptionalKeys.end();
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    int line;
};

class Reader {
public:
    Reader(std::map<std::string, Entry> entries, std::string origin)
        : entries_(std::move(entries)), origin_(std::move(origin)) {}

    bool has(std::string_view key) const { return entries_.count(std::string(key)) != 0; }

    double number(std::string_view key) const {
        const auto it = entries_.find(std::string(key));
        if (it == entries_.end()) {
            throw ConfigError(origin_ + ": missing required key '" + std::string(key) + "'");
        }
        const std::string& text = it->second.value;
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
            std::ostringstream msg;
            msg << origin_ << ":" << it->second.line << ": key '" << key
                << "' expects a finite number, got '" << text << "'";
            throw ConfigError(msg.str());
        }
        return value;
    }

    std::optional<double> optional_number(std::string_view key) const {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    std::optional<std::string> optional_text(std::string_view key) const {
        const auto it = entries_.find(std::string(key));
        if (it == entries_.end()) return std::nullopt;
        return it->second.value;
    }

    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, Entry> entries_;
    std::string origin_;
};

}  // namespace

RunConfig parse_config(std::istream& in, std::string_view origin) {
    std::map<std::string, Entry> entries;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        std::ostringstream where;
        where << origin << ":" << line_no << ": ";
        if (eq == std::string_view::npos) {
            throw ConfigError(where.str() + "expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(where.str() + "empty key");
        if (!known_key(key)) throw ConfigError(where.str() + "unknown key '" + key + "'");
        if (value.empty()) throw ConfigError(where.str() + "key '" + key + "' has no value");
        if (!entries.emplace(key, Entry{value, line_no}).second) {
            throw ConfigError(where.str() + "key '" + key + "' given more than once");
        }
    }

    const Reader r(std::move(entries), std::string(origin));
    for (auto key : kRequiredKeys) r.number(key);  // reports the first missing key

    try {
        OpticalSystemParams p;
        p.wavelength = r.number("wavelength_m");
        p.focal_length = r.number("focal_length_m");
        p.aperture_radius = r.number("aperture_radius_m");
        p.image_distance = r.optional_number("image_distance_m").value_or(p.focal_length);
        p.lens_distance = r.optional_number("lens_distance_m").value_or(p.focal_length);

        const auto w0 = r.optional_number("fiber_mode_radius_m");
        if (w0) {
            p.fiber_mode_radius = *w0;
        } else {
            // Placeholder radius so the system validates; replaced below.
            p.fiber_mode_radius = p.wavelength;
        }
        OpticalSystem sys(p);
        if (!w0) sys = sys.with_fiber_mode_radius(optimal_fiber_radius(sys, kDefaultTargetFraction));

        SourceParams src;
        src.crystal_length = r.number("crystal_length_m");
        src.pump_waist = r.number("pump_waist_m");
        src.dispersion_coeff = r.number("dispersion_coeff_s_per_m");
        src.cone_angle = r.number("cone_angle_rad");
        src.group_index = r.number("group_index");
        src.bandwidth = r.number("bandwidth_rad_per_s");
        src.validate();

        QuadratureSpec spec;
        spec.abs_tol = r.optional_number("abs_tol").value_or(spec.abs_tol);
        spec.rel_tol = r.optional_number("rel_tol").value_or(spec.rel_tol);
        if (const auto n = r.optional_number("max_subdivisions")) {
            if (*n != std::floor(*n) || *n < 1.0 || *n > 1e9) {
                throw std::invalid_argument("max_subdivisions must be a positive integer");
            }
            spec.max_subdivisions = static_cast<int>(*n);
        }
        spec.validate();

        RunConfig cfg{sys, src, spec, r.optional_text("output_path")};
        cfg.image_distance_defaulted = !r.has("image_distance_m");
        cfg.lens_distance_defaulted = !r.has("lens_distance_m");
        cfg.fiber_mode_radius_defaulted = !w0;
        return cfg;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(r.origin() + ": " + e.what());
    }
}

RunConfig parse_config_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    return parse_config(in, path.string());
}

}  // namespace fibercouple
