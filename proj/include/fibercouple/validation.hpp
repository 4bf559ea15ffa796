#pragma once

// Cross-checks between the closed-form results and their independent numeric
// routes, runnable against any configuration.

#include "fibercouple/numerics.hpp"
#include "fibercouple/optics_model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fibercouple {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string note;  // set when the check threw or its tolerance was relaxed
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;

    bool passed() const;
};

/// Paraxial ratio above which the closed-form rate is no longer expected to
/// track the numeric pipeline to 1e-3.
inline constexpr double kParaxialWarningThreshold = 1e-2;

ValidationReport run_validation(const OpticalSystem& sys, const SourceParams& src,
                                const QuadratureSpec& spec = {});

/// One `name status measured expected tolerance` line per check followed by
/// `RESULT pass|fail`.
void write_report(std::ostream& out, const ValidationReport& report);

}  // namespace fibercouple
