#pragma once

// Numerical kernels shared by the physics modules: adaptive Gauss-Kronrod
// quadrature for complex-valued integrands, a polar product rule, Bessel
// functions of order 0 and 1, and bisection root finding.

#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fibercouple {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    /// Throws std::invalid_argument unless all three fields are positive.
    void validate() const;
};

struct QuadratureResult {
    Complex value;
    double error = 0.0;     // estimated absolute error of value
    int subdivisions = 0;   // number of intervals in the final partition
};

/// Thrown when the adaptive scheme exhausts its subdivision budget. Carries the
/// best estimate reached so callers can report it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Complex best, double error_bound)
        : std::runtime_error(what), best_(best), error_bound_(error_bound) {}

    Complex best_estimate() const noexcept { return best_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    Complex best_;
    double error_bound_;
};

class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using RealToComplex = std::function<Complex(double)>;
using PolarIntegrand = std::function<Complex(double r, double theta)>;

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [lo, hi].
/// Terminates once the summed error estimate is at most
/// max(abs_tol, rel_tol * |estimate|); throws ConvergenceError otherwise.
QuadratureResult integrate_1d(const RealToComplex& f, double lo, double hi,
                              const QuadratureSpec& spec = {});

/// Integral of f(r, theta) r dtheta dr over the disk of radius r_max, with an
/// adaptive angular rule nested inside an adaptive radial rule.
QuadratureResult integrate_polar(const PolarIntegrand& f, double r_max,
                                 const QuadratureSpec& spec = {});

/// Half-width at which a Gaussian exp(-x^2 / (2 sigma^2)) has dropped to
/// `floor` of its peak.
double gaussian_truncation_radius(double sigma, double floor = 1e-18);

// Absolute accuracy better than 1e-12 for |x| <= 100.
double bessel_j0(double x);
double bessel_j1(double x);

/// Bisection on a sign-changing bracket; stops when the bracket is no wider
/// than tol. Throws BracketError when f(lo) and f(hi) share a sign.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

}  // namespace fibercouple
