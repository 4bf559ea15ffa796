#include "fibercouple/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace fibercouple {
namespace {

TEST(Integrate1d, Polynomial) {
    const auto r = integrate_1d([](double x) { return Complex(x * x); }, 0.0, 1.0);
    EXPECT_NEAR(r.value.real(), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.value.imag(), 0.0, 1e-15);
    EXPECT_LE(r.error, std::max(1e-12, 1e-10 * std::abs(r.value)));
}

TEST(Integrate1d, GaussianHalfLine) {
    const auto r = integrate_1d([](double x) { return Complex(std::exp(-x * x)); }, 0.0, 8.0);
    EXPECT_NEAR(r.value.real(), 0.886226925453, 1e-11);
    EXPECT_NEAR(r.value.real(), std::sqrt(kPi) / 2.0, 1e-12);
}

TEST(Integrate1d, ComplexExponential) {
    const auto r = integrate_1d([](double x) { return std::exp(Complex(0.0, x)); }, 0.0, kPi);
    EXPECT_NEAR(r.value.real(), 0.0, 1e-12);
    EXPECT_NEAR(r.value.imag(), 2.0, 1e-12);
}

TEST(Integrate1d, Deterministic) {
    auto f = [](double x) { return std::exp(Complex(-x, 30.0 * x * x)); };
    const auto a = integrate_1d(f, 0.0, 3.0);
    const auto b = integrate_1d(f, 0.0, 3.0);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error, b.error);
}

TEST(Integrate1d, ConvergenceFailureCarriesEstimate) {
    QuadratureSpec tight{1e-300, 1e-300, 4};
    auto f = [](double x) { return Complex(std::sin(50.0 * x)); };
    try {
        integrate_1d(f, 0.0, 10.0, tight);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.error_bound(), 0.0);
        EXPECT_TRUE(std::isfinite(e.best_estimate().real()));
    }
}

TEST(Integrate1d, RejectsBadArguments) {
    auto f = [](double) { return Complex(1.0); };
    EXPECT_THROW(integrate_1d(f, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(integrate_1d(f, 0.0, 1.0, QuadratureSpec{0.0, 1e-10, 10}), std::invalid_argument);
    EXPECT_THROW(integrate_1d(f, 0.0, 1.0, QuadratureSpec{1e-12, 1e-10, 0}), std::invalid_argument);
}

TEST(Integrate1d, NonFiniteIntegrandIsReported) {
    auto f = [](double x) { return Complex(1.0 / (x - 0.5)); };
    EXPECT_THROW(integrate_1d(f, 0.0, 1.0), std::domain_error);
}

// Random cubic polynomials with complex coefficients.
Complex poly(const std::array<Complex, 4>& c, double x) {
    return c[0] + x * (c[1] + x * (c[2] + x * c[3]));
}

TEST(Integrate1dProperty, Linearity) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    const QuadratureSpec spec;
    for (int trial = 0; trial < 50; ++trial) {
        std::array<Complex, 4> p{}, q{};
        for (int i = 0; i < 4; ++i) {
            p[i] = {coef(rng), coef(rng)};
            q[i] = {coef(rng), coef(rng)};
        }
        const Complex alpha(coef(rng), coef(rng));
        const Complex beta(coef(rng), coef(rng));
        const auto fp = integrate_1d([&](double x) { return poly(p, x); }, -1.0, 2.0).value;
        const auto fq = integrate_1d([&](double x) { return poly(q, x); }, -1.0, 2.0).value;
        const auto combo =
            integrate_1d([&](double x) { return alpha * poly(p, x) + beta * poly(q, x); }, -1.0, 2.0)
                .value;
        const double tol = 10.0 * std::max(spec.abs_tol, spec.rel_tol * std::abs(combo));
        EXPECT_LE(std::abs(combo - (alpha * fp + beta * fq)), tol);
    }
}

TEST(Integrate1dProperty, IntervalAdditivity) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> point(-2.0, 2.0);
    auto f = [](double x) { return std::exp(Complex(-0.5 * x * x, 3.0 * x)); };
    for (int trial = 0; trial < 50; ++trial) {
        double a = point(rng), b = point(rng), c = point(rng);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-3 || c - b < 1e-3) continue;
        const auto whole = integrate_1d(f, a, c).value;
        const auto parts = integrate_1d(f, a, b).value + integrate_1d(f, b, c).value;
        EXPECT_LE(std::abs(whole - parts), 10.0 * std::max(1e-12, 1e-10 * std::abs(whole)));
    }
}

TEST(IntegratePolar, UnitDiskArea) {
    const auto r = integrate_polar([](double, double) { return Complex(1.0); }, 1.0);
    EXPECT_NEAR(r.value.real(), kPi, 1e-10);
}

TEST(IntegratePolar, GaussianOverPlane) {
    const double r_max = gaussian_truncation_radius(1.0 / std::sqrt(2.0));
    const auto r = integrate_polar([](double rr, double) { return Complex(std::exp(-rr * rr)); }, r_max);
    EXPECT_NEAR(r.value.real(), kPi, 1e-10);
}

TEST(IntegratePolar, AngularSymmetryCancels) {
    const auto r = integrate_polar([](double, double t) { return Complex(std::cos(t)); }, 1.0);
    EXPECT_NEAR(std::abs(r.value), 0.0, 1e-12);
}

TEST(IntegratePolar, RadialMatchesOneDimensional) {
    auto g = [](double r) { return std::exp(Complex(-r, 2.0 * r * r)); };
    const auto polar = integrate_polar([&](double r, double) { return g(r); }, 2.0).value;
    const auto line = integrate_1d([&](double r) { return r * g(r); }, 0.0, 2.0).value;
    EXPECT_LE(std::abs(polar - kTwoPi * line), 2e-10 * std::abs(polar) + 2e-12);
}

TEST(IntegratePolar, RejectsNonPositiveRadius) {
    EXPECT_THROW(integrate_polar([](double, double) { return Complex(1.0); }, 0.0),
                 std::invalid_argument);
}

TEST(Bessel, ValuesAtOrigin) {
    EXPECT_EQ(bessel_j0(0.0), 1.0);
    EXPECT_EQ(bessel_j1(0.0), 0.0);
}

TEST(Bessel, FirstZeroOfJ1) {
    // Refine the root with bisection on our own J1 evaluation.
    const double root = find_root(bessel_j1, 3.0, 4.5, 1e-14);
    EXPECT_NEAR(root, 3.8317059702, 1e-9);
    EXPECT_NEAR(bessel_j1(3.8317059702), 0.0, 1e-9);
}

TEST(Bessel, MatchesLibstdcxxReference) {
    // std::cyl_bessel_j is an independent implementation used only as a check.
    double worst = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double x = 100.0 * i / 20000.0;
        worst = std::max(worst, std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
        worst = std::max(worst, std::abs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Bessel, Parity) {
    for (double x : {0.3, 2.0, 17.5, 40.0}) {
        EXPECT_EQ(bessel_j0(-x), bessel_j0(x));
        EXPECT_EQ(bessel_j1(-x), -bessel_j1(x));
    }
}

TEST(Bessel, J1IsMinusDerivativeOfJ0) {
    const double h = 1e-6;
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double derivative = (bessel_j0(x + h) - bessel_j0(x - h)) / (2.0 * h);
        EXPECT_LT(std::abs(bessel_j1(x) + derivative), 1e-8) << "x = " << x;
    }
}

TEST(FindRoot, Linear) {
    EXPECT_NEAR(find_root([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-12), 1.0, 1e-12);
}

TEST(FindRoot, SquareRootOfTwo) {
    EXPECT_NEAR(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12), 1.41421356, 1e-8);
}

TEST(FindRoot, CountRateInversion) {
    auto f = [](double y) { return std::pow(1.0 - std::exp(-y), 4) - 0.95; };
    const double y = find_root(f, 0.1, 50.0, 1e-12);
    EXPECT_NEAR(y, 4.3634, 1e-3);
    EXPECT_NEAR(y, 4.36289442040205, 1e-10);  // -ln(1 - 0.95^(1/4))
}

TEST(FindRoot, NoSignChange) {
    EXPECT_THROW(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-9), BracketError);
}

}  // namespace
}  // namespace fibercouple
