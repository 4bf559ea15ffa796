#include "fibercouple/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace fibercouple {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
        throw std::invalid_argument(
            "quadrature spec requires abs_tol > 0, rel_tol > 0, max_subdivisions >= 1");
    }
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    Complex value;
    double error;
    bool at_roundoff = false;  // error estimate is the round-off floor
};

struct ByError {
    bool operator()(const Segment& a, const Segment& b) const { return a.error < b.error; }
};

Segment kronrod15(const RealToComplex& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const Complex fc = f(center);
    Complex kronrod = fc * kWgk[7];
    Complex gauss = fc * kWg[3];
    std::array<Complex, 7> f_left{};
    std::array<Complex, 7> f_right{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f_left[j] = f(center - dx);
        f_right[j] = f(center + dx);
        const Complex pair = f_left[j] + f_right[j];
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }

    // QUADPACK error heuristic applied to the complex modulus.
    const Complex mean = 0.5 * kronrod;
    double resasc = kWgk[7] * std::abs(fc - mean);
    double resabs = kWgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));
        resabs += kWgk[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
    }
    resasc *= std::abs(half);
    resabs *= std::abs(half);

    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    bool at_roundoff = false;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        const double floor = 50.0 * eps * resabs;
        if (floor >= err) {
            err = floor;
            at_roundoff = true;
        }
    }

    const Complex value = kronrod * half;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        std::ostringstream msg;
        msg << "non-finite integrand on [" << lo << ", " << hi << "]";
        throw std::domain_error(msg.str());
    }
    return {lo, hi, value, err, at_roundoff};
}

}  // namespace

QuadratureResult integrate_1d(const RealToComplex& f, double lo, double hi,
                              const QuadratureSpec& spec) {
    spec.validate();
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("integrate_1d requires finite lo < hi");
    }

    std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
    Segment first = kronrod15(f, lo, hi);
    Complex total = first.value;
    double total_err = first.error;
    heap.push(first);

    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(lo), std::abs(hi));

    auto converged = [&] {
        return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    };

    while (!converged()) {
        if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature did not converge within " << spec.max_subdivisions
                << " subdivisions (estimate " << total << ", error " << total_err << ")";
            throw ConvergenceError(msg.str(), total, total_err);
        }
        Segment worst = heap.top();
        // Largest remaining error is already at machine precision.
        if (worst.at_roundoff) break;
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (worst.hi - worst.lo <= min_width) {
            std::ostringstream msg;
            msg << "quadrature interval underflow near x = " << mid << " (estimate "
                << total << ", error " << total_err << ")";
            throw ConvergenceError(msg.str(), total, total_err);
        }
        Segment left = kronrod15(f, worst.lo, mid);
        Segment right = kronrod15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the partition to shed the drift of incremental updates.
    QuadratureResult result;
    result.subdivisions = static_cast<int>(heap.size());
    std::vector<Segment> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    for (const auto& s : parts) {
        result.value += s.value;
        result.error += s.error;
    }
    return result;
}

QuadratureResult integrate_polar(const PolarIntegrand& f, double r_max,
                                 const QuadratureSpec& spec) {
    if (!(r_max > 0.0) || !std::isfinite(r_max)) {
        throw std::invalid_argument("integrate_polar requires finite r_max > 0");
    }
    // The angular rule runs a hundredfold tighter so its jitter stays below
    // the radial tolerance.
    QuadratureSpec inner = spec;
    inner.abs_tol = spec.abs_tol * 1e-2;
    inner.rel_tol = spec.rel_tol * 1e-2;

    auto radial = [&](double r) -> Complex {
        const auto ring = integrate_1d([&](double theta) { return f(r, theta); }, 0.0,
                                       kTwoPi, inner);
        return r * ring.value;
    };
    return integrate_1d(radial, 0.0, r_max, spec);
}

double gaussian_truncation_radius(double sigma, double floor) {
    if (!(sigma > 0.0) || !(floor > 0.0 && floor < 1.0)) {
        throw std::invalid_argument("gaussian_truncation_radius needs sigma > 0, 0 < floor < 1");
    }
    return sigma * std::sqrt(-2.0 * std::log(floor));
}

namespace {

constexpr double kAsymptoticThreshold = 25.0;

// Miller backward recurrence normalised by J0 + 2 sum J_2k = 1.
void bessel_miller(double x, double& j0, double& j1) {
    const double ax = std::abs(x);
    int start = static_cast<int>(ax + 30.0 + 8.0 * std::cbrt(ax));
    start += start % 2;

    constexpr double big = 1e250;
    double next = 0.0;  // J_{n+1}
    double cur = 1.0;  // J_n, arbitrary scale
    double norm = 0.0;
    double val0 = 0.0;
    double val1 = 0.0;
    for (int n = start; n > 0; --n) {
        const double prev = (2.0 * n / ax) * cur - next;  // J_{n-1}
        next = cur;
        cur = prev;
        if (std::abs(cur) > big) {
            cur /= big;
            next /= big;
            norm /= big;
            val1 /= big;
        }
        // cur now holds J_{n-1}
        if (n - 1 == 1) val1 = cur;
        if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * cur;
    }
    val0 = cur;
    norm += val0;
    j0 = val0 / norm;
    j1 = val1 / norm;
}

// Hankel asymptotic expansion, order nu in {0, 1}, x >= kAsymptoticThreshold.
double bessel_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) > last) break;  // series has started to diverge
        last = std::abs(term);
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            case 0: p += term; break;
        }
        if (last < 1e-18) break;
    }
    // cos(x - phase) and sin(x - phase) expanded to keep full precision in x.
    const double phase = (0.5 * nu + 0.25) * kPi;
    const double c = std::cos(x) * std::cos(phase) + std::sin(x) * std::sin(phase);
    const double s = std::sin(x) * std::cos(phase) - std::cos(x) * std::sin(phase);
    return std::sqrt(2.0 / (kPi * x)) * (p * c - q * s);
}

}  // namespace

double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax == 0.0) return 1.0;
    if (ax < 1e-8) return 1.0 - 0.25 * ax * ax;
    if (ax >= kAsymptoticThreshold) return bessel_asymptotic(0, ax);
    double j0 = 0.0;
    double j1 = 0.0;
    bessel_miller(ax, j0, j1);
    return j0;
}

double bessel_j1(double x) {
    const double ax = std::abs(x);
    const double sign = x < 0.0 ? -1.0 : 1.0;
    if (ax == 0.0) return 0.0;
    if (ax < 1e-8) return sign * 0.5 * ax;
    if (ax >= kAsymptoticThreshold) return sign * bessel_asymptotic(1, ax);
    double j0 = 0.0;
    double j1 = 0.0;
    bessel_miller(ax, j0, j1);
    return sign * j1;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_root requires tol > 0");
    if (lo > hi) std::swap(lo, hi);
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (!(f_lo * f_hi < 0.0)) {
        std::ostringstream msg;
        msg << "find_root: no sign change on [" << lo << ", " << hi << "] (f = " << f_lo
            << ", " << f_hi << ")";
        throw BracketError(msg.str());
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace fibercouple
