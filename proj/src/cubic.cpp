#include "mp3/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace mp3 {
namespace {

constexpr double kTiny = 1e-300;

// One or two guarded Newton steps against the original coefficients.
// Keeps the analytic root where the derivative is healthy, never moves
// more than the analytic estimate's own scale.
double polish(double c3, double c2, double c1, double c0, double x) {
    for (int i = 0; i < 2; ++i) {
        double f = eval_poly3(c3, c2, c1, c0, x);
        double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
        if (std::abs(df) < kTiny) break;
        double step = f / df;
        double cap = 0.1 * (std::abs(x) + 1e-30);
        if (std::abs(step) > cap) step = std::copysign(cap, step);
        x -= step;
    }
    return x;
}

}  // namespace

int solve_quadratic(double c2, double c1, double c0, double roots[2]) {
    if (c2 == 0.0) {
        if (c1 == 0.0) return 0;
        roots[0] = -c0 / c1;
        return 1;
    }
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return 0;
    double sq = std::sqrt(disc);
    // Avoid cancellation: compute the large-magnitude root first.
    double q = -0.5 * (c1 + std::copysign(sq, c1));
    double r0, r1;
    if (q == 0.0) {
        r0 = r1 = 0.0;
    } else {
        r0 = q / c2;
        r1 = c0 / q;
    }
    roots[0] = std::min(r0, r1);
    roots[1] = std::max(r0, r1);
    return 2;
}

int solve_cubic(double c3, double c2, double c1, double c0, double roots[3]) {
    // No relative smallness test here: the coefficients carry different
    // powers of x, so a genuine cubic with widely spread roots has
    // |c3| << |c0| and would be misclassified.
    if (c3 == 0.0) return solve_quadratic(c2, c1, c0, roots);

    double p = c2 / c3, q = c1 / c3, s = c0 / c3;
    // Depressed form y^3 + 3*third*y + 2*half with x = y - p/3.
    double third = q / 3.0 - p * p / 9.0;
    double half = p * p * p / 27.0 - p * q / 6.0 + s / 2.0;
    double disc = half * half + third * third * third;

    int n = 0;
    if (disc > 0.0) {
        // One real root; pair the radicals so the big one carries the
        // cancellation and the small one comes from u*v = -third.
        double sd = std::sqrt(disc);
        double big = std::cbrt(-half - std::copysign(sd, half));
        double other = (std::abs(big) > kTiny) ? -third / big : 0.0;
        roots[0] = big + other - p / 3.0;
        n = 1;
    } else {
        double m = std::sqrt(-third);
        double cosphi = (m > 0.0) ? half / (third * m) : 0.0;  // -half / m^3
        cosphi = std::clamp(cosphi, -1.0, 1.0);
        double phi = std::acos(cosphi) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots[k] = 2.0 * m * std::cos(phi - 2.0 * M_PI * k / 3.0) - p / 3.0;
        n = 3;
    }
    for (int i = 0; i < n; ++i) roots[i] = polish(c3, c2, c1, c0, roots[i]);
    std::sort(roots, roots + n);
    return n;
}

std::array<std::complex<double>, 3> cubic_roots(double c3, double c2,
                                                double c1, double c0) {
    double rr[3];
    int n = solve_cubic(c3, c2, c1, c0, rr);
    std::array<std::complex<double>, 3> out;
    if (n == 3) {
        for (int i = 0; i < 3; ++i) out[i] = rr[i];
        return out;
    }
    // One real root; deflate to a quadratic for the conjugate pair.
    double y = rr[0];
    double b = c2 / c3 + y;          // x^2 + b x + c after deflation
    double c = c1 / c3 + y * b;
    double disc = b * b - 4.0 * c;   // < 0 here
    double im = std::sqrt(std::max(-disc, 0.0)) / 2.0;
    out[0] = y;
    out[1] = std::complex<double>(-b / 2.0, im);
    out[2] = std::complex<double>(-b / 2.0, -im);
    return out;
}

double cubic_discriminant(double c3, double c2, double c1, double c0) {
    return 18.0 * c3 * c2 * c1 * c0 - 4.0 * c2 * c2 * c2 * c0 +
           c2 * c2 * c1 * c1 - 4.0 * c3 * c1 * c1 * c1 -
           27.0 * c3 * c3 * c0 * c0;
}

}  // namespace mp3
