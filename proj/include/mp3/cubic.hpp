#pragma once

#include <array>
#include <complex>

// Real-coefficient cubic and quadratic root finding.  The trigonometric
// (Viete) form is used when all roots are real, Cardano with a stable
// radical pairing otherwise, and every real root gets a Newton polish
// against the original coefficients.
namespace mp3 {

inline double eval_poly3(double c3, double c2, double c1, double c0, double x) {
    return ((c3 * x + c2) * x + c1) * x + c0;
}

// Real roots of c2 x^2 + c1 x + c0, ascending.  Returns the count.
int solve_quadratic(double c2, double c1, double c0, double roots[2]);

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending.  Returns the
// count (3, 2, 1 or 0).  Degenerate leading coefficients fall through
// to the quadratic / linear cases.  A double root is reported twice.
int solve_cubic(double c3, double c2, double c1, double c0, double roots[3]);

// All three roots over the complex numbers; requires c3 != 0.
// Real roots come first, an eventual conjugate pair last.
std::array<std::complex<double>, 3> cubic_roots(double c3, double c2,
                                                double c1, double c0);

// Discriminant of the cubic; negative iff exactly one real root.
double cubic_discriminant(double c3, double c2, double c1, double c0);

}  // namespace mp3
