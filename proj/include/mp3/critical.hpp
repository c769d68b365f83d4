#pragma once

#include "mp3/params.hpp"

// Power-law analysis of the critical point t_c = a of the r = 1 family:
// how the gap edge x_left closes, how the density diverges at the
// origin, and the scaling relation tying the exponents together.
namespace mp3 {

// Least-squares power law y = amplitude * x^exponent fitted on logs.
// Fits with r_squared below 0.999 throw FitRejected.
struct PowerFit {
    double exponent;
    double amplitude;
    double r_squared;
    double window_lo;
    double window_hi;
    int n_points;
};

// The critical time of the r = 1 family equals a.  Verified on return:
// the gap is open at 0.99a and closed at 1.01a.  Requires a > 0.
double critical_time(double a);

// x_left(t) as t -> t_c from below, fitted over n_points (>= 8)
// log-spaced eps = a - t in [1e-4, 1e-2] a.  Exponent -> 3,
// amplitude -> 4 / (27 a^2).
PowerFit fit_edge_vanishing(double a, int n_points = 12);

// Square-root vanishing of the density at a detached left edge,
// rho(x_left + delta) ~ C1 sqrt(delta).  The window tops out at both
// 1e-5 of the bulk span and 1e-2 of x_left itself, so the fit stays
// inside the square-root regime arbitrarily close to criticality.
PowerFit fit_edge_exponent_subcritical(const Params& p);

// Divergence of the density at the origin for r = 1, t >= t_c:
// exponent -1/3 at t = t_c, -1/2 above.  The window ends below the
// crossover scale (t - a)^3 / (4at) that separates the two regimes.
PowerFit fit_origin_exponent(const Params& p);

// Amplitude C2(t) of the x^{-1/2} law as t -> t_c from above, scanned
// over t - t_c in [1e-3, 1e-2] a.  Exponent -> 1/2, amplitude ->
// 1/(pi t_c).  C2 itself is extracted with the exponent pinned to
// -1/2 (a free intercept would leak slope noise across many decades).
PowerFit fit_origin_amplitude_supercritical(double a);

// Amplitude C1(t) of the edge square-root law as t -> t_c from below,
// scanned over a - t in [1e-3, 1e-2] a.  Exponent -> -5/2, amplitude
// -> 9a / (4 pi).  C1 is extracted with the exponent pinned to 1/2.
PowerFit fit_edge_amplitude_subcritical(double a);

// |nu - (beta2 + gamma1)| from the fitted values; the exact exponents
// satisfy 3 = 1/2 + 5/2.
double scaling_relation_check(double a);

// All six fits plus the scaling gap in one pass (CLI convenience).
struct CriticalReport {
    double a;
    double t_c;
    PowerFit nu;      // edge closure, exponent ~ +3
    PowerFit beta1;   // edge square root below t_c, ~ +1/2
    PowerFit beta2;   // origin amplitude above t_c, ~ +1/2
    PowerFit gamma1;  // edge amplitude divergence below t_c, ~ -5/2
    PowerFit gamma2;  // origin divergence at t_c, ~ -1/3
    PowerFit gamma3;  // origin divergence above t_c, ~ -1/2
    double scaling_gap;
};

CriticalReport critical_report(double a);

}  // namespace mp3
