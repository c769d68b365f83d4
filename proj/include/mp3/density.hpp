#pragma once

#include <complex>

#include "mp3/params.hpp"

// Spectral density of the three-parameter Marchenko-Pastur family and
// the algebra behind it: the quartic-free support cubic S, the shifted
// Hilbert transform phi, the Hilbert transform R of the density, and
// the density itself in two algebraically independent forms.
namespace mp3 {

// Support cubic in x whose middle and largest real roots are the bulk
// edges.  Evaluated in nested (Horner) form; degenerates to a quadratic
// when a = 0 (the leading coefficient is 4a).
double eval_s(double x, const Params& p);

// Bulk support [x_left, x_right].  Closed forms for a = 0 (both edges)
// and r = 1 (root x = 0 splits off; the remaining quadratic is solved
// with a rationalized small root, so x_left stays accurate arbitrarily
// close to the critical time).  The general case solves the cubic and
// throws NoRealSupport, carrying the discriminant, if the three real
// roots needed to bound the bulk do not exist.  t = 0 collapses to the
// degenerate singleton {a}.
Support support(const Params& p);

// Cardano evaluation of phi = 2x(rtR - 1), the shifted Hilbert
// transform.  All three cube-root branches are formed; the one with
// the smallest |Im| is taken, which is provably unique strictly inside
// the bulk (the defining cubic has exactly one real root there).
struct PhiEval {
    double phi;
    std::complex<double> candidates[3];
    int branch;  // index into candidates
};

// hint, when given, breaks reality ties by |phi - *hint| (used by grid
// sweeps to keep the branch continuous in x).  Throws BranchFailure if
// no candidate is real to within 1e-7 * (1 + |phi|), BranchAmbiguity if
// several distinct real candidates qualify and no hint decides.
PhiEval eval_phi(double x, const Params& p, const double* hint = nullptr);

// Hilbert transform R(x) = Re G(x + i0) of the density.  Closed form
// (x + (r-1)t) / (2rtx) when a = 0, otherwise recovered from phi.  The
// result is verified against its defining cubic to 1e-10 relative.
double hilbert_r(double x, const Params& p);

// Density at x >= 0.  Zero outside the open bulk interval; inside, the
// radicand form sqrt(2(t - a + sqrt(D))x - phi^2) / (2 pi r t x) with
// D = (t-a)^2 - 4a*phi.  Radicands within -1e-10 * scale of zero are
// clamped (edge roundoff); more negative values throw BranchFailure.
double density(double x, const Params& p);

// Same density through the factored form (x - f_L)(f_R - x) built from
// complex square-root combinations of phi.  Kept as an independent
// cross-check of the radicand path.  The x-dependent factors f_L, f_R
// collapse to the support edges exactly when a = 0.
struct FactoredDensity {
    double f_left;
    double f_right;
    double rho;
};

FactoredDensity density_via_f(double x, const Params& p);

// Classic Marchenko-Pastur density (the t = 1, a = 0 member).
double density_mp_classic(double x, double r);

// Chiral (symmetrized square-root) companion: 2|x| density(x^2) with
// source a entering squared.  At x = 0 the finite limit is returned:
// zero below and at the critical time, 2 sqrt(t - a^2)/(pi r t) above.
double density_chiral(double x, const Params& p);

// Wigner semicircle on (-2, 2), the large-t limit of the chiral
// density in the scaled variable x / sqrt(t).
double density_wigner(double x);

// k-th moment of the density by double-exponential quadrature over the
// bulk; moment(0) = 1 and moment(1) = t + a serve as built-in checks.
double moment(int k, const Params& p);

}  // namespace mp3
