#pragma once

#include <array>
#include <complex>

#include "mp3/params.hpp"

// Resolvent G(z) off the real axis and its boundary values.  G solves
//   z = 1/G + t/(1 - rtG) + a/(1 - rtG)^2
// and is pinned down among the three algebraic roots by the Herglotz
// property sign(Im G) = -sign(Im z).
namespace mp3 {

struct GreenResult {
    std::complex<double> g;
    double residual;  // |z - (1/G + t/(1-rtG) + a/(1-rtG)^2)|
};

struct LemmaResiduals {
    double eq1;  // real part of the boundary system
    double eq2;  // imaginary part, divided by I
};

// Newton continuation from the 1/z asymptotics: a leg at altitude
// ~1e6 walks to above Re z, then Im z descends geometrically so steps
// shrink with the distance to the real axis.  Steps double on trouble
// (64 up to 1024).  ContinuationFailure if Newton stalls;
// BranchAmbiguity if the tracked root leaves the Herglotz half-plane
// or breaks the Stieltjes bound |G| <= 1/dist(z, support).
GreenResult solve_green(std::complex<double> z, const Params& p);

// G(x + i0) by Richardson extrapolation over eps in {1e-4, 1e-5, 1e-6}
// (two stages, so the error is O(eps^3) of the largest eps).  i_part is
// +pi * density; values below 1e-8 are clamped to zero.
BoundaryValue boundary_value(double x, const Params& p);

// Central-difference residual of the evolution equation
//   dG/dt = -dG/dz + r (dG/dz - 2 z G dG/dz - G^2),
// O(h^2) in the step sizes.  Requires t - h_t > 0.
double pde_residual(std::complex<double> z, const Params& p, double h_t,
                    double h_z);

// Residuals of the two real boundary equations satisfied by
// (R, I) = (r_part, i_part), using A = 1/(R^2 + I^2) and
// B = 1/((1 - rtR)^2 + (rtI)^2).
LemmaResiduals lemma_residuals(double x, const Params& p,
                               const BoundaryValue& bv);

// All three roots of the real cubic satisfied by R at a point x > 0 of
// the real axis (diagnostic companion to hilbert_r).
std::array<std::complex<double>, 3> cubic_r_roots(double x, const Params& p);

}  // namespace mp3
