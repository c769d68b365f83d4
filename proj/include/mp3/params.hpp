#pragma once

#include <stdexcept>
#include <string>

// Parameter set for the three-parameter Marchenko-Pastur family:
// rectangularity r = N/M, evolution time t, initial spectral location a
// (the t = 0 law is a point mass at a).  The classic MP law is (r, 1, 0).
namespace mp3 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter or argument outside the domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// The support cubic has fewer than three real roots, so no bulk
// interval can be identified.
struct NoRealSupport : Error {
    double discriminant;
    NoRealSupport(const std::string& msg, double disc)
        : Error(msg), discriminant(disc) {}
};

// No candidate cube-root branch yields a real Hilbert transform.
struct BranchFailure : Error {
    using Error::Error;
};

// Adaptive quadrature failed to reach the requested accuracy.
struct QuadratureFailure : Error {
    using Error::Error;
};

// Newton continuation of the resolvent lost its root.
struct ContinuationFailure : Error {
    using Error::Error;
};

// The tracked resolvent branch stopped being the unique Herglotz root.
struct BranchAmbiguity : Error {
    using Error::Error;
};

// A power-law fit failed its goodness-of-fit threshold.
struct FitRejected : Error {
    double r_squared;
    FitRejected(const std::string& msg, double r2)
        : Error(msg), r_squared(r2) {}
};

// The Hermitian eigensolver did not converge on a sample.
struct EigensolverFailure : Error {
    long sample_index;
    EigensolverFailure(const std::string& msg, long index)
        : Error(msg), sample_index(index) {}
};

struct Params {
    double r;  // aspect ratio, 0 < r <= 1
    double t;  // time, t >= 0
    double a;  // initial condition location, a >= 0

    Params(double r_, double t_, double a_) : r(r_), t(t_), a(a_) {
        if (!(r > 0.0) || !(r <= 1.0))
            throw DomainError("Params: r must lie in (0, 1], got " + std::to_string(r));
        if (!(t >= 0.0))
            throw DomainError("Params: t must be >= 0, got " + std::to_string(t));
        if (!(a >= 0.0))
            throw DomainError("Params: a must be >= 0, got " + std::to_string(a));
    }
};

// Support interval [x_left, x_right] of the absolutely continuous part.
// roots holds all real roots of the support cubic in ascending order
// (three entries for a > 0, two for a = 0, one for t = 0); the bulk
// interval is spanned by the two largest.
struct Support {
    double x_left;
    double x_right;
    double roots[3];
    int n_roots;
    bool degenerate;  // edges coincide within tolerance (t -> 0 collapse)
};

// Boundary values of the resolvent on the real axis:
// G(x + i0) = R - i I with I = pi * density >= 0.
struct BoundaryValue {
    double r_part;
    double i_part;
};

}  // namespace mp3
