#include "mp3/green.hpp"

#include <algorithm>
#include <cmath>

#include "mp3/cubic.hpp"
#include "mp3/density.hpp"

namespace mp3 {
namespace {

using cplx = std::complex<double>;

cplx resolvent_rhs(cplx g, double u, double t, double a) {
    cplx w = 1.0 - u * g;
    return 1.0 / g + t / w + a / (w * w);
}

// Newton iteration on h(G) = z - rhs(G); returns true on convergence.
bool newton(cplx z, double u, double t, double a, cplx& g) {
    double tol = 1e-14 * (1.0 + std::abs(z));
    for (int it = 0; it < 50; ++it) {
        cplx w = 1.0 - u * g;
        if (std::abs(g) < 1e-300 || std::abs(w) < 1e-14) return false;
        cplx h = z - (1.0 / g + t / w + a / (w * w));
        if (std::abs(h) <= tol) return true;
        cplx dh = 1.0 / (g * g) - u * t / (w * w) - 2.0 * a * u / (w * w * w);
        if (std::abs(dh) < 1e-300) return false;
        g -= h / dh;
    }
    return false;
}

}  // namespace

GreenResult solve_green(cplx z, const Params& p) {
    if (z.imag() == 0.0)
        throw DomainError("solve_green: z must lie off the real axis");
    if (!(p.t > 0.0)) throw DomainError("solve_green: requires t > 0");

    double u = p.r * p.t;
    double sgn = (z.imag() > 0.0) ? 1.0 : -1.0;
    // Any Stieltjes transform of a probability measure obeys
    // |G(z)| <= 1 / dist(z, support); a tracked root that breaks this
    // bound has hopped onto a spurious algebraic root.  (Spurious roots
    // routinely share the Herglotz sign, so the sign alone cannot
    // certify the branch pointwise -- the continuation is what does.)
    Support s = support(p);
    double d = (z.real() < s.x_left)    ? std::abs(z - cplx(s.x_left, 0.0))
               : (z.real() > s.x_right) ? std::abs(z - cplx(s.x_right, 0.0))
                                        : std::abs(z.imag());
    double eta0 = 1e6 + 2.0 * std::abs(z);
    double eta1 = std::abs(z.imag());

    for (int steps = 64; steps <= 1024; steps *= 2) {
        // Leg one walks at altitude eta0 from the imaginary axis to
        // above Re z; leg two descends geometrically in Im z, so the
        // step size stays proportional to the distance from the real
        // axis (and from any edge branch point sitting on it).
        int n_walk = steps / 4;
        int n_drop = steps - n_walk;
        double ratio = std::pow(eta1 / eta0, 1.0 / n_drop);
        cplx g = 1.0 / cplx(0.0, sgn * eta0);
        bool herglotz_ok = true, newton_ok = true;
        for (int i = 1; i <= steps && newton_ok; ++i) {
            cplx zs;
            if (i <= n_walk)
                zs = cplx(z.real() * double(i) / n_walk, sgn * eta0);
            else if (i < steps)
                zs = cplx(z.real(), sgn * eta0 * std::pow(ratio, i - n_walk));
            else
                zs = z;  // land exactly, not up to rounding of the path
            newton_ok = newton(zs, u, p.t, p.a, g);
            if (newton_ok && !(sgn * g.imag() < 0.0)) {
                herglotz_ok = false;
                break;
            }
        }
        if (!newton_ok || !herglotz_ok) {
            if (steps == 1024) {
                if (!herglotz_ok)
                    throw BranchAmbiguity(
                        "solve_green: tracked root left the Herglotz half-plane");
                throw ContinuationFailure(
                    "solve_green: Newton stalled on the continuation path");
            }
            continue;
        }

        double res = std::abs(z - resolvent_rhs(g, u, p.t, p.a));
        if (res >= 1e-12 * (1.0 + std::abs(z))) {
            if (steps == 1024)
                throw ContinuationFailure("solve_green: final residual " +
                                          std::to_string(res) + " too large");
            continue;
        }

        if (!s.degenerate && std::abs(g) * d > 1.0 + 1e-6) {
            if (steps == 1024)
                throw BranchAmbiguity(
                    "solve_green: tracked root violates |G| <= 1/dist(z, support)");
            continue;
        }
        return {g, res};
    }
    throw ContinuationFailure("solve_green: unreachable");
}

BoundaryValue boundary_value(double x, const Params& p) {
    cplx g4 = solve_green(cplx(x, 1e-4), p).g;
    cplx g5 = solve_green(cplx(x, 1e-5), p).g;
    cplx g6 = solve_green(cplx(x, 1e-6), p).g;
    // Two Richardson stages at step ratio 10: the first removes the
    // O(eps) term, the second the O(eps^2) one.
    cplx e1 = (10.0 * g5 - g4) / 9.0;
    cplx e2 = (10.0 * g6 - g5) / 9.0;
    cplx lim = (100.0 * e2 - e1) / 99.0;
    double i_part = -lim.imag();
    if (std::abs(i_part) < 1e-8) i_part = 0.0;
    return {lim.real(), i_part};
}

double pde_residual(cplx z, const Params& p, double h_t, double h_z) {
    if (!(h_t > 0.0) || !(h_z > 0.0))
        throw DomainError("pde_residual: step sizes must be positive");
    if (!(p.t - h_t > 0.0))
        throw DomainError("pde_residual: t - h_t must stay positive");

    cplx g = solve_green(z, p).g;
    cplx gt_p = solve_green(z, Params(p.r, p.t + h_t, p.a)).g;
    cplx gt_m = solve_green(z, Params(p.r, p.t - h_t, p.a)).g;
    cplx gz_p = solve_green(z + h_z, p).g;
    cplx gz_m = solve_green(z - h_z, p).g;

    cplx dgdt = (gt_p - gt_m) / (2.0 * h_t);
    cplx dgdz = (gz_p - gz_m) / (2.0 * h_z);
    cplx lhs = dgdt + dgdz - p.r * (dgdz - 2.0 * z * g * dgdz - g * g);
    return std::abs(lhs);
}

LemmaResiduals lemma_residuals(double x, const Params& p,
                               const BoundaryValue& bv) {
    double u = p.r * p.t;
    double rr = bv.r_part, ii = bv.i_part;
    double denom_a = rr * rr + ii * ii;
    double w = 1.0 - u * rr;
    double denom_b = w * w + u * u * ii * ii;
    if (denom_a == 0.0 || denom_b == 0.0)
        throw DomainError("lemma_residuals: boundary value degenerate");
    double A = 1.0 / denom_a;
    double B = 1.0 / denom_b;

    double eq1 = x - (rr * A + w * p.t * B +
                      p.a * (w * w - u * u * ii * ii) * B * B);
    double eq2 = A - p.t * u * B - 2.0 * p.a * w * u * B * B;
    return {std::abs(eq1), std::abs(eq2)};
}

std::array<cplx, 3> cubic_r_roots(double x, const Params& p) {
    if (!(x > 0.0)) throw DomainError("cubic_r_roots: requires x > 0");
    if (!(p.t > 0.0)) throw DomainError("cubic_r_roots: requires t > 0");
    double r = p.r, t = p.t, a = p.a, u = r * t;
    double e3 = 8.0 * u * u * u * x * x;
    double e2 = -8.0 * u * u * x * (2.0 * x + (r - 1.0) * t);
    double e1 = 2.0 * u * (5.0 * x * x + ((6.0 * r - 5.0) * t - a) * x +
                           (r - 1.0) * (r - 1.0) * t * t);
    double e0 = -(2.0 * x * x + ((4.0 * r - 3.0) * t - 2.0 * a) * x +
                  (r - 1.0) * t * ((2.0 * r - 1.0) * t - a));
    return cubic_roots(e3, e2, e1, e0);
}

}  // namespace mp3
