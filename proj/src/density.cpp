#include "mp3/density.hpp"

#include <algorithm>
#include <cmath>

#include "mp3/cubic.hpp"
#include "mp3/quadrature.hpp"

namespace mp3 {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCbrt2 = 1.2599210498948731648;  // 2^(1/3)

struct SCoeffs {
    double c3, c2, c1, c0;
};

SCoeffs s_coeffs(const Params& p) {
    double r = p.r, t = p.t, a = p.a;
    SCoeffs c;
    c.c3 = 4.0 * a;
    c.c2 = t * t - 8.0 * a * a - 4.0 * a * (3.0 * r + 2.0) * t;
    c.c1 = 2.0 * (2.0 * a * a * a - 2.0 * a * a * (5.0 * r - 2.0) * t +
                  a * (6.0 * r * r - r + 1.0) * t * t - (r + 1.0) * t * t * t);
    c.c0 = (r - 1.0) * (r - 1.0) * t * t *
           (a * a - (4.0 * r - 2.0) * a * t + t * t);
    return c;
}

// Closed-form density for a = 0: sqrt((x - xl)(xr - x)) / (2 pi r t x)
// with edges (1 -+ sqrt(r))^2 t.
double mp_t_density(double x, double r, double t) {
    double sr = std::sqrt(r);
    double xl = (1.0 - sr) * (1.0 - sr) * t;
    double xr = (1.0 + sr) * (1.0 + sr) * t;
    if (x <= xl || x >= xr) return 0.0;
    return std::sqrt((x - xl) * (xr - x)) / (2.0 * kPi * r * t * x);
}

double radicand_or_throw(double lead, double phi, const char* who) {
    double rad = lead - phi * phi;
    if (rad < 0.0) {
        double scale = std::max({std::abs(lead), phi * phi, 1e-30});
        if (rad < -1e-10 * scale)
            throw BranchFailure(std::string(who) +
                                ": negative radicand inside the bulk, rad/scale = " +
                                std::to_string(rad / scale));
        rad = 0.0;
    }
    return rad;
}

}  // namespace

double eval_s(double x, const Params& p) {
    SCoeffs c = s_coeffs(p);
    return eval_poly3(c.c3, c.c2, c.c1, c.c0, x);
}

Support support(const Params& p) {
    double r = p.r, t = p.t, a = p.a;
    Support s{};
    if (t == 0.0) {
        s.roots[0] = a;
        s.n_roots = 1;
        s.x_left = s.x_right = a;
        s.degenerate = true;
        return s;
    }
    if (a == 0.0) {
        double sr = std::sqrt(r);
        s.roots[0] = (1.0 - sr) * (1.0 - sr) * t;
        s.roots[1] = (1.0 + sr) * (1.0 + sr) * t;
        s.n_roots = 2;
        s.x_left = s.roots[0];
        s.x_right = s.roots[1];
    } else if (r == 1.0) {
        // S factors as x (4a x^2 - Q x + 4(a-t)^3); the small quadratic
        // root is rationalized to dodge the Q - P cancellation near t = a.
        double q = 8.0 * a * a + 20.0 * a * t - t * t;
        double pr = std::sqrt(t) * std::pow(8.0 * a + t, 1.5);
        double d = a - t;
        double x_small = 8.0 * d * d * d / (q + pr);
        double x_big = (q + pr) / (8.0 * a);
        if (x_small >= 0.0) {  // t <= a: bulk detached from the origin
            s.roots[0] = 0.0;
            s.roots[1] = x_small;
            s.roots[2] = x_big;
        } else {  // t > a: the origin is the left edge
            s.roots[0] = x_small;
            s.roots[1] = 0.0;
            s.roots[2] = x_big;
        }
        s.n_roots = 3;
        s.x_left = s.roots[1];
        s.x_right = s.roots[2];
    } else {
        SCoeffs c = s_coeffs(p);
        double roots[3];
        int n = solve_cubic(c.c3, c.c2, c.c1, c.c0, roots);
        if (n < 3) {
            double disc = cubic_discriminant(c.c3, c.c2, c.c1, c.c0);
            throw NoRealSupport(
                "support: cubic has " + std::to_string(n) +
                    " real root(s); discriminant = " + std::to_string(disc),
                disc);
        }
        for (int i = 0; i < 3; ++i) s.roots[i] = roots[i];
        s.n_roots = 3;
        s.x_left = roots[1];
        s.x_right = roots[2];
    }
    double span_scale = std::max(std::abs(s.x_right), std::abs(s.x_left));
    s.degenerate = (s.x_right - s.x_left) <= 1e-12 * std::max(span_scale, 1e-30);
    return s;
}

PhiEval eval_phi(double x, const Params& p, const double* hint) {
    double r = p.r, t = p.t, a = p.a;
    if (!(t > 0.0)) throw DomainError("eval_phi: requires t > 0");

    SCoeffs sc = s_coeffs(p);
    double s_val = eval_poly3(sc.c3, sc.c2, sc.c1, sc.c0, x);
    // Just inside an edge, roundoff can push S through zero; a sign flip
    // at the term-cancellation level is noise, not a branch change.
    double s_scale = std::abs(sc.c3 * x * x * x) + std::abs(sc.c2 * x * x) +
                     std::abs(sc.c1 * x) + std::abs(sc.c0);
    if (s_val > 0.0 && s_val < 1e-13 * s_scale) s_val = 0.0;
    std::complex<double> sq = std::sqrt(std::complex<double>(-3.0 * s_val, 0.0));
    std::complex<double> g =
        -2.0 * x * x * x + 3.0 * ((2.0 * r + 1.0) * t + 6.0 * a) * x * x -
        3.0 * ((r - 1.0) * ((2.0 * r + 1.0) * t - 3.0 * a) * t - sq) * x +
        2.0 * (r - 1.0) * (r - 1.0) * (r - 1.0) * t * t * t;
    if (std::abs(g) == 0.0)
        throw BranchFailure("eval_phi: Cardano kernel vanished (degenerate point)");

    double pq = x * x + (3.0 * a - (2.0 * r + 1.0) * t) * x +
                t * t * (r - 1.0) * (r - 1.0);
    double lin = -(2.0 / 3.0) * (x - (r - 1.0) * t);

    std::complex<double> croot = std::pow(g, 1.0 / 3.0);
    const std::complex<double> omega(-0.5, 0.8660254037844386468);

    PhiEval out{};
    int best = -1;
    double best_im = 0.0;
    for (int k = 0; k < 3; ++k) {
        std::complex<double> ck = croot;
        if (k == 1) ck *= omega;
        if (k == 2) ck *= std::conj(omega);
        std::complex<double> cand =
            lin - (kCbrt2 / 3.0) * pq / ck - ck / (3.0 * kCbrt2);
        out.candidates[k] = cand;
        double im = std::abs(cand.imag());
        if (best < 0 || im < best_im) {
            best = k;
            best_im = im;
        }
    }
    double tol = 1e-7 * (1.0 + std::abs(out.candidates[best].real()));
    if (best_im > tol)
        throw BranchFailure("eval_phi: no real branch at x = " + std::to_string(x) +
                            ", min |Im phi| = " + std::to_string(best_im));

    // S < 0 holds exactly on the open bulk, where the defining cubic has a
    // single real root: the min-|Im| candidate is it, unconditionally.  A
    // spurious near-real pair appears just inside an edge (their imaginary
    // parts shrink like sqrt(distance)), so counting "real-looking"
    // candidates there would raise false alarms.
    if (s_val < 0.0) {
        out.branch = best;
        out.phi = out.candidates[best].real();
        return out;
    }

    // S > 0: three genuinely real roots; selection needs outside help.
    // S = 0 (an edge): a double root coalesces, but the isolated root is
    // still the continuous physical branch and carries the smaller |Im|.
    if (s_val > 0.0) {
        if (hint) {
            for (int k = 0; k < 3; ++k) {
                double im = std::abs(out.candidates[k].imag());
                double re = out.candidates[k].real();
                if (im <= 1e-7 * (1.0 + std::abs(re)) &&
                    std::abs(re - *hint) <
                        std::abs(out.candidates[best].real() - *hint))
                    best = k;
            }
        } else {
            double spread = 0.0;
            for (int k = 0; k < 3; ++k)
                spread = std::max(spread, std::abs(out.candidates[k].real() -
                                                   out.candidates[best].real()));
            if (spread > 1e-7 * (1.0 + std::abs(out.candidates[best].real())))
                throw BranchAmbiguity(
                    "eval_phi: several real branches at x = " + std::to_string(x) +
                    " (point lies outside the open bulk)");
        }
    }
    out.branch = best;
    out.phi = out.candidates[best].real();
    return out;
}

double hilbert_r(double x, const Params& p) {
    double r = p.r, t = p.t, a = p.a;
    if (!(t > 0.0)) throw DomainError("hilbert_r: requires t > 0");
    if (!(x != 0.0)) throw DomainError("hilbert_r: requires x != 0");

    double res;
    if (a == 0.0) {
        res = (x + (r - 1.0) * t) / (2.0 * r * t * x);
    } else {
        res = (eval_phi(x, p).phi + 2.0 * x) / (2.0 * r * t * x);
    }

    // Defensive check against the closed cubic satisfied by R.
    double rt = r * t;
    double e3 = 8.0 * rt * rt * rt * x * x;
    double e2 = -8.0 * rt * rt * x * (2.0 * x + (r - 1.0) * t);
    double e1 = 2.0 * rt * (5.0 * x * x + ((6.0 * r - 5.0) * t - a) * x +
                            (r - 1.0) * (r - 1.0) * t * t);
    double e0 = -(2.0 * x * x + ((4.0 * r - 3.0) * t - 2.0 * a) * x +
                  (r - 1.0) * t * ((2.0 * r - 1.0) * t - a));
    double value = eval_poly3(e3, e2, e1, e0, res);
    double scale = std::max({std::abs(e3 * res * res * res),
                             std::abs(e2 * res * res), std::abs(e1 * res),
                             std::abs(e0), 1e-30});
    if (std::abs(value) > 1e-10 * scale)
        throw BranchFailure("hilbert_r: residual " + std::to_string(value / scale) +
                            " relative to cubic scale at x = " + std::to_string(x));
    return res;
}

double density(double x, const Params& p) {
    double r = p.r, t = p.t, a = p.a;
    if (!(x >= 0.0)) throw DomainError("density: requires x >= 0");
    if (!(t > 0.0)) throw DomainError("density: requires t > 0");
    // No a = 0 shortcut here: the Cardano assembly must reduce to the
    // closed form on its own, and density_mp_classic stays an
    // independent cross-check instead of an alias.

    Support s = support(p);
    if (x <= s.x_left || x >= s.x_right) return 0.0;

    double phi = eval_phi(x, p).phi;
    double d = (t - a) * (t - a) - 4.0 * a * phi;
    double lead = 2.0 * (t - a + std::sqrt(std::max(d, 0.0))) * x;
    double rad = radicand_or_throw(lead, phi, "density");
    return std::sqrt(rad) / (2.0 * kPi * r * t * x);
}

FactoredDensity density_via_f(double x, const Params& p) {
    double r = p.r, t = p.t, a = p.a;
    if (!(x >= 0.0)) throw DomainError("density_via_f: requires x >= 0");
    if (!(t > 0.0)) throw DomainError("density_via_f: requires t > 0");

    Support s = support(p);
    if (x <= s.x_left || x >= s.x_right) return {s.x_left, s.x_right, 0.0};

    double phi = (a == 0.0) ? (-x + (r - 1.0) * t) : eval_phi(x, p).phi;
    std::complex<double> root_aphi = std::sqrt(std::complex<double>(a * phi, 0.0));
    std::complex<double> d_minus = (t - a) - 2.0 * root_aphi;
    std::complex<double> d_plus = (t - a) + 2.0 * root_aphi;
    std::complex<double> sm = std::sqrt(d_minus), sp = std::sqrt(d_plus);
    std::complex<double> d0 =
        phi + x + 0.5 * (t - a) + 0.5 * sm * sp;
    std::complex<double> half_s = 0.5 * (sm + sp);
    std::complex<double> sq0 = std::sqrt(d0);
    std::complex<double> f_left = (half_s - sq0) * (half_s - sq0);
    std::complex<double> f_right = (half_s + sq0) * (half_s + sq0);

    double fl = f_left.real(), fr = f_right.real();
    double rad = (x - fl) * (fr - x);
    if (rad < 0.0) {
        double scale = std::max({x * x, std::abs(fl * fr), 1e-30});
        if (rad < -1e-10 * scale)
            throw BranchFailure("density_via_f: negative radicand inside the bulk");
        rad = 0.0;
    }
    return {fl, fr, std::sqrt(rad) / (2.0 * kPi * r * x * t)};
}

double density_mp_classic(double x, double r) {
    if (!(r > 0.0) || !(r <= 1.0))
        throw DomainError("density_mp_classic: r must lie in (0, 1]");
    if (!(x >= 0.0)) throw DomainError("density_mp_classic: requires x >= 0");
    return mp_t_density(x, r, 1.0);
}

double density_chiral(double x, const Params& p) {
    if (!(p.t > 0.0)) throw DomainError("density_chiral: requires t > 0");
    Params bulk(p.r, p.t, p.a * p.a);
    if (x != 0.0) return 2.0 * std::abs(x) * density(x * x, bulk);
    Support s = support(bulk);
    if (s.x_left > 0.0) return 0.0;
    // Left edge at the origin (r = 1, t >= a^2): the 1/sqrt divergence
    // of the bulk density cancels the |x| factor exactly.
    return 2.0 * std::sqrt(std::max(p.t - bulk.a, 0.0)) / (kPi * p.r * p.t);
}

double density_wigner(double x) {
    if (std::abs(x) >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / kPi;
}

double moment(int k, const Params& p) {
    if (k < 0) throw DomainError("moment: requires k >= 0");
    if (!(p.t > 0.0)) throw DomainError("moment: requires t > 0");
    Support s = support(p);
    auto f = [&](double x) {
        double w = density(x, p);
        double xk = 1.0;
        for (int i = 0; i < k; ++i) xk *= x;
        return xk * w;
    };
    return integrate_de(f, s.x_left, s.x_right, 1e-11, 12);
}

}  // namespace mp3
