#include "mp3/critical.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mp3/density.hpp"

namespace mp3 {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        out[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return out;
}

PowerFit fit_power_law(const std::vector<double>& xs,
                       const std::vector<double>& ys, const char* who) {
    int n = static_cast<int>(xs.size());
    std::vector<double> lx(n), ly(n);
    for (int i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw DomainError(std::string(who) + ": nonpositive sample in log fit");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) { mx += lx[i]; my += ly[i]; }
    mx /= n; my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        double e = ly[i] - (slope * lx[i] + intercept);
        ss_res += e * e;
    }
    double r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;

    PowerFit fit{slope, std::exp(intercept), r2, xs.front(), xs.back(), n};
    if (!(r2 >= 0.999))
        throw FitRejected(std::string(who) + ": r^2 = " + std::to_string(r2) +
                          " below 0.999", r2);
    return fit;
}

// Geometric mean of y / x^exponent: amplitude with the exponent pinned.
double pinned_amplitude(const std::vector<double>& xs,
                        const std::vector<double>& ys, double exponent) {
    double acc = 0.0;
    for (size_t i = 0; i < xs.size(); ++i)
        acc += std::log(ys[i]) - exponent * std::log(xs[i]);
    return std::exp(acc / xs.size());
}

// Edge fit window: within the square-root regime requires both
// delta << span and delta << x_left (the expansion scale collapses
// with the gap as t -> t_c).
void edge_window(const Support& s, double& lo, double& hi) {
    double span = s.x_right - s.x_left;
    hi = std::min(1e-5 * span, 1e-2 * s.x_left);
    lo = 1e-3 * hi;
}

// Origin fit window: below the crossover between the x^{-1/3} core
// and the x^{-1/2} regime, which sits near (t-a)^3 / (4at).
void origin_window(const Params& p, double& lo, double& hi) {
    hi = 1e-6;
    double eps = p.t - p.a;
    if (p.a > 0.0 && eps > 0.0) {
        double crossover = eps * eps * eps / (4.0 * p.a * p.t);
        hi = std::min(hi, 1e-2 * crossover);
    }
    lo = 1e-3 * hi;
}

}  // namespace

double critical_time(double a) {
    if (!(a > 0.0)) throw DomainError("critical_time: requires a > 0");
    double below = support(Params(1.0, 0.99 * a, a)).x_left;
    double above = support(Params(1.0, 1.01 * a, a)).x_left;
    if (!(below > 0.0) || above != 0.0)
        throw Error("critical_time: gap edge inconsistent around t = a");
    return a;
}

PowerFit fit_edge_vanishing(double a, int n_points) {
    critical_time(a);
    if (n_points < 8)
        throw DomainError("fit_edge_vanishing: needs n_points >= 8");
    std::vector<double> eps = log_spaced(1e-4 * a, 1e-2 * a, n_points);
    std::vector<double> xl(eps.size());
    for (size_t i = 0; i < eps.size(); ++i)
        xl[i] = support(Params(1.0, a - eps[i], a)).x_left;
    return fit_power_law(eps, xl, "fit_edge_vanishing");
}

PowerFit fit_edge_exponent_subcritical(const Params& p) {
    Support s = support(p);
    if (!(s.x_left > 0.0))
        throw DomainError("fit_edge_exponent_subcritical: needs a detached edge");
    double lo, hi;
    edge_window(s, lo, hi);
    std::vector<double> delta = log_spaced(lo, hi, 12);
    std::vector<double> rho(delta.size());
    for (size_t i = 0; i < delta.size(); ++i)
        rho[i] = density(s.x_left + delta[i], p);
    return fit_power_law(delta, rho, "fit_edge_exponent_subcritical");
}

PowerFit fit_origin_exponent(const Params& p) {
    if (p.r != 1.0 || p.t < p.a)
        throw DomainError("fit_origin_exponent: needs r = 1 and t >= t_c");
    double lo, hi;
    origin_window(p, lo, hi);
    std::vector<double> xs = log_spaced(lo, hi, 12);
    std::vector<double> rho(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) rho[i] = density(xs[i], p);
    return fit_power_law(xs, rho, "fit_origin_exponent");
}

PowerFit fit_origin_amplitude_supercritical(double a) {
    critical_time(a);
    std::vector<double> eps = log_spaced(1e-3 * a, 1e-2 * a, 8);
    std::vector<double> c2(eps.size());
    for (size_t i = 0; i < eps.size(); ++i) {
        Params p(1.0, a + eps[i], a);
        double lo, hi;
        origin_window(p, lo, hi);
        std::vector<double> xs = log_spaced(lo, hi, 12);
        std::vector<double> rho(xs.size());
        for (size_t j = 0; j < xs.size(); ++j) rho[j] = density(xs[j], p);
        c2[i] = pinned_amplitude(xs, rho, -0.5);
    }
    return fit_power_law(eps, c2, "fit_origin_amplitude_supercritical");
}

PowerFit fit_edge_amplitude_subcritical(double a) {
    critical_time(a);
    std::vector<double> eps = log_spaced(1e-3 * a, 1e-2 * a, 8);
    std::vector<double> c1(eps.size());
    for (size_t i = 0; i < eps.size(); ++i) {
        Params p(1.0, a - eps[i], a);
        Support s = support(p);
        double lo, hi;
        edge_window(s, lo, hi);
        std::vector<double> delta = log_spaced(lo, hi, 12);
        std::vector<double> rho(delta.size());
        for (size_t j = 0; j < delta.size(); ++j)
            rho[j] = density(s.x_left + delta[j], p);
        c1[i] = pinned_amplitude(delta, rho, 0.5);
    }
    return fit_power_law(eps, c1, "fit_edge_amplitude_subcritical");
}

double scaling_relation_check(double a) {
    double nu = fit_edge_vanishing(a).exponent;
    double beta2 = fit_origin_amplitude_supercritical(a).exponent;
    double gamma1 = -fit_edge_amplitude_subcritical(a).exponent;
    return std::abs(nu - (beta2 + gamma1));
}

CriticalReport critical_report(double a) {
    CriticalReport rep{};
    rep.a = a;
    rep.t_c = critical_time(a);
    rep.nu = fit_edge_vanishing(a);
    rep.beta1 = fit_edge_exponent_subcritical(Params(1.0, 0.5 * a, a));
    rep.beta2 = fit_origin_amplitude_supercritical(a);
    rep.gamma1 = fit_edge_amplitude_subcritical(a);
    rep.gamma2 = fit_origin_exponent(Params(1.0, a, a));
    rep.gamma3 = fit_origin_exponent(Params(1.0, 1.5 * a, a));
    rep.scaling_gap = std::abs(rep.nu.exponent -
                               (rep.beta2.exponent - rep.gamma1.exponent));
    return rep;
}

}  // namespace mp3
