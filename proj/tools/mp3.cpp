// Command line front end: density curves, support scans, critical-point
// fits, Monte Carlo validation, and resolvent evaluation, with CSV,
// JSON (schema "mp3/1") and SVG output.
//
// Exit codes: 0 success, 1 tolerance exceeded, 2 invalid input,
// 3 branch/continuation failure, 4 fit rejected, 5 eigensolver failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mp3/critical.hpp"
#include "mp3/density.hpp"
#include "mp3/green.hpp"
#include "mp3/io.hpp"
#include "mp3/params.hpp"
#include "mp3/wishart.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "mp3/1";

enum ExitCode {
    kOk = 0,
    kTolerance = 1,
    kInvalid = 2,
    kBranch = 3,
    kFit = 4,
    kEigen = 5,
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = (n > 1) ? lo + (hi - lo) * i / (n - 1) : lo;
    return out;
}

std::string fmt(double v, const mp3::io::OutputSpec& spec) {
    return mp3::io::format_double(v, spec.precision);
}

json fit_json(const mp3::PowerFit& f) {
    return json{{"exponent", f.exponent},
                {"amplitude", f.amplitude},
                {"r_squared", f.r_squared},
                {"window", {f.window_lo, f.window_hi}},
                {"n_points", f.n_points}};
}

void emit(const mp3::io::OutputSpec& spec, const std::string& content) {
    mp3::io::write_text(spec.path, content);
}

int cmd_density(double r, double t, double a, std::optional<double> xmin,
                std::optional<double> xmax, int points,
                const mp3::io::OutputSpec& spec) {
    mp3::Params p(r, t, a);
    mp3::Support s = mp3::support(p);
    double span = s.x_right - s.x_left;
    if (!(span > 0.0)) span = std::max(s.x_right, 1.0);
    double lo = xmin.value_or(s.x_left - 0.05 * span);
    double hi = xmax.value_or(s.x_right + 0.05 * span);
    lo = std::max(lo, 0.0);  // the spectrum lives on the half line
    if (!(hi > lo) || points < 2)
        throw mp3::DomainError("density: need x_max > x_min >= 0 and points >= 2");

    std::vector<double> xs = linspace(lo, hi, points);
    std::vector<double> rho(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) rho[i] = mp3::density(xs[i], p);

    std::string title = "density r=" + fmt(r, spec) + " t=" + fmt(t, spec) +
                        " a=" + fmt(a, spec);
    if (spec.format == "csv") {
        emit(spec, mp3::io::csv_table(
                       {{"x", xs}, {"rho", rho}},
                       {{"command", "density"},
                        {"r", fmt(r, spec)},
                        {"t", fmt(t, spec)},
                        {"a", fmt(a, spec)},
                        {"x_left", fmt(s.x_left, spec)},
                        {"x_right", fmt(s.x_right, spec)}},
                       spec.precision));
    } else if (spec.format == "json") {
        json j{{"schema", kSchema},
               {"command", "density"},
               {"params", {{"r", r}, {"t", t}, {"a", a}}},
               {"support",
                {{"x_left", s.x_left},
                 {"x_right", s.x_right},
                 {"degenerate", s.degenerate}}},
               {"x", xs},
               {"rho", rho}};
        emit(spec, j.dump(2) + "\n");
    } else {
        emit(spec, mp3::io::svg_line_plot(title, "x", "rho", xs,
                                          {{"rho", rho}}, spec.precision));
    }
    return kOk;
}

int cmd_support(double r, double a, double tmin, double tmax, int points,
                const mp3::io::OutputSpec& spec) {
    if (!(tmin >= 0.0) || !(tmax > tmin) || points < 2)
        throw mp3::DomainError("support: need 0 <= t_min < t_max and points >= 2");
    std::vector<double> ts = linspace(tmin, tmax, points);
    std::vector<double> xl(ts.size()), xr(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mp3::Support s = mp3::support(mp3::Params(r, ts[i], a));
        xl[i] = s.x_left;
        xr[i] = s.x_right;
    }
    std::string title = "support edges r=" + fmt(r, spec) + " a=" + fmt(a, spec);
    if (spec.format == "csv") {
        emit(spec, mp3::io::csv_table({{"t", ts}, {"x_left", xl}, {"x_right", xr}},
                                      {{"command", "support"},
                                       {"r", fmt(r, spec)},
                                       {"a", fmt(a, spec)}},
                                      spec.precision));
    } else if (spec.format == "json") {
        json j{{"schema", kSchema},
               {"command", "support"},
               {"params", {{"r", r}, {"a", a}}},
               {"t", ts},
               {"x_left", xl},
               {"x_right", xr}};
        emit(spec, j.dump(2) + "\n");
    } else {
        emit(spec, mp3::io::svg_line_plot(title, "t", "x", ts,
                                          {{"x_left", xl}, {"x_right", xr}},
                                          spec.precision));
    }
    return kOk;
}

struct Check {
    std::string name;
    double measured, target, tol;
    bool relative;
    bool ok() const {
        double d = std::abs(measured - target);
        return relative ? d <= tol * std::abs(target) : d <= tol;
    }
};

int cmd_critical(double a, const mp3::io::OutputSpec& spec) {
    if (spec.format == "svg")
        throw mp3::DomainError("critical: svg output not supported");
    mp3::CriticalReport rep = mp3::critical_report(a);

    const double pi = 3.14159265358979323846;
    std::vector<Check> checks{
        {"nu.exponent", rep.nu.exponent, 3.0, 0.05, false},
        {"nu.amplitude", rep.nu.amplitude, 4.0 / (27.0 * a * a), 0.05, true},
        {"beta1.exponent", rep.beta1.exponent, 0.5, 0.01, false},
        {"beta2.exponent", rep.beta2.exponent, 0.5, 0.02, false},
        {"beta2.amplitude", rep.beta2.amplitude, 1.0 / (pi * a), 0.05, true},
        {"gamma1.exponent", rep.gamma1.exponent, -2.5, 0.05, false},
        {"gamma1.amplitude", rep.gamma1.amplitude, 9.0 * a / (4.0 * pi), 0.05, true},
        {"gamma2.exponent", rep.gamma2.exponent, -1.0 / 3.0, 0.01, false},
        {"gamma2.amplitude", rep.gamma2.amplitude,
         std::sqrt(3.0) / (2.0 * pi) * std::pow(a, -2.0 / 3.0), 0.02, true},
        {"gamma3.exponent", rep.gamma3.exponent, -0.5, 0.01, false},
        {"scaling_gap", rep.scaling_gap, 0.0, 0.1, false},
    };

    if (spec.format == "json") {
        json j{{"schema", kSchema},
               {"command", "critical"},
               {"a", a},
               {"t_c", rep.t_c},
               {"nu", fit_json(rep.nu)},
               {"beta1", fit_json(rep.beta1)},
               {"beta2", fit_json(rep.beta2)},
               {"gamma1", fit_json(rep.gamma1)},
               {"gamma2", fit_json(rep.gamma2)},
               {"gamma3", fit_json(rep.gamma3)},
               {"scaling_gap", rep.scaling_gap}};
        json jc = json::array();
        for (const auto& c : checks)
            jc.push_back({{"name", c.name},
                          {"measured", c.measured},
                          {"target", c.target},
                          {"pass", c.ok()}});
        j["checks"] = jc;
        emit(spec, j.dump(2) + "\n");
    } else {
        std::vector<mp3::io::Series> cols{{"exponent", {}}, {"amplitude", {}},
                                          {"r_squared", {}}, {"window_lo", {}},
                                          {"window_hi", {}}};
        mp3::io::Annotations notes{{"command", "critical"}, {"a", fmt(a, spec)}};
        std::string names;
        for (const mp3::PowerFit* f :
             {&rep.nu, &rep.beta1, &rep.beta2, &rep.gamma1, &rep.gamma2,
              &rep.gamma3}) {
            cols[0].values.push_back(f->exponent);
            cols[1].values.push_back(f->amplitude);
            cols[2].values.push_back(f->r_squared);
            cols[3].values.push_back(f->window_lo);
            cols[4].values.push_back(f->window_hi);
        }
        notes.push_back({"rows", "nu,beta1,beta2,gamma1,gamma2,gamma3"});
        notes.push_back({"scaling_gap", fmt(rep.scaling_gap, spec)});
        emit(spec, mp3::io::csv_table(cols, notes, spec.precision));
    }

    for (const auto& c : checks) {
        if (!c.ok()) {
            std::cerr << "critical: " << c.name << " = " << c.measured
                      << " misses target " << c.target << "\n";
            return kFit;
        }
    }
    return kOk;
}

int cmd_mc(int m, int n, double t, double a, int samples, std::uint64_t seed,
           int bins, std::optional<double> model_a, double ks_threshold,
           const mp3::io::OutputSpec& spec) {
    mp3::McConfig cfg;
    cfg.m = m;
    cfg.n = n;
    cfg.t = t;
    cfg.a = a;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.validate();

    mp3::SpectrumSample sp = mp3::sample_spectrum(cfg);
    mp3::Params model(double(n) / m, t, model_a.value_or(a));
    mp3::GofReport gof = mp3::goodness_of_fit(sp.eigenvalues, model, bins);

    mp3::Histogram h = mp3::make_histogram(sp.eigenvalues, gof.bins);
    std::vector<double> bar(h.counts.size());
    for (std::size_t b = 0; b < bar.size(); ++b) {
        double width = h.edges[b + 1] - h.edges[b];
        bar[b] = h.counts[b] / (h.total * width);
    }
    mp3::Support s = mp3::support(model);
    std::vector<double> mx = linspace(h.edges.front(), h.edges.back(), 400);
    std::vector<double> mrho(mx.size());
    for (std::size_t i = 0; i < mx.size(); ++i)
        mrho[i] = mp3::density(std::max(mx[i], 0.0), model);

    mp3::io::Annotations notes{
        {"command", "mc"},
        {"m", std::to_string(m)},
        {"n", std::to_string(n)},
        {"t", fmt(t, spec)},
        {"a", fmt(a, spec)},
        {"samples", std::to_string(samples)},
        {"seed", std::to_string(seed)},
        {"model_a", fmt(model.a, spec)},
        {"mean", fmt(sp.mean, spec)},
        {"ks", fmt(gof.ks, spec)},
        {"l1", fmt(gof.l1, spec)},
        {"bins", std::to_string(gof.bins)}};

    if (spec.format == "csv") {
        emit(spec, mp3::io::csv_table({{"eigenvalue", sp.eigenvalues}}, notes,
                                      spec.precision));
    } else if (spec.format == "json") {
        json j{{"schema", kSchema},
               {"command", "mc"},
               {"config",
                {{"m", m},
                 {"n", n},
                 {"t", t},
                 {"a", a},
                 {"samples", samples},
                 {"seed", seed}}},
               {"model", {{"r", model.r}, {"t", model.t}, {"a", model.a}}},
               {"mean", sp.mean},
               {"gof",
                {{"ks", gof.ks},
                 {"l1", gof.l1},
                 {"n_eigen", gof.n_eigen},
                 {"bins", gof.bins}}},
               {"support", {{"x_left", s.x_left}, {"x_right", s.x_right}}},
               {"histogram", {{"edges", h.edges}, {"counts", h.counts}}}};
        emit(spec, j.dump(2) + "\n");
    } else {
        std::string title = "spectrum m=" + std::to_string(m) + " n=" +
                            std::to_string(n) + " t=" + fmt(t, spec) + " a=" +
                            fmt(a, spec) + " ks=" + fmt(gof.ks, spec);
        emit(spec, mp3::io::svg_histogram(title, h.edges, bar, mx, mrho,
                                          spec.precision));
    }

    if (gof.ks > ks_threshold) {
        std::cerr << "mc: KS distance " << gof.ks << " exceeds threshold "
                  << ks_threshold << "\n";
        return kTolerance;
    }
    return kOk;
}

int cmd_green(double r, double t, double a, double z_re, double z_im, double h,
              const mp3::io::OutputSpec& spec) {
    if (spec.format == "svg")
        throw mp3::DomainError("green: svg output not supported");
    if (z_im == 0.0)
        throw mp3::DomainError("green: z must have a nonzero imaginary part");
    mp3::Params p(r, t, a);
    if (!(h > 0.0) || !(t - h > 0.0))
        throw mp3::DomainError("green: need 0 < h < t");

    std::complex<double> z(z_re, z_im);
    mp3::GreenResult g = mp3::solve_green(z, p);
    double res_h = mp3::pde_residual(z, p, h, h);
    double res_h2 = mp3::pde_residual(z, p, h / 2.0, h / 2.0);
    double ratio = (res_h2 > 0.0) ? res_h / res_h2 : 0.0;

    if (spec.format == "json") {
        json j{{"schema", kSchema},
               {"command", "green"},
               {"params", {{"r", r}, {"t", t}, {"a", a}}},
               {"z", {z_re, z_im}},
               {"g", {g.g.real(), g.g.imag()}},
               {"residual", g.residual},
               {"pde",
                {{"h", h},
                 {"residual_h", res_h},
                 {"residual_h2", res_h2},
                 {"ratio", ratio}}}};
        emit(spec, j.dump(2) + "\n");
    } else {
        emit(spec,
             mp3::io::csv_table(
                 {{"g_re", {g.g.real()}},
                  {"g_im", {g.g.imag()}},
                  {"residual", {g.residual}},
                  {"pde_h", {h}},
                  {"pde_residual_h", {res_h}},
                  {"pde_residual_h2", {res_h2}},
                  {"pde_ratio", {ratio}}},
                 {{"command", "green"},
                  {"r", fmt(r, spec)},
                  {"t", fmt(t, spec)},
                  {"a", fmt(a, spec)},
                  {"z", fmt(z_re, spec) + "+" + fmt(z_im, spec) + "i"}},
                 spec.precision));
    }
    return kOk;
}

int cmd_chiral(double r, double t, double a, std::optional<double> xmax,
               int points, const mp3::io::OutputSpec& spec) {
    mp3::Params p(r, t, a);
    mp3::Support bulk = mp3::support(mp3::Params(r, t, a * a));
    double hi = xmax.value_or(1.05 * std::sqrt(bulk.x_right));
    if (!(hi > 0.0) || points < 2)
        throw mp3::DomainError("chiral: need x_max > 0 and points >= 2");

    std::vector<double> xs = linspace(-hi, hi, points);
    std::vector<double> rho(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        rho[i] = mp3::density_chiral(xs[i], p);

    std::string title = "chiral density r=" + fmt(r, spec) + " t=" +
                        fmt(t, spec) + " a=" + fmt(a, spec);
    if (spec.format == "csv") {
        emit(spec, mp3::io::csv_table(
                       {{"x", xs}, {"rho", rho}},
                       {{"command", "chiral"},
                        {"r", fmt(r, spec)},
                        {"t", fmt(t, spec)},
                        {"a", fmt(a, spec)},
                        {"x_edge", fmt(std::sqrt(bulk.x_right), spec)}},
                       spec.precision));
    } else if (spec.format == "json") {
        json j{{"schema", kSchema},
               {"command", "chiral"},
               {"params", {{"r", r}, {"t", t}, {"a", a}}},
               {"x_edge", std::sqrt(bulk.x_right)},
               {"x", xs},
               {"rho", rho}};
        emit(spec, j.dump(2) + "\n");
    } else {
        emit(spec, mp3::io::svg_line_plot(title, "x", "rho", xs,
                                          {{"rho", rho}}, spec.precision));
    }
    return kOk;
}

void add_output_opts(CLI::App* sub, mp3::io::OutputSpec& spec) {
    sub->add_option("--format", spec.format, "csv | json | svg")
        ->default_val("csv");
    sub->add_option("-o,--out", spec.path, "output path, - for stdout")
        ->default_val("-");
    sub->add_option("--precision", spec.precision,
                    "significant digits (6..17)")
        ->default_val(12);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-parameter Marchenko-Pastur densities and diagnostics"};
    app.require_subcommand(1);

    mp3::io::OutputSpec spec;

    double r = 1.0, t = 1.0, a = 0.0;
    std::optional<double> xmin, xmax;
    int points = 200;

    CLI::App* density = app.add_subcommand("density", "density curve on a grid");
    density->add_option("--r", r)->required();
    density->add_option("--t", t)->required();
    density->add_option("--a", a)->required();
    density->add_option("--x-min", xmin);
    density->add_option("--x-max", xmax);
    density->add_option("--points", points)->default_val(200);
    add_output_opts(density, spec);

    double tmin = 0.0, tmax = 3.0;
    CLI::App* supportc = app.add_subcommand("support", "bulk edges over a time scan");
    supportc->add_option("--r", r)->required();
    supportc->add_option("--a", a)->required();
    supportc->add_option("--t-min", tmin)->default_val(0.0);
    supportc->add_option("--t-max", tmax)->required();
    supportc->add_option("--points", points)->default_val(61);
    add_output_opts(supportc, spec);

    CLI::App* critical = app.add_subcommand("critical", "critical-point fits at t_c = a");
    critical->add_option("--a", a)->required();
    add_output_opts(critical, spec);

    int m = 0, n = 0, samples = 1, bins = 0;
    std::uint64_t seed = 1;
    std::optional<double> model_a;
    double ks_threshold = 0.02;
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo spectrum vs model density");
    mc->add_option("--m", m)->required();
    mc->add_option("--n", n)->required();
    mc->add_option("--t", t)->required();
    mc->add_option("--a", a)->required();
    mc->add_option("--samples", samples)->default_val(20);
    mc->add_option("--seed", seed)->default_val(1);
    mc->add_option("--bins", bins)->default_val(0);
    mc->add_option("--model-a", model_a, "override a of the reference density");
    mc->add_option("--ks-threshold", ks_threshold)->default_val(0.02);
    add_output_opts(mc, spec);

    double z_re = 0.0, z_im = 0.0, h = 1e-3;
    CLI::App* green = app.add_subcommand("green", "resolvent at a complex point");
    green->add_option("--r", r)->required();
    green->add_option("--t", t)->required();
    green->add_option("--a", a)->required();
    green->add_option("--re", z_re)->required();
    green->add_option("--im", z_im)->required();
    green->add_option("--step", h)->default_val(1e-3);
    add_output_opts(green, spec);

    CLI::App* chiral = app.add_subcommand("chiral", "symmetrized square-root density");
    chiral->add_option("--r", r)->required();
    chiral->add_option("--t", t)->required();
    chiral->add_option("--a", a)->required();
    chiral->add_option("--x-max", xmax);
    chiral->add_option("--points", points)->default_val(201);
    add_output_opts(chiral, spec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        spec.validate();
        if (density->parsed())
            return cmd_density(r, t, a, xmin, xmax, points, spec);
        if (supportc->parsed())
            return cmd_support(r, a, tmin, tmax, points, spec);
        if (critical->parsed()) return cmd_critical(a, spec);
        if (mc->parsed())
            return cmd_mc(m, n, t, a, samples, seed, bins, model_a,
                          ks_threshold, spec);
        if (green->parsed()) return cmd_green(r, t, a, z_re, z_im, h, spec);
        if (chiral->parsed()) return cmd_chiral(r, t, a, xmax, points, spec);
    } catch (const mp3::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const mp3::FitRejected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFit;
    } catch (const mp3::EigensolverFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kEigen;
    } catch (const mp3::NoRealSupport& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBranch;
    } catch (const mp3::BranchFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBranch;
    } catch (const mp3::BranchAmbiguity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBranch;
    } catch (const mp3::ContinuationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBranch;
    } catch (const mp3::QuadratureFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kTolerance;
    } catch (const mp3::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
