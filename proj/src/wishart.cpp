#include "mp3/wishart.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mp3/density.hpp"
#include "mp3/quadrature.hpp"
#include "mp3/rng.hpp"

namespace mp3 {
namespace {

// One Wishart draw; fills eigenvalues of K^dagger K / m, ascending.
void draw_sample(const McConfig& cfg, std::uint64_t index,
                 std::vector<double>& out) {
    SplitMix64 rng(substream_seed(cfg.seed, index));
    double sigma = std::sqrt(cfg.t / 2.0);
    Eigen::MatrixXcd k(cfg.m, cfg.n);
    for (int j = 0; j < cfg.n; ++j) {
        for (int i = 0; i < cfg.m; ++i) {
            double re, im;
            rng.next_normal_pair(re, im);
            k(i, j) = std::complex<double>(sigma * re, sigma * im);
        }
    }
    double shift = std::sqrt(double(cfg.m) * cfg.a);
    for (int d = 0; d < cfg.n; ++d) k(d, d) += shift;

    Eigen::MatrixXcd l = k.adjoint() * k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(l,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw EigensolverFailure("sample_spectrum: eigensolver failed on sample " +
                                     std::to_string(index),
                                 long(index));
    out.resize(cfg.n);
    for (int i = 0; i < cfg.n; ++i) out[i] = es.eigenvalues()[i] / cfg.m;
}

}  // namespace

void McConfig::validate() const {
    if (n < 1 || m < n)
        throw DomainError("McConfig: need m >= n >= 1");
    if (!(t > 0.0)) throw DomainError("McConfig: need t > 0");
    if (!(a >= 0.0)) throw DomainError("McConfig: need a >= 0");
    if (samples < 1) throw DomainError("McConfig: need samples >= 1");
}

int thread_budget() {
    if (const char* env = std::getenv("MP3_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

SpectrumSample sample_spectrum(const McConfig& cfg) {
    cfg.validate();
    std::vector<std::vector<double>> per_sample(cfg.samples);

    int workers = std::min(thread_budget(), cfg.samples);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= cfg.samples) return;
            try {
                draw_sample(cfg, std::uint64_t(i), per_sample[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    SpectrumSample s;
    s.config = cfg;
    s.eigenvalues.reserve(std::size_t(cfg.samples) * cfg.n);
    for (auto& v : per_sample)
        s.eigenvalues.insert(s.eigenvalues.end(), v.begin(), v.end());
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    double acc = 0.0;
    for (double e : s.eigenvalues) acc += e;
    s.mean = acc / s.eigenvalues.size();
    return s;
}

double model_cdf(double x, const Params& p) {
    Support s = support(p);
    if (x <= s.x_left) return 0.0;
    if (x >= s.x_right) return 1.0;
    double f = integrate_de([&](double y) { return density(y, p); },
                            s.x_left, x, 1e-9, 12);
    return std::clamp(f, 0.0, 1.0);
}

std::vector<double> model_cdf_batch(const std::vector<double>& xs,
                                    const Params& p) {
    Support s = support(p);
    std::vector<double> out(xs.size());
    double acc = 0.0, prev = s.x_left;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0 && xs[i] < xs[i - 1])
            throw DomainError("model_cdf_batch: points must ascend");
        double x = std::clamp(xs[i], s.x_left, s.x_right);
        if (x > prev) {
            acc += integrate_de([&](double y) { return density(y, p); },
                                prev, x, 1e-9, 12);
            prev = x;
        }
        out[i] = std::clamp(acc, 0.0, 1.0);
    }
    return out;
}

int fd_bins(const std::vector<double>& eig) {
    std::size_t n = eig.size();
    if (n < 4) return 8;
    double q1 = eig[n / 4], q3 = eig[(3 * n) / 4];
    double iqr = q3 - q1;
    double lo = eig.front(), hi = eig.back();
    if (!(iqr > 0.0) || !(hi > lo)) return 8;
    double width = 2.0 * iqr / std::cbrt(double(n));
    int bins = int(std::ceil((hi - lo) / width));
    return std::max(bins, 8);
}

Histogram make_histogram(const std::vector<double>& eig, int bins) {
    if (eig.empty() || bins < 1)
        throw DomainError("make_histogram: empty sample or bad bin count");
    Histogram h;
    double lo = eig.front(), hi = eig.back();
    if (!(hi > lo)) hi = lo + 1.0;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        h.edges[b] = lo + (hi - lo) * b / bins;
    h.counts.assign(bins, 0.0);
    for (double e : eig) {
        int b = int((e - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        h.counts[b] += 1.0;
    }
    h.total = int(eig.size());
    return h;
}

GofReport goodness_of_fit(const std::vector<double>& eig, const Params& p,
                          int bins) {
    if (eig.empty()) throw DomainError("goodness_of_fit: empty sample");
    if (!std::is_sorted(eig.begin(), eig.end()))
        throw DomainError("goodness_of_fit: eigenvalues must be sorted");

    std::vector<double> cdf = model_cdf_batch(eig, p);
    double n = double(eig.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < eig.size(); ++i) {
        ks = std::max(ks, cdf[i] - double(i) / n);
        ks = std::max(ks, double(i + 1) / n - cdf[i]);
    }

    if (bins <= 0) bins = fd_bins(eig);
    Histogram h = make_histogram(eig, bins);
    std::vector<double> edge_cdf = model_cdf_batch(h.edges, p);
    double l1 = 0.0;
    for (int b = 0; b < bins; ++b) {
        double emp = h.counts[b] / n;
        double mod = edge_cdf[b + 1] - edge_cdf[b];
        l1 += std::abs(emp - mod);
    }
    return {ks, l1, int(eig.size()), bins};
}

}  // namespace mp3
