#pragma once

#include <cstdint>
#include <vector>

#include "mp3/params.hpp"

// Finite-size validation: eigenvalues of (1/m) K^dagger K for complex
// Gaussian K (m x n) with the diagonal of Re K shifted by sqrt(m a),
// compared against the bulk density at (r, t, a) = (n/m, t, a).
namespace mp3 {

struct McConfig {
    int m = 0;                 // rows of K, m >= n >= 1
    int n = 0;                 // columns of K
    double t = 1.0;            // entry variance: Re, Im ~ N(0, t/2)
    double a = 0.0;            // diagonal shift sqrt(m a) on Re K_kk
    int samples = 1;
    std::uint64_t seed = 1;

    void validate() const;
    Params params() const { return Params(double(n) / m, t, a); }
};

struct SpectrumSample {
    McConfig config;
    std::vector<double> eigenvalues;  // all samples merged, ascending
    double mean;                      // should approach t + a
};

struct Histogram {
    std::vector<double> edges;   // bins + 1 entries
    std::vector<double> counts;  // raw counts per bin
    int total;
};

struct GofReport {
    double ks;       // Kolmogorov-Smirnov distance to the model CDF
    double l1;       // total variation against the binned model masses
    int n_eigen;
    int bins;
};

// Draws cfg.samples spectra.  Deterministic for a given config
// including across thread counts (samples own their RNG substreams and
// are merged by index).  Honors the MP3_THREADS environment variable.
// Throws EigensolverFailure with the sample index if a decomposition
// fails.
SpectrumSample sample_spectrum(const McConfig& cfg);

// CDF of the bulk density by quadrature, exact 0/1 outside the bulk.
double model_cdf(double x, const Params& p);

// CDF at an ascending batch of points (one incremental quadrature pass
// instead of one full integral per point).
std::vector<double> model_cdf_batch(const std::vector<double>& xs,
                                    const Params& p);

// Freedman-Diaconis bin count for the merged spectrum (>= 8 bins).
int fd_bins(const std::vector<double>& eigenvalues);

Histogram make_histogram(const std::vector<double>& eigenvalues, int bins);

// KS over the merged eigenvalues plus an L1 distance on histogram bin
// masses; bins <= 0 selects Freedman-Diaconis.
GofReport goodness_of_fit(const std::vector<double>& eigenvalues,
                          const Params& p, int bins = 0);

// Thread budget: MP3_THREADS if set (>= 1), hardware concurrency
// otherwise.
int thread_budget();

}  // namespace mp3
