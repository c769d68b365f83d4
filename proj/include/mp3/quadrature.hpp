#pragma once

#include <functional>

namespace mp3 {

// Tanh-sinh (double-exponential) quadrature on a finite interval.
// Handles integrable endpoint singularities (inverse square root and
// weaker), which is exactly what the spectral edges produce.  Levels
// are doubled until two consecutive estimates agree to rel_tol;
// QuadratureFailure is thrown if max_level is exhausted.
double integrate_de(const std::function<double(double)>& f, double lo,
                    double hi, double rel_tol = 1e-10, int max_level = 12);

}  // namespace mp3
