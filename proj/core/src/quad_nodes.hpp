#pragma once

// Internal quadrature node generation shared by repmodels and spherical.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sphc::detail {

/// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    int npts) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre: npts must be >= 1");
  std::vector<double> x(npts), w(npts);
  for (int i = 0; i < npts; ++i) {
    // Newton from the Chebyshev-angle initial guess.
    double xi = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = xi;
      for (int k = 1; k < npts; ++k) {
        const double p2 = ((2 * k + 1) * xi * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      const double dp = npts * (xi * p1 - p0) / (xi * xi - 1.0);
      const double step = p1 / dp;
      xi -= step;
      if (std::abs(step) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = xi;
    for (int k = 1; k < npts; ++k) {
      const double p2 = ((2 * k + 1) * xi * p1 - k * p0) / (k + 1);
      p0 = p1;
      p1 = p2;
    }
    const double dp = npts * (xi * p1 - p0) / (xi * xi - 1.0);
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
  return {x, w};
}

}  // namespace sphc::detail
