#pragma once

#include <functional>
#include <vector>

namespace randpoly {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  // Hard cap on subintervals; exceeding it reports converged = false.
  int max_intervals = 10000;
  // Interior points where the initial partition is split (e.g. a known kink
  // or the mode of a sharply peaked integrand).
  std::vector<double> split_points;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7, K15) on [a, b]. Worst interval first; stops as
// soon as the summed error estimate meets max(abs_tol, rel_tol * |value|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& options = {});

}  // namespace randpoly
