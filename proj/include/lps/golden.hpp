#pragma once

#include <functional>

namespace lps {

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Golden-section search for a minimizer of `f` on [a, b]; stops once the
/// bracket is no wider than `tol`. Returns the best point evaluated.
GoldenResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                     double tol, int max_iterations = 200);

}  // namespace lps
