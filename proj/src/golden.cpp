#include "lps/golden.hpp"

#include <cmath>

namespace lps {

GoldenResult golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                     double tol, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  GoldenResult best = fc <= fd ? GoldenResult{c, fc, 0} : GoldenResult{d, fd, 0};

  int it = 0;
  for (; it < max_iterations && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc < best.fx) best = {c, fc, 0};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd < best.fx) best = {d, fd, 0};
    }
  }
  best.iterations = it;
  return best;
}

}  // namespace lps
