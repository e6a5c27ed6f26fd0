#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lps {

/// A real function of one variable together with the metadata the verifiers
/// need: its derivative, where it is defined, and the monotonicity order the
/// registry claims for it. `claimed_order` is documentation only; nothing in
/// the library trusts it as evidence.
struct ScalarFunction {
  std::string name;
  std::vector<double> params;
  std::function<double(double)> eval;
  std::function<double(double)> deriv;

  /// Value at t = 0 when f extends continuously there; empty when it does not.
  std::optional<double> at_zero;
  /// f accepts negative arguments (identity, square, cubic).
  bool defined_on_negatives = false;
  /// f((0, inf)) is contained in (0, inf).
  bool strictly_positive_on_open = false;
  /// f(0) == 0.
  bool vanishes_at_zero = false;
  /// Empty means "operator monotone" (every order).
  std::optional<int> claimed_order;

  double operator()(double t) const { return eval(t); }

  /// f(0) = 0 and f > 0 on (0, inf).
  bool positive_vanishing() const { return strictly_positive_on_open && vanishes_at_zero; }
};

}  // namespace lps
