#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lps/linalg.hpp"
#include "lps/scalar_function.hpp"

namespace lps {

// ---------------------------------------------------------------------------
// Registry

/// Parses "power:s" (s in (0,1]), "mobius:c" (c > 0), "cubic", "square",
/// "logshift" and "identity". Throws ParseError on anything else.
ScalarFunction registry_get(std::string_view spec);

ScalarFunction make_power(double s);
ScalarFunction make_mobius(double c);
ScalarFunction make_logshift();
ScalarFunction make_cubic();
ScalarFunction make_square();
ScalarFunction make_identity();

/// The function sweep used for the main-inequality checks: power:0.1 ... 0.9,
/// mobius:{0.5,1,2}, logshift, identity.
std::vector<std::string> default_sweep_specs();
/// Every registry entry instantiated at representative parameters.
std::vector<std::string> representative_specs();

// ---------------------------------------------------------------------------
// Loewner matrices

struct LoewnerMatrix {
  std::vector<double> points;
  SymMatrix matrix;
};

/// Entry (i,j) = (f(t_i) - f(t_j)) / (t_i - t_j), and f'(t_i) whenever t_i == t_j.
LoewnerMatrix loewner(const ScalarFunction& f, std::span<const double> points);

/// A Loewner matrix whose min eigenvalue lies below -loewner_failure_margin(L)
/// certifies that f is not n-monotone.
double loewner_failure_margin(const SymMatrix& loewner_matrix);

enum class MonotoneStatus { kCertifiedNot, kNoCounterexample };

struct MonotoneWitness {
  std::vector<double> points;
  double min_eigenvalue = 0.0;
};

struct MonotoneVerdict {
  MonotoneStatus status = MonotoneStatus::kNoCounterexample;
  std::size_t order_tested = 0;
  std::optional<MonotoneWitness> witness;
  std::size_t samples_used = 0;
};

/// Samples `trials` point-sets of size n log-uniformly from [lo, hi] and reports
/// the first one whose Loewner matrix is certifiably not PSD.
MonotoneVerdict check_n_monotone(const ScalarFunction& f, std::size_t n, double lo, double hi,
                                 std::size_t trials, std::uint64_t seed);

/// Recomputes the witness's Loewner matrix and confirms it fails with the margin
/// multiplied by `margin_factor`.
bool witness_rechecks(const ScalarFunction& f, const MonotoneWitness& w,
                      double margin_factor = 1.0);

// ---------------------------------------------------------------------------
// Transforms

/// t -> -1/f(t), derivative f'/f^2. Requires f nonvanishing on (0, inf).
ScalarFunction transform_neg_inv(const ScalarFunction& f);

/// g(t) = t / f(t) on (0, inf), g(0) = 0. Requires f > 0 on (0, inf). A
/// 2n-monotone f yields an n-monotone g, so the claimed order halves.
ScalarFunction transform_quotient(const ScalarFunction& f);

// ---------------------------------------------------------------------------
// Operator-level checks

struct JensenGap {
  SymMatrix gap_matrix;  // f(C A C) - C f(A) C
  bool holds = false;
  double min_eigenvalue = 0.0;
};

/// C f(A) C <= f(C A C) for PSD A and a symmetric contraction C.
JensenGap jensen_gap(const ScalarFunction& f, const SymMatrix& a, const SymMatrix& c);

struct PairCheck {
  bool holds = false;
  double gap_min_eig = 0.0;
};

/// h(A) <= h(B) for PSD A <= B, with h(0) := 0.
PairCheck monotone_pair_check(const ScalarFunction& h, const SymMatrix& a, const SymMatrix& b);

}  // namespace lps
