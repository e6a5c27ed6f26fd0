#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lps/linalg.hpp"
#include "lps/scalar_function.hpp"

namespace lps {

/// Both sides of phi(A) + phi(B) - phi(|A - B|) <= 2 phi(f(A)^{1/2} g(B) f(A)^{1/2}),
/// g(t) = t / f(t). f acts on the first argument, g on the second; swapping
/// A and B changes the bound.
struct PSReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // rhs - lhs
  bool holds = false;
  std::string function_spec;
  std::size_t dimension = 0;
  Functional::Kind functional_kind = Functional::Kind::kTrace;
};

/// Violation threshold for PSReport::holds: gap >= -rel * (|lhs| + |rhs| + 1).
inline constexpr double kPsRelTolerance = 1e-8;

/// f(A)^{1/2} g(B) f(A)^{1/2} with g = t/f(t), g(0) := 0. f(A)^{1/2} uses f's
/// own value at 0.
SymMatrix ps_middle(const ScalarFunction& f, const SymMatrix& a, const SymMatrix& b);

/// 2 phi(f(A)^{1/2} g(B) f(A)^{1/2}).
double ps_rhs(const Functional& phi, const ScalarFunction& f, const SymMatrix& a,
              const SymMatrix& b);

PSReport ps_verify(const Functional& phi, const ScalarFunction& f, const SymMatrix& a,
                   const SymMatrix& b, double rel = kPsRelTolerance);

/// Q(A, B) = min over s in [0, 1] of h(s) = Tr(A^{(1-s)/2} B^s A^{(1-s)/2}), with
/// the support convention for zero eigenvalues (so h(0) = Tr(A supp B)).
struct ChernoffResult {
  double s_star = 0.0;
  double q_value = 0.0;
  std::vector<std::pair<double, double>> grid;  // (s, h(s))
  int iterations = 0;
};

inline constexpr std::size_t kChernoffGridPoints = 33;
inline constexpr double kDefaultChernoffTol = 1e-6;

/// Evaluates h on a uniform grid, then golden-section refines the bracketing
/// grid cell to width tol_s. The grid is kept so flat or multimodal h is visible.
ChernoffResult chernoff_q(const SymMatrix& a, const SymMatrix& b,
                          double tol_s = kDefaultChernoffTol);

/// h(s) alone, for callers that want their own grid.
double chernoff_h(const SymMatrix& a, const SymMatrix& b, double s);

struct FamilyScanResult {
  std::vector<std::pair<std::string, double>> per_function;  // undoubled trace
  std::string best_spec;
  double best_value = 0.0;
  double q_reference = 0.0;
  bool improved = false;
};

/// Tr(f(A)^{1/2} g(B) f(A)^{1/2}) for each spec, compared with Q(A, B). Specs
/// must name functions that are positive on (0, inf) and at least 2-monotone
/// by registry claim; cubic and square are rejected.
FamilyScanResult family_scan(const SymMatrix& a, const SymMatrix& b,
                             const std::vector<std::string>& specs,
                             double tol_s = kDefaultChernoffTol);

/// The rank-one probe pair A = [[l, sqrt(l m)], [sqrt(l m), m]] and its mirror B
/// (off-diagonal negated), for which f(A)^{1/2} g(B) f(A)^{1/2} = factor * A with
/// factor = ((m - l) / (m + l))^2 whenever f(0) = 0.
struct RankOneProbe {
  double lambda = 0.0;
  double mu = 0.0;
  SymMatrix a;
  SymMatrix b;
  SymMatrix abs_diff;  // diag(2 sqrt(l m), 2 sqrt(l m))
  double factor = 0.0;
  std::vector<std::pair<std::string, double>> residuals;  // ||M_f - factor A||_max
  bool identity_holds = false;  // every residual <= 1e-9 (l + m)
};

RankOneProbe rank_one_probe(double lambda, double mu);
/// Probe matrices only, without the per-function residual checks.
std::pair<SymMatrix, SymMatrix> probe_matrices(double lambda, double mu);

// ---------------------------------------------------------------------------
// Seeded sweep over random PSD pairs.

/// Per-trial substream seed for dimension n, trial index `trial`.
std::uint64_t sweep_trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial);

/// Random PSD pair for a trial seed. With probability 1/4, A, B or both are
/// rank-deficient.
std::pair<SymMatrix, SymMatrix> sweep_pair(std::size_t n, std::uint64_t trial_seed);

struct SweepRow {
  std::string function_spec;
  std::size_t n = 0;
  std::uint64_t seed = 0;  // trial seed; sweep_pair(n, seed) regenerates (A, B)
  PSReport report;
};

/// Rows ordered by (spec, n, trial). With `phi` empty the canonical trace on
/// each dimension is used; otherwise `dims` must all equal phi's dimension.
std::vector<SweepRow> ps_sweep(const std::vector<std::string>& specs,
                               const std::vector<std::size_t>& dims, std::size_t trials,
                               std::uint64_t seed,
                               const std::optional<Functional>& phi = std::nullopt);

}  // namespace lps
