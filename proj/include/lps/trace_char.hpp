#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "lps/linalg.hpp"
#include "lps/scalar_function.hpp"

namespace lps {

enum class TraceTestKind { kPs, kSubadd, kAbsDom };
enum class TraceStatus { kViolationFound, kNoViolation };

const char* to_string(TraceTestKind kind);
const char* to_string(TraceStatus status);

struct TraceWitness {
  SymMatrix a;
  std::optional<SymMatrix> b;  // absent for the single-matrix |phi(A)| <= phi(|A|) test
  double lhs = 0.0;
  double rhs = 0.0;
  bool structured = false;  // found by the probe phase rather than random search
};

struct TraceTestVerdict {
  TraceStatus status = TraceStatus::kNoViolation;
  TraceTestKind test_kind = TraceTestKind::kPs;
  std::optional<TraceWitness> witness;
  std::size_t trials_used = 0;  // structured probes + random trials evaluated
};

/// Ratios lambda / mu used by the structured probes (mu = 1).
inline constexpr double kProbeRatios[] = {0.5, 0.9, 0.99, 0.999};

/// A violation needs lhs > rhs + kTraceRelTolerance * (|lhs| + |rhs| + 1).
inline constexpr double kTraceRelTolerance = 1e-8;

/// Falsification search for phi(A) + phi(B) - phi(|A-B|) <= 2 phi(f(A)^{1/2} g(B) f(A)^{1/2}).
/// Structured phase first: the rank-one probe pair embedded at every coordinate
/// pair of S's eigenbasis and every ratio in kProbeRatios. Then `trials` seeded
/// random PSD pairs. f must satisfy f(0) = 0 and f > 0 on (0, inf).
TraceTestVerdict trace_test_ps(const Functional& phi, const ScalarFunction& f,
                               std::size_t trials, std::uint64_t seed);

/// Searches for phi(|A+B|) > phi(|A|) + phi(|B|) over probe-derived pairs
/// (B - A, A) and seeded random symmetric pairs.
TraceTestVerdict subadditivity_witness(const Functional& phi, std::size_t trials,
                                       std::uint64_t seed);

/// Searches for |phi(A)| > phi(|A|) over probe differences and seeded random
/// symmetric A.
TraceTestVerdict abs_dominance_witness(const Functional& phi, std::size_t trials,
                                       std::uint64_t seed);

/// Independent recomputation of a witness (different matrix-function route);
/// true iff it is still a violation with the tolerance scaled by `tol_factor`.
bool witness_rechecks(const Functional& phi, const ScalarFunction* f, TraceTestKind kind,
                      const TraceWitness& w, double tol_factor = 10.0);

/// rhs - lhs of the main inequality for S = diag(d, 1) on the probe pair
/// (lambda, mu), computed from the matrices.
double probe_gap(double d, double lambda, double mu, const ScalarFunction& f);

/// phi(B) - phi(A) - phi(|A - B|) for PSD A, B (positive means the s = 0 form
/// of the inequality fails).
double s0_excess(const Functional& phi, const SymMatrix& a, const SymMatrix& b);
/// phi(|X+Y|) - phi(|X|) - phi(|Y|).
double subadd_excess(const Functional& phi, const SymMatrix& x, const SymMatrix& y);

struct ProjectionPair {
  SymMatrix p;
  SymMatrix q;
  SymMatrix meet;  // projection onto Ran p cap Ran q
};

/// Projection onto Ran p cap Ran q: null space of 2I - p - q, rank decided at 1e-8.
SymMatrix projection_meet(const SymMatrix& p, const SymMatrix& q);

/// Two seeded random projections of random ranks in [0, n].
ProjectionPair random_projection_pair(std::uint64_t seed, std::size_t n);

struct ProjectionProbe {
  ProjectionPair pair;
  double lhs = 0.0;  // phi(p + q - |p - q|)
  double mid = 0.0;  // 2 phi(p meet q)
  double rhs = 0.0;  // 2 phi(p q p)
  double identity_residual = 0.0;  // ||(p + q - |p - q|) - 2 (p meet q)||_max
  bool lhs_equals_mid = false;     // |lhs - mid| <= 1e-8
  bool mid_below_rhs = false;      // mid <= rhs + 1e-8
  bool lhs_below_rhs = false;      // lhs <= rhs + 1e-8
  bool meet_dominated = false;     // pqp - p meet q passes is_psd
};

ProjectionProbe projection_probe(std::uint64_t p_seed, std::size_t n, const Functional& phi);

}  // namespace lps
