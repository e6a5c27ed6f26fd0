#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lps/matrix.hpp"
#include "lps/rng.hpp"
#include "lps/scalar_function.hpp"

namespace lps {

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
};

/// Eigenvalues ascending; column k of `vectors` belongs to values[k].
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
  int sweeps = 0;

  SymMatrix reconstruct() const { return from_spectrum(vectors, values); }
};

/// Cyclic Jacobi eigensolver for real symmetric matrices. Sweeps until the
/// off-diagonal Frobenius mass is at most 1e-14 * ||A||_F (max 100 sweeps).
/// Deterministic for identical input.
EigenDecomposition eigh(const SymMatrix& a);

/// Eigenvalues with |lambda| <= zero_threshold(A) are treated as exactly 0 by
/// the functional calculus.
double zero_threshold(const SymMatrix& a);

enum class ZeroRule {
  /// Clamped zero eigenvalues map to 0 regardless of f (the g(0) := 0 convention).
  kZeroAsZero,
  /// Clamped zero eigenvalues are passed to f as exactly 0.0.
  kEvaluate,
};

/// V fn(Lambda) V^T with the zero-eigenvalue clamp applied. `fn` may throw
/// DomainError; the error is rethrown with the offending eigenvalue.
SymMatrix spectral_apply(const SymMatrix& a, const std::function<double(double)>& fn,
                         ZeroRule rule);
SymMatrix spectral_apply(const EigenDecomposition& eig, double zero_thr,
                         const std::function<double(double)>& fn, ZeroRule rule);

/// f(A) by the spectral calculus. With zero_as_zero, f(0) := 0; otherwise f's
/// own value at 0 is used and a DomainError is raised when f has none.
SymMatrix apply_function(const SymMatrix& a, const ScalarFunction& f, bool zero_as_zero);

/// A^p for PSD A with the support convention 0^p := 0 for every p, including
/// p = 0 (so A^0 is the support projection).
SymMatrix psd_power(const SymMatrix& a, double p);
SymMatrix psd_power(const EigenDecomposition& eig, double zero_thr, double p);

struct PosNegParts {
  SymMatrix pos;  // P
  SymMatrix neg;  // Q
  SymMatrix abs;  // |D| = P + Q
};

/// Positive/negative parts from one shared eigendecomposition of D.
PosNegParts pos_neg_parts(const SymMatrix& d);
SymMatrix abs_value(const SymMatrix& d);

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
  explicit operator bool() const { return psd; }
};

/// PSD iff min eigenvalue >= -(tol.rel * ||A||_max + tol.abs).
PsdCheck is_psd(const SymMatrix& a, Tolerance tol = {});

/// big - small >= 0, with the threshold scaled by max(||big||_max, ||small||_max)
/// so that near-equal operands are not judged on cancellation noise.
PsdCheck dominates(const SymMatrix& big, const SymMatrix& small, Tolerance tol = {});

SymMatrix hadamard(const SymMatrix& a, const SymMatrix& b);

/// Positive linear functional phi(X) = Tr(S X) on symmetric matrices.
class Functional {
 public:
  enum class Kind { kTrace, kWeighted };

  /// Validates that S is PSD (min eigenvalue >= -1e-10 * ||S||_max).
  explicit Functional(SymMatrix weight);
  static Functional trace(std::size_t n);

  const SymMatrix& weight() const { return weight_; }
  std::size_t dim() const { return weight_.dim(); }
  Kind kind() const { return kind_; }
  /// S == c * I for some c > 0 (such functionals are tracial).
  bool is_scalar_trace(double tol = 1e-12) const;

  double operator()(const SymMatrix& x) const;

 private:
  Functional(SymMatrix weight, Kind kind) : weight_(std::move(weight)), kind_(kind) {}
  SymMatrix weight_;
  Kind kind_ = Kind::kWeighted;
};

double functional_apply(const Functional& phi, const SymMatrix& x);

/// Haar-ish random orthogonal matrix: Gram-Schmidt of a Gaussian matrix.
Matrix random_orthogonal(std::size_t n, Rng& rng);
/// V diag(u) V^T with u_i uniform on [0, spectrum_scale]; `rank` < n zeroes
/// the trailing n - rank eigenvalues.
SymMatrix random_psd(std::size_t n, Rng& rng, double spectrum_scale = 1.0);
SymMatrix random_psd_rank(std::size_t n, std::size_t rank, Rng& rng, double spectrum_scale = 1.0);
/// Deterministic per (n, seed).
SymMatrix random_psd(std::size_t n, std::uint64_t seed, double spectrum_scale = 1.0);
/// Symmetric matrix with N(0, scale^2) entries on and above the diagonal.
SymMatrix random_symmetric(std::size_t n, Rng& rng, double scale = 1.0);
/// Symmetric contraction V diag(u) V^T, u uniform on [0, 1].
SymMatrix random_contraction(std::size_t n, Rng& rng);
/// Orthogonal projection onto a random `rank`-dimensional subspace.
SymMatrix random_projection(std::size_t n, std::size_t rank, Rng& rng);

}  // namespace lps
