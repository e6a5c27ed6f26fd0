#include "lps/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "lps/errors.hpp"

namespace lps {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalRatio = 1e-14;
constexpr double kZeroClampRel = 1e-9;

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

EigenDecomposition eigh(const SymMatrix& sym) {
  const std::size_t n = sym.dim();
  Matrix a = sym.dense();
  Matrix v = Matrix::identity(n);
  const double target = kOffDiagonalRatio * sym.frobenius();

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- J^T A J with J the (p, q) Givens rotation.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  out.sweeps = sweep;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double zero_threshold(const SymMatrix& a) {
  return kZeroClampRel * std::max(1.0, a.max_abs());
}

SymMatrix spectral_apply(const EigenDecomposition& eig, double zero_thr,
                         const std::function<double(double)>& fn, ZeroRule rule) {
  std::vector<double> mapped(eig.values.size());
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values[k];
    const bool is_zero = std::abs(lambda) <= zero_thr;
    if (is_zero && rule == ZeroRule::kZeroAsZero) {
      mapped[k] = 0.0;
      continue;
    }
    const double arg = is_zero ? 0.0 : lambda;
    double value = 0.0;
    try {
      value = fn(arg);
    } catch (const DomainError& e) {
      throw DomainError("eigenvalue " + format_double(lambda) + " outside function domain: " +
                        e.what());
    }
    if (!std::isfinite(value)) {
      throw DomainError("eigenvalue " + format_double(lambda) +
                        " maps to a non-finite function value");
    }
    mapped[k] = value;
  }
  return from_spectrum(eig.vectors, mapped);
}

SymMatrix spectral_apply(const SymMatrix& a, const std::function<double(double)>& fn,
                         ZeroRule rule) {
  return spectral_apply(eigh(a), zero_threshold(a), fn, rule);
}

SymMatrix apply_function(const SymMatrix& a, const ScalarFunction& f, bool zero_as_zero) {
  auto guarded = [&f](double t) {
    if (t == 0.0) {
      if (!f.at_zero) throw DomainError(f.name + " is not defined at 0");
      return *f.at_zero;
    }
    if (t < 0.0 && !f.defined_on_negatives) {
      throw DomainError(f.name + " is not defined on negative arguments");
    }
    return f.eval(t);
  };
  return spectral_apply(a, guarded, zero_as_zero ? ZeroRule::kZeroAsZero : ZeroRule::kEvaluate);
}

SymMatrix psd_power(const EigenDecomposition& eig, double zero_thr, double p) {
  auto pw = [p](double t) {
    if (t < 0.0) throw DomainError("negative eigenvalue in a PSD power");
    return std::pow(t, p);
  };
  return spectral_apply(eig, zero_thr, pw, ZeroRule::kZeroAsZero);
}

SymMatrix psd_power(const SymMatrix& a, double p) {
  return psd_power(eigh(a), zero_threshold(a), p);
}

PosNegParts pos_neg_parts(const SymMatrix& d) {
  const auto eig = eigh(d);
  const std::size_t n = d.dim();
  std::vector<double> pos(n), neg(n);
  for (std::size_t k = 0; k < n; ++k) {
    pos[k] = std::max(eig.values[k], 0.0);
    neg[k] = std::max(-eig.values[k], 0.0);
  }
  PosNegParts out{from_spectrum(eig.vectors, pos), from_spectrum(eig.vectors, neg), {}};
  out.abs = out.pos + out.neg;
  return out;
}

SymMatrix abs_value(const SymMatrix& d) { return pos_neg_parts(d).abs; }

PsdCheck is_psd(const SymMatrix& a, Tolerance tol) {
  if (a.dim() == 0) return {true, 0.0};
  const auto eig = eigh(a);
  const double min_eig = eig.values.front();
  return {min_eig >= -(tol.rel * a.max_abs() + tol.abs), min_eig};
}

PsdCheck dominates(const SymMatrix& big, const SymMatrix& small, Tolerance tol) {
  const SymMatrix diff = big - small;
  const double scale = std::max(big.max_abs(), small.max_abs());
  const double min_eig = eigh(diff).values.front();
  return {min_eig >= -(tol.rel * scale + tol.abs), min_eig};
}

SymMatrix hadamard(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("hadamard: dimension mismatch");
  Matrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) * b(i, j);
  return SymMatrix(c);
}

Functional::Functional(SymMatrix weight) : weight_(std::move(weight)) {
  if (weight_.dim() == 0) throw InputError("Functional: empty weight matrix");
  const double min_eig = eigh(weight_).values.front();
  if (min_eig < -1e-10 * weight_.max_abs()) {
    throw PreconditionError("Functional: weight matrix is not PSD (min eigenvalue " +
                            format_double(min_eig) + ")");
  }
}

Functional Functional::trace(std::size_t n) {
  return Functional(SymMatrix::identity(n), Kind::kTrace);
}

bool Functional::is_scalar_trace(double tol) const {
  const double c = weight_(0, 0);
  if (c <= 0.0) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (std::abs(weight_(i, j) - (i == j ? c : 0.0)) > tol * c) return false;
  return true;
}

double Functional::operator()(const SymMatrix& x) const {
  if (x.dim() != dim()) {
    throw InputError("functional: dimension mismatch (" + std::to_string(dim()) + " vs " +
                     std::to_string(x.dim()) + ")");
  }
  if (kind_ == Kind::kTrace) return x.trace();
  // Tr(S X) for symmetric S, X is the Frobenius inner product.
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) s += weight_(i, j) * x(i, j);
  return s;
}

double functional_apply(const Functional& phi, const SymMatrix& x) { return phi(x); }

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();

  // Modified Gram-Schmidt over columns, applied twice for orthogonality.
  for (std::size_t k = 0; k < n; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t m = 0; m < k; ++m) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += g(i, m) * g(i, k);
        for (std::size_t i = 0; i < n; ++i) g(i, k) -= dot * g(i, m);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += g(i, k) * g(i, k);
    norm = std::sqrt(norm);
    if (norm < 1e-300) {
      // Degenerate draw; redraw the column.
      for (std::size_t i = 0; i < n; ++i) g(i, k) = rng.normal();
      --k;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) g(i, k) /= norm;
  }
  return g;
}

SymMatrix random_psd_rank(std::size_t n, std::size_t rank, Rng& rng, double spectrum_scale) {
  const Matrix v = random_orthogonal(n, rng);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double draw = rng.uniform(0.0, spectrum_scale);
    if (i < rank) u[i] = draw;
  }
  return from_spectrum(v, u);
}

SymMatrix random_psd(std::size_t n, Rng& rng, double spectrum_scale) {
  return random_psd_rank(n, n, rng, spectrum_scale);
}

SymMatrix random_psd(std::size_t n, std::uint64_t seed, double spectrum_scale) {
  if (n == 0) throw InputError("random_psd: n must be >= 1");
  Rng rng(mix_seed(seed, n));
  return random_psd(n, rng, spectrum_scale);
}

SymMatrix random_symmetric(std::size_t n, Rng& rng, double scale) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = scale * rng.normal();
      m(j, i) = m(i, j);
    }
  return SymMatrix(m);
}

SymMatrix random_contraction(std::size_t n, Rng& rng) { return random_psd(n, rng, 1.0); }

SymMatrix random_projection(std::size_t n, std::size_t rank, Rng& rng) {
  const Matrix v = random_orthogonal(n, rng);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < std::min(rank, n); ++i) u[i] = 1.0;
  return from_spectrum(v, u);
}

}  // namespace lps
