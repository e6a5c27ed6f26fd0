#include "lps/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lps/errors.hpp"
#include "lps/golden.hpp"
#include "lps/monotone.hpp"
#include "lps/parallel.hpp"

namespace lps {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_psd(const SymMatrix& m, const char* who, const char* name) {
  if (const auto chk = is_psd(m); !chk) {
    throw PreconditionError(std::string(who) + ": " + name + " is not PSD (min eigenvalue " +
                            fmt(chk.min_eigenvalue) + ")");
  }
}

/// h(s) with both eigendecompositions computed once.
class ChernoffObjective {
 public:
  ChernoffObjective(const SymMatrix& a, const SymMatrix& b)
      : eig_a_(eigh(a)), eig_b_(eigh(b)), thr_a_(zero_threshold(a)), thr_b_(zero_threshold(b)) {}

  double operator()(double s) const {
    const SymMatrix a_half = psd_power(eig_a_, thr_a_, 0.5 * (1.0 - s));
    const SymMatrix b_pow = psd_power(eig_b_, thr_b_, s);
    return sandwich(a_half, b_pow).trace();
  }

 private:
  EigenDecomposition eig_a_;
  EigenDecomposition eig_b_;
  double thr_a_;
  double thr_b_;
};

}  // namespace

SymMatrix ps_middle(const ScalarFunction& f, const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("ps: A and B differ in dimension");
  const ScalarFunction g = transform_quotient(f);
  const SymMatrix f_half = spectral_apply(
      a,
      [&f](double t) {
        if (t == 0.0) {
          if (!f.at_zero) throw DomainError(f.name + " has no value at 0");
          return std::sqrt(*f.at_zero);
        }
        if (t < 0.0) throw DomainError("negative eigenvalue of a PSD argument");
        return std::sqrt(f.eval(t));
      },
      ZeroRule::kEvaluate);
  return sandwich(f_half, apply_function(b, g, true));
}

double ps_rhs(const Functional& phi, const ScalarFunction& f, const SymMatrix& a,
              const SymMatrix& b) {
  if (a.dim() != phi.dim() || b.dim() != phi.dim()) {
    throw InputError("ps_rhs: functional and matrices differ in dimension");
  }
  require_psd(a, "ps_rhs", "A");
  require_psd(b, "ps_rhs", "B");
  return 2.0 * phi(ps_middle(f, a, b));
}

PSReport ps_verify(const Functional& phi, const ScalarFunction& f, const SymMatrix& a,
                   const SymMatrix& b, double rel) {
  PSReport r;
  r.rhs = ps_rhs(phi, f, a, b);
  r.lhs = phi(a) + phi(b) - phi(pos_neg_parts(a - b).abs);
  r.gap = r.rhs - r.lhs;
  r.holds = r.gap >= -rel * (std::abs(r.lhs) + std::abs(r.rhs) + 1.0);
  r.function_spec = f.name;
  r.dimension = a.dim();
  r.functional_kind = phi.kind();
  return r;
}

double chernoff_h(const SymMatrix& a, const SymMatrix& b, double s) {
  return ChernoffObjective(a, b)(s);
}

ChernoffResult chernoff_q(const SymMatrix& a, const SymMatrix& b, double tol_s) {
  if (a.dim() != b.dim()) throw InputError("chernoff_q: dimension mismatch");
  if (!(tol_s > 0.0)) throw PreconditionError("chernoff_q: tol_s must be positive");
  require_psd(a, "chernoff_q", "A");
  require_psd(b, "chernoff_q", "B");

  const ChernoffObjective h(a, b);
  ChernoffResult out;
  out.grid.reserve(kChernoffGridPoints);
  std::size_t best = 0;
  for (std::size_t k = 0; k < kChernoffGridPoints; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(kChernoffGridPoints - 1);
    out.grid.emplace_back(s, h(s));
    if (out.grid[k].second < out.grid[best].second) best = k;
  }
  out.s_star = out.grid[best].first;
  out.q_value = out.grid[best].second;

  const double lo = out.grid[best == 0 ? 0 : best - 1].first;
  const double hi = out.grid[std::min(best + 1, kChernoffGridPoints - 1)].first;
  const auto refined = golden_section_minimize(h, lo, hi, tol_s);
  out.iterations = refined.iterations;
  if (refined.fx < out.q_value) {
    out.s_star = refined.x;
    out.q_value = refined.fx;
  }
  return out;
}

FamilyScanResult family_scan(const SymMatrix& a, const SymMatrix& b,
                             const std::vector<std::string>& specs, double tol_s) {
  if (specs.empty()) throw PreconditionError("family_scan: no function specs given");
  std::vector<ScalarFunction> fs;
  fs.reserve(specs.size());
  for (const auto& spec : specs) {
    ScalarFunction f = registry_get(spec);
    if (!f.strictly_positive_on_open || (f.claimed_order && *f.claimed_order < 2)) {
      throw PreconditionError("family_scan: '" + spec +
                              "' is not a positive 2n-monotone candidate");
    }
    fs.push_back(std::move(f));
  }
  require_psd(a, "family_scan", "A");
  require_psd(b, "family_scan", "B");

  FamilyScanResult out;
  out.q_reference = chernoff_q(a, b, tol_s).q_value;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const double v = ps_middle(fs[k], a, b).trace();
    out.per_function.emplace_back(specs[k], v);
    if (k == 0 || v < out.best_value) {
      out.best_value = v;
      out.best_spec = specs[k];
    }
  }
  out.improved = out.best_value < out.q_reference - 1e-8 * (1.0 + std::abs(out.q_reference));
  return out;
}

std::pair<SymMatrix, SymMatrix> probe_matrices(double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > lambda) || !std::isfinite(mu)) {
    throw PreconditionError("rank_one_probe: requires 0 < lambda < mu (got " + fmt(lambda) + ", " +
                            fmt(mu) + ")");
  }
  const double r = std::sqrt(lambda * mu);
  return {SymMatrix{{lambda, r}, {r, mu}}, SymMatrix{{lambda, -r}, {-r, mu}}};
}

RankOneProbe rank_one_probe(double lambda, double mu) {
  auto [a, b] = probe_matrices(lambda, mu);
  RankOneProbe p;
  p.lambda = lambda;
  p.mu = mu;
  const double r2 = 2.0 * std::sqrt(lambda * mu);
  p.abs_diff = SymMatrix::diag({r2, r2});
  const double ratio = (mu - lambda) / (mu + lambda);
  p.factor = ratio * ratio;

  const double bound = 1e-9 * (lambda + mu);
  p.identity_holds = true;
  for (const auto& spec : representative_specs()) {
    const ScalarFunction f = registry_get(spec);
    if (!f.positive_vanishing()) continue;
    const double res = max_abs_diff(ps_middle(f, a, b), p.factor * a);
    p.residuals.emplace_back(spec, res);
    if (!(res <= bound)) p.identity_holds = false;
  }
  p.a = std::move(a);
  p.b = std::move(b);
  return p;
}

std::uint64_t sweep_trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) {
  return mix_seed(mix_seed(seed, n), trial);
}

std::pair<SymMatrix, SymMatrix> sweep_pair(std::size_t n, std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  std::size_t rank_a = n;
  std::size_t rank_b = n;
  if (rng.uniform() < 0.25) {
    const auto which = rng.integer(0, 2);
    if (which != 1) rank_a = static_cast<std::size_t>(rng.integer(0, n - 1));
    if (which != 0) rank_b = static_cast<std::size_t>(rng.integer(0, n - 1));
  }
  const double scale_a = rng.log_uniform(0.1, 10.0);
  const double scale_b = rng.log_uniform(0.1, 10.0);
  SymMatrix a = random_psd_rank(n, rank_a, rng, scale_a);
  SymMatrix b = random_psd_rank(n, rank_b, rng, scale_b);
  return {std::move(a), std::move(b)};
}

std::vector<SweepRow> ps_sweep(const std::vector<std::string>& specs,
                               const std::vector<std::size_t>& dims, std::size_t trials,
                               std::uint64_t seed, const std::optional<Functional>& phi) {
  std::vector<ScalarFunction> fs;
  for (const auto& s : specs) fs.push_back(registry_get(s));
  for (auto n : dims) {
    if (n < 1) throw InputError("ps_sweep: dimensions must be >= 1");
    if (phi && phi->dim() != n) {
      throw InputError("ps_sweep: functional dimension " + std::to_string(phi->dim()) +
                       " does not match requested dimension " + std::to_string(n));
    }
  }

  const std::size_t per_spec = dims.size() * trials;
  std::vector<SweepRow> rows(specs.size() * per_spec);
  parallel_for(per_spec, [&](std::size_t job) {
    const std::size_t n = dims[job / trials];
    const std::size_t trial = job % trials;
    const std::uint64_t ts = sweep_trial_seed(seed, n, trial);
    const auto [a, b] = sweep_pair(n, ts);
    const Functional tr = phi ? *phi : Functional::trace(n);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      auto& row = rows[k * per_spec + job];
      row.function_spec = specs[k];
      row.n = n;
      row.seed = ts;
      row.report = ps_verify(tr, fs[k], a, b);
      row.report.function_spec = specs[k];
    }
  });
  return rows;
}

}  // namespace lps
