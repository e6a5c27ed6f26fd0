#include "lps/trace_char.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "lps/errors.hpp"
#include "lps/inequalities.hpp"
#include "lps/monotone.hpp"
#include "lps/parallel.hpp"
#include "lps/rng.hpp"

namespace lps {

namespace {

double violation_tol(double lhs, double rhs, double factor = 1.0) {
  return factor * kTraceRelTolerance * (std::abs(lhs) + std::abs(rhs) + 1.0);
}

bool is_violation(double lhs, double rhs, double factor = 1.0) {
  return lhs > rhs + violation_tol(lhs, rhs, factor);
}

/// Probe pairs (A, B) in the eigenbasis of S: the 2x2 probe embedded at every
/// ordered coordinate pair (i, j) and every ratio, conjugated by U.
std::vector<std::pair<SymMatrix, SymMatrix>> structured_probes(const Functional& phi) {
  const std::size_t n = phi.dim();
  std::vector<std::pair<SymMatrix, SymMatrix>> out;
  if (n < 2) return out;
  const Matrix u = eigh(phi.weight()).vectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (double ratio : kProbeRatios) {
        const auto [a2, b2] = probe_matrices(ratio, 1.0);
        out.emplace_back(congruence(u, embed_2x2(a2, n, i, j)),
                         congruence(u, embed_2x2(b2, n, i, j)));
      }
    }
  }
  return out;
}

/// Runs structured candidates sequentially, then the random phase in ordered
/// parallel blocks. `eval` returns (lhs, rhs) for a candidate.
template <class Candidate, class Eval, class MakeRandom, class ToWitness>
TraceTestVerdict search(TraceTestKind kind, const std::vector<Candidate>& structured,
                        std::size_t trials, Eval&& eval, MakeRandom&& make_random,
                        ToWitness&& to_witness) {
  TraceTestVerdict v;
  v.test_kind = kind;
  for (std::size_t k = 0; k < structured.size(); ++k) {
    const auto [lhs, rhs] = eval(structured[k]);
    if (is_violation(lhs, rhs)) {
      v.status = TraceStatus::kViolationFound;
      v.trials_used = k + 1;
      v.witness = to_witness(structured[k], lhs, rhs, true);
      return v;
    }
  }
  const auto hit = find_first(trials, [&](std::size_t t) {
    const auto [lhs, rhs] = eval(make_random(t));
    return is_violation(lhs, rhs);
  });
  if (!hit) {
    v.trials_used = structured.size() + trials;
    return v;
  }
  const auto cand = make_random(*hit);
  const auto [lhs, rhs] = eval(cand);
  v.status = TraceStatus::kViolationFound;
  v.trials_used = structured.size() + *hit + 1;
  v.witness = to_witness(cand, lhs, rhs, false);
  return v;
}

using Pair = std::pair<SymMatrix, SymMatrix>;

}  // namespace

const char* to_string(TraceTestKind kind) {
  switch (kind) {
    case TraceTestKind::kPs: return "ps";
    case TraceTestKind::kSubadd: return "subadd";
    case TraceTestKind::kAbsDom: return "absdom";
  }
  return "?";
}

const char* to_string(TraceStatus status) {
  return status == TraceStatus::kViolationFound ? "VIOLATION_FOUND" : "NO_VIOLATION";
}

TraceTestVerdict trace_test_ps(const Functional& phi, const ScalarFunction& f,
                               std::size_t trials, std::uint64_t seed) {
  if (!f.positive_vanishing()) {
    throw PreconditionError("trace_test_ps: " + f.name +
                            " must satisfy f(0) = 0 and f > 0 on (0, inf)");
  }
  const std::size_t n = phi.dim();
  auto eval = [&](const Pair& c) {
    const auto r = ps_verify(phi, f, c.first, c.second);
    return std::pair{r.lhs, r.rhs};
  };
  auto make_random = [&](std::size_t t) { return sweep_pair(n, mix_seed(seed, t)); };
  auto to_witness = [](const Pair& c, double lhs, double rhs, bool structured) {
    return TraceWitness{c.first, c.second, lhs, rhs, structured};
  };
  return search(TraceTestKind::kPs, structured_probes(phi), trials, eval, make_random,
                to_witness);
}

TraceTestVerdict subadditivity_witness(const Functional& phi, std::size_t trials,
                                       std::uint64_t seed) {
  const std::size_t n = phi.dim();
  // X = B - A, Y = A turns phi(|X+Y|) into phi(B).
  std::vector<Pair> structured;
  for (const auto& [a, b] : structured_probes(phi)) {
    structured.emplace_back(b - a, a);
    structured.emplace_back(a - b, b);
  }
  auto eval = [&](const Pair& c) {
    return std::pair{phi(abs_value(c.first + c.second)),
                     phi(abs_value(c.first)) + phi(abs_value(c.second))};
  };
  auto make_random = [&](std::size_t t) {
    Rng rng = Rng::substream(seed, t);
    SymMatrix x = random_symmetric(n, rng);
    SymMatrix y = random_symmetric(n, rng);
    return Pair{std::move(x), std::move(y)};
  };
  auto to_witness = [](const Pair& c, double lhs, double rhs, bool structured) {
    return TraceWitness{c.first, c.second, lhs, rhs, structured};
  };
  return search(TraceTestKind::kSubadd, structured, trials, eval, make_random, to_witness);
}

TraceTestVerdict abs_dominance_witness(const Functional& phi, std::size_t trials,
                                       std::uint64_t seed) {
  const std::size_t n = phi.dim();
  std::vector<SymMatrix> structured;
  for (const auto& [a, b] : structured_probes(phi)) {
    structured.push_back(b - a);
    structured.push_back(a - b);
  }
  auto eval = [&](const SymMatrix& a) { return std::pair{std::abs(phi(a)), phi(abs_value(a))}; };
  auto make_random = [&](std::size_t t) {
    Rng rng = Rng::substream(seed, t);
    return random_symmetric(n, rng);
  };
  auto to_witness = [](const SymMatrix& a, double lhs, double rhs, bool structured) {
    return TraceWitness{a, std::nullopt, lhs, rhs, structured};
  };
  return search(TraceTestKind::kAbsDom, structured, trials, eval, make_random, to_witness);
}

bool witness_rechecks(const Functional& phi, const ScalarFunction* f, TraceTestKind kind,
                      const TraceWitness& w, double tol_factor) {
  // |X| recomputed as (X^2)^{1/2} rather than from the signed spectrum.
  auto abs2 = [](const SymMatrix& x) { return psd_power(SymMatrix(x.dense() * x.dense()), 0.5); };
  double lhs = 0.0;
  double rhs = 0.0;
  switch (kind) {
    case TraceTestKind::kPs: {
      if (!f || !w.b) throw PreconditionError("witness_rechecks: ps witness needs f and B");
      const SymMatrix& a = w.a;
      const SymMatrix& b = *w.b;
      lhs = phi(a + b) - phi(abs2(a - b));
      const SymMatrix fa_half = psd_power(apply_function(a, *f, false), 0.5);
      const SymMatrix gb = apply_function(b, transform_quotient(*f), true);
      rhs = 2.0 * phi(SymMatrix(fa_half.dense() * gb.dense() * fa_half.dense()));
      break;
    }
    case TraceTestKind::kSubadd: {
      if (!w.b) throw PreconditionError("witness_rechecks: subadd witness needs B");
      lhs = phi(abs2(w.a + *w.b));
      rhs = phi(abs2(w.a)) + phi(abs2(*w.b));
      break;
    }
    case TraceTestKind::kAbsDom: {
      lhs = std::abs(phi(w.a));
      rhs = phi(abs2(w.a));
      break;
    }
  }
  return is_violation(lhs, rhs, tol_factor);
}

double probe_gap(double d, double lambda, double mu, const ScalarFunction& f) {
  if (!(d >= 0.0 && d <= 1.0)) throw PreconditionError("probe_gap: d must lie in [0, 1]");
  const auto [a, b] = probe_matrices(lambda, mu);
  const Functional phi(SymMatrix::diag({d, 1.0}));
  return ps_verify(phi, f, a, b).gap;
}

double s0_excess(const Functional& phi, const SymMatrix& a, const SymMatrix& b) {
  return phi(b) - phi(a) - phi(abs_value(a - b));
}

double subadd_excess(const Functional& phi, const SymMatrix& x, const SymMatrix& y) {
  return phi(abs_value(x + y)) - phi(abs_value(x)) - phi(abs_value(y));
}

SymMatrix projection_meet(const SymMatrix& p, const SymMatrix& q) {
  if (p.dim() != q.dim()) throw InputError("projection_meet: dimension mismatch");
  const std::size_t n = p.dim();
  // x in Ran p cap Ran q  <=>  (I - p) x = 0 and (I - q) x = 0  <=>  (2I - p - q) x = 0.
  const SymMatrix stack = 2.0 * SymMatrix::identity(n) - p - q;
  const auto eig = eigh(stack);
  std::vector<double> keep(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(eig.values[k]) <= 1e-8) keep[k] = 1.0;
  return from_spectrum(eig.vectors, keep);
}

ProjectionPair random_projection_pair(std::uint64_t seed, std::size_t n) {
  if (n < 1) throw InputError("random_projection_pair: n must be >= 1");
  Rng rng(seed);
  const auto rank_p = static_cast<std::size_t>(rng.integer(0, n));
  const auto rank_q = static_cast<std::size_t>(rng.integer(0, n));
  SymMatrix p = random_projection(n, rank_p, rng);
  SymMatrix q = random_projection(n, rank_q, rng);
  SymMatrix meet = projection_meet(p, q);
  return {std::move(p), std::move(q), std::move(meet)};
}

ProjectionProbe projection_probe(std::uint64_t p_seed, std::size_t n, const Functional& phi) {
  if (phi.dim() != n) throw InputError("projection_probe: functional dimension mismatch");
  ProjectionProbe out;
  out.pair = random_projection_pair(p_seed, n);
  const auto& [p, q, meet] = out.pair;
  const SymMatrix lhs_matrix = p + q - abs_value(p - q);
  const SymMatrix pqp = sandwich(p, q);
  out.lhs = phi(lhs_matrix);
  out.mid = 2.0 * phi(meet);
  out.rhs = 2.0 * phi(pqp);
  out.identity_residual = max_abs_diff(lhs_matrix, 2.0 * meet);
  out.lhs_equals_mid = std::abs(out.lhs - out.mid) <= 1e-8;
  out.mid_below_rhs = out.mid <= out.rhs + 1e-8;
  out.lhs_below_rhs = out.lhs <= out.rhs + 1e-8;
  out.meet_dominated = is_psd(pqp - meet).psd;
  return out;
}

}  // namespace lps
