#include "lps/monotone.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lps/errors.hpp"
#include "lps/parallel.hpp"
#include "lps/rng.hpp"

namespace lps {

namespace {

std::string format_param(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double parse_param(std::string_view spec, std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("function spec '" + std::string(spec) + "': bad parameter '" +
                     std::string(text) + "'");
  }
  return value;
}

/// Log grid over [1e-6, 1e6] used to test nonvanishing/positivity hypotheses.
bool holds_on_probe_grid(const ScalarFunction& f, bool (*pred)(double)) {
  for (int k = -60; k <= 60; ++k) {
    const double t = std::pow(10.0, k / 10.0);
    const double v = f.eval(t);
    if (!std::isfinite(v) || !pred(v)) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Registry

ScalarFunction make_power(double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw ParseError("power:s requires s in (0, 1], got " + format_param(s));
  }
  ScalarFunction f;
  f.name = "power:" + format_param(s);
  f.params = {s};
  f.eval = [s](double t) { return std::pow(t, s); };
  f.deriv = [s](double t) { return s * std::pow(t, s - 1.0); };
  f.at_zero = 0.0;
  f.strictly_positive_on_open = true;
  f.vanishes_at_zero = true;
  return f;
}

ScalarFunction make_mobius(double c) {
  if (!(c > 0.0)) throw ParseError("mobius:c requires c > 0, got " + format_param(c));
  ScalarFunction f;
  f.name = "mobius:" + format_param(c);
  f.params = {c};
  f.eval = [c](double t) { return t / (t + c); };
  f.deriv = [c](double t) { return c / ((t + c) * (t + c)); };
  f.at_zero = 0.0;
  f.strictly_positive_on_open = true;
  f.vanishes_at_zero = true;
  return f;
}

ScalarFunction make_logshift() {
  ScalarFunction f;
  f.name = "logshift";
  f.eval = [](double t) { return std::log1p(t); };
  f.deriv = [](double t) { return 1.0 / (1.0 + t); };
  f.at_zero = 0.0;
  f.strictly_positive_on_open = true;
  f.vanishes_at_zero = true;
  return f;
}

ScalarFunction make_cubic() {
  ScalarFunction f;
  f.name = "cubic";
  f.eval = [](double t) { return t * t * t; };
  f.deriv = [](double t) { return 3.0 * t * t; };
  f.at_zero = 0.0;
  f.defined_on_negatives = true;
  f.strictly_positive_on_open = true;
  f.vanishes_at_zero = true;
  f.claimed_order = 1;
  return f;
}

ScalarFunction make_square() {
  ScalarFunction f;
  f.name = "square";
  f.eval = [](double t) { return t * t; };
  f.deriv = [](double t) { return 2.0 * t; };
  f.at_zero = 0.0;
  f.defined_on_negatives = true;
  f.strictly_positive_on_open = true;
  f.vanishes_at_zero = true;
  f.claimed_order = 1;
  return f;
}

ScalarFunction make_identity() {
  ScalarFunction f;
  f.name = "identity";
  f.eval = [](double t) { return t; };
  f.deriv = [](double) { return 1.0; };
  f.at_zero = 0.0;
  f.defined_on_negatives = true;
  f.strictly_positive_on_open = true;
  f.vanishes_at_zero = true;
  return f;
}

ScalarFunction registry_get(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  const std::string_view param = has_param ? spec.substr(colon + 1) : std::string_view{};

  auto no_param = [&](ScalarFunction (*make)()) {
    if (has_param) {
      throw ParseError("function spec '" + std::string(spec) + "' takes no parameter");
    }
    return make();
  };
  auto need_param = [&] {
    if (!has_param) {
      throw ParseError("function spec '" + std::string(spec) + "' needs a parameter");
    }
    return parse_param(spec, param);
  };

  if (head == "power") return make_power(need_param());
  if (head == "mobius") return make_mobius(need_param());
  if (head == "logshift") return no_param(make_logshift);
  if (head == "cubic") return no_param(make_cubic);
  if (head == "square") return no_param(make_square);
  if (head == "identity") return no_param(make_identity);
  throw ParseError("unknown function '" + std::string(spec) + "'");
}

std::vector<std::string> default_sweep_specs() {
  std::vector<std::string> specs;
  for (int k = 1; k <= 9; ++k) specs.push_back("power:0." + std::to_string(k));
  specs.insert(specs.end(), {"mobius:0.5", "mobius:1", "mobius:2", "logshift", "identity"});
  return specs;
}

std::vector<std::string> representative_specs() {
  return {"power:0.25", "power:0.5", "power:0.75", "power:1", "mobius:0.5", "mobius:1",
          "mobius:2",   "logshift",  "identity",   "cubic",   "square"};
}

// ---------------------------------------------------------------------------
// Loewner matrices

LoewnerMatrix loewner(const ScalarFunction& f, std::span<const double> points) {
  const std::size_t n = points.size();
  for (double t : points) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw DomainError("loewner: points must be positive and finite, got " + format_param(t));
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = f.eval(points[i]);

  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = points[i] == points[j]
                           ? f.deriv(points[i])
                           : (values[i] - values[j]) / (points[i] - points[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return {std::vector<double>(points.begin(), points.end()), SymMatrix(m)};
}

double loewner_failure_margin(const SymMatrix& loewner_matrix) {
  return 1e-8 * (1.0 + loewner_matrix.max_abs());
}

bool witness_rechecks(const ScalarFunction& f, const MonotoneWitness& w, double margin_factor) {
  const auto l = loewner(f, w.points);
  const double min_eig = eigh(l.matrix).values.front();
  return min_eig < -margin_factor * loewner_failure_margin(l.matrix);
}

MonotoneVerdict check_n_monotone(const ScalarFunction& f, std::size_t n, double lo, double hi,
                                 std::size_t trials, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("check_n_monotone: order must be >= 1");
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw PreconditionError("check_n_monotone: domain must satisfy 0 < lo < hi");
  }
  if (trials < 1) throw PreconditionError("check_n_monotone: trials must be >= 1");

  auto draw = [&](std::size_t trial) {
    Rng rng = Rng::substream(seed, trial);
    std::vector<double> pts(n);
    for (double& t : pts) t = rng.log_uniform(lo, hi);
    return pts;
  };
  auto min_eig_of = [&](const std::vector<double>& pts, double* margin) {
    const auto l = loewner(f, pts);
    *margin = loewner_failure_margin(l.matrix);
    return eigh(l.matrix).values.front();
  };

  const auto first = find_first(trials, [&](std::size_t trial) {
    double margin = 0.0;
    return min_eig_of(draw(trial), &margin) < -margin;
  });

  MonotoneVerdict v;
  v.order_tested = n;
  if (!first) {
    v.samples_used = trials;
    return v;
  }
  auto pts = draw(*first);
  double margin = 0.0;
  const double min_eig = min_eig_of(pts, &margin);
  v.status = MonotoneStatus::kCertifiedNot;
  v.samples_used = *first + 1;
  v.witness = MonotoneWitness{std::move(pts), min_eig};
  return v;
}

// ---------------------------------------------------------------------------
// Transforms

ScalarFunction transform_neg_inv(const ScalarFunction& f) {
  if (!f.strictly_positive_on_open &&
      !holds_on_probe_grid(f, [](double v) { return v != 0.0; })) {
    throw PreconditionError("transform_neg_inv: " + f.name + " vanishes on (0, inf)");
  }
  ScalarFunction g;
  g.name = "neginv(" + f.name + ")";
  g.params = f.params;
  g.eval = [fe = f.eval](double t) { return -1.0 / fe(t); };
  g.deriv = [fe = f.eval, fd = f.deriv](double t) {
    const double v = fe(t);
    return fd(t) / (v * v);
  };
  if (f.at_zero && *f.at_zero != 0.0) g.at_zero = -1.0 / *f.at_zero;
  g.defined_on_negatives = false;
  g.strictly_positive_on_open = false;
  g.vanishes_at_zero = false;
  g.claimed_order = f.claimed_order;
  return g;
}

ScalarFunction transform_quotient(const ScalarFunction& f) {
  if (!f.strictly_positive_on_open ||
      !holds_on_probe_grid(f, [](double v) { return v > 0.0; })) {
    throw PreconditionError("transform_quotient: " + f.name +
                            " is not strictly positive on (0, inf)");
  }
  ScalarFunction g;
  g.name = "quot(" + f.name + ")";
  g.params = f.params;
  g.eval = [fe = f.eval](double t) { return t / fe(t); };
  g.deriv = [fe = f.eval, fd = f.deriv](double t) {
    const double v = fe(t);
    return (v - t * fd(t)) / (v * v);
  };
  g.at_zero = 0.0;
  g.defined_on_negatives = false;
  g.strictly_positive_on_open = true;
  g.vanishes_at_zero = true;
  if (f.claimed_order) g.claimed_order = *f.claimed_order / 2;
  return g;
}

// ---------------------------------------------------------------------------
// Operator-level checks

JensenGap jensen_gap(const ScalarFunction& f, const SymMatrix& a, const SymMatrix& c) {
  if (a.dim() != c.dim()) throw InputError("jensen_gap: dimension mismatch");
  if (const auto chk = is_psd(a); !chk) {
    throw PreconditionError("jensen_gap: A is not PSD (min eigenvalue " +
                            format_param(chk.min_eigenvalue) + ")");
  }
  const auto ec = eigh(c);
  const double radius = std::max(std::abs(ec.values.front()), std::abs(ec.values.back()));
  if (radius > 1.0 + 1e-10) {
    throw PreconditionError("jensen_gap: C is not a contraction (spectral radius " +
                            format_param(radius) + ")");
  }
  const SymMatrix lhs = sandwich(c, apply_function(a, f, false));
  const SymMatrix rhs = apply_function(sandwich(c, a), f, false);
  const auto chk = dominates(rhs, lhs);
  return {rhs - lhs, chk.psd, chk.min_eigenvalue};
}

PairCheck monotone_pair_check(const ScalarFunction& h, const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("monotone_pair_check: dimension mismatch");
  if (!is_psd(a) || !is_psd(b)) throw PreconditionError("monotone_pair_check: A, B must be PSD");
  if (const auto order = dominates(b, a); !order) {
    throw PreconditionError("monotone_pair_check: A <= B fails (min eigenvalue of B - A " +
                            format_param(order.min_eigenvalue) + ")");
  }
  const auto chk = dominates(apply_function(b, h, true), apply_function(a, h, true));
  return {chk.psd, chk.min_eigenvalue};
}

}  // namespace lps
