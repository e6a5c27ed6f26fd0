#include "lps/cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lps/errors.hpp"
#include "lps/inequalities.hpp"
#include "lps/matrix_io.hpp"
#include "lps/monotone.hpp"
#include "lps/trace_char.hpp"

namespace lps {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader = "function_spec,n,seed,lhs,rhs,gap,holds";

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json witness_json(const TraceWitness& w) {
  json j = {{"A", matrix_to_json(w.a)}, {"lhs", w.lhs}, {"rhs", w.rhs},
            {"structured", w.structured}};
  j["B"] = w.b ? matrix_to_json(*w.b) : json(nullptr);
  return j;
}

json verdict_json(const TraceTestVerdict& v) {
  json j = {{"status", to_string(v.status)},
            {"test_kind", to_string(v.test_kind)},
            {"trials_used", v.trials_used}};
  j["witness"] = v.witness ? witness_json(*v.witness) : json(nullptr);
  return j;
}

/// Options shared by all subcommands.
struct Common {
  std::uint64_t seed = 42;
  std::size_t trials = 1000;
  std::optional<double> tol;
  std::string out_path;
  bool as_json = false;
};

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path);
  if (!f) throw InputError("cannot write " + c.out_path);
  f << text;
}

// ---------------------------------------------------------------------------

int cmd_check_monotone(const std::string& spec, std::size_t order, double lo, double hi,
                       const Common& c, std::ostream& out) {
  const ScalarFunction f = registry_get(spec);
  const auto v = check_n_monotone(f, order, lo, hi, c.trials, c.seed);
  json j = {{"function", spec},
            {"status", v.status == MonotoneStatus::kCertifiedNot ? "CERTIFIED_NOT"
                                                                 : "NO_COUNTEREXAMPLE"},
            {"order_tested", v.order_tested},
            {"domain", {lo, hi}},
            {"seed", c.seed},
            {"samples_used", v.samples_used}};
  if (v.witness) {
    j["witness"] = {{"points", v.witness->points},
                    {"min_eigenvalue", v.witness->min_eigenvalue},
                    {"loewner", matrix_to_json(loewner(f, v.witness->points).matrix)}};
  } else {
    j["witness"] = nullptr;
  }
  emit(j.dump(2) + "\n", c, out);
  return v.status == MonotoneStatus::kCertifiedNot ? kExitViolation : kExitPass;
}

int cmd_verify_ps(std::vector<std::string> specs, std::vector<std::size_t> dims,
                  const std::string& s_path, const Common& c, std::ostream& out,
                  std::ostream& err) {
  if (specs.empty()) specs = default_sweep_specs();
  std::vector<ScalarFunction> fs;
  for (const auto& s : specs) fs.push_back(registry_get(s));

  std::optional<Functional> phi;
  if (!s_path.empty()) {
    phi.emplace(read_matrix_file(s_path));
    if (dims.empty()) dims = {phi->dim()};
  }
  if (dims.empty()) dims = {2, 3, 4, 5, 6};

  const double rel = c.tol.value_or(kPsRelTolerance);
  auto rows = ps_sweep(specs, dims, c.trials, c.seed, phi);
  if (c.tol) {
    for (auto& r : rows) {
      r.report.holds =
          r.report.gap >= -rel * (std::abs(r.report.lhs) + std::abs(r.report.rhs) + 1.0);
    }
  }

  json witness = nullptr;
  std::size_t violations = 0;
  for (const auto& r : rows) {
    if (r.report.holds) continue;
    if (violations++ == 0) {
      const auto [a, b] = sweep_pair(r.n, r.seed);
      witness = {{"source", "random"}, {"function_spec", r.function_spec}, {"n", r.n},
                 {"seed", r.seed},     {"A", matrix_to_json(a)},           {"B", matrix_to_json(b)},
                 {"lhs", r.report.lhs}, {"rhs", r.report.rhs},             {"gap", r.report.gap}};
    }
  }
  // A non-tracial weight is also probed with the structured rank-one pairs.
  if (phi && !phi->is_scalar_trace() && witness.is_null()) {
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (!fs[k].positive_vanishing()) continue;
      const auto v = trace_test_ps(*phi, fs[k], 0, c.seed);
      if (v.status == TraceStatus::kViolationFound) {
        ++violations;
        witness = witness_json(*v.witness);
        witness["source"] = "structured";
        witness["function_spec"] = specs[k];
        witness["n"] = phi->dim();
        break;
      }
    }
  }

  std::string text;
  if (c.as_json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"function_spec", r.function_spec}, {"n", r.n}, {"seed", r.seed},
                     {"lhs", r.report.lhs}, {"rhs", r.report.rhs}, {"gap", r.report.gap},
                     {"holds", r.report.holds}});
    }
    text = json{{"rows", arr}, {"violations", violations}, {"witness", witness}}.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& r : rows) {
      os << r.function_spec << ',' << r.n << ',' << r.seed << ',' << g17(r.report.lhs) << ','
         << g17(r.report.rhs) << ',' << g17(r.report.gap) << ','
         << (r.report.holds ? "true" : "false") << '\n';
    }
    text = os.str();
  }
  emit(text, c, out);

  if (violations == 0) return kExitPass;
  if (!c.as_json) {
    const std::string dumped = witness.dump(2) + "\n";
    if (c.out_path.empty()) {
      err << dumped;
    } else {
      std::ofstream side(c.out_path + ".witness.json");
      side << dumped;
    }
  }
  return kExitViolation;
}

json chernoff_json(const ChernoffResult& r) {
  json grid = json::array();
  for (const auto& [s, h] : r.grid) grid.push_back({s, h});
  return {{"s_star", r.s_star}, {"q_value", r.q_value}, {"iterations", r.iterations},
          {"grid", grid}};
}

int cmd_chernoff(const std::string& a_path, const std::string& b_path, const Common& c,
                 std::ostream& out) {
  const SymMatrix a = read_matrix_file(a_path);
  const SymMatrix b = read_matrix_file(b_path);
  const auto r = chernoff_q(a, b, c.tol.value_or(kDefaultChernoffTol));
  emit(chernoff_json(r).dump(2) + "\n", c, out);
  return kExitPass;
}

int cmd_scan_family(const std::string& a_path, const std::string& b_path,
                    std::vector<std::string> specs, const Common& c, std::ostream& out) {
  if (specs.empty()) specs = default_sweep_specs();
  const SymMatrix a = read_matrix_file(a_path);
  const SymMatrix b = read_matrix_file(b_path);
  const auto r = family_scan(a, b, specs, c.tol.value_or(kDefaultChernoffTol));
  json per = json::array();
  for (const auto& [spec, v] : r.per_function) per.push_back({{"function_spec", spec}, {"value", v}});
  json j = {{"quantity", "Tr(f(A)^{1/2} g(B) f(A)^{1/2}) (undoubled)"},
            {"per_function", per},
            {"best_spec", r.best_spec},
            {"best_value", r.best_value},
            {"q_reference", r.q_reference},
            {"improved", r.improved}};
  emit(j.dump(2) + "\n", c, out);
  return kExitPass;
}

int cmd_trace_test(const std::string& s_path, const std::string& spec, const std::string& kind,
                   const Common& c, std::ostream& out) {
  const Functional phi(read_matrix_file(s_path));
  TraceTestVerdict v;
  if (kind == "ps") {
    v = trace_test_ps(phi, registry_get(spec), c.trials, c.seed);
  } else if (kind == "subadd") {
    v = subadditivity_witness(phi, c.trials, c.seed);
  } else {
    v = abs_dominance_witness(phi, c.trials, c.seed);
  }
  json j = verdict_json(v);
  j["seed"] = c.seed;
  if (kind == "ps") j["function_spec"] = spec;
  j["interpretation"] = v.status == TraceStatus::kViolationFound ? "not tracial"
                                                                 : "consistent with tracial";
  emit(j.dump(2) + "\n", c, out);
  return v.status == TraceStatus::kViolationFound ? kExitViolation : kExitPass;
}

int cmd_probe(double lambda, double mu, const Common& c, std::ostream& out) {
  const auto p = rank_one_probe(lambda, mu);
  json res = json::object();
  for (const auto& [spec, r] : p.residuals) res[spec] = r;
  json j = {{"lambda", p.lambda},
            {"mu", p.mu},
            {"A", matrix_to_json(p.a)},
            {"B", matrix_to_json(p.b)},
            {"abs_diff", matrix_to_json(p.abs_diff)},
            {"factor", p.factor},
            {"residual_bound", 1e-9 * (lambda + mu)},
            {"residuals", res},
            {"identity_holds", p.identity_holds}};
  emit(j.dump(2) + "\n", c, out);
  return p.identity_holds ? kExitPass : kExitViolation;
}

void add_common(CLI::App* sub, Common& c, bool with_trials) {
  sub->add_option("--seed", c.seed, "Base RNG seed")->capture_default_str();
  if (with_trials) sub->add_option("--trials", c.trials, "Random trials")->capture_default_str();
  sub->add_option("--tol", c.tol, "Tolerance override");
  sub->add_option("--out", c.out_path, "Write the report to this path instead of stdout");
  sub->add_flag("--json", c.as_json, "Emit JSON");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for matrix-monotone trace inequalities", "loewner-ps"};
  app.require_subcommand(1);

  Common common;

  std::string spec;
  std::size_t order = 2;
  double lo = 1e-2;
  double hi = 1e2;
  auto* check = app.add_subcommand("check-monotone", "Sample Loewner matrices of a function");
  check->add_option("function", spec, "Function spec, e.g. power:0.5")->required();
  check->add_option("--order,-n", order, "Matrix order n")->capture_default_str();
  check->add_option("--lo", lo, "Lower end of the sampling interval")->capture_default_str();
  check->add_option("--hi", hi, "Upper end of the sampling interval")->capture_default_str();
  add_common(check, common, true);

  std::vector<std::string> specs;
  std::vector<std::size_t> dims;
  std::string s_path;
  auto* verify = app.add_subcommand("verify-ps", "Sweep phi(A)+phi(B)-phi(|A-B|) <= "
                                                 "2 phi(f(A)^{1/2} g(B) f(A)^{1/2})");
  verify->add_option("--function,-f", specs, "Function spec (repeatable)");
  verify->add_option("--dims", dims, "Dimensions, comma separated (default 2,3,4,5,6)")
      ->delimiter(',');
  verify->add_option("--S", s_path, "Weight matrix S of phi = Tr(S .) (default: trace)");
  add_common(verify, common, true);
  verify->footer(
      "CSV columns: function_spec,n,seed,lhs,rhs,gap,holds\n"
      "  lhs = phi(A)+phi(B)-phi(|A-B|), rhs = 2 phi(f(A)^{1/2} g(B) f(A)^{1/2}), gap = rhs-lhs.\n"
      "  f acts on A and g(t) = t/f(t) on B; swapping A and B changes the bound.\n"
      "  seed is the per-trial seed that regenerates (A, B). Floats use 17 significant digits.\n"
      "Exit: 0 all rows hold, 1 usage error, 2 violation (witness JSON on stderr or in\n"
      "  <out>.witness.json).");

  std::string a_path;
  std::string b_path;
  auto* chern = app.add_subcommand("chernoff", "Q(A,B) = min_s Tr(A^{(1-s)/2} B^s A^{(1-s)/2})");
  chern->add_option("A", a_path, "Matrix JSON file")->required();
  chern->add_option("B", b_path, "Matrix JSON file")->required();
  add_common(chern, common, false);

  auto* scan = app.add_subcommand("scan-family",
                                  "Tr(f(A)^{1/2} g(B) f(A)^{1/2}) per function versus Q(A,B)");
  scan->add_option("A", a_path, "Matrix JSON file")->required();
  scan->add_option("B", b_path, "Matrix JSON file")->required();
  scan->add_option("--function,-f", specs, "Function spec (repeatable)");
  add_common(scan, common, false);

  std::string kind = "ps";
  std::string tt_spec = "power:0.5";
  auto* tt = app.add_subcommand("trace-test", "Search for evidence that phi = Tr(S .) is not tracial");
  tt->add_option("--S", s_path, "Weight matrix S")->required();
  tt->add_option("--function,-f", tt_spec, "Function spec for --kind ps")->capture_default_str();
  tt->add_option("--kind", kind, "ps | subadd | absdom")
      ->check(CLI::IsMember({"ps", "subadd", "absdom"}))
      ->capture_default_str();
  add_common(tt, common, true);

  double lambda = 0.0;
  double mu = 0.0;
  auto* probe = app.add_subcommand("probe", "Rank-one probe pair for 0 < lambda < mu");
  probe->add_option("lambda", lambda)->required();
  probe->add_option("mu", mu)->required();
  add_common(probe, common, false);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check_monotone(spec, order, lo, hi, common, out);
    if (verify->parsed()) return cmd_verify_ps(specs, dims, s_path, common, out, err);
    if (chern->parsed()) return cmd_chernoff(a_path, b_path, common, out);
    if (scan->parsed()) return cmd_scan_family(a_path, b_path, specs, common, out);
    if (tt->parsed()) return cmd_trace_test(s_path, tt_spec, kind, common, out);
    if (probe->parsed()) return cmd_probe(lambda, mu, common, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lps
