#include <doctest.h>

#include <cmath>

#include "lps/errors.hpp"
#include "lps/inequalities.hpp"
#include "lps/monotone.hpp"
#include "lps/parallel.hpp"
#include "lps/trace_char.hpp"
#include "oracles.hpp"

using namespace lps;

namespace {

Functional weighted(double d) { return Functional(SymMatrix::diag({d, 1.0})); }

std::vector<ScalarFunction> admissible_registry() {
  std::vector<ScalarFunction> out;
  for (const auto& spec : representative_specs()) {
    auto f = registry_get(spec);
    if (f.positive_vanishing()) out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("trace_test_ps examples") {
  SUBCASE("trace never violates") {
    const auto v = trace_test_ps(Functional::trace(2), make_power(0.5), 200, 42);
    CHECK(v.status == TraceStatus::kNoViolation);
    CHECK_FALSE(v.witness);
    CHECK(v.test_kind == TraceTestKind::kPs);
    CHECK(v.trials_used >= 200);
  }
  SUBCASE("positive multiple of the trace") {
    const auto v = trace_test_ps(Functional(3.0 * SymMatrix::identity(3)), make_mobius(1.0), 200, 7);
    CHECK(v.status == TraceStatus::kNoViolation);
  }
  SUBCASE("diag(0.5, 1) fails in the structured phase") {
    const auto v = trace_test_ps(weighted(0.5), make_power(0.5), 1000, 42);
    REQUIRE(v.status == TraceStatus::kViolationFound);
    REQUIRE(v.witness);
    CHECK(v.witness->structured);
    CHECK(v.witness->b);
    CHECK(v.witness->lhs > v.witness->rhs);
    CHECK_THROWS_AS(witness_rechecks(weighted(0.5), nullptr, TraceTestKind::kPs, *v.witness),
                    PreconditionError);
    const auto f = make_power(0.5);
    CHECK(witness_rechecks(weighted(0.5), &f, TraceTestKind::kPs, *v.witness));
  }
  SUBCASE("non-diagonal weight is handled in its eigenbasis") {
    Rng rng(4);
    const auto u = random_orthogonal(3, rng);
    const auto s = congruence(u, SymMatrix::diag({0.2, 1.0, 1.0}));
    const auto v = trace_test_ps(Functional(s), make_logshift(), 0, 1);
    REQUIRE(v.status == TraceStatus::kViolationFound);
    CHECK(v.witness->structured);
    const auto f = make_logshift();
    CHECK(witness_rechecks(Functional(s), &f, TraceTestKind::kPs, *v.witness));
  }
  SUBCASE("inadmissible f") {
    auto f = make_power(0.5);
    f.vanishes_at_zero = false;
    f.at_zero = 1.0;
    CHECK_THROWS_AS(trace_test_ps(Functional::trace(2), f, 0, 1), PreconditionError);
  }
}

TEST_CASE("completeness: every non-tracial diag(d, 1) is caught") {
  for (double d : {0.3, 0.5, 0.7, 0.9, 1.5, 3.0}) {
    for (const auto& f : admissible_registry()) {
      const auto v = trace_test_ps(weighted(d), f, 0, 11);
      CHECK_MESSAGE(v.status == TraceStatus::kViolationFound, f.name << " d=" << d);
      if (v.witness) CHECK(witness_rechecks(weighted(d), &f, TraceTestKind::kPs, *v.witness));
    }
  }
}

TEST_CASE("probe gap: sign and scalar reduction") {
  const auto fs = admissible_registry();
  REQUIRE(fs.size() >= 5);
  for (const auto& f : fs) {
    for (double l : {0.5, 0.9, 0.99}) {
      // Trace: the inequality holds.
      CHECK(probe_gap(1.0, l, 1.0, f) >= -1e-12);
      for (double d : {0.0, 0.3, 0.5, 0.9, 1.0}) {
        const double ref = 2.0 * std::sqrt(l) * (1.0 - std::sqrt(l)) * oracle::probe_gap_reduced(d, l, 1.0);
        CHECK(probe_gap(d, l, 1.0, f) == doctest::Approx(ref).epsilon(1e-9).scale(1e-12));
      }
    }
    // d < 1 with lambda close to mu gives a strict violation.
    CHECK(probe_gap(0.5, 0.999, 1.0, f) < 0.0);
  }
  // Affine in d.
  const auto f = make_power(0.5);
  const double g0 = probe_gap(0.0, 0.7, 2.0, f);
  const double g1 = probe_gap(1.0, 0.7, 2.0, f);
  for (double d : {0.25, 0.6, 0.85}) {
    CHECK(probe_gap(d, 0.7, 2.0, f) == doctest::Approx(g0 + d * (g1 - g0)).epsilon(1e-9));
  }
}

TEST_CASE("s = 0 chain identity") {
  for (std::size_t t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 5;
    const auto [a, b] = sweep_pair(n, sweep_trial_seed(13, n, t));
    Rng rng(mix_seed(99, t));
    const Functional phi(random_psd(n, rng));
    const double s0 = s0_excess(phi, a, b);
    const double sub = subadd_excess(phi, b - a, a);
    CHECK(std::abs(s0 - sub) <= 1e-9 * (1.0 + a.max_abs() + b.max_abs()) * (1.0 + phi.weight().max_abs()));
    CHECK(s0 <= 1e-9 * (1.0 + a.max_abs() + b.max_abs()) * (1.0 + phi.weight().max_abs()));
  }
}

TEST_CASE("subadditivity_witness") {
  SUBCASE("trace is subadditive") {
    const auto v = subadditivity_witness(Functional::trace(3), 300, 42);
    CHECK(v.status == TraceStatus::kNoViolation);
    CHECK(v.test_kind == TraceTestKind::kSubadd);
  }
  SUBCASE("diag(0.5, 1) violates") {
    const auto v = subadditivity_witness(weighted(0.5), 1000, 42);
    REQUIRE(v.status == TraceStatus::kViolationFound);
    REQUIRE(v.witness);
    REQUIRE(v.witness->b);
    CHECK(witness_rechecks(weighted(0.5), nullptr, TraceTestKind::kSubadd, *v.witness));
    const double excess = subadd_excess(weighted(0.5), v.witness->a, *v.witness->b);
    CHECK(excess > 0.0);
    // Scale invariance: 2A, 2B also violates.
    CHECK(subadd_excess(weighted(0.5), 2.0 * v.witness->a, 2.0 * *v.witness->b) ==
          doctest::Approx(2.0 * excess));
  }
  SUBCASE("deterministic per seed and thread count") {
    set_thread_count(1);
    const auto v1 = subadditivity_witness(weighted(0.5), 1000, 5);
    set_thread_count(4);
    const auto v4 = subadditivity_witness(weighted(0.5), 1000, 5);
    set_thread_count(0);
    CHECK(v1.trials_used == v4.trials_used);
    REQUIRE(v1.witness);
    REQUIRE(v4.witness);
    CHECK(v1.witness->a == v4.witness->a);
  }
}

TEST_CASE("abs_dominance on self-adjoint input") {
  SUBCASE("search finds nothing") {
    for (double d : {0.5, 0.9, 2.0}) {
      const auto v = abs_dominance_witness(weighted(d), 500, 42);
      CHECK(v.status == TraceStatus::kNoViolation);
      CHECK(v.test_kind == TraceTestKind::kAbsDom);
    }
  }
  SUBCASE("exhaustive 2x2 grid agrees") {
    for (double d : {0.1, 0.5, 0.9}) CHECK(oracle::absdom_grid_max(d, 24) <= 1e-12);
  }
}

TEST_CASE("witness recheck rejects non-witnesses") {
  TraceWitness w;
  w.a = SymMatrix::diag({1.0, 0.0});
  w.b = SymMatrix::diag({0.0, 1.0});
  const auto f = make_power(0.5);
  CHECK_FALSE(witness_rechecks(Functional::trace(2), &f, TraceTestKind::kPs, w));
  CHECK_FALSE(witness_rechecks(Functional::trace(2), nullptr, TraceTestKind::kSubadd, w));
  CHECK_FALSE(witness_rechecks(Functional::trace(2), nullptr, TraceTestKind::kAbsDom, w));
}

TEST_CASE("projections") {
  SUBCASE("meet of equal projections") {
    Rng rng(3);
    const auto p = random_projection(4, 2, rng);
    CHECK(max_abs_diff(projection_meet(p, p), p) <= 1e-10);
  }
  SUBCASE("orthogonal ranges meet in 0") {
    const auto m = projection_meet(SymMatrix::diag({1, 0, 0}), SymMatrix::diag({0, 1, 0}));
    CHECK(m.max_abs() <= 1e-12);
  }
  SUBCASE("2x2 at angle theta") {
    const double th = 0.7;
    const double c = std::cos(th), s = std::sin(th);
    const auto p = SymMatrix::diag({1.0, 0.0});
    const SymMatrix q{{c * c, c * s}, {c * s, s * s}};
    CHECK(projection_meet(p, q).max_abs() <= 1e-12);
    const auto pqp = sandwich(p, q);
    CHECK(max_abs_diff(pqp, c * c * p) <= 1e-15);
    const auto lhs = p + q - abs_value(p - q);
    // |p - q| = sin(theta) I, so Tr(p + q - |p - q|) = 2 - 2 sin(theta) but the meet is 0.
    CHECK(max_abs_diff(abs_value(p - q), s * SymMatrix::identity(2)) <= 1e-14);
    CHECK(lhs.trace() == doctest::Approx(2.0 - 2.0 * s));
  }
  SUBCASE("random probe invariants") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto pr = projection_probe(seed, 4, Functional::trace(4));
      CHECK(pr.mid_below_rhs);
      CHECK(pr.meet_dominated);
      CHECK(max_abs_diff(sandwich(pr.pair.p, pr.pair.p), pr.pair.p) <= 1e-12);
      CHECK(max_abs_diff(sandwich(pr.pair.q, pr.pair.q), pr.pair.q) <= 1e-12);
    }
  }
  SUBCASE("commuting projections satisfy the identity") {
    const auto p = SymMatrix::diag({1, 1, 0, 0});
    const auto q = SymMatrix::diag({0, 1, 1, 0});
    const auto lhs = p + q - abs_value(p - q);
    CHECK(max_abs_diff(lhs, 2.0 * projection_meet(p, q)) <= 1e-12);
  }
}
