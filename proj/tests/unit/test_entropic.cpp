#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cayleymix/entropic.hpp"
#include "cayleymix/error.hpp"
#include "cayleymix/group.hpp"

using namespace cayleymix;

namespace {

const std::int64_t kGridK[] = {4, 8, 16, 64, 1024};
const double kGridN[] = {1e4, 1e6, 1e9};

}  // namespace

TEST_CASE("solver contract on the grid") {
  for (const WalkKind kind : {WalkKind::poisson, WalkKind::srw}) {
    for (const std::int64_t k : kGridK) {
      for (const double n : kGridN) {
        const auto nn = static_cast<std::uint64_t>(n);
        const EntropicSchedule sch = solve_t0(kind, k, nn);
        CAPTURE(to_string(kind));
        CAPTURE(k);
        CAPTURE(n);
        const double kd = static_cast<double>(k);
        CHECK(std::fabs(entropy(make_law(kind, sch.t0 / kd)) - std::log(n) / kd) <= 1e-10);
        CHECK(sch.v > 0.0);
        CHECK(sch.omega > 0.0);
        CHECK(sch.kappa == doctest::Approx(kd / std::log(n)));
        CHECK(sch.omega == std::pow(sch.v * kd, 0.25));
        const double vk = sch.v * kd;
        if (vk > 1.0) {
          CHECK(sch.omega > 1.0);
          CHECK(sch.omega < std::sqrt(vk));
        }
      }
    }
  }
}

TEST_CASE("regime below: srw n = 1e9, k = 6") {
  const EntropicSchedule sch = solve_t0(WalkKind::srw, 6, 1'000'000'000);
  const double formula = 6.0 * std::pow(1e9, 2.0 / 6.0) / (2 * std::numbers::pi * std::numbers::e);
  CHECK(std::fabs(sch.t0 / formula - 1.0) <= 0.10);
}

TEST_CASE("t_alpha") {
  const EntropicSchedule sch = solve_t0(WalkKind::srw, 8, 65536);
  CHECK(solve_t_alpha(sch, 0.0) == sch.t0);
  double prev = 0.0;
  for (double a = -2.0; a <= 2.0; a += 0.25) {
    const double t = solve_t_alpha(sch, a);
    CHECK(t > prev);
    prev = t;
  }
  const double kd = 8.0;
  const double t1 = solve_t_alpha(sch, 1.0);
  const double target = (std::log(65536.0) + std::sqrt(sch.v * kd)) / kd;
  CHECK(std::fabs(entropy(srw_law(t1 / kd)) - target) <= 1e-10);

  // target (log n − 40 √(vk))/k is negative
  CHECK_THROWS_AS(solve_t_alpha(sch, -40.0), InvalidArgument);
}

TEST_CASE("determinism") {
  for (const WalkKind kind : {WalkKind::poisson, WalkKind::srw}) {
    const EntropicSchedule a = solve_t0(kind, 16, 1'000'000);
    const EntropicSchedule b = solve_t0(kind, 16, 1'000'000);
    CHECK(a.t0 == b.t0);
    CHECK(a.v == b.v);
    CHECK(solve_t_alpha(a, 1.5) == solve_t_alpha(b, 1.5));
  }
}

TEST_CASE("omega") {
  EntropicSchedule sch;
  sch.v = 1.0;
  sch.k = 16;
  CHECK(default_omega(sch) == doctest::Approx(2.0).epsilon(1e-15));
  sch.v = 0.5;
  sch.k = 8;
  CHECK(default_omega(sch) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  SolverOptions options;
  options.omega_override = 3.5;
  CHECK(solve_t0(WalkKind::srw, 8, 65536, options).omega == 3.5);
}

TEST_CASE("asymptotic t0") {
  const AsymptoticEstimate low = asymptotic_t0(WalkKind::srw, 4, std::uint64_t{1} << 30);
  CHECK(low.regime == Regime::below);
  CHECK(low.estimate == doctest::Approx(4.0 * 32768.0 / (2 * std::numbers::pi * std::numbers::e)));
  CHECK(std::fabs(low.estimate / 7672.6 - 1.0) <= 1e-3);

  const std::uint64_t n = 10'000;
  const auto k = static_cast<std::int64_t>(std::ceil(10.0 * std::log(static_cast<double>(n))));
  const AsymptoticEstimate high = asymptotic_t0(WalkKind::poisson, k, n);
  CHECK(high.regime == Regime::above);
  CHECK(high.estimate == doctest::Approx(static_cast<double>(k) / (high.kappa * std::log(high.kappa))));

  const AsymptoticEstimate mid = asymptotic_t0(WalkKind::srw, 16, 65536);
  CHECK(mid.regime == Regime::critical);
  CHECK(mid.estimate == solve_t0(WalkKind::srw, 16, 65536).t0);
  CHECK(to_string(Regime::critical) == "=");

  RegimeThresholds th;
  th.above = 1.0;
  CHECK(asymptotic_t0(WalkKind::srw, 16, 65536, th).regime == Regime::above);
  CHECK_THROWS_AS(asymptotic_t0(WalkKind::srw, 1, 100), InvalidArgument);
}

TEST_CASE("hypotheses") {
  const HypothesisReport a = validate_hypotheses(make_group({65536}), 8, HypothesisFamily::cutoff);
  CHECK(a.clause("min_side").holds);
  CHECK(a.clause("min_side").rhs == 65536.0);
  CHECK(a.clause("min_side").lhs == doctest::Approx(4.0 * std::pow(std::log(8.0), 2)));

  // d (1/k + 2 log log k / log n) evaluated by hand for d = 1, k = 8, n = 2^16
  const double dim_bound = 1.0 / 8.0 + 2.0 * std::log(std::log(8.0)) / std::log(65536.0);
  CHECK(dim_bound == doctest::Approx(0.257).epsilon(1e-3));
  const HypothesisClause& d = a.clause("small_k.dim_bound");
  CHECK(d.lhs == doctest::Approx(dim_bound).epsilon(1e-14));
  CHECK(d.rhs == 0.5);
  CHECK(d.holds);

  const HypothesisReport b = validate_hypotheses(make_group({2, 2, 2}), 3, HypothesisFamily::cutoff);
  CHECK_FALSE(b.clause("min_side").holds);
  CHECK_FALSE(b.clause("all").holds);

  const HypothesisReport t = validate_hypotheses(make_group({65536}), 8, HypothesisFamily::typdist);
  CHECK(t.family == HypothesisFamily::typdist);
  CHECK(t.clause("dim_over_k").holds);
  CHECK_THROWS_AS(t.clause("min_side"), InvalidArgument);
  CHECK_THROWS_AS(validate_hypotheses(make_group({5}), 1, HypothesisFamily::cutoff), InvalidArgument);
}

TEST_CASE("solver errors") {
  CHECK_THROWS_AS(solve_t0(WalkKind::srw, 1, 100), InvalidArgument);
  CHECK_THROWS_AS(solve_t0(WalkKind::poisson, 4, 2), InvalidArgument);
  CHECK_THROWS_AS(solve_entropy_target(WalkKind::srw, 0.0), InvalidArgument);
  CHECK_THROWS_AS(solve_entropy_target(WalkKind::srw, -1.0), InvalidArgument);
  SolverOptions strict;
  strict.max_iterations = 3;
  CHECK_THROWS_AS(solve_t0(WalkKind::srw, 8, 65536, strict), NumericalError);
}
