#include "cayleymix/entropic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cayleymix/error.hpp"

namespace cayleymix {

double EntropicSchedule::log_n() const { return std::log(static_cast<double>(n)); }

double solve_entropy_target(WalkKind kind, double target, const SolverOptions& options) {
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw InvalidArgument("entropy target must be positive, got " + std::to_string(target));
  }
  const auto h = [&](double s) { return entropy(make_law(kind, s, options.law)); };

  double lo = 0.0;
  double hi = 1.0;
  while (h(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) throw NumericalError("entropy target " + std::to_string(target) + " not bracketed");
  }
  for (int it = 0; it < options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double value = h(mid);
    if (std::fabs(value - target) <= options.tolerance) return mid;
    if (mid == lo || mid == hi) break;
    (value < target ? lo : hi) = mid;
  }
  throw NumericalError("entropy bisection did not reach tolerance " +
                       std::to_string(options.tolerance) + " for target " + std::to_string(target));
}

EntropicSchedule solve_t0(WalkKind kind, std::int64_t k, std::uint64_t n,
                          const SolverOptions& options) {
  if (k < 2) throw InvalidArgument("solve_t0 needs k >= 2");
  if (n < 3) throw InvalidArgument("solve_t0 needs n >= 3");
  EntropicSchedule sched;
  sched.kind = kind;
  sched.k = k;
  sched.n = n;
  sched.options = options;
  const double kd = static_cast<double>(k);
  const double s0 = solve_entropy_target(kind, sched.log_n() / kd, options);
  sched.t0 = s0 * kd;
  sched.v = q_moments(make_law(kind, s0, options.law)).var_Q1;
  sched.kappa = kd / sched.log_n();
  sched.omega = options.omega_override.value_or(default_omega(sched));
  if (!(sched.v > 0.0) || !(sched.omega > 0.0)) {
    throw NumericalError("degenerate schedule: v = " + std::to_string(sched.v));
  }
  return sched;
}

double solve_t_alpha(const EntropicSchedule& schedule, double alpha) {
  if (alpha == 0.0) return schedule.t0;
  const double kd = static_cast<double>(schedule.k);
  const double target = (schedule.log_n() + alpha * std::sqrt(schedule.v * kd)) / kd;
  if (!(target > 0.0)) {
    throw InvalidArgument("alpha = " + std::to_string(alpha) +
                          " gives a non-positive entropy target for this (k, n)");
  }
  return solve_entropy_target(schedule.kind, target, schedule.options) * kd;
}

double default_omega(const EntropicSchedule& schedule) {
  return std::pow(schedule.v * static_cast<double>(schedule.k), 0.25);
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::below: return "<";
    case Regime::above: return ">";
    case Regime::critical: break;
  }
  return "=";
}

AsymptoticEstimate asymptotic_t0(WalkKind kind, std::int64_t k, std::uint64_t n,
                                 const RegimeThresholds& thresholds) {
  if (k < 2 || n < 3) throw InvalidArgument("asymptotic_t0 needs k >= 2 and n >= 3");
  const double kd = static_cast<double>(k);
  const double log_n = std::log(static_cast<double>(n));
  AsymptoticEstimate out;
  out.kappa = kd / log_n;
  if (out.kappa < thresholds.below) {
    out.regime = Regime::below;
    out.estimate = kd * std::exp(2.0 * log_n / kd) / (2.0 * std::numbers::pi * std::numbers::e);
  } else if (out.kappa > thresholds.above) {
    out.regime = Regime::above;
    out.estimate = kd / (out.kappa * std::log(out.kappa));
  } else {
    out.regime = Regime::critical;
    out.estimate = solve_t0(kind, k, n).t0;
  }
  return out;
}

const HypothesisClause& HypothesisReport::clause(std::string_view name) const {
  for (const auto& c : clauses) {
    if (c.name == name) return c;
  }
  throw InvalidArgument("no hypothesis clause named '" + std::string(name) + "'");
}

HypothesisReport validate_hypotheses(const AbelianGroup& group, std::int64_t k,
                                     HypothesisFamily family, const HypothesisParams& params) {
  if (k < 2) throw InvalidArgument("validate_hypotheses needs k >= 2");
  const double kd = static_cast<double>(k);
  const double n = static_cast<double>(group.order());
  const double log_n = std::log(n);
  const double d = static_cast<double>(group.dim());
  const double m_star = static_cast<double>(group.min_side());
  const double log_k = std::log(kd);
  const double loglog_k = std::log(log_k);
  const double loglog_n = std::log(log_n);

  HypothesisReport report;
  report.family = family;
  auto add = [&](std::string name, double lhs, double rhs, bool strict = false) {
    const bool holds = strict ? lhs < rhs : lhs <= rhs;
    report.clauses.push_back(HypothesisClause{std::move(name), holds, lhs, rhs});
  };

  if (family == HypothesisFamily::cutoff) {
    const double eta = params.eta;
    // min side must exceed n^{1/k} log²k (strict)
    add("min_side", std::pow(n, 1.0 / kd) * log_k * log_k, m_star, true);
    add("small_k.k_bound", kd, eta * log_n / 3.0);
    add("small_k.dim_bound", d * (1.0 / kd + 2.0 * loglog_k / log_n), 1.0 - eta);
    const double logloglog_n = std::log(loglog_n);
    // k ≥ ¼ log n / logloglog n; vacuous (never holds) when logloglog n ≤ 0
    const double k_floor = logloglog_n > 0.0 ? 0.25 * log_n / logloglog_n
                                             : std::numeric_limits<double>::infinity();
    add("large_k.k_bound", k_floor, kd);
    add("large_k.dim_bound", d, log_n / (30.0 * log_k));
    const auto& c = report.clauses;
    const bool small_branch = c[1].holds && c[2].holds;
    const bool large_branch = c[3].holds && c[4].holds;
    report.clauses.push_back(HypothesisClause{"branch", small_branch || large_branch,
                                              small_branch ? 1.0 : 0.0, large_branch ? 1.0 : 0.0});
    report.clauses.push_back(HypothesisClause{
        "all", c[0].holds && (small_branch || large_branch), 0.0, 0.0});
    return report;
  }

  const double p = params.p;
  const double k_root = std::isinf(p) ? 1.0 : std::pow(kd, 1.0 / p);
  const double kappa = kd / log_n;
  // k^{1/p} n^{1/k} / m_* → 0 is reported as a ratio below one
  add("side_ratio", k_root * std::pow(n, 1.0 / kd) / m_star, 1.0, true);
  add("dim_over_k", d / kd, 1.0, true);
  if (p == 1.0) {
    add("p1.kappa_finite", kappa, std::numeric_limits<double>::max());
    add("p1.dim_bound", d, 0.5 * log_n / loglog_n);
  } else if (std::isinf(p)) {
    add("pinf.kappa_small", kappa, 0.2, true);
  } else {
    add("p.k_bound", kd, log_n / loglog_n);
  }
  return report;
}

}  // namespace cayleymix
