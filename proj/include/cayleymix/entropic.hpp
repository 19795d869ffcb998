#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cayleymix/group.hpp"
#include "cayleymix/walklaw.hpp"

namespace cayleymix {

struct SolverOptions {
  /// Absolute tolerance on the entropy target, in nats.
  double tolerance = 1e-10;
  int max_iterations = 200;
  LawOptions law{};
  /// Replaces the default ω = (vk)^{1/4} when set.
  std::optional<double> omega_override{};
};

/// Entropic time t0 for (kind, k, n) with the data needed for the cutoff times.
struct EntropicSchedule {
  WalkKind kind = WalkKind::srw;
  std::int64_t k = 0;
  std::uint64_t n = 0;
  double t0 = 0.0;
  double v = 0.0;      // Var Q_1(t0)
  double omega = 0.0;
  double kappa = 0.0;  // k / log n
  SolverOptions options{};

  double log_n() const;
};

/// Effective time s at which entropy(kind, s) equals `target` (bisection).
double solve_entropy_target(WalkKind kind, double target, const SolverOptions& options = {});

EntropicSchedule solve_t0(WalkKind kind, std::int64_t k, std::uint64_t n,
                          const SolverOptions& options = {});

/// t_α: the time at which E Q_1 = (log n + α √(vk)) / k. Throws when the
/// target entropy is not positive.
double solve_t_alpha(const EntropicSchedule& schedule, double alpha);

/// (v k)^{1/4}
double default_omega(const EntropicSchedule& schedule);

enum class Regime { below, critical, above };

std::string_view to_string(Regime regime);

struct RegimeThresholds {
  double below = 0.2;  // κ < below → k ≪ log n
  double above = 5.0;  // κ > above → k ≫ log n
};

struct AsymptoticEstimate {
  Regime regime = Regime::critical;
  double kappa = 0.0;
  double estimate = 0.0;
};

/// Closed-form t0 in the two extreme regimes; the solver value at κ ≍ 1.
AsymptoticEstimate asymptotic_t0(WalkKind kind, std::int64_t k, std::uint64_t n,
                                 const RegimeThresholds& thresholds = {});

enum class HypothesisFamily { cutoff, typdist };

struct HypothesisClause {
  std::string name;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct HypothesisReport {
  HypothesisFamily family = HypothesisFamily::cutoff;
  std::vector<HypothesisClause> clauses;

  const HypothesisClause& clause(std::string_view name) const;
};

struct HypothesisParams {
  double eta = 0.5;
  double p = 1.0;  // L_p exponent for the typical-distance family; infinity allowed
};

/// Evaluates each clause of the hypotheses at finite n. Limits are replaced
/// by the ratio being checked; the report never blocks anything.
HypothesisReport validate_hypotheses(const AbelianGroup& group, std::int64_t k,
                                     HypothesisFamily family, const HypothesisParams& params = {});

}  // namespace cayleymix
