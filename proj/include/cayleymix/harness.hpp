#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <atomic>
#include <exception>
#include <mutex>
#include <vector>

#include <json.hpp>

#include "cayleymix/mixingstats.hpp"
#include "cayleymix/walklaw.hpp"

namespace cayleymix {

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "CAYLEYMIX_WORKERS";

/// Stream labels mixed into per-trial seeds.
enum class ExperimentId : std::uint64_t {
  generators = 0x67656e73,  // Z per trial; shared by cutoff-profile and lower-bound-audit
  cutoff_profile = 0x63757466,
  lower_bound_audit = 0x6c626175,
  typdist = 0x74797064,
  dalpha = 0x64616c70,
};

struct ExperimentConfig {
  std::string group = "65536";
  std::int64_t k = 8;
  bool directed = false;
  std::vector<double> alphas{-2, -1, 0, 1, 2};
  std::vector<double> betas{0.1, 0.5, 0.9};
  double p = 1.0;
  std::size_t trials = 32;
  std::uint64_t seed = 1;
  std::optional<double> omega;
  std::vector<double> omega_factors{0.5, 1.0, 2.0};  // lower-bound-audit sweep, × ω₀
  std::size_t samples = 100'000;                     // Q samples per α
  std::optional<double> radius;                      // L_p search radius (p ≠ 1)
  std::string output;
  std::size_t workers = 0;                           // 0: environment, else 1

  WalkKind kind() const { return directed ? WalkKind::poisson : WalkKind::srw; }
  /// Throws InvalidArgument when a field is out of range or the group does not parse.
  void validate() const;
  std::size_t resolved_workers() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

struct ResultRow {
  std::string experiment;
  std::optional<std::size_t> trial;  // empty on summary rows
  std::vector<std::pair<std::string, double>> params;
  std::string metric;
  double value = 0.0;
  std::optional<double> std_error;

  std::optional<double> param(std::string_view name) const;
};

/// Fixed column order for one experiment's long-format CSV.
struct RowSchema {
  std::string experiment;
  std::vector<std::string> params;
};

/// Writes `# json-config: {...}` then `experiment,trial,<params>,metric,value,stderr`.
void write_rows_csv(std::ostream& out, const nlohmann::json& config, const RowSchema& schema,
                    const std::vector<ResultRow>& rows);

void write_config_line(std::ostream& out, const nlohmann::json& config);

/// Formats a double with round-trip precision; throws NumericalError on NaN or inf.
std::string format_number(double x);

/// Runs fn(0..count-1) on `workers` threads and returns the results in index order.
template <typename Fn>
auto parallel_trials(std::size_t count, std::size_t workers, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(workers, count));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct CutoffProfile {
  std::vector<ResultRow> rows;
  std::size_t skipped_non_generating = 0;
};

inline const RowSchema kCutoffSchema{"cutoff-profile", {"alpha", "t"}};

/// Exact TV and L2 at each t_α for `trials` generator samples; summary rows
/// carry the median and quartiles of TV next to Ψ(α).
CutoffProfile run_cutoff_profile(const ExperimentConfig& config);

struct LowerBoundAudit {
  std::vector<ResultRow> rows;
  std::vector<std::string> violations;  // one line per margin below −3σ
};

inline const RowSchema kAuditSchema{"lower-bound-audit", {"alpha", "t", "omega"}};

/// Exact TV against P̂(Q(t_α) ≤ log n − ω) − e^{−ω} for every trial, α and ω
/// in the sweep. Non-generating multisets are audited too.
LowerBoundAudit run_lower_bound_audit(const ExperimentConfig& config);

struct TypdistRun {
  std::vector<ResultRow> rows;
  double reference = 0.0;  // 𝓜_{k,p} or its directed version
};

inline const RowSchema kTypdistSchema{"typdist", {"beta"}};

/// D(β) per trial from BFS (p = 1) or the L_p lattice search; summary rows hold
/// the median across trials.
TypdistRun run_typdist_experiment(const ExperimentConfig& config);

/// `trial,beta,D,Mref,ratio` with trial = "median" on summary rows.
void write_typdist_csv(std::ostream& out, const nlohmann::json& config, const TypdistRun& run);

struct ValidationCheck {
  std::string name;
  std::string property;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
};

struct ValidationOptions {
  GcdFn gcd;  // replaces std::gcd inside the v·Z uniformity check
};

/// Runs the built-in invariant and brute-force checks of every module.
ValidationReport run_validation_suite(const ExperimentConfig& config,
                                      const ValidationOptions& options = {});

}  // namespace cayleymix
