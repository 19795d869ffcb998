#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cayleymix {

/// Law of one auxiliary coordinate: rate-1/k Poisson counts (directed walk)
/// or rate-1/k continuous-time simple random walk on Z (undirected walk).
enum class WalkKind { poisson, srw };

std::string_view to_string(WalkKind kind);
WalkKind parse_walk_kind(std::string_view name);

/// Largest stored Poisson window; poisson_law throws LimitExceeded beyond it.
inline constexpr std::size_t kMaxPoissonWindow = std::size_t{1} << 24;
/// Largest Poisson(s/2) window fed to the quadratic srw convolution.
inline constexpr std::size_t kMaxSrwHalfWindow = 20'000;

struct LawOptions {
  /// Total probability mass allowed outside the stored window.
  double truncation_mass = 1e-14;
};

/// Truncated pmf of W_1 at effective time s = t/k, stored on an integer
/// window [lo, hi]. Values outside the window are treated as zero.
class LatticeWalkLaw {
 public:
  LatticeWalkLaw(WalkKind kind, double s, std::int64_t lo, std::vector<double> pmf);

  WalkKind kind() const { return kind_; }
  double s() const { return s_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(pmf_.size()) - 1; }
  std::span<const double> pmf() const { return pmf_; }

  double at(std::int64_t x) const {
    return (x < lo_ || x > hi()) ? 0.0 : pmf_[static_cast<std::size_t>(x - lo_)];
  }
  /// True when x is in the support of the untruncated law (x >= 0 for Poisson).
  bool in_lattice(std::int64_t x) const { return kind_ == WalkKind::srw || x >= 0; }

  double total_mass() const;
  double mean() const;
  double variance() const;

 private:
  WalkKind kind_;
  double s_;
  std::int64_t lo_;
  std::vector<double> pmf_;
};

LatticeWalkLaw poisson_law(double s, const LawOptions& options = {});

/// pmf(x) = e^{-s} I_x(s), built as the difference of two independent
/// Poisson(s/2) step counts.
LatticeWalkLaw srw_law(double s, const LawOptions& options = {});

LatticeWalkLaw make_law(WalkKind kind, double s, const LawOptions& options = {});

/// Shannon entropy in nats; terms are accumulated smallest-first in extended precision.
double entropy(const LatticeWalkLaw& law);

/// s log(1/s) + s + e^{-s} Σ_{ℓ≥2} s^ℓ log(ℓ!)/ℓ!, the Poisson(s) entropy as a series.
double entropy_directed_closed_form(double s);

/// Moments of Q_1 = -log ν(W_1) under W_1 ~ ν.
struct QMoments {
  double mean_Q1 = 0.0;
  double var_Q1 = 0.0;
  double fourth_central_Q1 = 0.0;
};

QMoments q_moments(const LatticeWalkLaw& law);

/// Smallest integer r >= 0 with P(|W_1 - E W_1| > r) <= k^{-3/2}; the mean is not rounded.
std::int64_t r_alpha(const LatticeWalkLaw& law, std::int64_t k);

/// Minimum pmf over the lattice points x with |x - round(E W_1)| <= r.
double p_alpha(const LatticeWalkLaw& law, std::int64_t r);

/// Exact tail and point probabilities at distance r from the centre
/// (s for Poisson with integer s, 0 for the SRW).
struct TailStats {
  double upper_tail = 0.0;   // P(X >= c + r)
  double upper_point = 0.0;  // P(X = c + r)
  double lower_tail = 0.0;   // P(X <= c - r)
  double lower_point = 0.0;  // P(X = c - r)
};

TailStats tail_stats(const LatticeWalkLaw& law, std::int64_t r);

}  // namespace cayleymix
