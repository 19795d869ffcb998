#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cayleymix/entropic.hpp"
#include "cayleymix/group.hpp"
#include "cayleymix/walklaw.hpp"

namespace cayleymix {

/// Standard normal upper tail P(N(0,1) >= alpha).
double psi(double alpha);

/// Local and global typicality of the auxiliary vector W(t_α) ∈ Z^k.
struct TypicalitySpec {
  LatticeWalkLaw law;
  std::int64_t k = 0;
  std::int64_t r = 0;                  // r_α
  double global_log_threshold = 0.0;   // log n + ω

  double centre() const { return law.kind() == WalkKind::poisson ? law.s() : 0.0; }
};

/// Typicality at t_α with the schedule's ω (or `omega` when positive).
TypicalitySpec make_typicality(const EntropicSchedule& schedule, double alpha, double omega = 0.0);

struct QSample {
  double q = 0.0;
  std::vector<std::int64_t> w;
  bool locally_typical = false;
  bool globally_typical = false;
};

/// Inverse-CDF sampler over a law's window, with the per-point values of −log pmf.
class LawSampler {
 public:
  explicit LawSampler(const LatticeWalkLaw& law);

  template <typename Rng>
  std::int64_t draw(Rng& rng) const {
    return lo_ + static_cast<std::int64_t>(index_of(rng.uniform()));
  }
  double neg_log_pmf(std::int64_t x) const { return neg_log_[static_cast<std::size_t>(x - lo_)]; }

 private:
  std::size_t index_of(double u) const;

  std::int64_t lo_;
  std::vector<double> cdf_;
  std::vector<double> neg_log_;
};

/// Draws W ∈ Z^k with iid coordinates; q = Σ −log ν(w_i). Trial i uses the
/// stream derive_seed(seed, i).
std::vector<QSample> sample_Q(const TypicalitySpec& typ, std::size_t trials, std::uint64_t seed);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// P̂(Q(t) ≤ log n − ω) − e^{−ω}; may be negative (the bound is then vacuous).
Estimate lower_bound_estimate(const EntropicSchedule& schedule, double t, double omega,
                              std::size_t trials, std::uint64_t seed);

struct CltRow {
  double alpha = 0.0;
  double t_alpha = 0.0;
  double probability = 0.0;  // P̂(Q(t_α) ≤ log n − ω)
  double std_error = 0.0;
  double psi = 0.0;
};

std::vector<CltRow> clt_profile(const EntropicSchedule& schedule, std::span<const double> alphas,
                                std::size_t trials, std::uint64_t seed);

struct DAlphaEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double p_typ = 0.0;          // accepted pairs / attempted pairs
  std::size_t accepted = 0;
  std::size_t attempted = 0;
  double zero_fraction = 0.0;  // fraction of accepted pairs with V = 0
  std::int64_t r = 0;
};

inline constexpr std::size_t kAttemptsPerStream = 4096;
/// Attempts after which an estimate with no accepted pair gives up.
inline constexpr std::size_t kEmptyTypicalAttempts = 1'000'000;

/// D_α = n P(V·Z = 0 | typ_α) − 1, averaging P(V·Z = 0 | V) = Π_j gcd(V, m_j)/m_j
/// exactly over Z. `accepted_pairs` typical pairs are collected; attempts
/// [b·4096, (b+1)·4096) draw from the stream derive_seed(seed, b).
DAlphaEstimate estimate_D_alpha(const AbelianGroup& group, const EntropicSchedule& schedule,
                                double alpha, std::size_t accepted_pairs, std::uint64_t seed,
                                double omega = 0.0);

using GcdFn = std::function<std::int64_t(std::int64_t, std::int64_t)>;

/// Π_j gcd(v_1, ..., v_k, m_j): the size of the subgroup v·Z is uniform on,
/// divided into n. Equals n when v = 0.
std::int64_t gcd_collapse(const AbelianGroup& group, std::span<const std::int64_t> v);

struct VzCheck {
  bool matches = false;
  std::vector<std::int64_t> g;             // claimed g_j
  std::uint64_t support_size = 0;          // observed number of reachable elements
  std::uint64_t claimed_support_size = 0;  // Π m_j / g_j
  std::uint64_t total = 0;                 // n^k
};

inline constexpr std::uint64_t kBruteForceBudget = 10'000'000;

/// Enumerates all Z ∈ G^k, tabulates v·Z and compares with the uniform law on
/// Π_j g_j Z_{m_j/g_j}. `gcd` is injectable so the check can be mutation-tested.
VzCheck verify_vz_uniform(const AbelianGroup& group, std::span<const std::int64_t> v,
                          const GcdFn& gcd = {});

/// Law of V = W − W′ with W, W′ iid from `law` conditioned on |W − centre| ≤ r.
LatticeWalkLaw typical_difference_law(const LatticeWalkLaw& law, std::int64_t r);

struct DivisibilityCheck {
  double worst_ratio = 0.0;  // max over γ, |I| of P(γ | V_i ∀ i ∈ I) · γ^{|I|}
  std::int64_t worst_gamma = 0;
  int worst_size = 0;
};

/// P(γ divides V_i for all i ∈ I | V_i ≠ 0, |V_i| ≤ radius) against γ^{−|I|},
/// by exact enumeration of the per-coordinate law (coordinates are independent).
DivisibilityCheck divisibility_check(const LatticeWalkLaw& v_law, std::int64_t radius,
                                     int max_set_size);

}  // namespace cayleymix
