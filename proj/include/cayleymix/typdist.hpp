#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cayleymix/group.hpp"

namespace cayleymix {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

enum class Exactness { exact, volume_approx };

/// |B_{k,p}(R)|, the number of lattice points of Z^k (Z_+^k when directed)
/// with ‖x‖_p ≤ R.
struct BallCount {
  std::int64_t k = 0;
  double p = 1.0;
  double R = 0.0;
  bool directed = false;
  Exactness exactness = Exactness::exact;
  BigInt exact_count = 0;     // valid when exactness == exact
  double approx_count = 0.0;  // valid when exactness == volume_approx

  /// log of the count, usable in either mode.
  double log_count() const;
  double as_double() const;
};

/// ‖x‖_p of an integer vector; p may be kInfinityNorm.
double lp_norm(const std::vector<std::int64_t>& x, double p);

BallCount ball_count_l1(std::int64_t k, double R, bool directed = false);
BallCount ball_count_linf(std::int64_t k, double R, bool directed = false);

/// Lebesgue volume of {x ∈ R^k : ‖x‖_p ≤ R}.
double ball_volume_lp(std::int64_t k, double p, double R);

/// Exact lattice count by enumeration (small k and R only).
BallCount ball_count_enumerate(std::int64_t k, double p, double R, bool directed = false);

inline constexpr std::int64_t kEnumerationMaxDim = 6;

/// Exact for p ∈ {1, ∞}; volume approximation for R ≥ k^{1+1/p}; exact
/// enumeration below that when k ≤ 6.
BallCount ball_count_lp(std::int64_t k, double p, double R, bool directed = false);

/// max{log²k, k / n^{1/(2k)}}
double default_radius_omega(std::int64_t k, double n);

struct RadiusResult {
  std::int64_t M = 0;
  BallCount count;
};

/// Minimal integer M with |B_{k,p}(M)| ≥ n e^ω.
RadiusResult minimal_radius(std::int64_t k, double p, double n, double omega, bool directed = false);

/// 2 Γ(1/p + 1) (pe)^{1/p}; 2 at p = ∞.
double lattice_constant(double p);

/// k^{1/p} n^{1/k} / C_p^{(+)}; ½ n^{1/k} (undirected) and n^{1/k} (directed) at p = ∞.
double reference_radius(std::int64_t k, double p, double n, bool directed = false);

/// Counts of group elements by distance from the identity.
struct DistanceHistogram {
  AbelianGroup group;
  std::vector<std::pair<double, std::uint64_t>> counts;  // ascending distance
  Index reached = 0;
  bool directed = false;
  double p = 1.0;

  Index unreached() const { return group.order() - reached; }
  double max_distance() const { return counts.empty() ? 0.0 : counts.back().first; }
};

inline constexpr Index kBfsMaxOrder = 100'000'000;

/// Breadth-first search over x → x ± Z_i (x → x + Z_i when directed).
DistanceHistogram graph_distances(const AbelianGroup& group, const GeneratorMultiset& gens,
                                  bool directed);

/// Per-element graph distances from the identity (65535 marks unreached).
std::vector<std::uint16_t> graph_distance_array(const AbelianGroup& group,
                                                const GeneratorMultiset& gens, bool directed);

inline constexpr std::int64_t kLpSearchMaxDim = 12;
inline constexpr double kLpSearchBudget = 1e8;

/// dist_{k,p}(0, v) = min{‖x‖_p : x·Z = v} for every v reachable within R_max,
/// by best-first expansion of lattice points in order of ‖x‖_p.
DistanceHistogram lp_distances(const AbelianGroup& group, const GeneratorMultiset& gens, double p,
                               double R_max, bool directed);

/// Same search, returning each reached element's distance (NaN when unreached).
std::vector<double> lp_distance_array(const AbelianGroup& group, const GeneratorMultiset& gens,
                                      double p, double R_max, bool directed);

/// D(β) = min{R ≥ 0 : |𝓑(R)| ≥ β n}.
double quantile(const DistanceHistogram& hist, double beta);

}  // namespace cayleymix
