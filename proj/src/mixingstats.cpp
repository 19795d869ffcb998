#include "cayleymix/mixingstats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cayleymix/error.hpp"
#include "cayleymix/rng.hpp"

namespace cayleymix {

double psi(double alpha) { return 0.5 * std::erfc(alpha / std::numbers::sqrt2); }

TypicalitySpec make_typicality(const EntropicSchedule& schedule, double alpha, double omega) {
  const double t = solve_t_alpha(schedule, alpha);
  LatticeWalkLaw law = make_law(schedule.kind, t / static_cast<double>(schedule.k),
                                schedule.options.law);
  const std::int64_t r = r_alpha(law, schedule.k);
  const double w = omega > 0.0 ? omega : schedule.omega;
  return TypicalitySpec{std::move(law), schedule.k, r, schedule.log_n() + w};
}

LawSampler::LawSampler(const LatticeWalkLaw& law) : lo_(law.lo()) {
  const auto pmf = law.pmf();
  cdf_.resize(pmf.size());
  neg_log_.resize(pmf.size());
  long double acc = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    cdf_[i] = static_cast<double>(acc);
    neg_log_[i] = pmf[i] > 0.0 ? -std::log(pmf[i]) : INFINITY;
  }
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::size_t LawSampler::index_of(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::size_t>(std::min(it, cdf_.end() - 1) - cdf_.begin());
}

namespace {

bool locally_typical(const TypicalitySpec& typ, std::span<const std::int64_t> w) {
  const double c = typ.centre();
  return std::all_of(w.begin(), w.end(), [&](std::int64_t x) {
    return std::fabs(static_cast<double>(x) - c) <= static_cast<double>(typ.r);
  });
}

// Fraction of `trials` Q-samples with Q ≤ level, and its binomial standard error.
Estimate q_below(const LatticeWalkLaw& law, std::int64_t k, double level, std::size_t trials,
                 std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("need at least one trial");
  const LawSampler sampler(law);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    double q = 0.0;
    for (std::int64_t j = 0; j < k; ++j) q += sampler.neg_log_pmf(sampler.draw(rng));
    if (q <= level) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return Estimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

}  // namespace

std::vector<QSample> sample_Q(const TypicalitySpec& typ, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("need at least one trial");
  const LawSampler sampler(typ.law);
  std::vector<QSample> out(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    QSample& smp = out[i];
    smp.w.resize(static_cast<std::size_t>(typ.k));
    for (auto& x : smp.w) {
      x = sampler.draw(rng);
      smp.q += sampler.neg_log_pmf(x);
    }
    smp.locally_typical = locally_typical(typ, smp.w);
    smp.globally_typical = smp.q >= typ.global_log_threshold;
  }
  return out;
}

Estimate lower_bound_estimate(const EntropicSchedule& schedule, double t, double omega,
                              std::size_t trials, std::uint64_t seed) {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  const LatticeWalkLaw law = make_law(schedule.kind, t / static_cast<double>(schedule.k),
                                      schedule.options.law);
  Estimate est = q_below(law, schedule.k, schedule.log_n() - omega, trials, seed);
  est.value -= std::exp(-omega);
  return est;
}

std::vector<CltRow> clt_profile(const EntropicSchedule& schedule, std::span<const double> alphas,
                                std::size_t trials, std::uint64_t seed) {
  std::vector<CltRow> rows;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    CltRow row;
    row.alpha = alphas[a];
    row.t_alpha = solve_t_alpha(schedule, row.alpha);
    const LatticeWalkLaw law = make_law(schedule.kind, row.t_alpha / static_cast<double>(schedule.k),
                                        schedule.options.law);
    const Estimate est = q_below(law, schedule.k, schedule.log_n() - schedule.omega, trials,
                                 derive_seed(seed, a));
    row.probability = est.value;
    row.std_error = est.std_error;
    row.psi = psi(row.alpha);
    rows.push_back(row);
  }
  return rows;
}

std::int64_t gcd_collapse(const AbelianGroup& group, std::span<const std::int64_t> v) {
  std::int64_t prod = 1;
  for (const std::int64_t m : group.side_lengths()) {
    std::int64_t g = m;
    for (const std::int64_t x : v) g = std::gcd(g, x < 0 ? -x : x);
    prod *= g;
  }
  return prod;
}

DAlphaEstimate estimate_D_alpha(const AbelianGroup& group, const EntropicSchedule& schedule,
                                double alpha, std::size_t accepted_pairs, std::uint64_t seed,
                                double omega) {
  if (accepted_pairs < 1) throw InvalidArgument("need at least one accepted pair");
  if (group.order() != schedule.n) throw InvalidArgument("schedule n differs from the group order");
  const TypicalitySpec typ = make_typicality(schedule, alpha, omega);
  if (2 * typ.r >= group.min_supplied_side()) {
    throw InvalidArgument("local typicality radius 2r = " + std::to_string(2 * typ.r) +
                          " is not below the minimal side length " +
                          std::to_string(group.min_supplied_side()));
  }
  const LawSampler sampler(typ.law);
  const auto k = static_cast<std::size_t>(schedule.k);
  std::vector<std::int64_t> w(k);
  std::vector<std::int64_t> w2(k);
  std::vector<std::int64_t> diff(k);

  const auto draw_typical = [&](Rng& rng, std::vector<std::int64_t>& out) {
    double q = 0.0;
    for (auto& x : out) {
      x = sampler.draw(rng);
      q += sampler.neg_log_pmf(x);
    }
    return q >= typ.global_log_threshold && locally_typical(typ, out);
  };

  DAlphaEstimate est;
  est.r = typ.r;
  const std::size_t max_attempts = accepted_pairs * 10'000;
  long double sum = 0;
  long double sum_sq = 0;
  std::size_t zeros = 0;
  Rng rng(derive_seed(seed, 0));
  while (est.accepted < accepted_pairs && est.attempted < max_attempts) {
    if (est.attempted % kAttemptsPerStream == 0) rng = Rng(derive_seed(seed, est.attempted / kAttemptsPerStream));
    if (est.accepted == 0 && est.attempted == kEmptyTypicalAttempts) {
      throw NumericalError("no typical pairs accepted in " + std::to_string(kEmptyTypicalAttempts) +
                           " attempts");
    }
    ++est.attempted;
    const bool first = draw_typical(rng, w);
    const bool second = draw_typical(rng, w2);
    if (!first || !second) continue;
    ++est.accepted;
    for (std::size_t i = 0; i < k; ++i) diff[i] = w[i] - w2[i];
    if (std::all_of(diff.begin(), diff.end(), [](std::int64_t x) { return x == 0; })) ++zeros;
    // n · P(V·Z = 0 | V)
    const auto y = static_cast<long double>(gcd_collapse(group, diff));
    sum += y;
    sum_sq += y * y;
  }
  if (est.accepted == 0) throw NumericalError("no typical pairs accepted");
  const auto m = static_cast<long double>(est.accepted);
  const long double mean = sum / m;
  const long double var = est.accepted > 1 ? (sum_sq - m * mean * mean) / (m - 1) : 0.0L;
  est.estimate = static_cast<double>(mean - 1);
  est.std_error = static_cast<double>(std::sqrt(std::max(var, 0.0L) / m));
  est.p_typ = static_cast<double>(est.accepted) / static_cast<double>(est.attempted);
  est.zero_fraction = static_cast<double>(zeros) / static_cast<double>(est.accepted);
  return est;
}

VzCheck verify_vz_uniform(const AbelianGroup& group, std::span<const std::int64_t> v,
                          const GcdFn& gcd) {
  const std::size_t k = v.size();
  if (k == 0) throw InvalidArgument("v must have at least one coordinate");
  const Index n = group.order();
  long double total_ld = 1;
  for (std::size_t i = 0; i < k; ++i) total_ld *= static_cast<long double>(n);
  if (total_ld > static_cast<long double>(kBruteForceBudget)) {
    throw LimitExceeded("n^k = " + std::to_string(static_cast<double>(total_ld)) +
                        " exceeds the brute-force budget");
  }
  const GcdFn g_fn = gcd ? gcd : GcdFn([](std::int64_t a, std::int64_t b) { return std::gcd(a, b); });
  const auto& sides = group.side_lengths();

  VzCheck out;
  out.total = static_cast<std::uint64_t>(total_ld);
  out.claimed_support_size = 1;
  for (const std::int64_t m : sides) {
    std::int64_t g = m;
    for (const std::int64_t x : v) g = g_fn(g, x < 0 ? -x : x);
    out.g.push_back(g);
    // a claimed g_j that does not divide m_j describes no subgroup
    out.claimed_support_size *= (g > 0 && m % g == 0) ? static_cast<std::uint64_t>(m / g) : 0;
  }

  std::vector<std::uint64_t> counts(n, 0);
  std::vector<Index> z(k, 0);  // odometer over G^k
  std::vector<GroupElement> elems(k, group.identity());
  for (std::uint64_t iter = 0; iter < out.total; ++iter) {
    std::vector<std::int64_t> acc(sides.size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      const GroupElement e = group.element_of(z[i]);
      for (std::size_t j = 0; j < sides.size(); ++j) {
        acc[j] = (acc[j] + static_cast<std::int64_t>(static_cast<__int128>(v[i] % sides[j] + sides[j]) *
                                                     e.coords[j] % sides[j])) % sides[j];
      }
    }
    ++counts[group.index_of(GroupElement{acc})];
    for (std::size_t i = k; i-- > 0;) {
      if (++z[i] < n) break;
      z[i] = 0;
    }
  }

  const std::uint64_t expected =
      out.claimed_support_size > 0 && out.total % out.claimed_support_size == 0
          ? out.total / out.claimed_support_size
          : 0;
  out.matches = expected > 0;
  for (Index x = 0; x < n; ++x) {
    if (counts[x] > 0) ++out.support_size;
    const GroupElement e = group.element_of(x);
    bool in_subgroup = true;
    for (std::size_t j = 0; j < sides.size(); ++j) {
      if (out.g[j] <= 0 || e.coords[j] % out.g[j] != 0) in_subgroup = false;
    }
    if (counts[x] != (in_subgroup ? expected : 0)) out.matches = false;
  }
  return out;
}

LatticeWalkLaw typical_difference_law(const LatticeWalkLaw& law, std::int64_t r) {
  if (r < 0) throw InvalidArgument("radius must be >= 0");
  const double c = law.kind() == WalkKind::poisson ? law.s() : 0.0;
  std::vector<double> kept;
  long double mass = 0;
  for (std::int64_t x = law.lo(); x <= law.hi(); ++x) {
    if (std::fabs(static_cast<double>(x) - c) > static_cast<double>(r)) continue;
    kept.push_back(law.at(x));
    mass += law.at(x);
  }
  if (kept.empty() || mass <= 0) throw InvalidArgument("no mass within the typicality radius");
  for (double& p : kept) p = static_cast<double>(p / mass);
  const auto len = static_cast<std::int64_t>(kept.size());
  std::vector<double> diff(static_cast<std::size_t>(2 * len - 1), 0.0);
  for (std::int64_t d = 0; d < len; ++d) {
    long double acc = 0;
    for (std::int64_t j = 0; j + d < len; ++j) {
      acc += static_cast<long double>(kept[static_cast<std::size_t>(j + d)]) * kept[static_cast<std::size_t>(j)];
    }
    diff[static_cast<std::size_t>(len - 1 + d)] = diff[static_cast<std::size_t>(len - 1 - d)] =
        static_cast<double>(acc);
  }
  return LatticeWalkLaw(WalkKind::srw, 2.0 * law.s(), -(len - 1), std::move(diff));
}

DivisibilityCheck divisibility_check(const LatticeWalkLaw& v_law, std::int64_t radius,
                                     int max_set_size) {
  long double nonzero = 0;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    if (x != 0) nonzero += v_law.at(x);
  }
  DivisibilityCheck out;
  if (nonzero <= 0) return out;
  for (std::int64_t gamma = 2; gamma <= radius; ++gamma) {
    long double divisible = 0;
    for (std::int64_t x = gamma; x <= radius; x += gamma) divisible += v_law.at(x) + v_law.at(-x);
    const long double single = divisible / nonzero;
    long double prob = 1;
    for (int size = 1; size <= max_set_size; ++size) {
      prob *= single;
      const auto ratio = static_cast<double>(prob * std::pow(static_cast<long double>(gamma), size));
      if (ratio > out.worst_ratio) out = DivisibilityCheck{ratio, gamma, size};
    }
  }
  return out;
}

}  // namespace cayleymix
