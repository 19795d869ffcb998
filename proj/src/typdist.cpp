#include "cayleymix/typdist.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <unordered_set>

#include "cayleymix/error.hpp"

namespace cayleymix {

namespace {

constexpr double kNormSlack = 1e-12;

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

double log_big(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(x));
  if (bits < 900) return std::log(x.convert_to<double>());
  const auto shift = static_cast<unsigned>(bits - 60);
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

void check_k_R(std::int64_t k, double R) {
  if (k < 1) throw InvalidArgument("ball dimension k must be >= 1");
  if (!(R >= 0.0) || !std::isfinite(R)) throw InvalidArgument("ball radius must be finite and >= 0");
}

void check_p(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("norm exponent p must be in [1, inf]");
}

BallCount make_exact(std::int64_t k, double p, double R, bool directed, BigInt count) {
  BallCount b;
  b.k = k;
  b.p = p;
  b.R = R;
  b.directed = directed;
  b.exactness = Exactness::exact;
  b.exact_count = std::move(count);
  return b;
}

// Number of points of Z^dims (Z_+^dims) with Σ|x_i|^p ≤ budget.
BigInt enumerate_power_sum(std::int64_t dims, double p, double budget, bool directed) {
  if (dims == 0) return 1;
  BigInt total = 0;
  for (std::int64_t x = 0;; ++x) {
    const double cost = std::pow(static_cast<double>(x), p);
    if (cost > budget) break;
    const BigInt rest = enumerate_power_sum(dims - 1, p, budget - cost, directed);
    total += (x == 0 || directed) ? rest : 2 * rest;
  }
  return total;
}

}  // namespace

double BallCount::log_count() const {
  return exactness == Exactness::exact ? log_big(exact_count) : std::log(approx_count);
}

double BallCount::as_double() const {
  return exactness == Exactness::exact ? exact_count.convert_to<double>() : approx_count;
}

double lp_norm(const std::vector<std::int64_t>& x, double p) {
  if (std::isinf(p)) {
    std::int64_t m = 0;
    for (const auto v : x) m = std::max(m, v < 0 ? -v : v);
    return static_cast<double>(m);
  }
  if (p == 1.0) {
    std::int64_t s = 0;
    for (const auto v : x) s += v < 0 ? -v : v;
    return static_cast<double>(s);
  }
  double s = 0.0;
  for (const auto v : x) s += std::pow(std::fabs(static_cast<double>(v)), p);
  return std::pow(s, 1.0 / p);
}

BallCount ball_count_l1(std::int64_t k, double R, bool directed) {
  check_k_R(k, R);
  const auto r = static_cast<std::int64_t>(std::floor(R));
  if (directed) return make_exact(k, 1.0, R, true, binomial(r + k, k));
  BigInt total = 0;
  BigInt pow2 = 1;
  for (std::int64_t i = 0; i <= std::min(k, r); ++i) {
    total += pow2 * binomial(k, i) * binomial(r, i);
    pow2 *= 2;
  }
  return make_exact(k, 1.0, R, false, std::move(total));
}

BallCount ball_count_linf(std::int64_t k, double R, bool directed) {
  check_k_R(k, R);
  const auto r = static_cast<std::int64_t>(std::floor(R));
  const BigInt side = directed ? r + 1 : 2 * r + 1;
  return make_exact(k, kInfinityNorm, R, directed, boost::multiprecision::pow(side, static_cast<unsigned>(k)));
}

double ball_volume_lp(std::int64_t k, double p, double R) {
  check_k_R(k, R);
  check_p(p);
  const double kd = static_cast<double>(k);
  if (R == 0.0) return 0.0;
  if (std::isinf(p)) return std::pow(2.0 * R, kd);
  const double log_unit = kd * std::numbers::ln2 + kd * std::lgamma(1.0 / p + 1.0) - std::lgamma(kd / p + 1.0);
  return std::exp(log_unit + kd * std::log(R));
}

BallCount ball_count_enumerate(std::int64_t k, double p, double R, bool directed) {
  check_k_R(k, R);
  check_p(p);
  if (std::isinf(p)) return ball_count_linf(k, R, directed);
  const double budget = std::pow(R, p) * (1.0 + kNormSlack);
  return make_exact(k, p, R, directed, enumerate_power_sum(k, p, budget, directed));
}

BallCount ball_count_lp(std::int64_t k, double p, double R, bool directed) {
  check_k_R(k, R);
  check_p(p);
  if (p == 1.0) return ball_count_l1(k, R, directed);
  if (std::isinf(p)) return ball_count_linf(k, R, directed);
  const double kd = static_cast<double>(k);
  if (R >= std::pow(kd, 1.0 + 1.0 / p)) {
    BallCount b;
    b.k = k;
    b.p = p;
    b.R = R;
    b.directed = directed;
    b.exactness = Exactness::volume_approx;
    b.approx_count = ball_volume_lp(k, p, R) / (directed ? std::pow(2.0, kd) : 1.0);
    return b;
  }
  if (k <= kEnumerationMaxDim) return ball_count_enumerate(k, p, R, directed);
  throw InvalidArgument("no counting mode for k = " + std::to_string(k) + ", p = " +
                        std::to_string(p) + " below R = k^{1+1/p}");
}

double default_radius_omega(std::int64_t k, double n) {
  const double kd = static_cast<double>(k);
  const double log_k = std::log(kd);
  return std::max(log_k * log_k, kd / std::pow(n, 1.0 / (2.0 * kd)));
}

RadiusResult minimal_radius(std::int64_t k, double p, double n, double omega, bool directed) {
  if (!(n >= 1.0)) throw InvalidArgument("n must be >= 1");
  const double target = std::log(n) + omega;
  const auto count = [&](std::int64_t r) { return ball_count_lp(k, p, static_cast<double>(r), directed); };
  const auto enough = [&](const BallCount& b) { return b.log_count() >= target; };
  if (BallCount b0 = count(0); enough(b0)) return RadiusResult{0, std::move(b0)};
  std::int64_t lo = 0;  // count(lo) < target
  std::int64_t hi = 1;
  while (!enough(count(hi))) {
    lo = hi;
    hi *= 2;
    if (hi > (std::int64_t{1} << 52)) throw NumericalError("minimal radius search diverged");
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (enough(count(mid)) ? hi : lo) = mid;
  }
  return RadiusResult{hi, count(hi)};
}

double lattice_constant(double p) {
  check_p(p);
  if (std::isinf(p)) return 2.0;
  return 2.0 * std::tgamma(1.0 / p + 1.0) * std::pow(p * std::numbers::e, 1.0 / p);
}

double reference_radius(std::int64_t k, double p, double n, bool directed) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  check_p(p);
  const double kd = static_cast<double>(k);
  const double root = std::pow(n, 1.0 / kd);
  if (std::isinf(p)) return directed ? root : 0.5 * root;
  const double c = lattice_constant(p) * (directed ? 2.0 : 1.0);
  return std::pow(kd, 1.0 / p) * root / c;
}

namespace {

// Index arithmetic x ± z on the mixed-radix encoding.
class Stepper {
 public:
  Stepper(const AbelianGroup& group, const GeneratorMultiset& gens) : sides_(group.side_lengths()) {
    for (const auto& z : gens.elems) {
      if (!group.contains(z)) throw InvalidArgument("generator not in group " + group.literal());
      steps_.push_back(z.coords);
    }
    n_ = group.order();
    if (sides_.size() == 1) {
      for (const auto& z : steps_) offsets_.push_back(static_cast<Index>(z[0]));
    }
  }

  Index apply(Index x, std::size_t i, int sign) const {
    if (!offsets_.empty()) {
      const Index off = sign > 0 ? offsets_[i] : (offsets_[i] == 0 ? 0 : n_ - offsets_[i]);
      const Index y = x + off;
      return y >= n_ ? y - n_ : y;
    }
    Index rest = x;
    Index out = 0;
    Index weight = 1;
    for (std::size_t j = sides_.size(); j-- > 0;) {
      const auto m = static_cast<std::int64_t>(sides_[j]);
      std::int64_t c = static_cast<std::int64_t>(rest % static_cast<Index>(m));
      rest /= static_cast<Index>(m);
      c += sign > 0 ? steps_[i][j] : m - steps_[i][j];
      c %= m;
      out += static_cast<Index>(c) * weight;
      weight *= static_cast<Index>(m);
    }
    return out;
  }

  std::size_t k() const { return steps_.size(); }

 private:
  std::vector<std::int64_t> sides_;
  std::vector<std::vector<std::int64_t>> steps_;
  std::vector<Index> offsets_;
  Index n_ = 0;
};

DistanceHistogram histogram_from(const AbelianGroup& group, std::vector<double> distances,
                                 bool directed, double p) {
  DistanceHistogram hist{group, {}, 0, directed, p};
  std::erase_if(distances, [](double d) { return std::isnan(d); });
  std::sort(distances.begin(), distances.end());
  for (const double d : distances) {
    if (hist.counts.empty() || hist.counts.back().first != d) hist.counts.emplace_back(d, 0);
    ++hist.counts.back().second;
  }
  hist.reached = distances.size();
  return hist;
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

}  // namespace

std::vector<std::uint16_t> graph_distance_array(const AbelianGroup& group,
                                                const GeneratorMultiset& gens, bool directed) {
  const Index n = group.order();
  if (n > kBfsMaxOrder) {
    throw LimitExceeded("BFS needs n <= " + std::to_string(kBfsMaxOrder) + ", got " + std::to_string(n));
  }
  const Stepper step(group, gens);
  constexpr std::uint16_t kUnreached = 0xFFFF;
  std::vector<std::uint16_t> dist(n, kUnreached);
  std::vector<Index> frontier{0};
  std::vector<Index> next;
  dist[0] = 0;
  for (std::uint16_t level = 0; !frontier.empty(); ++level) {
    if (level == kUnreached - 1) throw LimitExceeded("graph distance exceeds 16-bit range");
    next.clear();
    for (const Index x : frontier) {
      for (std::size_t i = 0; i < step.k(); ++i) {
        for (const int sign : {+1, -1}) {
          if (sign < 0 && directed) continue;
          const Index y = step.apply(x, i, sign);
          if (dist[y] == kUnreached) {
            dist[y] = static_cast<std::uint16_t>(level + 1);
            next.push_back(y);
          }
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

DistanceHistogram graph_distances(const AbelianGroup& group, const GeneratorMultiset& gens,
                                  bool directed) {
  const std::vector<std::uint16_t> dist = graph_distance_array(group, gens, directed);
  DistanceHistogram hist{group, {}, 0, directed, 1.0};
  std::vector<std::uint64_t> by_level;
  for (const std::uint16_t d : dist) {
    if (d == 0xFFFF) continue;
    if (d >= by_level.size()) by_level.resize(d + 1, 0);
    ++by_level[d];
    ++hist.reached;
  }
  for (std::size_t d = 0; d < by_level.size(); ++d) {
    if (by_level[d] > 0) hist.counts.emplace_back(static_cast<double>(d), by_level[d]);
  }
  return hist;
}

std::vector<double> lp_distance_array(const AbelianGroup& group, const GeneratorMultiset& gens,
                                      double p, double R_max, bool directed) {
  check_p(p);
  const auto k = static_cast<std::int64_t>(gens.k());
  if (k < 1 || k > kLpSearchMaxDim) {
    throw InvalidArgument("L_p search needs 1 <= k <= " + std::to_string(kLpSearchMaxDim));
  }
  if (!(R_max >= 0.0) || !std::isfinite(R_max)) throw InvalidArgument("R_max must be finite and >= 0");
  // L_p balls with p > 1 sit inside the L∞ ball of the same radius
  const double budget = (p == 1.0 ? ball_count_l1(k, R_max, directed) : ball_count_linf(k, R_max, directed)).as_double();
  if (budget > kLpSearchBudget) {
    throw LimitExceeded("lattice ball of radius " + std::to_string(R_max) + " holds " +
                        std::to_string(budget) + " points, above the search budget");
  }
  const Index n = group.order();
  const Stepper step(group, gens);
  const double limit = std::isinf(p) || p == 1.0 ? R_max : R_max * (1.0 + kNormSlack);

  struct Entry {
    double norm;
    std::uint64_t order;  // insertion counter; deterministic tie-break
    Index element;
    std::vector<std::int64_t> x;
  };
  const auto later = [](const Entry& a, const Entry& b) {
    return a.norm != b.norm ? a.norm > b.norm : a.order > b.order;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
  std::unordered_set<std::vector<std::int64_t>, VectorHash> seen;

  std::vector<double> dist(n, std::numeric_limits<double>::quiet_NaN());
  Index settled = 0;
  std::uint64_t counter = 0;
  std::vector<std::int64_t> origin(static_cast<std::size_t>(k), 0);
  seen.insert(origin);
  queue.push(Entry{0.0, counter++, 0, origin});
  while (!queue.empty() && settled < n) {
    Entry cur = queue.top();
    queue.pop();
    if (std::isnan(dist[cur.element])) {
      dist[cur.element] = cur.norm;
      ++settled;
    }
    for (std::int64_t i = 0; i < k; ++i) {
      for (const int sign : {+1, -1}) {
        if (sign < 0 && directed) continue;
        std::vector<std::int64_t> y = cur.x;
        y[static_cast<std::size_t>(i)] += sign;
        const double norm = lp_norm(y, p);
        if (norm > limit || seen.contains(y)) continue;
        // x_i moves away from zero: add Z_i when x_i > 0 after the step, subtract otherwise
        const Index elem = step.apply(cur.element, static_cast<std::size_t>(i), sign);
        seen.insert(y);
        queue.push(Entry{norm, counter++, elem, std::move(y)});
      }
    }
  }
  return dist;
}

DistanceHistogram lp_distances(const AbelianGroup& group, const GeneratorMultiset& gens, double p,
                               double R_max, bool directed) {
  return histogram_from(group, lp_distance_array(group, gens, p, R_max, directed), directed, p);
}

double quantile(const DistanceHistogram& hist, double beta) {
  const double n = static_cast<double>(hist.group.order());
  if (!(beta > 0.0) || beta * n > static_cast<double>(hist.reached) * (1.0 + 1e-12)) {
    throw InvalidArgument("beta = " + std::to_string(beta) + " is not covered by the " +
                          std::to_string(hist.reached) + " reached elements");
  }
  const double target = beta * n * (1.0 - 1e-12);
  double cumulative = 0.0;
  for (const auto& [d, c] : hist.counts) {
    cumulative += static_cast<double>(c);
    if (cumulative >= target) return d;
  }
  return hist.max_distance();
}

}  // namespace cayleymix
