#include "cayleymix/walklaw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/poisson.hpp>

#include "cayleymix/error.hpp"

namespace cayleymix {

std::string_view to_string(WalkKind kind) { return kind == WalkKind::poisson ? "poisson" : "srw"; }

WalkKind parse_walk_kind(std::string_view name) {
  if (name == "poisson" || name == "directed") return WalkKind::poisson;
  if (name == "srw" || name == "undirected") return WalkKind::srw;
  throw InvalidArgument("unknown walk kind '" + std::string(name) + "'");
}

LatticeWalkLaw::LatticeWalkLaw(WalkKind kind, double s, std::int64_t lo, std::vector<double> pmf)
    : kind_(kind), s_(s), lo_(lo), pmf_(std::move(pmf)) {
  if (pmf_.empty()) throw InvalidArgument("empty pmf window");
}

double LatticeWalkLaw::total_mass() const {
  long double acc = 0;
  for (const double p : pmf_) acc += p;
  return static_cast<double>(acc);
}

double LatticeWalkLaw::mean() const {
  long double acc = 0;
  for (std::size_t i = 0; i < pmf_.size(); ++i) acc += static_cast<long double>(lo_ + static_cast<std::int64_t>(i)) * pmf_[i];
  return static_cast<double>(acc);
}

double LatticeWalkLaw::variance() const {
  const long double m = mean();
  long double acc = 0;
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    const long double d = static_cast<long double>(lo_ + static_cast<std::int64_t>(i)) - m;
    acc += d * d * pmf_[i];
  }
  return static_cast<double>(acc);
}

namespace {

void check_time(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw InvalidArgument("effective time s must be finite and >= 0, got " + std::to_string(s));
  }
}

// Exact mean of the untruncated law; used for centring so that rounding of the
// window sum never moves an integer mean off the lattice.
double exact_mean(const LatticeWalkLaw& law) {
  return law.kind() == WalkKind::poisson ? law.s() : 0.0;
}

struct Window {
  std::int64_t lo = 0;
  std::vector<double> pmf;
};

// Poisson(mu) pmf on a window wide enough that the omitted tails are far
// below `negligible`.
Window poisson_window(double mu, double negligible, bool from_zero = false) {
  const boost::math::poisson_distribution<double> dist(mu);
  const auto pdf = [&](std::int64_t x) { return boost::math::pdf(dist, static_cast<double>(x)); };
  const double width = std::max(10.0, 12.0 * std::sqrt(mu));
  const auto step = static_cast<std::int64_t>(std::max(1.0, width / 2));
  std::int64_t lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(mu - width)));
  std::int64_t hi = static_cast<std::int64_t>(std::ceil(mu + width));
  if (from_zero) lo = 0;
  if (static_cast<double>(hi - lo) > static_cast<double>(kMaxPoissonWindow)) {
    throw LimitExceeded("Poisson window for mean " + std::to_string(mu) + " exceeds " +
                        std::to_string(kMaxPoissonWindow) + " entries");
  }
  while (lo > 0 && pdf(lo) > negligible) lo = std::max<std::int64_t>(0, lo - step);
  while (pdf(hi) > negligible) hi += step;
  Window w{lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1))};
  for (std::int64_t x = lo; x <= hi; ++x) w.pmf[static_cast<std::size_t>(x - lo)] = pdf(x);
  return w;
}

// Drops end entries while the dropped mass per side stays within budget.
Window trim(Window w, double left_budget, double right_budget) {
  std::size_t a = 0;
  std::size_t b = w.pmf.size();
  double cut = 0.0;
  while (left_budget > 0.0 && b - a > 1 && cut + w.pmf[a] <= left_budget) cut += w.pmf[a++];
  cut = 0.0;
  while (right_budget > 0.0 && b - a > 1 && cut + w.pmf[b - 1] <= right_budget) cut += w.pmf[--b];
  w.lo += static_cast<std::int64_t>(a);
  w.pmf = std::vector<double>(w.pmf.begin() + static_cast<std::ptrdiff_t>(a),
                              w.pmf.begin() + static_cast<std::ptrdiff_t>(b));
  return w;
}

long double sum_smallest_first(std::vector<long double>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](long double a, long double b) { return std::fabs(a) < std::fabs(b); });
  long double acc = 0;
  for (const long double t : terms) acc += t;
  return acc;
}

}  // namespace

LatticeWalkLaw poisson_law(double s, const LawOptions& options) {
  check_time(s);
  if (s == 0.0) return LatticeWalkLaw(WalkKind::poisson, 0.0, 0, {1.0});
  const double mass = options.truncation_mass;
  // support starts at 0; only the upper tail is truncated
  Window w = trim(poisson_window(s, mass * 1e-6, true), 0.0, mass);
  return LatticeWalkLaw(WalkKind::poisson, s, w.lo, std::move(w.pmf));
}

LatticeWalkLaw srw_law(double s, const LawOptions& options) {
  check_time(s);
  if (s == 0.0) return LatticeWalkLaw(WalkKind::srw, 0.0, 0, {1.0});
  const double mass = options.truncation_mass;
  if (24.0 * std::sqrt(s / 2) + 20.0 > static_cast<double>(kMaxSrwHalfWindow)) {
    throw LimitExceeded("srw law at s = " + std::to_string(s) + " needs a window beyond " +
                        std::to_string(kMaxSrwHalfWindow) + " entries");
  }
  const Window q = poisson_window(s / 2, mass * 1e-6);
  const std::size_t len = q.pmf.size();

  // pmf(x) = Σ_j P(N+ = j + x) P(N- = j) for x >= 0, mirrored for x < 0.
  std::vector<double> half(len);
  for (std::size_t x = 0; x < len; ++x) {
    long double acc = 0;
    for (std::size_t j = 0; j + x < len; ++j) acc += static_cast<long double>(q.pmf[j + x]) * q.pmf[j];
    half[x] = static_cast<double>(acc);
  }
  std::size_t reach = len;
  double cut = 0.0;
  while (reach > 1 && cut + half[reach - 1] <= mass / 2) cut += half[--reach];

  const auto r = static_cast<std::int64_t>(reach) - 1;
  std::vector<double> pmf(static_cast<std::size_t>(2 * r + 1));
  for (std::int64_t x = -r; x <= r; ++x) {
    pmf[static_cast<std::size_t>(x + r)] = half[static_cast<std::size_t>(x < 0 ? -x : x)];
  }
  return LatticeWalkLaw(WalkKind::srw, s, -r, std::move(pmf));
}

LatticeWalkLaw make_law(WalkKind kind, double s, const LawOptions& options) {
  return kind == WalkKind::poisson ? poisson_law(s, options) : srw_law(s, options);
}

double entropy(const LatticeWalkLaw& law) {
  std::vector<long double> terms;
  terms.reserve(law.pmf().size());
  for (const double p : law.pmf()) {
    if (p > 0.0) terms.push_back(-static_cast<long double>(p) * std::log(static_cast<long double>(p)));
  }
  return static_cast<double>(sum_smallest_first(terms));
}

double entropy_directed_closed_form(double s) {
  check_time(s);
  if (s == 0.0) return 0.0;
  const long double ls = std::log(static_cast<long double>(s));
  std::vector<long double> terms{-s * ls, static_cast<long double>(s)};
  for (long ell = 2;; ++ell) {
    const long double log_fact = std::lgamma(static_cast<long double>(ell) + 1);
    const long double term = std::exp(ell * ls - s - log_fact) * log_fact;
    terms.push_back(term);
    if (ell > 2 * s + 20 && term < 1e-25L) break;
  }
  return static_cast<double>(sum_smallest_first(terms));
}

QMoments q_moments(const LatticeWalkLaw& law) {
  long double mean = 0;
  for (const double p : law.pmf()) {
    if (p > 0.0) mean -= static_cast<long double>(p) * std::log(static_cast<long double>(p));
  }
  long double m2 = 0;
  long double m4 = 0;
  for (const double p : law.pmf()) {
    if (p <= 0.0) continue;
    const long double d = -std::log(static_cast<long double>(p)) - mean;
    m2 += p * d * d;
    m4 += p * d * d * d * d;
  }
  return QMoments{static_cast<double>(mean), static_cast<double>(m2), static_cast<double>(m4)};
}

std::int64_t r_alpha(const LatticeWalkLaw& law, std::int64_t k) {
  if (k < 2) throw InvalidArgument("r_alpha needs k >= 2");
  const double threshold = std::pow(static_cast<double>(k), -1.5);
  const double mean = exact_mean(law);
  const auto pmf = law.pmf();

  // (distance from mean, probability), sorted by distance
  std::vector<std::pair<double, double>> by_dist;
  by_dist.reserve(pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const double x = static_cast<double>(law.lo() + static_cast<std::int64_t>(i));
    by_dist.emplace_back(std::fabs(x - mean), pmf[i]);
  }
  std::sort(by_dist.begin(), by_dist.end());
  // suffix[i] = P(dist >= by_dist[i].first), summed from the far tail inwards
  std::vector<double> suffix(by_dist.size() + 1, 0.0);
  long double acc = 0;
  for (std::size_t i = by_dist.size(); i-- > 0;) {
    acc += by_dist[i].second;
    suffix[i] = static_cast<double>(acc);
  }
  for (std::int64_t r = 0;; ++r) {
    const auto first_beyond = std::upper_bound(
        by_dist.begin(), by_dist.end(), static_cast<double>(r),
        [](double value, const std::pair<double, double>& e) { return value < e.first; });
    const double tail = suffix[static_cast<std::size_t>(first_beyond - by_dist.begin())];
    if (tail <= threshold) return r;
  }
}

double p_alpha(const LatticeWalkLaw& law, std::int64_t r) {
  if (r < 0) throw InvalidArgument("p_alpha needs r >= 0");
  const auto centre = static_cast<std::int64_t>(std::llround(exact_mean(law)));
  double best = 1.0;
  for (std::int64_t x = centre - r; x <= centre + r; ++x) {
    if (law.in_lattice(x)) best = std::min(best, law.at(x));
  }
  return best;
}

TailStats tail_stats(const LatticeWalkLaw& law, std::int64_t r) {
  if (r < 0) throw InvalidArgument("tail_stats needs r >= 0");
  const double mean = exact_mean(law);
  if (std::fabs(mean - std::round(mean)) > 1e-9 * std::max(1.0, mean)) {
    throw InvalidArgument("tail_stats needs an integer centre; s = " + std::to_string(law.s()));
  }
  const auto c = static_cast<std::int64_t>(std::llround(mean));
  TailStats out;
  long double acc = 0;
  for (std::int64_t x = law.hi(); x >= c + r; --x) acc += law.at(x);
  out.upper_tail = static_cast<double>(acc);
  out.upper_point = law.at(c + r);
  acc = 0;
  for (std::int64_t x = law.lo(); x <= c - r; ++x) acc += law.at(x);
  out.lower_tail = static_cast<double>(acc);
  out.lower_point = law.at(c - r);
  if (out.upper_point == 0.0 || (law.in_lattice(c - r) && out.lower_point == 0.0)) {
    throw NumericalError("point probability 0 at r = " + std::to_string(r) +
                         "; widen the law's window (smaller truncation_mass)");
  }
  return out;
}

}  // namespace cayleymix
