#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cayleymix/error.hpp"
#include "cayleymix/rng.hpp"
#include "cayleymix/typdist.hpp"
#include "oracles.hpp"

using namespace cayleymix;

namespace {

BigInt binom(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  BigInt out = 1;
  for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// All-pairs shortest paths on the Cayley graph of Z_m by Floyd–Warshall.
std::vector<std::vector<int>> all_pairs(std::int64_t m, const std::vector<std::int64_t>& gens,
                                        bool directed) {
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), inf));
  for (std::int64_t x = 0; x < m; ++x) {
    d[x][x] = 0;
    for (const std::int64_t z : gens) {
      d[x][(x + z) % m] = std::min(d[x][(x + z) % m], 1);
      if (!directed) d[x][(x - z + m) % m] = std::min(d[x][(x - z + m) % m], 1);
    }
  }
  for (std::int64_t w = 0; w < m; ++w) {
    for (std::int64_t a = 0; a < m; ++a) {
      for (std::int64_t b = 0; b < m; ++b) d[a][b] = std::min(d[a][b], d[a][w] + d[w][b]);
    }
  }
  return d;
}

GeneratorMultiset cyclic_gens(std::initializer_list<std::int64_t> zs) {
  GeneratorMultiset g;
  for (const std::int64_t z : zs) g.elems.push_back(GroupElement{{z}});
  return g;
}

}  // namespace

TEST_CASE("L1 ball counts") {
  CHECK(ball_count_l1(1, 5).exact_count == 11);
  CHECK(ball_count_l1(2, 2).exact_count == 13);
  CHECK(oracle::brute_ball(2, 1.0, 2, false) == 13);
  CHECK(ball_count_l1(3, 0).exact_count == 1);
  CHECK(ball_count_l1(2, 2.7).exact_count == 13);
  CHECK(ball_count_l1(3, 4, true).exact_count == binom(7, 3));
  for (std::int64_t k = 1; k <= 12; ++k) {
    for (std::int64_t R = 0; R <= 60; ++R) {
      const BigInt c = ball_count_l1(k, static_cast<double>(R)).exact_count;
      const BigInt pow2 = BigInt(1) << static_cast<unsigned>(k);
      const BigInt lower = R >= k ? pow2 * binom(R, k) : BigInt(0);
      CAPTURE(k);
      CAPTURE(R);
      CHECK(c >= lower);
      CHECK(c <= pow2 * binom(R + k, k));
      if (R > 0) CHECK(c > ball_count_l1(k, static_cast<double>(R - 1)).exact_count);
    }
  }
  // beyond 64 bits
  const BallCount big = ball_count_l1(60, 60);
  CHECK(big.exact_count > BigInt(std::numeric_limits<std::uint64_t>::max()));
  CHECK(big.log_count() == doctest::Approx(std::log(big.exact_count.convert_to<double>())).epsilon(1e-12));
}

TEST_CASE("Linf ball counts") {
  CHECK(ball_count_linf(2, 3).exact_count == 49);
  CHECK(ball_count_linf(3, 0).exact_count == 1);
  CHECK(ball_count_linf(2, 2.9).exact_count == 25);
  CHECK(ball_count_linf(3, 2, true).exact_count == 27);
}

TEST_CASE("counts against brute-force enumeration") {
  for (const double p : {1.0, 2.0, kInfinityNorm}) {
    for (int k = 1; k <= 4; ++k) {
      for (std::int64_t R = 0; R <= 8; ++R) {
        for (const bool directed : {false, true}) {
          const std::int64_t truth = oracle::brute_ball(k, p, R, directed);
          const double Rd = static_cast<double>(R);
          CAPTURE(p);
          CAPTURE(k);
          CAPTURE(R);
          CAPTURE(directed);
          CHECK(ball_count_enumerate(k, p, Rd, directed).exact_count == truth);
          const BallCount c = ball_count_lp(k, p, Rd, directed);
          if (c.exactness == Exactness::exact) {
            CHECK(c.exact_count == truth);
          } else {
            const double envelope = 3.0 * std::pow(k, 1.0 + 1.0 / p) / Rd;
            CHECK(std::fabs(static_cast<double>(truth) - c.approx_count) / c.approx_count <= envelope);
          }
        }
      }
    }
  }
}

TEST_CASE("Lp volume") {
  CHECK(ball_volume_lp(2, 2.0, 1.0) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  for (const double p : {1.0, 1.5, 3.0}) CHECK(ball_volume_lp(1, p, 2.5) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(ball_volume_lp(3, 2.0, 2.0) == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 8.0).epsilon(1e-14));
  CHECK(ball_volume_lp(4, 1.0, 1.0) == doctest::Approx(16.0 / 24.0).epsilon(1e-14));

  const std::int64_t exact = oracle::brute_ball(3, 2.0, 6, false);
  const double volume = ball_volume_lp(3, 2.0, 6.0);
  CHECK(std::fabs(static_cast<double>(exact) - volume) / volume <= 3.0 * std::pow(3.0, 1.5) / 6.0);

  const BallCount v = ball_count_lp(3, 2.0, 6.0);
  CHECK(v.exactness == Exactness::volume_approx);
  CHECK(v.approx_count == doctest::Approx(volume));
  CHECK(ball_count_lp(3, 2.0, 6.0, true).approx_count == doctest::Approx(volume / 8.0));
  CHECK_THROWS_AS(ball_count_lp(8, 2.0, 3.0), InvalidArgument);
  CHECK_THROWS_AS(ball_count_lp(2, 0.5, 3.0), InvalidArgument);
  CHECK_THROWS_AS(ball_count_l1(0, 3.0), InvalidArgument);
  CHECK_THROWS_AS(ball_count_l1(2, -1.0), InvalidArgument);
}

TEST_CASE("minimal radius") {
  for (const std::int64_t k : {2, 3, 5}) {
    for (const double n : {1e3, 1e6, 1e9}) {
      const double omega = default_radius_omega(k, n);
      const RadiusResult r = minimal_radius(k, kInfinityNorm, n, omega);
      const double formula = std::ceil(0.5 * std::pow(n, 1.0 / k) * std::exp(omega / k) - 0.5);
      CAPTURE(k);
      CAPTURE(n);
      CHECK(static_cast<double>(r.M) == formula);

      const RadiusResult one = minimal_radius(k, 1.0, n, omega);
      CHECK(one.count.log_count() >= std::log(n) + omega);
      CHECK(ball_count_l1(k, static_cast<double>(one.M - 1)).log_count() < std::log(n) + omega);
      CHECK(minimal_radius(k, 1.0, n / 10, omega).M <= one.M);
      CHECK(minimal_radius(k, 1.0, n, omega, true).M >= one.M);
    }
  }
  CHECK(default_radius_omega(4, 1e6) == doctest::Approx(std::max(std::pow(std::log(4.0), 2), 4.0 / std::pow(1e6, 1.0 / 8))));
}

TEST_CASE("reference radius") {
  const double n = 1e4;
  CHECK(lattice_constant(1.0) == doctest::Approx(2.0 * std::numbers::e).epsilon(1e-14));
  CHECK(reference_radius(4, 1.0, n) == doctest::Approx(4.0 * 10.0 / (2.0 * std::numbers::e)).epsilon(1e-14));
  CHECK(reference_radius(4, 1.0, n, true) == doctest::Approx(4.0 * 10.0 / (4.0 * std::numbers::e)).epsilon(1e-14));
  CHECK(reference_radius(4, kInfinityNorm, n, true) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(reference_radius(4, kInfinityNorm, n) == doctest::Approx(5.0).epsilon(1e-14));
  const double c2 = 2.0 * std::exp(std::lgamma(1.5)) * std::sqrt(2.0 * std::numbers::e);
  CHECK(lattice_constant(2.0) == doctest::Approx(c2).epsilon(1e-14));
  CHECK(reference_radius(4, 2.0, n) == doctest::Approx(2.0 * 10.0 / c2).epsilon(1e-14));
}

TEST_CASE("graph distances on small cycles") {
  const DistanceHistogram h = graph_distances(make_group({5}), cyclic_gens({1}), false);
  CHECK(h.reached == 5);
  CHECK(h.counts == std::vector<std::pair<double, std::uint64_t>>{{0, 1}, {1, 2}, {2, 2}});
  CHECK(quantile(h, 0.6) == 1.0);
  CHECK(quantile(h, 1e-9) == 0.0);
  CHECK(quantile(h, 1.0) == 2.0);
  double prev = 0.0;
  for (double b = 0.05; b <= 1.0; b += 0.05) {
    CHECK(quantile(h, b) >= prev);
    prev = quantile(h, b);
  }

  const DistanceHistogram sub = graph_distances(make_group({4}), cyclic_gens({2}), false);
  CHECK(sub.reached == 2);
  CHECK(sub.unreached() == 2);
  CHECK_THROWS_AS(quantile(sub, 0.75), InvalidArgument);
  CHECK_THROWS_AS(quantile(sub, 0.0), InvalidArgument);

  for (const bool directed : {false, true}) {
    const auto d = all_pairs(12, {3, 4}, directed);
    const std::vector<std::uint16_t> arr = graph_distance_array(make_group({12}), cyclic_gens({3, 4}), directed);
    int worst = 0;
    for (int x = 0; x < 12; ++x) {
      CHECK(arr[static_cast<std::size_t>(x)] == d[0][static_cast<std::size_t>(x)]);
      worst = std::max(worst, d[0][static_cast<std::size_t>(x)]);
    }
    const DistanceHistogram h12 = graph_distances(make_group({12}), cyclic_gens({3, 4}), directed);
    CHECK(quantile(h12, 1.0) == worst);
  }
}

TEST_CASE("Lp search") {
  const AbelianGroup z101 = make_group({101});
  const GeneratorMultiset gens = sample_generators(z101, 3, 77);
  const std::vector<std::uint16_t> bfs = graph_distance_array(z101, gens, false);
  const std::vector<double> l1 = lp_distance_array(z101, gens, 1.0, 12.0, false);
  for (std::size_t x = 0; x < 101; ++x) {
    if (std::isnan(l1[x])) {
      CHECK(bfs[x] > 12);
    } else {
      CHECK(l1[x] == bfs[x]);
    }
  }
  CHECK(l1[0] == 0.0);

  // p = ∞ on Z_7 with gens {1, 2}, brute force over x ∈ [−3, 3]²
  const std::vector<double> inf = lp_distance_array(make_group({7}), cyclic_gens({1, 2}), kInfinityNorm, 3.0, false);
  CHECK(inf[3] == 1.0);
  for (std::int64_t v = 0; v < 7; ++v) {
    std::int64_t best = 99;
    for (std::int64_t a = -3; a <= 3; ++a) {
      for (std::int64_t b = -3; b <= 3; ++b) {
        if (((a + 2 * b) % 7 + 7) % 7 == v) best = std::min(best, std::max(std::abs(a), std::abs(b)));
      }
    }
    CHECK(inf[static_cast<std::size_t>(v)] == static_cast<double>(best));
  }

  // p = 2 against brute force on Z_50, k = 3
  const AbelianGroup z50 = make_group({50});
  const GeneratorMultiset g3 = sample_generators(z50, 3, 5);
  const std::vector<double> l2 = lp_distance_array(z50, g3, 2.0, 6.0, false);
  std::vector<double> truth(50, NAN);
  for (std::int64_t a = -6; a <= 6; ++a) {
    for (std::int64_t b = -6; b <= 6; ++b) {
      for (std::int64_t c = -6; c <= 6; ++c) {
        const double norm = std::sqrt(static_cast<double>(a * a + b * b + c * c));
        if (norm > 6.0 + 1e-12) continue;
        const std::int64_t v = ((a * g3.elems[0].coords[0] + b * g3.elems[1].coords[0] + c * g3.elems[2].coords[0]) % 50 + 50) % 50;
        if (std::isnan(truth[v]) || norm < truth[v]) truth[v] = norm;
      }
    }
  }
  for (std::size_t v = 0; v < 50; ++v) {
    CAPTURE(v);
    if (std::isnan(truth[v])) {
      CHECK(std::isnan(l2[v]));
    } else {
      CHECK(l2[v] == doctest::Approx(truth[v]).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(lp_distances(z101, sample_generators(z101, 13, 1), 2.0, 3.0, false), InvalidArgument);
  CHECK_THROWS_AS(lp_distances(z101, sample_generators(z101, 12, 1), 2.0, 1e6, false), LimitExceeded);
}

TEST_CASE("directed distances dominate undirected") {
  const AbelianGroup g = make_group({1009});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GeneratorMultiset gens = sample_generators(g, 3, seed);
    const auto und = graph_distance_array(g, gens, false);
    const auto dir = graph_distance_array(g, gens, true);
    for (std::size_t x = 0; x < und.size(); ++x) CHECK(dir[x] >= und[x]);
  }
}

TEST_CASE("distance lower bound from ball counts") {
  const AbelianGroup g = make_group({10007});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GeneratorMultiset gens = sample_generators(g, 4, derive_seed(8, seed));
    for (const bool directed : {false, true}) {
      const DistanceHistogram h = graph_distances(g, gens, directed);
      for (const double beta : {0.1, 0.5, 0.9}) {
        if (static_cast<double>(h.reached) < beta * 10007.0) continue;
        const double D = quantile(h, beta);
        for (std::int64_t R = 0; R <= static_cast<std::int64_t>(D) + 5; ++R) {
          if (ball_count_l1(4, static_cast<double>(R), directed).as_double() < beta * 10007.0) {
            CHECK(D >= static_cast<double>(R));
          }
        }
      }
    }
  }
}

TEST_CASE("BFS limits") {
  CHECK_THROWS_AS(graph_distances(make_group({200'000'000}), cyclic_gens({1}), false), LimitExceeded);
  CHECK_THROWS_AS(graph_distances(make_group({8}), cyclic_gens({9}), false), InvalidArgument);
}
