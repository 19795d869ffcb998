#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "cayleymix/error.hpp"
#include "cayleymix/group.hpp"

using namespace cayleymix;

namespace {

GroupElement el(std::initializer_list<std::int64_t> c) { return GroupElement{std::vector<std::int64_t>(c)}; }

// Multiset of element orders; determines a finite Abelian group up to isomorphism.
std::vector<std::int64_t> order_profile(const std::vector<std::int64_t>& sides) {
  std::int64_t n = 1;
  for (auto m : sides) n *= m;
  std::vector<std::int64_t> out;
  for (std::int64_t idx = 0; idx < n; ++idx) {
    std::int64_t rest = idx;
    std::int64_t ord = 1;
    for (std::size_t j = sides.size(); j-- > 0;) {
      const std::int64_t x = rest % sides[j];
      rest /= sides[j];
      ord = std::lcm(ord, sides[j] / std::gcd(x, sides[j]));
    }
    out.push_back(ord);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void side_multisets(std::int64_t limit, std::int64_t min_side, std::vector<std::int64_t>& cur,
                    std::vector<std::vector<std::int64_t>>& out) {
  if (!cur.empty()) out.push_back(cur);
  std::int64_t n = 1;
  for (auto m : cur) n *= m;
  for (std::int64_t m = min_side; n * m <= limit; ++m) {
    cur.push_back(m);
    side_multisets(limit, m, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::int64_t>> all_side_multisets(std::int64_t limit) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  side_multisets(limit, 2, cur, out);
  return out;
}

// Minimal generating size by breadth-first search over generated subgroups
// (bitmask over n <= 64 elements); exhausts all k-subsets implicitly.
std::size_t brute_force_dim(const AbelianGroup& g) {
  const auto n = static_cast<std::size_t>(g.order());
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  const auto extend = [&](std::uint64_t h, Index x) {
    std::uint64_t out = h;
    bool grew = true;
    while (grew) {
      grew = false;
      for (Index a = 0; a < n; ++a) {
        if (!((out >> a) & 1)) continue;
        const Index b = g.index_of(g.add(g.element_of(a), g.element_of(x)));
        if (!((out >> b) & 1)) {
          out |= std::uint64_t{1} << b;
          grew = true;
        }
      }
    }
    return out;
  };
  std::set<std::uint64_t> level{1};  // {identity}
  for (std::size_t k = 0;; ++k) {
    if (level.count(full)) return k;
    std::set<std::uint64_t> next;
    for (const std::uint64_t h : level) {
      for (Index x = 0; x < n; ++x) next.insert(extend(h, x));
    }
    level.swap(next);
  }
}

}  // namespace

TEST_CASE("invariant factors of small decompositions") {
  const AbelianGroup a = make_group({2, 3});
  CHECK(a.invariant_factors() == std::vector<std::int64_t>{6});
  CHECK(a.dim() == 1);
  CHECK(a.min_side() == 6);

  const AbelianGroup b = make_group({2, 4});
  CHECK(b.invariant_factors() == std::vector<std::int64_t>{2, 4});
  CHECK(b.dim() == 2);
  CHECK(b.min_side() == 2);

  const AbelianGroup c = make_group({6, 4});
  CHECK(c.invariant_factors() == std::vector<std::int64_t>{2, 12});
  CHECK(c.min_side() == 2);
  CHECK(c.min_supplied_side() == 4);
  CHECK(order_profile({6, 4}) == order_profile({2, 12}));
}

TEST_CASE("canonical factors are an isomorphism invariant for n <= 200") {
  std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> by_profile;
  for (const auto& sides : all_side_multisets(200)) {
    const AbelianGroup g = make_group(sides);
    const auto& f = g.invariant_factors();
    CAPTURE(g.literal());
    std::int64_t prod = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      prod *= f[i];
      if (i + 1 < f.size()) CHECK(f[i + 1] % f[i] == 0);
    }
    CHECK(static_cast<Index>(prod) == g.order());
    CHECK(g.dim() <= sides.size());
    const auto profile = order_profile(sides);
    CHECK(order_profile(f) == profile);
    const auto [it, fresh] = by_profile.emplace(profile, f);
    if (!fresh) CHECK(it->second == f);
  }
  // distinct isomorphism classes get distinct factors
  std::set<std::vector<std::int64_t>> factor_sets;
  for (const auto& [profile, f] : by_profile) factor_sets.insert(f);
  CHECK(factor_sets.size() == by_profile.size());
}

TEST_CASE("dim is the minimal generating size for n <= 64") {
  for (const auto& sides : all_side_multisets(64)) {
    const AbelianGroup g = make_group(sides);
    CAPTURE(g.literal());
    CHECK(brute_force_dim(g) == g.dim());
  }
}

TEST_CASE("mixed-radix indexing") {
  const AbelianGroup g = make_group({3, 4});
  CHECK(g.index_of(el({0, 0})) == 0);
  CHECK(g.index_of(el({1, 2})) == 6);
  CHECK(g.element_of(6) == el({1, 2}));
  const AbelianGroup h = make_group({2, 3, 5});
  for (Index i = 0; i < h.order(); ++i) CHECK(h.index_of(h.element_of(i)) == i);
  CHECK_THROWS_AS(h.element_of(30), InvalidArgument);
  CHECK_THROWS_AS(h.index_of(el({2, 0, 0})), InvalidArgument);
  CHECK_THROWS_AS(h.index_of(el({0, 0})), InvalidArgument);
}

TEST_CASE("group arithmetic") {
  const AbelianGroup z5 = make_group({5});
  CHECK(z5.add(el({3}), el({4})) == el({2}));
  CHECK(z5.scale(-1, el({2})) == el({3}));
  CHECK(z5.negate(el({2})) == el({3}));
  const AbelianGroup g = make_group({2, 3});
  CHECK(g.scale(6, el({1, 1})) == g.identity());
  CHECK(g.reduce(std::vector<std::int64_t>{-1, 7}) == el({1, 1}));

  const AbelianGroup h = make_group({4, 6});
  for (Index a = 0; a < h.order(); ++a) {
    for (Index b = 0; b < h.order(); b += 5) {
      const GroupElement x = h.element_of(a), y = h.element_of(b), z = h.element_of((a * 7 + b) % h.order());
      CHECK(h.add(x, y) == h.add(y, x));
      CHECK(h.add(h.add(x, y), z) == h.add(x, h.add(y, z)));
    }
    // scaling by m_j clears coordinate j
    CHECK(h.scale(4, h.element_of(a)).coords[0] == 0);
    CHECK(h.scale(6, h.element_of(a)).coords[1] == 0);
  }
  CHECK(h.scale(std::numeric_limits<std::int64_t>::max(), el({3, 5})) == h.reduce(std::vector<std::int64_t>{
      static_cast<std::int64_t>(static_cast<__int128>(std::numeric_limits<std::int64_t>::max()) * 3 % 4),
      static_cast<std::int64_t>(static_cast<__int128>(std::numeric_limits<std::int64_t>::max()) * 5 % 6)}));
}

TEST_CASE("make_group rejects bad input") {
  CHECK_THROWS_AS(make_group({1, 4}), InvalidArgument);
  CHECK_THROWS_AS(make_group({}), InvalidArgument);
  CHECK_THROWS_AS(make_group({65536, 65536, 2}), InvalidArgument);
  CHECK_THROWS_AS(make_group({100, 100}, 1000), InvalidArgument);
  CHECK(make_group({65536, 65536}).order() == (Index{1} << 32));
}

TEST_CASE("group literals") {
  CHECK(parse_group_literal("65536").side_lengths() == std::vector<std::int64_t>{65536});
  CHECK(parse_group_literal("6x4").side_lengths() == std::vector<std::int64_t>{6, 4});
  CHECK(parse_group_literal("6x4").literal() == "6x4");
  for (const char* bad : {"", "x", "6x", "x4", "6xx4", "abc", "6x4a", "1", "-3", "6 x 4"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_group_literal(bad), InvalidArgument);
  }
}

TEST_CASE("generator sampling") {
  const AbelianGroup g = make_group({6, 4});
  const GeneratorMultiset a = sample_generators(g, 10, 42);
  const GeneratorMultiset b = sample_generators(g, 10, 42);
  CHECK(a.elems == b.elems);
  CHECK(a.k() == 10);
  CHECK(sample_generators(g, 10, 43).elems != a.elems);
  for (const auto& z : a.elems) CHECK(g.contains(z));

  const AbelianGroup z2 = make_group({2});
  for (const auto& z : sample_generators(z2, 3, 1).elems) CHECK((z.coords[0] == 0 || z.coords[0] == 1));
  CHECK_THROWS_AS(sample_generators(g, 0, 1), InvalidArgument);
}

TEST_CASE("generator sampling is uniform on Z_8") {
  const AbelianGroup g = make_group({8});
  constexpr std::size_t kDraws = 1'000'000;
  const GeneratorMultiset z = sample_generators(g, kDraws, 2024);
  std::vector<double> counts(8, 0.0);
  for (const auto& e : z.elems) counts[static_cast<std::size_t>(e.coords[0])] += 1.0;
  const double p = 1.0 / 8.0;
  const double sigma = std::sqrt(kDraws * p * (1 - p));
  for (const double c : counts) CHECK(std::fabs(c - kDraws * p) <= 5.0 * sigma);
}

TEST_CASE("dot product with generators") {
  const AbelianGroup g = make_group({12});
  const GeneratorMultiset z{{el({4}), el({6})}, 0};
  CHECK(dot(g, std::vector<std::int64_t>{0, 0}, z) == g.identity());
  CHECK(dot(g, std::vector<std::int64_t>{1, 0}, z) == el({4}));
  CHECK(dot(g, std::vector<std::int64_t>{0, 1}, z) == el({6}));
  CHECK(dot(g, std::vector<std::int64_t>{1, 1}, z) == el({10}));
  CHECK(dot(g, std::vector<std::int64_t>{-1, 0}, z) == el({8}));
  CHECK_THROWS_AS(dot(g, std::vector<std::int64_t>{1}, z), InvalidArgument);
}

TEST_CASE("subgroup closure") {
  const AbelianGroup z4 = make_group({4});
  CHECK(subgroup_generated(z4, std::vector<GroupElement>{el({2})}) == 2);
  CHECK(subgroup_generated(z4, std::vector<GroupElement>{el({1})}) == 4);
  CHECK(subgroup_generated(z4, std::vector<GroupElement>{}) == 1);
  const AbelianGroup v4 = make_group({2, 2});
  CHECK(subgroup_generated(v4, std::vector<GroupElement>{el({1, 0}), el({0, 1})}) == 4);
  CHECK(subgroup_generated(make_group({12}), std::vector<GroupElement>{el({4}), el({6})}) == 6);
  CHECK_THROWS_AS(subgroup_generated(make_group({20'000'000}), std::vector<GroupElement>{el({1})}),
                  LimitExceeded);
}
