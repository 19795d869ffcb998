#include "cayleymix/group.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "cayleymix/error.hpp"
#include "cayleymix/rng.hpp"

namespace cayleymix {

namespace {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::int64_t reduce_mod(std::int64_t value, std::int64_t m) {
  const std::int64_t r = value % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::vector<std::int64_t> invariant_factors(std::span<const std::int64_t> sides) {
  // prime -> exponents of that prime across the cyclic factors
  std::map<std::int64_t, std::vector<int>> exponents;
  for (const std::int64_t m : sides) {
    for (const auto& [p, e] : factorize(m)) exponents[p].push_back(e);
  }
  std::size_t count = 0;
  for (auto& [p, es] : exponents) {
    std::sort(es.begin(), es.end(), std::greater<>());
    count = std::max(count, es.size());
  }
  // factors[0] is the largest; combine the i-th largest prime power of each prime
  std::vector<std::int64_t> factors(count, 1);
  for (const auto& [p, es] : exponents) {
    for (std::size_t i = 0; i < es.size(); ++i) factors[i] *= ipow(p, es[i]);
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

AbelianGroup::AbelianGroup(std::vector<std::int64_t> side_lengths, Index max_order)
    : sides_(std::move(side_lengths)) {
  if (sides_.empty()) throw InvalidArgument("group needs at least one side length");
  for (const std::int64_t m : sides_) {
    if (m < 2) throw InvalidArgument("side length " + std::to_string(m) + " < 2");
    if (static_cast<Index>(m) > max_order / order_) {
      throw InvalidArgument("group order overflows the configured maximum " +
                            std::to_string(max_order));
    }
    order_ *= static_cast<Index>(m);
  }
  if (order_ > max_order) {
    throw InvalidArgument("group order exceeds the configured maximum " + std::to_string(max_order));
  }
  factors_ = cayleymix::invariant_factors(sides_);
}

std::int64_t AbelianGroup::min_supplied_side() const {
  return *std::min_element(sides_.begin(), sides_.end());
}

void AbelianGroup::check(const GroupElement& x) const {
  if (!contains(x)) throw InvalidArgument("element does not belong to group " + literal());
}

bool AbelianGroup::contains(const GroupElement& x) const {
  if (x.coords.size() != sides_.size()) return false;
  for (std::size_t j = 0; j < sides_.size(); ++j) {
    if (x.coords[j] < 0 || x.coords[j] >= sides_[j]) return false;
  }
  return true;
}

Index AbelianGroup::index_of(const GroupElement& x) const {
  check(x);
  Index idx = 0;
  for (std::size_t j = 0; j < sides_.size(); ++j) {
    idx = idx * static_cast<Index>(sides_[j]) + static_cast<Index>(x.coords[j]);
  }
  return idx;
}

GroupElement AbelianGroup::element_of(Index index) const {
  if (index >= order_) {
    throw InvalidArgument("index " + std::to_string(index) + " out of range for order " +
                          std::to_string(order_));
  }
  GroupElement x{std::vector<std::int64_t>(sides_.size())};
  for (std::size_t j = sides_.size(); j-- > 0;) {
    const auto m = static_cast<Index>(sides_[j]);
    x.coords[j] = static_cast<std::int64_t>(index % m);
    index /= m;
  }
  return x;
}

GroupElement AbelianGroup::identity() const {
  return GroupElement{std::vector<std::int64_t>(sides_.size(), 0)};
}

GroupElement AbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement out{a.coords};
  for (std::size_t j = 0; j < sides_.size(); ++j) {
    out.coords[j] += b.coords[j];
    if (out.coords[j] >= sides_[j]) out.coords[j] -= sides_[j];
  }
  return out;
}

GroupElement AbelianGroup::negate(const GroupElement& a) const { return scale(-1, a); }

GroupElement AbelianGroup::scale(std::int64_t c, const GroupElement& a) const {
  check(a);
  GroupElement out{a.coords};
  for (std::size_t j = 0; j < sides_.size(); ++j) {
    const std::int64_t m = sides_[j];
    const auto prod = static_cast<__int128>(reduce_mod(c, m)) * a.coords[j];
    out.coords[j] = static_cast<std::int64_t>(prod % m);
  }
  return out;
}

GroupElement AbelianGroup::reduce(std::span<const std::int64_t> coords) const {
  if (coords.size() != sides_.size()) throw InvalidArgument("coordinate count mismatch");
  GroupElement out{std::vector<std::int64_t>(coords.begin(), coords.end())};
  for (std::size_t j = 0; j < sides_.size(); ++j) out.coords[j] = reduce_mod(coords[j], sides_[j]);
  return out;
}

std::string AbelianGroup::literal() const {
  std::string s;
  for (std::size_t j = 0; j < sides_.size(); ++j) {
    if (j > 0) s += 'x';
    s += std::to_string(sides_[j]);
  }
  return s;
}

AbelianGroup make_group(std::vector<std::int64_t> side_lengths, Index max_order) {
  return AbelianGroup(std::move(side_lengths), max_order);
}

AbelianGroup parse_group_literal(std::string_view literal, Index max_order) {
  std::vector<std::int64_t> sides;
  std::size_t start = 0;
  while (start <= literal.size()) {
    const std::size_t end = std::min(literal.find('x', start), literal.size());
    const std::string_view part = literal.substr(start, end - start);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw InvalidArgument("malformed group literal '" + std::string(literal) + "'");
    }
    sides.push_back(value);
    start = end + 1;
  }
  return AbelianGroup(std::move(sides), max_order);
}

GeneratorMultiset sample_generators(const AbelianGroup& group, std::size_t k,
                                    std::uint64_t seed) {
  if (k < 1) throw InvalidArgument("need k >= 1 generators");
  Rng rng(seed);
  GeneratorMultiset gens;
  gens.seed = seed;
  gens.elems.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    GroupElement z{std::vector<std::int64_t>(group.rank())};
    for (std::size_t j = 0; j < group.rank(); ++j) {
      z.coords[j] = static_cast<std::int64_t>(rng.below(static_cast<Index>(group.side_lengths()[j])));
    }
    gens.elems.push_back(std::move(z));
  }
  return gens;
}

GroupElement dot(const AbelianGroup& group, std::span<const std::int64_t> w,
                 const GeneratorMultiset& gens) {
  if (w.size() != gens.k()) {
    throw InvalidArgument("word length " + std::to_string(w.size()) + " != k = " +
                          std::to_string(gens.k()));
  }
  GroupElement acc = group.identity();
  for (std::size_t i = 0; i < w.size(); ++i) acc = group.add(acc, group.scale(w[i], gens.elems[i]));
  return acc;
}

Index subgroup_generated(const AbelianGroup& group, std::span<const GroupElement> gens) {
  const Index n = group.order();
  if (n > kClosureMaxOrder) {
    throw LimitExceeded("closure needs n <= " + std::to_string(kClosureMaxOrder) +
                        "; use spectral detection for larger groups");
  }
  const auto& sides = group.side_lengths();
  std::vector<GroupElement> steps(gens.begin(), gens.end());
  for (const auto& g : steps) {
    if (!group.contains(g)) throw InvalidArgument("generator not in group");
  }
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index count = 1;
  std::vector<std::int64_t> coords(sides.size());
  while (!stack.empty()) {
    const Index cur = stack.back();
    stack.pop_back();
    Index rest = cur;
    for (std::size_t j = sides.size(); j-- > 0;) {
      coords[j] = static_cast<std::int64_t>(rest % static_cast<Index>(sides[j]));
      rest /= static_cast<Index>(sides[j]);
    }
    for (const auto& g : steps) {
      Index next = 0;
      for (std::size_t j = 0; j < sides.size(); ++j) {
        std::int64_t c = coords[j] + g.coords[j];
        if (c >= sides[j]) c -= sides[j];
        next = next * static_cast<Index>(sides[j]) + static_cast<Index>(c);
      }
      if (!seen[next]) {
        seen[next] = 1;
        ++count;
        stack.push_back(next);
      }
    }
  }
  return count;
}

}  // namespace cayleymix
