#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cayleymix {

using Index = std::uint64_t;

/// An element of ⊕ Z_{m_j}, stored as reduced coordinates.
struct GroupElement {
  std::vector<std::int64_t> coords;

  bool operator==(const GroupElement&) const = default;
};

/// A finite Abelian group given by a decomposition ⊕_j Z_{m_j}.
///
/// The decomposition supplied by the caller fixes the coordinate system
/// (mixed-radix indexing, last coordinate fastest). The canonical invariant
/// factors, the dimension d(G) and the minimal side-length m_* are derived
/// from it and do not depend on which decomposition was supplied.
class AbelianGroup {
 public:
  static constexpr Index kDefaultMaxOrder = Index{1} << 32;

  explicit AbelianGroup(std::vector<std::int64_t> side_lengths,
                        Index max_order = kDefaultMaxOrder);

  const std::vector<std::int64_t>& side_lengths() const { return sides_; }
  std::size_t rank() const { return sides_.size(); }
  Index order() const { return order_; }
  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  std::size_t dim() const { return factors_.size(); }
  std::int64_t min_side() const { return factors_.empty() ? 1 : factors_.front(); }
  /// Smallest side length of the supplied decomposition.
  std::int64_t min_supplied_side() const;

  Index index_of(const GroupElement& x) const;
  GroupElement element_of(Index index) const;
  bool contains(const GroupElement& x) const;

  GroupElement identity() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement scale(std::int64_t c, const GroupElement& a) const;
  /// Reduces arbitrary integer coordinates into the group.
  GroupElement reduce(std::span<const std::int64_t> coords) const;

  /// "m1xm2x...xmd"
  std::string literal() const;

  bool operator==(const AbelianGroup& other) const { return sides_ == other.sides_; }

 private:
  void check(const GroupElement& x) const;

  std::vector<std::int64_t> sides_;
  std::vector<std::int64_t> factors_;
  Index order_ = 1;
};

/// Canonical invariant factors m_1 | m_2 | ... of ⊕ Z_{sides[j]}, by
/// prime-power regrouping.
std::vector<std::int64_t> invariant_factors(std::span<const std::int64_t> sides);

AbelianGroup make_group(std::vector<std::int64_t> side_lengths,
                        Index max_order = AbelianGroup::kDefaultMaxOrder);

/// Parses the group literal syntax "65536" or "6x4".
AbelianGroup parse_group_literal(std::string_view literal,
                                 Index max_order = AbelianGroup::kDefaultMaxOrder);

/// k iid uniform group elements; repeats are kept (Cayley multigraph).
struct GeneratorMultiset {
  std::vector<GroupElement> elems;
  std::uint64_t seed = 0;

  std::size_t k() const { return elems.size(); }
};

GeneratorMultiset sample_generators(const AbelianGroup& group, std::size_t k,
                                    std::uint64_t seed);

/// Σ_i w_i Z_i.
GroupElement dot(const AbelianGroup& group, std::span<const std::int64_t> w,
                 const GeneratorMultiset& gens);

inline constexpr Index kClosureMaxOrder = 10'000'000;

/// Size of the subgroup generated by gens (closure under addition).
Index subgroup_generated(const AbelianGroup& group, std::span<const GroupElement> gens);

}  // namespace cayleymix
