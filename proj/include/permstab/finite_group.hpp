#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "permstab/presentation.hpp"

namespace permstab {

/// Default cap on |G| for subgroup-lattice work.
inline constexpr std::size_t kDefaultSubgroupBound = 200;

/// Sorted, duplicate-free element ids of a subgroup of some FiniteGroup.
struct Subgroup {
  std::vector<int> members;

  std::size_t order() const { return members.size(); }
  bool contains(int element) const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  /// Order first, then lexicographic member ids.
  friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b);
};

/// A conjugacy class of subgroups; `representative` is the class member with
/// the lexicographically least member set.
struct SubgroupClass {
  Subgroup representative;
  std::vector<Subgroup> members;
};

/// Finite group stored by its full multiplication table. Element 0 need not
/// be the identity; use identity().
///
/// Instances are immutable. Subgroup data is computed lazily on first use and
/// cached; the cache is shared between copies and is safe to populate from
/// several threads.
class FiniteGroup {
 public:
  /// Validates closure, identity, inverses and associativity. Generators are
  /// element ids; when empty a generating set is chosen greedily. Names
  /// default to "g<k>" (1-based position).
  static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                std::vector<int> generators = {},
                                std::vector<std::string> generator_names = {});

  /// As from_table but skips the O(n^3) associativity check; for tables that
  /// come from a known group (permutation closures, subgroups).
  static FiniteGroup from_trusted_table(std::vector<std::vector<int>> table,
                                        std::vector<int> generators = {},
                                        std::vector<std::string> generator_names = {});

  std::size_t order() const { return table_.size(); }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverses_[a]; }
  int conjugate(int element, int by) const {
    return multiply(multiply(by, element), inverse(by));
  }
  std::size_t element_order(int element) const;
  bool is_element(int element) const {
    return element >= 0 && static_cast<std::size_t>(element) < order();
  }
  bool is_abelian() const;

  const std::vector<std::vector<int>>& table() const { return table_; }
  std::span<const int> generators() const { return generators_; }
  std::span<const std::string> generator_names() const { return generator_names_; }

  /// Product of generators along the word.
  int evaluate(const Word& word) const;

  /// Subgroup generated by the given elements (BFS closure).
  Subgroup generated_subgroup(std::span<const int> elements) const;

  /// All subgroups, sorted by (order, members). Throws DomainError when
  /// order() exceeds `bound`.
  const std::vector<Subgroup>& subgroups(std::size_t bound = kDefaultSubgroupBound) const;
  /// Classes sorted by (order, representative).
  const std::vector<SubgroupClass>& subgroup_classes(
      std::size_t bound = kDefaultSubgroupBound) const;
  /// Index into subgroup_classes() of the class containing `subgroup`.
  /// Throws DomainError if `subgroup` is not a subgroup.
  std::size_t class_index(const Subgroup& subgroup,
                          std::size_t bound = kDefaultSubgroupBound) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  struct Lattice;
  struct Cache;

  FiniteGroup() = default;
  static FiniteGroup build(std::vector<std::vector<int>> table, std::vector<int> generators,
                           std::vector<std::string> generator_names, bool check_associativity);
  const Lattice& lattice(std::size_t bound) const;

  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
  int identity_ = 0;
  std::vector<int> generators_;
  std::vector<std::string> generator_names_;
  std::shared_ptr<Cache> cache_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// True when `candidate` (sorted or not) is a subgroup of G.
bool is_subgroup(const FiniteGroup& group, std::span<const int> candidate);

/// Validates and canonicalizes a member list into a Subgroup.
Subgroup make_subgroup(const FiniteGroup& group, std::vector<int> members);

/// Convenience wrappers matching the lattice accessors.
std::vector<Subgroup> all_subgroups(const FiniteGroup& group,
                                    std::size_t bound = kDefaultSubgroupBound);
std::vector<SubgroupClass> subgroup_conjugacy_classes(
    const FiniteGroup& group, std::size_t bound = kDefaultSubgroupBound);

/// {g : g N g^-1 = N}. Throws DomainError if N is not a subgroup.
Subgroup normalizer(const FiniteGroup& group, const Subgroup& subgroup);

bool is_normal(const FiniteGroup& group, const Subgroup& subgroup);

/// g N g^-1.
Subgroup conjugate_subgroup(const FiniteGroup& group, const Subgroup& subgroup, int by);

/// The subgroup as a group in its own right: element i of the result is
/// subgroup.members[i].
FiniteGroup subgroup_as_group(const FiniteGroup& group, const Subgroup& subgroup);

}  // namespace permstab
