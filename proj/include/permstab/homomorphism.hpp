#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "permstab/finite_group.hpp"
#include "permstab/permutation.hpp"
#include "permstab/presentation.hpp"

namespace permstab {

using FpGroupPtr = std::shared_ptr<const FpGroup>;

/// Outcome of a homomorphism check. On failure `witness` names the violating
/// pair (g, s with h(g*s) != h(g)h(s)) or relator.
struct HomCheck {
  bool ok = true;
  std::string witness;
};

/// A homomorphism from a finite group (images of every element) or from a
/// finitely presented group (images of generators) into S_n.
class PermHomomorphism {
 public:
  /// From images of the group's generators; extends along the Cayley graph.
  /// Throws DomainError if the images do not define a homomorphism.
  static PermHomomorphism from_generator_images(GroupPtr group, std::size_t degree,
                                                std::vector<Permutation> generator_images);
  /// From images of every element. Verified on all pairs.
  static PermHomomorphism from_element_images(GroupPtr group, std::size_t degree,
                                              std::vector<Permutation> element_images);
  /// From generator images; verified against every relator.
  static PermHomomorphism from_presentation(FpGroupPtr group, std::size_t degree,
                                            std::vector<Permutation> generator_images);

  /// No verification; the caller guarantees the homomorphism laws.
  /// check_homomorphism() can still audit the result.
  static PermHomomorphism unchecked(GroupPtr group, std::size_t degree,
                                    std::vector<Permutation> element_images);
  static PermHomomorphism unchecked(FpGroupPtr group, std::size_t degree,
                                    std::vector<Permutation> generator_images);

  bool has_finite_source() const { return std::holds_alternative<GroupPtr>(source_); }
  /// Throws DomainError for a presented source.
  const FiniteGroup& finite_source() const;
  const GroupPtr& finite_source_ptr() const;
  const FpGroup& presented_source() const;
  const FpGroupPtr& presented_source_ptr() const;

  std::size_t degree() const { return degree_; }
  std::span<const std::string> generator_names() const;
  std::size_t generator_count() const { return generator_names().size(); }

  /// Image of a finite-source element id.
  const Permutation& image(int element) const;
  /// Image of the k-th generator (0-based).
  Permutation generator_image(std::size_t index) const;
  /// All stored images: per element for finite sources, per generator
  /// otherwise.
  const std::vector<Permutation>& images() const { return images_; }

 private:
  PermHomomorphism() = default;

  std::variant<GroupPtr, FpGroupPtr> source_;
  std::size_t degree_ = 0;
  std::vector<Permutation> images_;
};

/// Product of generator images along the word. Throws DomainError on an
/// unknown generator index.
Permutation evaluate_word(const PermHomomorphism& hom, const Word& word);

/// Audits the homomorphism laws: all pairs for finite sources, all relators
/// for presented sources.
HomCheck check_homomorphism(const PermHomomorphism& hom);

/// Checks a candidate assignment of generator images without building a
/// homomorphism.
HomCheck check_generator_images(const FiniteGroup& group,
                                std::span<const Permutation> generator_images);
HomCheck check_relators(const FpGroup& group, std::span<const Permutation> generator_images);

/// Extends generator images to every element along the Cayley graph.
/// Returns nullopt and fills `check` on inconsistency.
std::optional<std::vector<Permutation>> extend_generator_images(
    const FiniteGroup& group, std::span<const Permutation> generator_images,
    HomCheck* check = nullptr);

/// True when both homomorphisms have the same source group (same object or
/// equal tables / presentations).
bool same_source(const PermHomomorphism& a, const PermHomomorphism& b);

/// Result of closing a set of permutations into a group.
struct PermutationGroup {
  GroupPtr group;
  /// The defining (faithful) action.
  PermHomomorphism natural;
};

inline constexpr std::size_t kDefaultClosureBound = 2048;

/// Closes the generators under composition. Element ids follow BFS order from
/// the identity (id 0). Throws DomainError when the order exceeds `bound`.
PermutationGroup group_from_permutations(std::span<const Permutation> generators,
                                         std::vector<std::string> generator_names = {},
                                         std::size_t bound = kDefaultClosureBound);

/// Left multiplication action on the cosets gN. Point 1 is the coset N;
/// the others are ordered by their least element id.
PermHomomorphism coset_action(GroupPtr group, const Subgroup& subgroup);

/// Trivial action on `degree` points (degree 0 is the empty action).
PermHomomorphism trivial_action(GroupPtr group, std::size_t degree);

/// Block-diagonal sum of two homomorphisms of the same source.
PermHomomorphism direct_sum(const PermHomomorphism& a, const PermHomomorphism& b);

/// `copies`-fold direct sum; copies == 0 gives the empty action.
PermHomomorphism replicate(const PermHomomorphism& hom, std::size_t copies);

/// c * h(.) * c^-1.
PermHomomorphism conjugate_by(const PermHomomorphism& hom, const Permutation& c);

/// Restriction to a subgroup; the result's source is
/// subgroup_as_group(source, subgroup) (element i <-> members[i]).
PermHomomorphism restrict_to(const PermHomomorphism& hom, const Subgroup& subgroup);

/// Restriction to an invariant point set, renumbered in ascending order.
/// Throws DomainError if `points` (0-based) is not invariant.
PermHomomorphism restrict_to_points(const PermHomomorphism& hom, std::span<const int> points);

}  // namespace permstab
