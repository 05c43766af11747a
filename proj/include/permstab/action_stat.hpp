#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "permstab/homomorphism.hpp"
#include "permstab/rational.hpp"

namespace permstab {

inline constexpr std::size_t kDefaultInclusionExclusionBound = 20;

/// Points fixed by every permutation in `fixed` and moved by every one in
/// `moved`. All permutations must have degree `degree`.
std::size_t statistic_count(std::size_t degree, std::span<const Permutation> fixed,
                            std::span<const Permutation> moved);

/// Tr(A): fraction of points fixed by every image of A (element ids).
/// The empty action (degree 0) has trace 1 on every set.
Rational action_trace(const PermHomomorphism& hom, std::span<const int> elements);
/// Tr(A) for elements given as words over the source generators.
Rational action_trace(const PermHomomorphism& hom, std::span<const Word> elements);

/// S(A,B): fraction of points fixed by all of A and moved by all of B.
Rational bs_statistic(const PermHomomorphism& hom, std::span<const int> fixed,
                      std::span<const int> moved);
Rational bs_statistic(const PermHomomorphism& hom, std::span<const Word> fixed,
                      std::span<const Word> moved);

/// Memoized trace function over a finite universe of permutations. Sets are
/// given as indices into the universe; for a finite-source homomorphism the
/// universe is the element images, so indices are element ids; for a
/// presented source they are generator indices.
///
/// Copies share the memo table. Concurrent evaluation is safe.
class ActionTrace {
 public:
  explicit ActionTrace(const PermHomomorphism& hom);
  ActionTrace(std::size_t degree, std::vector<Permutation> universe);

  std::size_t degree() const;
  std::size_t universe_size() const;

  /// Number of points fixed by every member of the set.
  std::size_t fixed_count(std::span<const int> set) const;
  Rational operator()(std::span<const int> set) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// S(A,B) = sum over V subset of B of (-1)^|V| Tr(A u V). Throws DomainError
/// when |B| exceeds `bound`.
Rational s_from_tr(const ActionTrace& trace, std::span<const int> fixed,
                   std::span<const int> moved,
                   std::size_t bound = kDefaultInclusionExclusionBound);

/// Bitmask over positions of a finite list F (bit i <-> F[i]).
using SubsetMask = std::uint32_t;

/// Tabulates S(T, F \ T) for every T subset of F, indexed by the mask of T.
std::vector<Rational> bs_table(const ActionTrace& trace, std::span<const int> universe_subset);

/// Inverse direction: from S(T, F \ T) for every T subset of F, recovers
/// Tr(A) = sum over T containing A of S(T, F \ T), indexed by the mask of A.
/// `table.size()` must be 2^|F|; a missing entry throws DomainError.
std::vector<Rational> tr_from_s(const std::vector<std::optional<Rational>>& table);

}  // namespace permstab
