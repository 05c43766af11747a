#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permstab/finite_group.hpp"
#include "permstab/homomorphism.hpp"
#include "permstab/permutation.hpp"

namespace permstab {

// Small groups as permutation groups. Generators carry short names.

PermutationGroup cyclic_group(std::size_t n);         ///< <r>, n >= 1
PermutationGroup dihedral_group(std::size_t n);       ///< order 2n, <r, s>, n >= 3
PermutationGroup symmetric_group(std::size_t n);      ///< <c, t>, n >= 2
PermutationGroup alternating_group(std::size_t n);    ///< n >= 3
PermutationGroup quaternion_group();                  ///< Q8 = <i, j>
PermutationGroup klein_four_group();                  ///< <a, b> on 4 points

/// G x H from multiplication tables; generators are those of G followed by
/// those of H (H's names get a trailing ' on collision).
GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h);

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

/// A spread of groups of order at most `max_order`: cyclic, dihedral,
/// symmetric, alternating, Q8 and a few direct products. Sorted by order.
std::vector<NamedGroup> small_groups(std::size_t max_order);

/// Looks up a catalog name: "C5", "D4" (order 8), "S3", "A4", "Q8", "V4",
/// "C2xC3"... Throws DomainError for unknown names.
GroupPtr catalog_group(const std::string& name);

}  // namespace permstab
