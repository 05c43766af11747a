#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "permstab/finite_group.hpp"
#include "permstab/homomorphism.hpp"
#include "permstab/rational.hpp"

namespace permstab {

/// One transitive constituent of an action.
struct Orbit {
  std::vector<int> points;  ///< sorted, 0-based
  int base_point = 0;       ///< least point of the orbit
  Subgroup stabilizer;      ///< exact stabilizer of base_point
  std::size_t class_id = 0; ///< index into the source's subgroup_classes()
};

/// Orbits sorted by least point; they partition {0..n-1}.
struct OrbitDecomposition {
  std::vector<Orbit> orbits;
};

/// Requires a finite source (DomainError otherwise).
OrbitDecomposition orbit_decomposition(const PermHomomorphism& hom);

/// Orbit-type census: counts[c] is the number of orbits whose stabilizer
/// lies in subgroup class c. The coset multiplicity r(phi, N) is
/// counts[class of N] / degree.
struct MultiplicityVector {
  std::vector<std::size_t> counts;
  std::size_t degree = 0;

  /// r(phi, N) for the class index. Degree 0 gives 0.
  Rational r(std::size_t class_id) const;

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

MultiplicityVector multiplicity_vector(const PermHomomorphism& hom);

struct ConjugacyResult {
  bool conjugate = false;
  /// When conjugate: p with p * h1(g) * p^-1 = h2(g) for every g.
  std::optional<Permutation> witness;
};

/// Decides conjugacy by comparing multiplicity vectors and, when equal,
/// builds a witness by pairing orbits class by class in ascending least-point
/// order. Throws DomainError on source or degree mismatch.
ConjugacyResult is_conjugate(const PermHomomorphism& h1, const PermHomomorphism& h2);

/// phi <= psi in the homomorphism order: m_N(phi) <= m_N(psi) for every class.
bool hom_order_leq(const PermHomomorphism& phi, const PermHomomorphism& psi);

/// Removes the orbit constituents of `rho` from `phi`: for each class, the
/// orbits with the lowest point sets go first. Throws DomainError unless
/// hom_order_leq(rho, phi).
PermHomomorphism rep_subtract(const PermHomomorphism& phi, const PermHomomorphism& rho);

}  // namespace permstab
