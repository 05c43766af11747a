#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "permstab/homomorphism.hpp"
#include "permstab/permutation.hpp"

namespace permstab {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Uniform element of S_n.
Permutation random_permutation(std::size_t degree, Rng& rng);

/// A random action of G: a sum of coset actions G/N for random subgroups N
/// with total degree exactly `degree`, relabeled by a random permutation.
PermHomomorphism random_action(const GroupPtr& group, std::size_t degree, Rng& rng);

/// Moves `count` random points of p: picks them, then applies a random
/// permutation of those points' images. The result is a permutation.
Permutation perturb(const Permutation& p, std::size_t count, Rng& rng);

}  // namespace permstab
