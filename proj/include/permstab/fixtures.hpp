#pragma once

#include <cstddef>

#include "permstab/homomorphism.hpp"
#include "permstab/permutation.hpp"
#include "permstab/stability.hpp"

namespace permstab::fixtures {

/// Z2 x Z2 = <a, b> acting on six points in two non-conjugate ways with equal
/// single-element traces (1/3 for every g != 1).
PermHomomorphism theta1();
PermHomomorphism theta2();

/// a_k = (1..k)(k+1..2k)...(k^2-k+1..k^2) in S_{k^2}.
Permutation a_k(std::size_t k);
/// b_k = (1..k-1)(k+1..2k-1)...(k^2-k+1..k^2-1)(k, 2k, ..., k^2).
Permutation b_k(std::size_t k);

/// Z -> S_{2k^2} sending the generator to a_k + b_k (resp. b_k + a_k).
PermHomomorphism ab_pair_first(std::size_t k);
PermHomomorphism ab_pair_second(std::size_t k);

/// SL2(Z) = Z4 *_{Z2} Z6 with s -> (1 2 3 4), t -> (1 3)(2 4); the H
/// generator z maps to s^2 and t^3.
struct AmalgamInstance {
  PermHomomorphism first;
  PermHomomorphism second;
  AmalgamEmbedding embedding;
};
AmalgamInstance sl2_instance();
/// Same, but t -> (1 2): the factors disagree on z.
AmalgamInstance sl2_mismatch_instance();

}  // namespace permstab::fixtures
