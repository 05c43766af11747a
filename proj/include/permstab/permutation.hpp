#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permstab/rational.hpp"

namespace permstab {

/// A bijection of {0..n-1}. All text I/O is 1-indexed; storage is 0-indexed.
///
/// Products follow function composition: (p * q)(x) = p(q(x)). With this
/// convention a homomorphism satisfies h(g*k) = h(g) * h(k) and acts on the
/// left.
class Permutation {
 public:
  Permutation() = default;

  /// Identity of the given degree. Degree 0 is the empty permutation.
  static Permutation identity(std::size_t degree);

  /// Takes 0-indexed images; throws DomainError unless they form a bijection.
  explicit Permutation(std::vector<int> images);

  /// Builds from 0-indexed cycles on a fixed degree.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<int>>& cycles);

  std::size_t degree() const { return images_.size(); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
  std::span<const int> images() const { return images_; }

  bool is_identity() const;
  std::size_t fixed_point_count() const;

  Permutation inverse() const;
  /// Order of the permutation as an element of S_n (lcm of cycle lengths).
  std::size_t order() const;

  /// Disjoint cycles of length >= 2, each starting at its least point, sorted
  /// by that point.
  std::vector<std::vector<int>> cycles() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  /// Lexicographic on the one-line form (degree first).
  friend std::strong_ordering operator<=>(const Permutation& p,
                                          const Permutation& q);

 private:
  std::vector<int> images_;
};

/// p^e for any integer e.
Permutation power(const Permutation& p, long long exponent);

/// c * p * c^-1.
Permutation conjugate_by(const Permutation& p, const Permutation& c);

/// Parses `[i1,...,in]` (one-line) or `(a b c)(d e)` (cycles), 1-indexed.
/// `()` and the empty string denote the identity. Throws ParseError.
Permutation parse_permutation(std::string_view text, std::size_t degree);

/// Cycle notation, identity printed as "()".
std::string to_cycle_string(const Permutation& p);
/// One-line notation `[i1,...,in]`.
std::string to_one_line_string(const Permutation& p);

/// Normalized Hamming distance |{i : p(i) != q(i)}| / n. Degree 0 gives 0.
Rational hamming_distance(const Permutation& p, const Permutation& q);
/// Count behind hamming_distance.
std::size_t disagreement_count(const Permutation& p, const Permutation& q);

/// Fraction of fixed points; equals 1 - hamming_distance(p, identity).
Rational normalized_trace(const Permutation& p);

/// p on the first block, q shifted by deg(p) on the second.
Permutation direct_sum(const Permutation& p, const Permutation& q);

/// s-fold direct sum of p with itself. Throws DomainError if s == 0.
Permutation replicate(const Permutation& p, std::size_t copies);

/// Cycle lengths including fixed points, sorted ascending.
std::vector<std::size_t> cycle_type(const Permutation& p);

/// Every permutation of the given degree in lexicographic one-line order.
std::vector<Permutation> all_permutations(std::size_t degree);

}  // namespace permstab
