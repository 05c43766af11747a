#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "permstab/error.hpp"
#include "permstab/finite_group.hpp"
#include "permstab/homomorphism.hpp"
#include "permstab/rational.hpp"

namespace permstab {

// ---------------------------------------------------------------------------
// Small conjugators

struct SmallConjugator {
  Permutation conjugator;        ///< p with p * phi1(h) * p^-1 = phi2(h)
  std::vector<int> agreement;    ///< 0-based points where phi1, phi2 agree on all of H
  Rational epsilon;              ///< max over h of d_H(phi1(h), phi2(h))
  Rational distance;             ///< d_H(p, identity)
};

/// Conjugator that is the identity on the agreement set and satisfies
/// d_H(p, 1) <= |H| * epsilon. Throws DomainError if the homomorphisms are
/// not conjugate, InternalError if the restrictions to the disagreement set
/// turn out non-conjugate (impossible for conjugate inputs).
SmallConjugator small_conjugator(const PermHomomorphism& phi1, const PermHomomorphism& phi2);

inline constexpr std::size_t kMaxBruteForceDegree = 8;

struct MinConjugator {
  Rational distance;       ///< min over exact conjugators p of d_H(p, 1)
  Permutation conjugator;  ///< lexicographically least minimizer
};

/// Exhaustive search over S_n (n <= 8). Works for finite and presented
/// sources by conjugating generator images. Returns nullopt when no
/// conjugator exists; throws DomainError when the degree is too large.
std::optional<MinConjugator> min_conjugator_distance(const PermHomomorphism& phi1,
                                                     const PermHomomorphism& phi2);

// ---------------------------------------------------------------------------
// Extensions and retracts

/// Every homomorphism of G into S_n, in lexicographic order of generator
/// images. Intended for desk-scale n.
std::vector<PermHomomorphism> enumerate_homomorphisms(const GroupPtr& group, std::size_t degree);

/// Searches for phi_bar: G -> S_n with phi_bar restricted to H equal to phi.
/// phi's source must be subgroup_as_group(G, H) (element i <-> H.members[i]).
/// Backtracks over images of G's generators, pruning by power relations and
/// by cycle-type agreement on G-conjugacy classes. nullopt means none exists.
/// Throws DomainError if phi's degree exceeds `max_degree`.
std::optional<PermHomomorphism> has_extension(const GroupPtr& group, const Subgroup& subgroup,
                                              const PermHomomorphism& phi,
                                              std::size_t max_degree = kMaxBruteForceDegree);

/// K normal in G with K n H = {1} and |K||H| = |G|; the first in canonical
/// subgroup order, or nullopt.
std::optional<Subgroup> find_normal_complement(const FiniteGroup& group, const Subgroup& subgroup);

/// g -> the unique h in H with g in K h, for a normal complement K. Indexed
/// by element id of G.
std::vector<int> retraction_map(const FiniteGroup& group, const Subgroup& subgroup,
                                const Subgroup& complement);

// ---------------------------------------------------------------------------
// Amalgamated products

/// How H sits in the two factors: each generator of H is a word over the
/// generators of G1 and of G2.
struct AmalgamEmbedding {
  std::vector<std::string> h_generators;
  std::vector<Word> into_first;
  std::vector<Word> into_second;
};

/// psi1 * psi2 on G1 *_H G2, evaluated on words over the combined alphabet
/// (G1's generators followed by G2's).
class AmalgamHom {
 public:
  AmalgamHom(PermHomomorphism first, PermHomomorphism second, AmalgamEmbedding embedding);

  const PermHomomorphism& first() const { return first_; }
  const PermHomomorphism& second() const { return second_; }
  const AmalgamEmbedding& embedding() const { return embedding_; }
  std::size_t degree() const { return first_.degree(); }

  const std::vector<std::string>& generator_names() const { return names_; }
  Permutation evaluate(const Word& word) const;

  /// Presentation of G1 *_H G2 when both factors are presented: the
  /// relators of both plus one identification relator per H generator.
  std::optional<FpGroup> presentation() const;

 private:
  PermHomomorphism first_;
  PermHomomorphism second_;
  AmalgamEmbedding embedding_;
  std::vector<std::string> names_;
};

/// Raised when psi1 and psi2 disagree on H.
class AmalgamMismatch : public DomainError {
 public:
  AmalgamMismatch(std::string h_generator, Permutation first_image, Permutation second_image);
  const std::string& h_generator() const { return h_generator_; }
  const Permutation& first_image() const { return first_image_; }
  const Permutation& second_image() const { return second_image_; }

 private:
  std::string h_generator_;
  Permutation first_image_;
  Permutation second_image_;
};

/// Certifies agreement on H and assembles the amalgam homomorphism. Throws
/// DomainError on degree mismatch, AmalgamMismatch on disagreement.
AmalgamHom amalgamated_hom(const PermHomomorphism& psi1, const PermHomomorphism& psi2,
                           const AmalgamEmbedding& embedding);

// ---------------------------------------------------------------------------
// Lift composition

/// Largest s with s copies of psi below phi in the homomorphism order:
/// min over classes T with m_T(psi) > 0 of floor(m_T(phi) / m_T(psi)).
/// Both act on the same finite group H. Throws DomainError when phi has an
/// orbit class that psi lacks.
std::size_t replication_count(const PermHomomorphism& phi, const PermHomomorphism& psi);

/// psi replicated `copies` times, followed by eta.
PermHomomorphism compose_lift(const PermHomomorphism& psi, std::size_t copies,
                              const PermHomomorphism& eta);

// ---------------------------------------------------------------------------
// Centralizer correction

enum class CorrectionMode { kExact, kHeuristic };

inline constexpr std::size_t kExactCentralizerLimit = 1'000'000;

struct CorrectionReport {
  Permutation corrected;      ///< commutes with the coefficient exactly
  Rational distance;          ///< d_H(almost, corrected)
  Rational input_defect;      ///< d_H(a q a^-1 q^-1, 1)
  CorrectionMode mode_used = CorrectionMode::kExact;
  BigInt centralizer_order;
};

/// |C(a)| = product over cycle lengths l of k_l! * l^k_l.
BigInt centralizer_order(const Permutation& a);

/// All elements of C(a), generated from the cycle structure. Throws
/// DomainError when |C(a)| exceeds `limit`.
std::vector<Permutation> centralizer_elements(const Permutation& a,
                                              std::size_t limit = kExactCentralizerLimit);

/// Finds q' commuting with `coefficient` close to `almost`. Exact mode
/// returns the nearest element of the centralizer (ties to the least
/// one-line form) and falls back to the heuristic when |C(a)| exceeds
/// kExactCentralizerLimit; heuristic mode matches cycles greedily.
CorrectionReport centralizer_correct(const Permutation& coefficient, const Permutation& almost,
                                     CorrectionMode mode);

}  // namespace permstab
