#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "permstab/homomorphism.hpp"
#include "permstab/presentation.hpp"
#include "permstab/rational.hpp"

namespace permstab {

/// Oriented edge (source, target, label), all 0-based.
using LabeledEdge = std::array<int, 3>;

/// Directed multigraph with labeled edges. Action graphs additionally have
/// every label acting as a permutation; see is_action_graph().
struct LabeledDigraph {
  std::size_t vertex_count = 0;
  std::vector<std::string> labels;
  std::vector<LabeledEdge> edges;  ///< sorted, no duplicates

  std::size_t label_count() const { return labels.size(); }
  friend bool operator==(const LabeledDigraph&, const LabeledDigraph&) = default;
};

/// Validates ranges, sorts and deduplicates edges.
LabeledDigraph make_digraph(std::size_t vertex_count, std::vector<std::string> labels,
                            std::vector<LabeledEdge> edges);

/// Every label has in- and out-degree exactly one at every vertex.
bool is_action_graph(const LabeledDigraph& graph);

/// Gamma_psi: an x_i-edge v -> psi(x_i)(v) for every vertex and generator.
/// Throws DomainError unless the source is a free group.
LabeledDigraph action_graph(const PermHomomorphism& psi);

inline constexpr std::size_t kDefaultPatternBound = 6;

/// Connected rooted pattern; the root is vertex 0.
struct RootedPattern {
  std::size_t vertex_count = 1;
  std::vector<LabeledEdge> edges;  ///< sorted, no duplicates

  friend bool operator==(const RootedPattern&, const RootedPattern&) = default;
};

/// Validates, sorts edges and checks connectivity (DomainError otherwise).
RootedPattern make_pattern(std::size_t vertex_count, std::vector<LabeledEdge> edges);

/// Least sorted edge list over all relabelings fixing the root.
std::vector<LabeledEdge> canonical_certificate(const RootedPattern& pattern);

/// Fraction of vertices x of the graph admitting an injective, label- and
/// orientation-preserving map of the pattern sending the root to x. Edges of
/// the graph outside the image are allowed. Throws DomainError if the
/// pattern has more than `bound` vertices or uses a label the graph lacks.
Rational pattern_frequency(const LabeledDigraph& graph, const RootedPattern& pattern,
                           std::size_t bound = kDefaultPatternBound);

/// A pattern together with its weight in the truncated distance.
struct WeightedPattern {
  RootedPattern pattern;
  std::size_t index = 1;  ///< j: the weight is 2^-j
};

/// Connected rooted patterns with at most `size_bound` vertices over
/// `label_count` labels in which every label is a partial injection (the
/// only patterns with nonzero frequency in an action graph).
///
/// Order: vertex count, then the least certificate over all relabelings of
/// the alphabet, then the pattern's own certificate. Patterns that differ
/// only by a relabeling of the alphabet share the index j, so the weights do
/// not depend on how the alphabet is named.
std::vector<WeightedPattern> enumerate_patterns(std::size_t label_count, std::size_t size_bound);

struct PatternTerm {
  RootedPattern pattern;
  std::size_t index = 1;
  Rational first;
  Rational second;
};

struct StatDistance {
  Rational value;
  std::vector<PatternTerm> terms;
};

/// Sum over enumerate_patterns(m, size_bound) of 2^-j |Gamma1(K) - Gamma2(K)|.
/// Both graphs must be action graphs over the same alphabet.
StatDistance stat_distance_truncated(const LabeledDigraph& first, const LabeledDigraph& second,
                                     std::size_t size_bound);

/// S(A,B) for word sets under a homomorphism of a free group.
Rational bs_word_statistics(const PermHomomorphism& psi, std::span<const Word> fixed,
                            std::span<const Word> moved);

// ---------------------------------------------------------------------------
// Simple-graph encoding
//
// An edge u -> v with label index i (1-based) becomes the path u - t - h - v
// through two fresh anchors. t carries a pendant path of 2i vertices, h one
// of 2i + 1 vertices. Original vertices keep ids 0..n-1; gadgets follow in
// edge order as t, h, t's pendant (outward), h's pendant (outward).
//
// Per edge of label i: 4i + 3 new vertices and 4i + 4 new edges. Anchors
// have degree 3 and original vertices keep their degree (a loop counts 2).

inline constexpr std::size_t kMaxEncodedLabels = 16;

struct SimpleGraph {
  std::size_t vertex_count = 0;
  std::vector<std::array<int, 2>> edges;  ///< u < v, sorted

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
};

SimpleGraph encode_to_simple(const LabeledDigraph& graph);

/// Inverse of encode_to_simple up to relabeling: original vertices are
/// numbered in increasing id order. Throws DomainError if the graph is not an
/// encoding over `label_count` labels.
LabeledDigraph decode_simple(const SimpleGraph& graph, std::size_t label_count);

std::size_t max_degree(const SimpleGraph& graph);
std::size_t max_degree(const LabeledDigraph& graph);

/// JSON adjacency export, 1-based:
/// {"vertices": n, "labels": [...], "edges": [[s, t, "x"], ...]}
nlohmann::json to_json(const LabeledDigraph& graph);
/// {"vertices": n, "edges": [[u, v], ...]}
nlohmann::json to_json(const SimpleGraph& graph);

}  // namespace permstab
