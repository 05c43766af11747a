#include "permstab/bs_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "permstab/action_stat.hpp"
#include "permstab/error.hpp"

namespace permstab {

namespace {

void check_edges(std::size_t vertex_count, std::size_t label_count,
                 const std::vector<LabeledEdge>& edges) {
  const int n = static_cast<int>(vertex_count);
  const int m = static_cast<int>(label_count);
  for (const auto& [s, t, l] : edges) {
    if (s < 0 || s >= n || t < 0 || t >= n) throw DomainError("edge endpoint out of range");
    if (l < 0 || l >= m) throw DomainError("edge label out of range");
  }
}

void sort_unique(std::vector<LabeledEdge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::vector<LabeledEdge> relabel(const std::vector<LabeledEdge>& edges,
                                 const std::vector<int>& vertex_map,
                                 const std::vector<int>& label_map) {
  std::vector<LabeledEdge> out;
  out.reserve(edges.size());
  for (const auto& [s, t, l] : edges) out.push_back({vertex_map[s], vertex_map[t], label_map[l]});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LabeledEdge> certificate_under(const RootedPattern& pattern,
                                           const std::vector<int>& label_map) {
  std::vector<int> perm(pattern.vertex_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<LabeledEdge> best = relabel(pattern.edges, perm, label_map);
  if (perm.size() > 1) {
    while (std::next_permutation(perm.begin() + 1, perm.end())) {
      auto candidate = relabel(pattern.edges, perm, label_map);
      if (candidate < best) best = std::move(candidate);
    }
  }
  return best;
}

std::vector<int> identity_map(std::size_t size) {
  std::vector<int> map(size);
  std::iota(map.begin(), map.end(), 0);
  return map;
}

int label_bound(const std::vector<LabeledEdge>& edges) {
  int m = 0;
  for (const auto& e : edges) m = std::max(m, e[2] + 1);
  return m;
}

bool partial_injection_ok(const std::vector<LabeledEdge>& edges, int s, int t, int l) {
  for (const auto& e : edges) {
    if (e[2] != l) continue;
    if (e[0] == s || e[1] == t) return false;
  }
  return true;
}

struct Indexed {
  // out[l][v] / in[l][v]: neighbours along label l.
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<std::vector<int>>> in;
};

Indexed index_graph(const LabeledDigraph& graph) {
  Indexed idx;
  const std::size_t m = graph.label_count();
  idx.out.assign(m, std::vector<std::vector<int>>(graph.vertex_count));
  idx.in.assign(m, std::vector<std::vector<int>>(graph.vertex_count));
  for (const auto& [s, t, l] : graph.edges) {
    idx.out[l][s].push_back(t);
    idx.in[l][t].push_back(s);
  }
  return idx;
}

// Pattern vertices in BFS order from the root, each with the edge it was
// discovered through.
struct Step {
  int vertex;
  int parent;
  int label;
  bool forward;  ///< parent -> vertex
};

std::vector<Step> discovery_order(const RootedPattern& pattern) {
  std::vector<Step> order{{0, -1, -1, true}};
  std::vector<char> seen(pattern.vertex_count, 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int v = order[head].vertex;
    for (const auto& [s, t, l] : pattern.edges) {
      if (s == v && !seen[t]) {
        seen[t] = 1;
        order.push_back({t, v, l, true});
      } else if (t == v && !seen[s]) {
        seen[s] = 1;
        order.push_back({s, v, l, false});
      }
    }
  }
  return order;
}

bool embeds_at(const LabeledDigraph& graph, const Indexed& idx, const RootedPattern& pattern,
               const std::vector<Step>& order, int root) {
  const std::size_t k = pattern.vertex_count;
  std::vector<int> image(k, -1);
  std::vector<char> used(graph.vertex_count, 0);
  // Pattern edges to verify once both endpoints are placed, by step.
  std::vector<int> position(k);
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i].vertex] = static_cast<int>(i);
  std::vector<std::vector<LabeledEdge>> due(k);
  for (const auto& e : pattern.edges) {
    due[std::max(position[e[0]], position[e[1]])].push_back(e);
  }
  auto edges_hold = [&](std::size_t step) {
    for (const auto& [s, t, l] : due[step]) {
      if (!std::binary_search(graph.edges.begin(), graph.edges.end(),
                              LabeledEdge{image[s], image[t], l})) {
        return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> place = [&](std::size_t step) -> bool {
    if (step == order.size()) return true;
    const Step& st = order[step];
    const int from = image[st.parent];
    const auto& candidates = st.forward ? idx.out[st.label][from] : idx.in[st.label][from];
    for (int c : candidates) {
      if (used[c]) continue;
      image[st.vertex] = c;
      used[c] = 1;
      if (edges_hold(step) && place(step + 1)) return true;
      used[c] = 0;
    }
    image[st.vertex] = -1;
    return false;
  };

  image[0] = root;
  used[root] = 1;
  return edges_hold(0) && place(1);
}

}  // namespace

LabeledDigraph make_digraph(std::size_t vertex_count, std::vector<std::string> labels,
                            std::vector<LabeledEdge> edges) {
  check_edges(vertex_count, labels.size(), edges);
  sort_unique(edges);
  return LabeledDigraph{vertex_count, std::move(labels), std::move(edges)};
}

bool is_action_graph(const LabeledDigraph& graph) {
  const std::size_t n = graph.vertex_count;
  std::vector<std::size_t> out(n * graph.label_count(), 0);
  std::vector<std::size_t> in(n * graph.label_count(), 0);
  for (const auto& [s, t, l] : graph.edges) {
    ++out[l * n + s];
    ++in[l * n + t];
  }
  auto one = [](std::size_t d) { return d == 1; };
  return std::all_of(out.begin(), out.end(), one) && std::all_of(in.begin(), in.end(), one);
}

LabeledDigraph action_graph(const PermHomomorphism& psi) {
  if (psi.has_finite_source() || !psi.presented_source().is_free()) {
    throw DomainError("action graphs are defined for homomorphisms of free groups");
  }
  std::vector<LabeledEdge> edges;
  for (std::size_t i = 0; i < psi.generator_count(); ++i) {
    const Permutation& s = psi.generator_image(i);
    for (std::size_t v = 0; v < psi.degree(); ++v) {
      edges.push_back({static_cast<int>(v), s(static_cast<int>(v)), static_cast<int>(i)});
    }
  }
  return make_digraph(psi.degree(), {psi.generator_names().begin(), psi.generator_names().end()}, std::move(edges));
}

RootedPattern make_pattern(std::size_t vertex_count, std::vector<LabeledEdge> edges) {
  if (vertex_count == 0) throw DomainError("a rooted pattern needs a root");
  check_edges(vertex_count, static_cast<std::size_t>(label_bound(edges)), edges);
  sort_unique(edges);
  RootedPattern pattern{vertex_count, std::move(edges)};
  if (discovery_order(pattern).size() != vertex_count) {
    throw DomainError("rooted pattern is not connected");
  }
  return pattern;
}

std::vector<LabeledEdge> canonical_certificate(const RootedPattern& pattern) {
  return certificate_under(pattern, identity_map(static_cast<std::size_t>(label_bound(pattern.edges))));
}

Rational pattern_frequency(const LabeledDigraph& graph, const RootedPattern& pattern,
                           std::size_t bound) {
  if (pattern.vertex_count > bound) {
    throw DomainError("pattern has " + std::to_string(pattern.vertex_count) +
                      " vertices; bound is " + std::to_string(bound));
  }
  if (label_bound(pattern.edges) > static_cast<int>(graph.label_count())) {
    throw DomainError("pattern uses a label outside the graph's alphabet");
  }
  if (graph.vertex_count == 0) return Rational(1);
  const auto idx = index_graph(graph);
  const auto order = discovery_order(pattern);
  std::size_t hits = 0;
  for (std::size_t x = 0; x < graph.vertex_count; ++x) {
    if (embeds_at(graph, idx, pattern, order, static_cast<int>(x))) ++hits;
  }
  return make_rational(static_cast<std::int64_t>(hits),
                       static_cast<std::int64_t>(graph.vertex_count));
}

std::vector<WeightedPattern> enumerate_patterns(std::size_t label_count, std::size_t size_bound) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<WeightedPattern>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({label_count, size_bound}); it != cache.end()) return it->second;
  }
  if (size_bound > kDefaultPatternBound) {
    throw DomainError("pattern size bound exceeds " + std::to_string(kDefaultPatternBound));
  }
  const int m = static_cast<int>(label_count);

  // Growth from the root: add an edge between existing vertices or attach a
  // new vertex by one edge. Every connected pattern is reachable.
  std::map<std::pair<std::size_t, std::vector<LabeledEdge>>, RootedPattern> found;
  std::vector<RootedPattern> frontier;
  if (size_bound >= 1) {
    RootedPattern root;
    found.emplace(std::pair{std::size_t{1}, std::vector<LabeledEdge>{}}, root);
    frontier.push_back(root);
  }
  const auto labels = identity_map(label_count);
  auto visit = [&](RootedPattern p) {
    sort_unique(p.edges);
    auto cert = certificate_under(p, labels);
    auto key = std::pair{p.vertex_count, cert};
    if (found.count(key)) return;
    RootedPattern canonical{p.vertex_count, std::move(cert)};
    found.emplace(std::move(key), canonical);
    frontier.push_back(std::move(canonical));
  };
  while (!frontier.empty()) {
    RootedPattern p = std::move(frontier.back());
    frontier.pop_back();
    const int k = static_cast<int>(p.vertex_count);
    for (int l = 0; l < m; ++l) {
      for (int s = 0; s < k; ++s) {
        for (int t = 0; t < k; ++t) {
          if (!partial_injection_ok(p.edges, s, t, l)) continue;
          RootedPattern child = p;
          child.edges.push_back({s, t, l});
          visit(std::move(child));
        }
      }
      if (p.vertex_count < size_bound) {
        for (int s = 0; s < k; ++s) {
          if (partial_injection_ok(p.edges, s, k, l)) {
            RootedPattern child = p;
            ++child.vertex_count;
            child.edges.push_back({s, k, l});
            visit(std::move(child));
          }
          if (partial_injection_ok(p.edges, k, s, l)) {
            RootedPattern child = p;
            ++child.vertex_count;
            child.edges.push_back({k, s, l});
            visit(std::move(child));
          }
        }
      }
    }
  }

  struct Keyed {
    std::size_t vertex_count;
    std::vector<LabeledEdge> class_key;
    std::vector<LabeledEdge> cert;
    RootedPattern pattern;
  };
  std::vector<Keyed> keyed;
  for (auto& [key, pattern] : found) {
    std::vector<int> label_map = identity_map(label_count);
    std::vector<LabeledEdge> class_key = key.second;
    while (std::next_permutation(label_map.begin(), label_map.end())) {
      auto c = certificate_under(pattern, label_map);
      if (c < class_key) class_key = std::move(c);
    }
    keyed.push_back({key.first, std::move(class_key), key.second, pattern});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.vertex_count, a.class_key, a.cert) <
           std::tie(b.vertex_count, b.class_key, b.cert);
  });
  std::vector<WeightedPattern> result;
  std::size_t j = 0;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].vertex_count != keyed[i - 1].vertex_count ||
        keyed[i].class_key != keyed[i - 1].class_key) {
      ++j;
    }
    result.push_back({std::move(keyed[i].pattern), j});
  }
  std::lock_guard lock(mutex);
  cache.emplace(std::pair{label_count, size_bound}, result);
  return result;
}

StatDistance stat_distance_truncated(const LabeledDigraph& first, const LabeledDigraph& second,
                                     std::size_t size_bound) {
  if (first.labels != second.labels) throw DomainError("graphs use different label alphabets");
  if (!is_action_graph(first) || !is_action_graph(second)) {
    throw DomainError("statistical distance expects action graphs");
  }
  StatDistance result;
  result.value = Rational(0);
  for (const auto& wp : enumerate_patterns(first.label_count(), size_bound)) {
    PatternTerm term{wp.pattern, wp.index, pattern_frequency(first, wp.pattern),
                     pattern_frequency(second, wp.pattern)};
    const Rational diff = abs(term.first - term.second);
    if (diff != 0) {
      result.value += diff / Rational(BigInt(1) << static_cast<unsigned>(wp.index));
    }
    result.terms.push_back(std::move(term));
  }
  return result;
}

Rational bs_word_statistics(const PermHomomorphism& psi, std::span<const Word> fixed,
                            std::span<const Word> moved) {
  return bs_statistic(psi, fixed, moved);
}

// ---------------------------------------------------------------------------

SimpleGraph encode_to_simple(const LabeledDigraph& graph) {
  if (graph.label_count() > kMaxEncodedLabels) {
    throw DomainError("alphabet exceeds the encoding bound of " +
                      std::to_string(kMaxEncodedLabels) + " labels");
  }
  SimpleGraph out;
  int next = static_cast<int>(graph.vertex_count);
  auto link = [&](int a, int b) { out.edges.push_back({std::min(a, b), std::max(a, b)}); };
  auto pendant = [&](int anchor, int length) {
    int prev = anchor;
    for (int j = 0; j < length; ++j) {
      const int w = next++;
      link(prev, w);
      prev = w;
    }
  };
  for (const auto& [u, v, l] : graph.edges) {
    const int i = l + 1;
    const int t = next++;
    const int h = next++;
    link(u, t);
    link(t, h);
    link(h, v);
    pendant(t, 2 * i);
    pendant(h, 2 * i + 1);
  }
  out.vertex_count = static_cast<std::size_t>(next);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

LabeledDigraph decode_simple(const SimpleGraph& graph, std::size_t label_count) {
  const std::size_t n = graph.vertex_count;
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : graph.edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n ||
        a == b) {
      throw DomainError("not a simple graph");
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  // Pendant chains: walk in from every leaf through degree-2 vertices.
  std::vector<char> in_pendant(n, 0);
  std::vector<int> pendant_length(n, 0);
  std::vector<int> pendant_start(n, -1);
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    if (adj[leaf].size() != 1) continue;
    std::vector<int> chain{static_cast<int>(leaf)};
    int prev = static_cast<int>(leaf);
    int cur = adj[leaf][0];
    while (adj[cur].size() == 2) {
      chain.push_back(cur);
      const int step = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = step;
    }
    if (adj[cur].size() == 1) throw DomainError("path component is not an encoding");
    if (chain.size() < 2) continue;  // an original vertex of degree one
    if (pendant_length[cur] != 0) throw DomainError("anchor with two pendant paths");
    pendant_length[cur] = static_cast<int>(chain.size());
    pendant_start[cur] = chain.back();
    for (int w : chain) in_pendant[w] = 1;
  }

  auto is_anchor = [&](int w) { return pendant_length[w] != 0; };
  std::vector<int> original_id(n, -1);
  std::size_t originals = 0;
  for (std::size_t w = 0; w < n; ++w) {
    if (!in_pendant[w] && !is_anchor(static_cast<int>(w))) original_id[w] = static_cast<int>(originals++);
  }

  std::vector<LabeledEdge> edges;
  std::size_t expected_vertices = originals;
  std::size_t expected_edges = 0;
  for (std::size_t w = 0; w < n; ++w) {
    const int t = static_cast<int>(w);
    if (!is_anchor(t) || pendant_length[t] % 2 != 0) continue;
    const int i = pendant_length[t] / 2;
    if (i < 1 || static_cast<std::size_t>(i) > label_count || adj[t].size() != 3) {
      throw DomainError("malformed tail anchor");
    }
    int u = -1;
    int h = -1;
    for (int x : adj[t]) {
      if (x == pendant_start[t]) continue;
      if (is_anchor(x)) {
        h = x;
      } else {
        u = x;
      }
    }
    if (u < 0 || h < 0 || original_id[u] < 0 || pendant_length[h] != 2 * i + 1 ||
        adj[h].size() != 3) {
      throw DomainError("malformed edge gadget");
    }
    int v = -1;
    for (int x : adj[h]) {
      if (x != t && x != pendant_start[h]) v = x;
    }
    if (v < 0 || original_id[v] < 0) throw DomainError("malformed edge gadget");
    edges.push_back({original_id[u], original_id[v], i - 1});
    expected_vertices += 4 * static_cast<std::size_t>(i) + 3;
    expected_edges += 4 * static_cast<std::size_t>(i) + 4;
  }
  if (expected_vertices != n || expected_edges != graph.edges.size()) {
    throw DomainError("graph is not an encoding of a labeled digraph");
  }
  std::vector<std::string> labels;
  for (std::size_t l = 1; l <= label_count; ++l) labels.push_back("x" + std::to_string(l));
  return make_digraph(originals, std::move(labels), std::move(edges));
}

std::size_t max_degree(const SimpleGraph& graph) {
  std::vector<std::size_t> deg(graph.vertex_count, 0);
  for (const auto& [a, b] : graph.edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::size_t max_degree(const LabeledDigraph& graph) {
  std::vector<std::size_t> deg(graph.vertex_count, 0);
  for (const auto& [s, t, l] : graph.edges) {
    ++deg[s];
    ++deg[t];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

nlohmann::json to_json(const LabeledDigraph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [s, t, l] : graph.edges) edges.push_back({s + 1, t + 1, graph.labels[l]});
  return {{"vertices", graph.vertex_count}, {"labels", graph.labels}, {"edges", edges}};
}

nlohmann::json to_json(const SimpleGraph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : graph.edges) edges.push_back({a + 1, b + 1});
  return {{"vertices", graph.vertex_count}, {"edges", edges}};
}

}  // namespace permstab
