#include "permstab/stability.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "permstab/rep_theory.hpp"

namespace permstab {

namespace {

using PartialImages = std::vector<std::optional<Permutation>>;

// Closes the known images over the subgroup generated by `generators`
// (whose images must be known). Returns false on an inconsistency.
bool close_images(const FiniteGroup& g, PartialImages& images, std::span<const int> generators,
                  std::size_t degree) {
  std::vector<char> visited(g.order(), 0);
  std::vector<int> queue{g.identity()};
  visited[g.identity()] = 1;
  if (!images[g.identity()]) images[g.identity()] = Permutation::identity(degree);
  if (!images[g.identity()]->is_identity()) return false;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (int s : generators) {
      const int y = g.multiply(x, s);
      Permutation candidate = *images[x] * *images[s];
      if (images[y]) {
        if (*images[y] != candidate) return false;
      } else {
        images[y] = std::move(candidate);
      }
      if (!visited[y]) {
        visited[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return true;
}

// Element conjugacy classes of G: class id per element.
std::vector<int> element_classes(const FiniteGroup& g) {
  std::vector<int> cls(g.order(), -1);
  int next = 0;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (cls[x] >= 0) continue;
    for (std::size_t y = 0; y < g.order(); ++y) {
      cls[g.conjugate(static_cast<int>(x), static_cast<int>(y))] = next;
    }
    ++next;
  }
  return cls;
}

// Images of G-conjugate elements are conjugate in S_n, so they share a
// cycle type.
bool classes_consistent(const PartialImages& images, const std::vector<int>& cls) {
  std::map<int, std::vector<std::size_t>> type_of_class;
  for (std::size_t x = 0; x < images.size(); ++x) {
    if (!images[x]) continue;
    auto type = cycle_type(*images[x]);
    auto [it, inserted] = type_of_class.emplace(cls[x], type);
    if (!inserted && it->second != type) return false;
  }
  return true;
}

std::size_t assigned_count(const PartialImages& images) {
  return static_cast<std::size_t>(
      std::count_if(images.begin(), images.end(), [](const auto& p) { return p.has_value(); }));
}

PermHomomorphism finish(const GroupPtr& group, std::size_t degree, PartialImages images) {
  std::vector<Permutation> full;
  full.reserve(images.size());
  for (auto& p : images) full.push_back(std::move(*p));
  return PermHomomorphism::unchecked(group, degree, std::move(full));
}

// Cycles of a including fixed points, grouped by length.
std::map<std::size_t, std::vector<std::vector<int>>> cycles_by_length(const Permutation& a) {
  std::map<std::size_t, std::vector<std::vector<int>>> groups;
  std::vector<char> seen(a.degree(), 0);
  for (std::size_t start = 0; start < a.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int x = static_cast<int>(start); !seen[x]; x = a(x)) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    groups[cycle.size()].push_back(std::move(cycle));
  }
  return groups;
}

// Calls visit(images) for every element of C(a). c maps cycle i of a given
// length onto cycle perm[i], rotated by rot[i].
void for_each_centralizer_element(const Permutation& a,
                                  const std::function<void(const std::vector<int>&)>& visit) {
  const auto groups_map = cycles_by_length(a);
  std::vector<const std::vector<std::vector<int>>*> groups;
  for (const auto& [len, cycles] : groups_map) groups.push_back(&cycles);
  std::vector<int> images(a.degree(), 0);

  std::function<void(std::size_t)> recurse = [&](std::size_t gi) {
    if (gi == groups.size()) {
      visit(images);
      return;
    }
    const auto& cycles = *groups[gi];
    const std::size_t k = cycles.size();
    const std::size_t len = cycles.front().size();
    std::vector<int> target(k);
    std::iota(target.begin(), target.end(), 0);
    do {
      std::vector<std::size_t> rot(k, 0);
      while (true) {
        for (std::size_t i = 0; i < k; ++i) {
          const auto& from = cycles[i];
          const auto& to = cycles[target[i]];
          for (std::size_t t = 0; t < len; ++t) images[from[t]] = to[(t + rot[i]) % len];
        }
        recurse(gi + 1);
        std::size_t i = 0;
        while (i < k && ++rot[i] == len) rot[i++] = 0;
        if (i == k) break;
      }
    } while (std::next_permutation(target.begin(), target.end()));
  };
  recurse(0);
}

Permutation greedy_centralizing(const Permutation& a, const Permutation& q) {
  const auto groups = cycles_by_length(a);
  // Position of every point inside its cycle: (cycle index within its
  // length group, offset).
  std::vector<std::pair<std::size_t, std::size_t>> where(a.degree());
  for (const auto& [len, cycles] : groups) {
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      for (std::size_t t = 0; t < len; ++t) where[cycles[i][t]] = {i, t};
    }
  }
  std::vector<int> images(a.degree(), -1);
  for (const auto& [len, cycles] : groups) {
    // score[(i, j, r)] = #{t : q(C_i[t]) = C_j[t + r]}
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> score;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      for (std::size_t t = 0; t < len; ++t) {
        const int target = q(cycles[i][t]);
        const auto& target_cycles = groups.at(len);
        const auto [j, u] = where[target];
        if (j < target_cycles.size() && target_cycles[j].size() == len &&
            target_cycles[j][u] == target) {
          ++score[{i, j, (u + len - t) % len}];
        }
      }
    }
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> ranked;
    for (const auto& [key, s] : score) {
      ranked.emplace_back(s, std::get<0>(key), std::get<1>(key), std::get<2>(key));
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
    std::vector<char> from_used(cycles.size(), 0);
    std::vector<char> to_used(cycles.size(), 0);
    auto assign = [&](std::size_t i, std::size_t j, std::size_t r) {
      from_used[i] = to_used[j] = 1;
      for (std::size_t t = 0; t < len; ++t) images[cycles[i][t]] = cycles[j][(t + r) % len];
    };
    for (const auto& [s, i, j, r] : ranked) {
      if (!from_used[i] && !to_used[j]) assign(i, j, r);
    }
    std::size_t j = 0;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      if (from_used[i]) continue;
      while (to_used[j]) ++j;
      assign(i, j, 0);
    }
  }
  return Permutation(std::move(images));
}

}  // namespace

// ---------------------------------------------------------------------------

SmallConjugator small_conjugator(const PermHomomorphism& phi1, const PermHomomorphism& phi2) {
  if (!phi1.has_finite_source() || !phi2.has_finite_source()) {
    throw DomainError("small_conjugator requires a finite source group");
  }
  if (!is_conjugate(phi1, phi2).conjugate) {
    throw DomainError("homomorphisms are not conjugate");
  }
  const FiniteGroup& h = phi1.finite_source();
  const std::size_t n = phi1.degree();

  SmallConjugator result;
  result.epsilon = Rational(0);
  std::vector<int> disagreement;
  for (std::size_t x = 0; x < n; ++x) {
    const int point = static_cast<int>(x);
    bool agree = true;
    for (std::size_t e = 0; e < h.order() && agree; ++e) {
      agree = phi1.image(static_cast<int>(e))(point) == phi2.image(static_cast<int>(e))(point);
    }
    (agree ? result.agreement : disagreement).push_back(point);
  }
  for (std::size_t e = 0; e < h.order(); ++e) {
    result.epsilon = std::max(result.epsilon, hamming_distance(phi1.image(static_cast<int>(e)),
                                                               phi2.image(static_cast<int>(e))));
  }

  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  if (!disagreement.empty()) {
    ConjugacyResult local;
    try {
      local = is_conjugate(restrict_to_points(phi1, disagreement),
                           restrict_to_points(phi2, disagreement));
    } catch (const DomainError& e) {
      throw InternalError(std::string("agreement complement is not invariant: ") + e.what());
    }
    if (!local.conjugate) {
      throw InternalError("restrictions to the disagreement set are not conjugate");
    }
    for (std::size_t i = 0; i < disagreement.size(); ++i) {
      p[disagreement[i]] = disagreement[(*local.witness)(static_cast<int>(i))];
    }
  }
  result.conjugator = Permutation(std::move(p));
  result.distance = hamming_distance(result.conjugator, Permutation::identity(n));

  const Rational bound = Rational(static_cast<long long>(h.order())) * result.epsilon;
  if (result.distance > bound) throw InternalError("small conjugator exceeds |H| * epsilon");
  return result;
}

std::optional<MinConjugator> min_conjugator_distance(const PermHomomorphism& phi1,
                                                     const PermHomomorphism& phi2) {
  if (!same_source(phi1, phi2)) throw DomainError("homomorphisms have different sources");
  if (phi1.degree() != phi2.degree()) throw DomainError("homomorphisms have different degrees");
  const std::size_t n = phi1.degree();
  if (n > kMaxBruteForceDegree) {
    throw DomainError("exhaustive conjugator search is limited to degree " +
                      std::to_string(kMaxBruteForceDegree));
  }
  std::vector<std::pair<Permutation, Permutation>> constraints;
  for (std::size_t k = 0; k < phi1.generator_count(); ++k) {
    constraints.emplace_back(phi1.generator_image(k), phi2.generator_image(k));
  }

  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::optional<std::size_t> best;
  std::vector<int> best_images;
  do {
    // p * a * p^-1 = b  <=>  p(a(x)) = b(p(x)) for all x.
    bool ok = true;
    for (const auto& [a, b] : constraints) {
      for (std::size_t x = 0; x < n && ok; ++x) ok = p[a(static_cast<int>(x))] == b(p[x]);
      if (!ok) break;
    }
    if (!ok) continue;
    std::size_t moved = 0;
    for (std::size_t x = 0; x < n; ++x) moved += p[x] != static_cast<int>(x);
    // Lexicographic enumeration: the first minimizer is the least.
    if (!best || moved < *best) {
      best = moved;
      best_images = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  if (!best) return std::nullopt;
  MinConjugator result{n == 0 ? Rational(0)
                              : make_rational(static_cast<std::int64_t>(*best),
                                              static_cast<std::int64_t>(n)),
                       Permutation(std::move(best_images))};
  return result;
}

// ---------------------------------------------------------------------------

std::vector<PermHomomorphism> enumerate_homomorphisms(const GroupPtr& group, std::size_t degree) {
  const FiniteGroup& g = *group;
  const auto generators = g.generators();
  const auto candidates = all_permutations(degree);
  std::vector<std::vector<const Permutation*>> options(generators.size());
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const std::size_t ord = g.element_order(generators[k]);
    for (const auto& p : candidates) {
      if (ord % p.order() == 0) options[k].push_back(&p);
    }
  }
  std::vector<PermHomomorphism> result;
  if (generators.empty()) {
    result.push_back(trivial_action(group, degree));
    return result;
  }
  std::vector<Permutation> chosen(generators.size());
  std::function<void(std::size_t, const PartialImages&)> recurse =
      [&](std::size_t k, const PartialImages& images) {
        if (k == generators.size()) {
          result.push_back(finish(group, degree, images));
          return;
        }
        for (const Permutation* p : options[k]) {
          PartialImages next = images;
          if (next[generators[k]] && *next[generators[k]] != *p) continue;
          next[generators[k]] = *p;
          if (!close_images(g, next, generators.subspan(0, k + 1), degree)) continue;
          recurse(k + 1, next);
        }
      };
  recurse(0, PartialImages(g.order()));
  return result;
}

std::optional<PermHomomorphism> has_extension(const GroupPtr& group, const Subgroup& subgroup,
                                              const PermHomomorphism& phi,
                                              std::size_t max_degree) {
  const FiniteGroup& g = *group;
  const FiniteGroup sub = subgroup_as_group(g, subgroup);
  if (!(phi.finite_source() == sub)) {
    throw DomainError("homomorphism source does not match the subgroup");
  }
  const std::size_t n = phi.degree();
  if (n > max_degree) {
    throw DomainError("extension search degree " + std::to_string(n) + " exceeds bound " +
                      std::to_string(max_degree));
  }
  if (subgroup.order() == g.order()) {
    std::vector<Permutation> images(g.order());
    for (std::size_t i = 0; i < subgroup.order(); ++i) {
      images[subgroup.members[i]] = phi.image(static_cast<int>(i));
    }
    return PermHomomorphism::unchecked(group, n, std::move(images));
  }

  PartialImages start(g.order());
  std::vector<int> known_generators;
  for (std::size_t i = 0; i < subgroup.order(); ++i) {
    start[subgroup.members[i]] = phi.image(static_cast<int>(i));
  }
  for (int s : sub.generators()) known_generators.push_back(subgroup.members[s]);

  const auto cls = element_classes(g);
  if (!classes_consistent(start, cls)) return std::nullopt;
  const auto candidates = all_permutations(n);

  std::function<std::optional<PartialImages>(const PartialImages&, std::vector<int>&)> search =
      [&](const PartialImages& images, std::vector<int>& gens) -> std::optional<PartialImages> {
    if (assigned_count(images) == g.order()) return images;
    int next = -1;
    for (int s : g.generators()) {
      if (!images[s]) {
        next = s;
        break;
      }
    }
    if (next < 0) throw InternalError("generators assigned but closure incomplete");
    const std::size_t ord = g.element_order(next);

    // Known powers of the new generator pin down powers of its image.
    std::vector<std::pair<std::size_t, int>> known_powers;
    int power_element = next;
    for (std::size_t j = 1; j < ord; ++j) {
      if (images[power_element]) known_powers.emplace_back(j, power_element);
      power_element = g.multiply(power_element, next);
    }
    std::optional<std::vector<std::size_t>> required_type;
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (images[x] && cls[x] == cls[next]) {
        required_type = cycle_type(*images[x]);
        break;
      }
    }

    for (const auto& sigma : candidates) {
      if (ord % sigma.order() != 0) continue;
      if (required_type && cycle_type(sigma) != *required_type) continue;
      bool powers_ok = true;
      for (const auto& [j, element] : known_powers) {
        if (power(sigma, static_cast<long long>(j)) != *images[element]) {
          powers_ok = false;
          break;
        }
      }
      if (!powers_ok) continue;
      PartialImages trial = images;
      trial[next] = sigma;
      gens.push_back(next);
      if (close_images(g, trial, gens, n) && classes_consistent(trial, cls)) {
        if (auto done = search(trial, gens)) return done;
      }
      gens.pop_back();
    }
    return std::nullopt;
  };

  PartialImages closed = start;
  if (!close_images(g, closed, known_generators, n)) {
    throw DomainError("restricted map is not a homomorphism of the subgroup");
  }
  auto found = search(closed, known_generators);
  if (!found) return std::nullopt;
  auto hom = finish(group, n, std::move(*found));
  if (!check_homomorphism(hom).ok) throw InternalError("extension search produced a non-homomorphism");
  return hom;
}

std::optional<Subgroup> find_normal_complement(const FiniteGroup& group, const Subgroup& subgroup) {
  if (!is_subgroup(group, subgroup.members)) throw DomainError("not a subgroup of the group");
  for (const auto& k : group.subgroups()) {
    if (k.order() * subgroup.order() != group.order()) continue;
    bool trivial_meet = true;
    for (int x : k.members) {
      if (x != group.identity() && subgroup.contains(x)) {
        trivial_meet = false;
        break;
      }
    }
    if (trivial_meet && is_normal(group, k)) return k;
  }
  return std::nullopt;
}

std::vector<int> retraction_map(const FiniteGroup& group, const Subgroup& subgroup,
                                const Subgroup& complement) {
  std::vector<int> map(group.order(), -1);
  for (int k : complement.members) {
    for (int h : subgroup.members) {
      const int g = group.multiply(k, h);
      if (map[g] >= 0) throw DomainError("not a complement: K*H is not a direct factorization");
      map[g] = h;
    }
  }
  if (std::find(map.begin(), map.end(), -1) != map.end()) {
    throw DomainError("not a complement: K*H does not cover the group");
  }
  return map;
}

// ---------------------------------------------------------------------------

AmalgamHom::AmalgamHom(PermHomomorphism first, PermHomomorphism second,
                       AmalgamEmbedding embedding)
    : first_(std::move(first)), second_(std::move(second)), embedding_(std::move(embedding)) {
  for (const auto& name : first_.generator_names()) names_.push_back(name);
  for (const auto& name : second_.generator_names()) {
    if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
      throw DomainError("generator name '" + name + "' appears in both factors");
    }
    names_.push_back(name);
  }
}

Permutation AmalgamHom::evaluate(const Word& word) const {
  const int split = static_cast<int>(first_.generator_count());
  Permutation value = Permutation::identity(degree());
  for (int letter : word) {
    const int index = std::abs(letter);
    if (letter == 0 || index > static_cast<int>(names_.size())) {
      throw DomainError("word letter " + std::to_string(letter) + " is not a generator");
    }
    const Permutation s = index <= split
                              ? first_.generator_image(static_cast<std::size_t>(index - 1))
                              : second_.generator_image(static_cast<std::size_t>(index - 1 - split));
    value = value * (letter > 0 ? s : s.inverse());
  }
  return value;
}

std::optional<FpGroup> AmalgamHom::presentation() const {
  if (first_.has_finite_source() || second_.has_finite_source()) return std::nullopt;
  const int split = static_cast<int>(first_.generator_count());
  auto shift = [split](Word w) {
    for (int& letter : w) letter += letter > 0 ? split : -split;
    return w;
  };
  std::vector<Word> relators = first_.presented_source().relators();
  for (const auto& r : second_.presented_source().relators()) relators.push_back(shift(r));
  for (std::size_t z = 0; z < embedding_.h_generators.size(); ++z) {
    Word identify = embedding_.into_first[z];
    Word back = inverse_word(shift(embedding_.into_second[z]));
    identify.insert(identify.end(), back.begin(), back.end());
    relators.push_back(std::move(identify));
  }
  return FpGroup(names_, std::move(relators));
}

AmalgamMismatch::AmalgamMismatch(std::string h_generator, Permutation first_image,
                                 Permutation second_image)
    : DomainError("factors disagree on H generator '" + h_generator + "': " +
                  to_cycle_string(first_image) + " vs " + to_cycle_string(second_image)),
      h_generator_(std::move(h_generator)),
      first_image_(std::move(first_image)),
      second_image_(std::move(second_image)) {}

AmalgamHom amalgamated_hom(const PermHomomorphism& psi1, const PermHomomorphism& psi2,
                           const AmalgamEmbedding& embedding) {
  if (psi1.degree() != psi2.degree()) {
    throw DomainError("factor homomorphisms have different degrees");
  }
  const std::size_t h = embedding.h_generators.size();
  if (embedding.into_first.size() != h || embedding.into_second.size() != h) {
    throw DomainError("embedding words do not match the H generators");
  }
  for (std::size_t z = 0; z < h; ++z) {
    Permutation a = evaluate_word(psi1, embedding.into_first[z]);
    Permutation b = evaluate_word(psi2, embedding.into_second[z]);
    if (a != b) throw AmalgamMismatch(embedding.h_generators[z], std::move(a), std::move(b));
  }
  return AmalgamHom(psi1, psi2, embedding);
}

// ---------------------------------------------------------------------------

std::size_t replication_count(const PermHomomorphism& phi, const PermHomomorphism& psi) {
  if (!same_source(phi, psi)) throw DomainError("homomorphisms have different sources");
  const auto a = multiplicity_vector(phi);
  const auto b = multiplicity_vector(psi);
  std::optional<std::size_t> s;
  for (std::size_t c = 0; c < a.counts.size(); ++c) {
    if (a.counts[c] > 0 && b.counts[c] == 0) {
      throw DomainError("replication count undefined: an orbit class of phi is absent from psi");
    }
    if (b.counts[c] > 0) {
      const std::size_t ratio = a.counts[c] / b.counts[c];
      s = s ? std::min(*s, ratio) : ratio;
    }
  }
  if (!s) throw DomainError("replication count undefined for the empty action");
  return *s;
}

PermHomomorphism compose_lift(const PermHomomorphism& psi, std::size_t copies,
                              const PermHomomorphism& eta) {
  if (!same_source(psi, eta)) throw DomainError("lift pieces have different sources");
  if (copies == 0) return eta;
  return direct_sum(replicate(psi, copies), eta);
}

// ---------------------------------------------------------------------------

BigInt centralizer_order(const Permutation& a) {
  BigInt order = 1;
  for (const auto& [len, cycles] : cycles_by_length(a)) {
    for (std::size_t i = 1; i <= cycles.size(); ++i) order *= BigInt(i) * BigInt(len);
  }
  return order;
}

std::vector<Permutation> centralizer_elements(const Permutation& a, std::size_t limit) {
  if (centralizer_order(a) > BigInt(limit)) {
    throw DomainError("centralizer larger than enumeration limit");
  }
  std::vector<Permutation> out;
  for_each_centralizer_element(a, [&](const std::vector<int>& images) { out.emplace_back(images); });
  std::sort(out.begin(), out.end());
  return out;
}

CorrectionReport centralizer_correct(const Permutation& coefficient, const Permutation& almost,
                                     CorrectionMode mode) {
  if (coefficient.degree() != almost.degree()) throw DomainError("degree mismatch");
  const std::size_t n = coefficient.degree();
  CorrectionReport report;
  const Permutation commutator =
      coefficient * almost * coefficient.inverse() * almost.inverse();
  report.input_defect = hamming_distance(commutator, Permutation::identity(n));
  report.centralizer_order = centralizer_order(coefficient);

  if (mode == CorrectionMode::kExact &&
      report.centralizer_order <= BigInt(kExactCentralizerLimit)) {
    std::optional<std::size_t> best;
    std::vector<int> best_images;
    for_each_centralizer_element(coefficient, [&](const std::vector<int>& images) {
      std::size_t d = 0;
      for (std::size_t x = 0; x < n; ++x) d += images[x] != almost(static_cast<int>(x));
      if (!best || d < *best || (d == *best && images < best_images)) {
        best = d;
        best_images = images;
      }
    });
    report.corrected = Permutation(std::move(best_images));
    report.mode_used = CorrectionMode::kExact;
  } else {
    report.corrected = greedy_centralizing(coefficient, almost);
    report.mode_used = CorrectionMode::kHeuristic;
  }
  if (coefficient * report.corrected != report.corrected * coefficient) {
    throw InternalError("corrected permutation does not centralize the coefficient");
  }
  report.distance = hamming_distance(almost, report.corrected);
  return report;
}

}  // namespace permstab
