#include "permstab/homomorphism.hpp"

#include <algorithm>
#include <map>

#include "permstab/error.hpp"

namespace permstab {

namespace {

void require_degree(std::span<const Permutation> images, std::size_t degree) {
  for (const auto& p : images) {
    if (p.degree() != degree) {
      throw DomainError("image of degree " + std::to_string(p.degree()) +
                        " in a homomorphism of degree " + std::to_string(degree));
    }
  }
}

}  // namespace

std::optional<std::vector<Permutation>> extend_generator_images(
    const FiniteGroup& group, std::span<const Permutation> generator_images, HomCheck* check) {
  const auto generators = group.generators();
  if (generator_images.size() != generators.size()) {
    throw DomainError("expected " + std::to_string(generators.size()) +
                      " generator images, got " + std::to_string(generator_images.size()));
  }
  const std::size_t degree = generator_images.empty() ? 0 : generator_images.front().degree();
  require_degree(generator_images, degree);

  std::vector<std::optional<Permutation>> images(group.order());
  std::vector<int> queue{group.identity()};
  images[group.identity()] = Permutation::identity(degree);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const int y = group.multiply(x, generators[k]);
      Permutation candidate = *images[x] * generator_images[k];
      if (!images[y]) {
        images[y] = std::move(candidate);
        queue.push_back(y);
      } else if (*images[y] != candidate) {
        if (check) {
          check->ok = false;
          check->witness = "h(" + std::to_string(x) + "*" + std::string(group.generator_names()[k]) +
                           ") != h(" + std::to_string(x) + ")h(" +
                           std::string(group.generator_names()[k]) + ")";
        }
        return std::nullopt;
      }
    }
  }
  std::vector<Permutation> result;
  result.reserve(group.order());
  for (auto& p : images) result.push_back(std::move(*p));
  if (check) *check = HomCheck{};
  return result;
}

HomCheck check_generator_images(const FiniteGroup& group,
                                std::span<const Permutation> generator_images) {
  HomCheck check;
  extend_generator_images(group, generator_images, &check);
  return check;
}

HomCheck check_relators(const FpGroup& group, std::span<const Permutation> generator_images) {
  if (generator_images.size() != group.generator_count()) {
    throw DomainError("expected " + std::to_string(group.generator_count()) +
                      " generator images, got " + std::to_string(generator_images.size()));
  }
  const std::size_t degree = generator_images.empty() ? 0 : generator_images.front().degree();
  require_degree(generator_images, degree);
  for (std::size_t r = 0; r < group.relators().size(); ++r) {
    Permutation value = Permutation::identity(degree);
    for (int letter : group.relators()[r]) {
      const auto& s = generator_images[static_cast<std::size_t>(std::abs(letter)) - 1];
      value = value * (letter > 0 ? s : s.inverse());
    }
    if (!value.is_identity()) {
      return HomCheck{false, "relator " + format_word(group.relators()[r], group.generator_names()) +
                                 " evaluates to " + to_cycle_string(value)};
    }
  }
  return HomCheck{};
}

PermHomomorphism PermHomomorphism::from_generator_images(
    GroupPtr group, std::size_t degree, std::vector<Permutation> generator_images) {
  require_degree(generator_images, degree);
  HomCheck check;
  auto images = extend_generator_images(*group, generator_images, &check);
  if (!images) throw DomainError("not a homomorphism: " + check.witness);
  // A group with no generators is trivial; its single image is the identity
  // of the requested degree.
  if (generator_images.empty()) images->assign(group->order(), Permutation::identity(degree));
  return unchecked(std::move(group), degree, std::move(*images));
}

PermHomomorphism PermHomomorphism::from_element_images(GroupPtr group, std::size_t degree,
                                                       std::vector<Permutation> element_images) {
  if (element_images.size() != group->order()) {
    throw DomainError("expected one image per group element");
  }
  require_degree(element_images, degree);
  auto hom = unchecked(std::move(group), degree, std::move(element_images));
  if (auto check = check_homomorphism(hom); !check.ok) {
    throw DomainError("not a homomorphism: " + check.witness);
  }
  return hom;
}

PermHomomorphism PermHomomorphism::from_presentation(FpGroupPtr group, std::size_t degree,
                                                     std::vector<Permutation> generator_images) {
  require_degree(generator_images, degree);
  if (auto check = check_relators(*group, generator_images); !check.ok) {
    throw DomainError("not a homomorphism: " + check.witness);
  }
  return unchecked(std::move(group), degree, std::move(generator_images));
}

PermHomomorphism PermHomomorphism::unchecked(GroupPtr group, std::size_t degree,
                                             std::vector<Permutation> element_images) {
  PermHomomorphism hom;
  hom.source_ = std::move(group);
  hom.degree_ = degree;
  hom.images_ = std::move(element_images);
  return hom;
}

PermHomomorphism PermHomomorphism::unchecked(FpGroupPtr group, std::size_t degree,
                                             std::vector<Permutation> generator_images) {
  PermHomomorphism hom;
  hom.source_ = std::move(group);
  hom.degree_ = degree;
  hom.images_ = std::move(generator_images);
  return hom;
}

const FiniteGroup& PermHomomorphism::finite_source() const { return *finite_source_ptr(); }

const GroupPtr& PermHomomorphism::finite_source_ptr() const {
  if (!has_finite_source()) throw DomainError("homomorphism source is not a finite group");
  return std::get<GroupPtr>(source_);
}

const FpGroup& PermHomomorphism::presented_source() const { return *presented_source_ptr(); }

const FpGroupPtr& PermHomomorphism::presented_source_ptr() const {
  if (has_finite_source()) throw DomainError("homomorphism source is not a presented group");
  return std::get<FpGroupPtr>(source_);
}

std::span<const std::string> PermHomomorphism::generator_names() const {
  if (has_finite_source()) return finite_source().generator_names();
  return presented_source().generator_names();
}

const Permutation& PermHomomorphism::image(int element) const {
  if (!finite_source().is_element(element)) {
    throw DomainError("element " + std::to_string(element) + " is not in the source group");
  }
  return images_[static_cast<std::size_t>(element)];
}

Permutation PermHomomorphism::generator_image(std::size_t index) const {
  if (index >= generator_count()) throw DomainError("generator index out of range");
  if (has_finite_source()) return images_[finite_source().generators()[index]];
  return images_[index];
}

Permutation evaluate_word(const PermHomomorphism& hom, const Word& word) {
  Permutation value = Permutation::identity(hom.degree());
  for (int letter : word) {
    const std::size_t index = static_cast<std::size_t>(std::abs(letter));
    if (letter == 0 || index > hom.generator_count()) {
      throw DomainError("word letter " + std::to_string(letter) + " is not a generator");
    }
    const Permutation s = hom.generator_image(index - 1);
    value = value * (letter > 0 ? s : s.inverse());
  }
  return value;
}

HomCheck check_homomorphism(const PermHomomorphism& hom) {
  if (!hom.has_finite_source()) return check_relators(hom.presented_source(), hom.images());
  const FiniteGroup& g = hom.finite_source();
  const auto& images = hom.images();
  if (images.size() != g.order()) return HomCheck{false, "image count differs from group order"};
  for (const auto& p : images) {
    if (p.degree() != hom.degree()) return HomCheck{false, "image of wrong degree"};
  }
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      const int ab = g.multiply(static_cast<int>(a), static_cast<int>(b));
      if (images[ab] != images[a] * images[b]) {
        return HomCheck{false, "h(" + std::to_string(a) + "*" + std::to_string(b) + ") != h(" +
                                   std::to_string(a) + ")h(" + std::to_string(b) + ")"};
      }
    }
  }
  return HomCheck{};
}

bool same_source(const PermHomomorphism& a, const PermHomomorphism& b) {
  if (a.has_finite_source() != b.has_finite_source()) return false;
  if (a.has_finite_source()) {
    return a.finite_source_ptr() == b.finite_source_ptr() || a.finite_source() == b.finite_source();
  }
  const FpGroup& x = a.presented_source();
  const FpGroup& y = b.presented_source();
  return &x == &y || (std::equal(x.generator_names().begin(), x.generator_names().end(),
                                 y.generator_names().begin(), y.generator_names().end()) &&
                      x.relators() == y.relators());
}

PermutationGroup group_from_permutations(std::span<const Permutation> generators,
                                         std::vector<std::string> generator_names,
                                         std::size_t bound) {
  if (generators.empty()) throw DomainError("need at least one generator to fix the degree");
  const std::size_t degree = generators.front().degree();
  require_degree(generators, degree);

  std::vector<Permutation> elements{Permutation::identity(degree)};
  std::map<Permutation, int> index{{elements.front(), 0}};
  std::vector<std::vector<int>> right_mult;  // right_mult[x][k] = id of x*gen_k
  for (std::size_t head = 0; head < elements.size(); ++head) {
    std::vector<int> row;
    for (const auto& s : generators) {
      Permutation y = elements[head] * s;
      auto [it, inserted] = index.emplace(y, static_cast<int>(elements.size()));
      if (inserted) {
        if (elements.size() >= bound) {
          throw DomainError("generated group exceeds order bound " + std::to_string(bound));
        }
        elements.push_back(std::move(y));
      }
      row.push_back(it->second);
    }
    right_mult.push_back(std::move(row));
  }

  const std::size_t n = elements.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(elements[a] * elements[b]);
  }
  std::vector<int> generator_ids;
  for (const auto& s : generators) generator_ids.push_back(index.at(s));

  auto group = std::make_shared<const FiniteGroup>(FiniteGroup::from_trusted_table(
      std::move(table), std::move(generator_ids), std::move(generator_names)));
  auto natural = PermHomomorphism::unchecked(group, degree, std::move(elements));
  return PermutationGroup{std::move(group), std::move(natural)};
}

PermHomomorphism coset_action(GroupPtr group, const Subgroup& subgroup) {
  const FiniteGroup& g = *group;
  if (!is_subgroup(g, subgroup.members)) throw DomainError("not a subgroup of the group");

  // coset_of[x] = index of the left coset xN.
  std::vector<int> coset_of(g.order(), -1);
  std::vector<int> representative;
  auto add_coset = [&](int x) {
    const int id = static_cast<int>(representative.size());
    representative.push_back(x);
    for (int n : subgroup.members) coset_of[g.multiply(x, n)] = id;
  };
  add_coset(g.identity());
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset_of[x] < 0) add_coset(static_cast<int>(x));
  }

  const std::size_t degree = representative.size();
  std::vector<Permutation> images;
  images.reserve(g.order());
  for (std::size_t e = 0; e < g.order(); ++e) {
    std::vector<int> points(degree);
    for (std::size_t c = 0; c < degree; ++c) {
      points[c] = coset_of[g.multiply(static_cast<int>(e), representative[c])];
    }
    images.emplace_back(std::move(points));
  }
  return PermHomomorphism::unchecked(std::move(group), degree, std::move(images));
}

PermHomomorphism trivial_action(GroupPtr group, std::size_t degree) {
  const std::size_t order = group->order();
  return PermHomomorphism::unchecked(std::move(group), degree,
                                     std::vector<Permutation>(order, Permutation::identity(degree)));
}

PermHomomorphism direct_sum(const PermHomomorphism& a, const PermHomomorphism& b) {
  if (!same_source(a, b)) throw DomainError("direct sum of homomorphisms with different sources");
  std::vector<Permutation> images;
  images.reserve(a.images().size());
  for (std::size_t i = 0; i < a.images().size(); ++i) {
    images.push_back(direct_sum(a.images()[i], b.images()[i]));
  }
  if (a.has_finite_source()) {
    return PermHomomorphism::unchecked(a.finite_source_ptr(), a.degree() + b.degree(),
                                       std::move(images));
  }
  return PermHomomorphism::unchecked(a.presented_source_ptr(),
                                     a.degree() + b.degree(), std::move(images));
}

PermHomomorphism replicate(const PermHomomorphism& hom, std::size_t copies) {
  std::vector<Permutation> images;
  images.reserve(hom.images().size());
  for (const auto& p : hom.images()) {
    images.push_back(copies == 0 ? Permutation::identity(0) : replicate(p, copies));
  }
  const std::size_t degree = hom.degree() * copies;
  if (hom.has_finite_source()) {
    return PermHomomorphism::unchecked(hom.finite_source_ptr(), degree, std::move(images));
  }
  return PermHomomorphism::unchecked(hom.presented_source_ptr(),
                                     degree, std::move(images));
}

PermHomomorphism conjugate_by(const PermHomomorphism& hom, const Permutation& c) {
  if (c.degree() != hom.degree()) throw DomainError("conjugator degree mismatch");
  std::vector<Permutation> images;
  images.reserve(hom.images().size());
  const Permutation c_inv = c.inverse();
  for (const auto& p : hom.images()) images.push_back(c * p * c_inv);
  if (hom.has_finite_source()) {
    return PermHomomorphism::unchecked(hom.finite_source_ptr(), hom.degree(), std::move(images));
  }
  return PermHomomorphism::unchecked(hom.presented_source_ptr(),
                                     hom.degree(), std::move(images));
}

PermHomomorphism restrict_to(const PermHomomorphism& hom, const Subgroup& subgroup) {
  auto sub = std::make_shared<const FiniteGroup>(subgroup_as_group(hom.finite_source(), subgroup));
  std::vector<Permutation> images;
  images.reserve(subgroup.order());
  for (int x : subgroup.members) images.push_back(hom.image(x));
  return PermHomomorphism::unchecked(std::move(sub), hom.degree(), std::move(images));
}

PermHomomorphism restrict_to_points(const PermHomomorphism& hom, std::span<const int> points) {
  std::vector<int> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> local(hom.degree(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || static_cast<std::size_t>(sorted[i]) >= hom.degree() ||
        local[sorted[i]] >= 0) {
      throw DomainError("invalid point set for restriction");
    }
    local[sorted[i]] = static_cast<int>(i);
  }
  std::vector<Permutation> images;
  images.reserve(hom.images().size());
  for (const auto& p : hom.images()) {
    std::vector<int> restricted(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const int target = local[p(sorted[i])];
      if (target < 0) throw DomainError("point set is not invariant under the action");
      restricted[i] = target;
    }
    images.emplace_back(std::move(restricted));
  }
  if (hom.has_finite_source()) {
    return PermHomomorphism::unchecked(hom.finite_source_ptr(), sorted.size(), std::move(images));
  }
  return PermHomomorphism::unchecked(hom.presented_source_ptr(),
                                     sorted.size(), std::move(images));
}

}  // namespace permstab
