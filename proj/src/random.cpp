#include "permstab/random.hpp"

#include <algorithm>
#include <numeric>

#include "permstab/error.hpp"

namespace permstab {

Permutation random_permutation(std::size_t degree, Rng& rng) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

PermHomomorphism random_action(const GroupPtr& group, std::size_t degree, Rng& rng) {
  const auto& subgroups = group->subgroups();
  PermHomomorphism hom = trivial_action(group, 0);
  std::size_t remaining = degree;
  while (remaining > 0) {
    std::vector<const Subgroup*> fitting;
    for (const auto& s : subgroups) {
      if (group->order() / s.order() <= remaining) fitting.push_back(&s);
    }
    std::uniform_int_distribution<std::size_t> pick(0, fitting.size() - 1);
    const Subgroup& n = *fitting[pick(rng)];
    hom = direct_sum(hom, coset_action(group, n));
    remaining -= group->order() / n.order();
  }
  return conjugate_by(hom, random_permutation(degree, rng));
}

Permutation perturb(const Permutation& p, std::size_t count, Rng& rng) {
  const std::size_t n = p.degree();
  if (count > n) throw DomainError("cannot perturb more points than the degree");
  std::vector<int> points(n);
  std::iota(points.begin(), points.end(), 0);
  std::shuffle(points.begin(), points.end(), rng);
  points.resize(count);
  std::vector<int> images(p.images().begin(), p.images().end());
  std::vector<int> targets;
  for (int x : points) targets.push_back(images[x]);
  std::shuffle(targets.begin(), targets.end(), rng);
  for (std::size_t i = 0; i < count; ++i) images[points[i]] = targets[i];
  return Permutation(std::move(images));
}

}  // namespace permstab
