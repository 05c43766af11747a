#include "permstab/catalog.hpp"

#include <algorithm>
#include <numeric>

#include "permstab/error.hpp"

namespace permstab {

namespace {

Permutation cycle_of(std::size_t degree, std::vector<int> points) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    images[points[i]] = points[(i + 1) % points.size()];
  }
  return Permutation(std::move(images));
}

std::vector<int> range(std::size_t from, std::size_t to) {
  std::vector<int> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

PermutationGroup cyclic_group(std::size_t n) {
  if (n == 0) throw DomainError("cyclic group needs n >= 1");
  const std::vector<Permutation> gens{cycle_of(n, range(0, n))};
  return group_from_permutations(gens, {"r"});
}

PermutationGroup dihedral_group(std::size_t n) {
  if (n < 3) throw DomainError("dihedral group needs n >= 3");
  std::vector<int> reflection(n);
  for (std::size_t i = 0; i < n; ++i) reflection[i] = static_cast<int>((n - i) % n);
  const std::vector<Permutation> gens{cycle_of(n, range(0, n)), Permutation(reflection)};
  return group_from_permutations(gens, {"r", "s"});
}

PermutationGroup symmetric_group(std::size_t n) {
  if (n < 2) throw DomainError("symmetric group needs n >= 2");
  const std::vector<Permutation> gens{cycle_of(n, range(0, n)), cycle_of(n, {0, 1})};
  return group_from_permutations(gens, {"c", "t"});
}

PermutationGroup alternating_group(std::size_t n) {
  if (n < 3) throw DomainError("alternating group needs n >= 3");
  // 3-cycles (1 2 k) generate A_n.
  std::vector<Permutation> gens;
  std::vector<std::string> names;
  for (std::size_t k = 2; k < n; ++k) {
    gens.push_back(cycle_of(n, {0, 1, static_cast<int>(k)}));
    names.push_back("u" + std::to_string(k - 1));
  }
  return group_from_permutations(gens, std::move(names));
}

PermutationGroup quaternion_group() {
  const std::vector<Permutation> gens{
      parse_permutation("(1 2 3 4)(5 6 7 8)", 8),
      parse_permutation("(1 5 3 7)(2 8 4 6)", 8),
  };
  return group_from_permutations(gens, {"i", "j"});
}

PermutationGroup klein_four_group() {
  const std::vector<Permutation> gens{
      parse_permutation("(1 2)(3 4)", 4),
      parse_permutation("(1 3)(2 4)", 4),
  };
  return group_from_permutations(gens, {"a", "b"});
}

GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  const std::size_t n = g.order() * m;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const int first = g.multiply(static_cast<int>(a / m), static_cast<int>(b / m));
      const int second = h.multiply(static_cast<int>(a % m), static_cast<int>(b % m));
      table[a][b] = first * static_cast<int>(m) + second;
    }
  }
  std::vector<int> gens;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    gens.push_back(g.generators()[k] * static_cast<int>(m) + h.identity());
    names.push_back(g.generator_names()[k]);
  }
  for (std::size_t k = 0; k < h.generators().size(); ++k) {
    gens.push_back(g.identity() * static_cast<int>(m) + h.generators()[k]);
    std::string name = h.generator_names()[k];
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(std::move(name));
  }
  return std::make_shared<const FiniteGroup>(
      FiniteGroup::from_trusted_table(std::move(table), std::move(gens), std::move(names)));
}

std::vector<NamedGroup> small_groups(std::size_t max_order) {
  std::vector<NamedGroup> out;
  auto add = [&](std::string name, std::size_t order, auto make) {
    if (order <= max_order) out.push_back({std::move(name), make()});
  };
  for (std::size_t n = 1; n <= max_order; ++n) {
    add("C" + std::to_string(n), n, [n] { return cyclic_group(n).group; });
  }
  for (std::size_t n = 3; 2 * n <= max_order; ++n) {
    add("D" + std::to_string(n), 2 * n, [n] { return dihedral_group(n).group; });
  }
  add("V4", 4, [] { return klein_four_group().group; });
  add("Q8", 8, [] { return quaternion_group().group; });
  add("A4", 12, [] { return alternating_group(4).group; });
  add("S4", 24, [] { return symmetric_group(4).group; });
  add("C2xC4", 8, [] { return direct_product(*cyclic_group(2).group, *cyclic_group(4).group); });
  add("C2xC2xC2", 8, [] {
    return direct_product(*klein_four_group().group, *cyclic_group(2).group);
  });
  add("C3xC3", 9, [] { return direct_product(*cyclic_group(3).group, *cyclic_group(3).group); });
  add("C2xS3", 12, [] { return direct_product(*cyclic_group(2).group, *dihedral_group(3).group); });
  add("C2xA4", 24, [] {
    return direct_product(*cyclic_group(2).group, *alternating_group(4).group);
  });
  add("C3xS3", 18, [] { return direct_product(*cyclic_group(3).group, *dihedral_group(3).group); });
  std::stable_sort(out.begin(), out.end(), [](const NamedGroup& a, const NamedGroup& b) {
    return a.group->order() < b.group->order();
  });
  return out;
}

GroupPtr catalog_group(const std::string& name) {
  auto number = [&](std::size_t from) -> std::size_t {
    const std::string digits = name.substr(from);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
        digits.size() > 3) {
      throw DomainError("unknown catalog group '" + name + "'");
    }
    return std::stoul(digits);
  };
  if (name == "V4") return klein_four_group().group;
  if (name == "Q8") return quaternion_group().group;
  if (const auto x = name.find('x'); x != std::string::npos) {
    return direct_product(*catalog_group(name.substr(0, x)), *catalog_group(name.substr(x + 1)));
  }
  if (name.size() >= 2) {
    switch (name[0]) {
      case 'C': return cyclic_group(number(1)).group;
      case 'D': return dihedral_group(number(1)).group;
      case 'S': return symmetric_group(number(1)).group;
      case 'A': return alternating_group(number(1)).group;
      default: break;
    }
  }
  throw DomainError("unknown catalog group '" + name + "'");
}

}  // namespace permstab
