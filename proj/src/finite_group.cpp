#include "permstab/finite_group.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_set>

#include "permstab/error.hpp"

namespace permstab {

namespace {

// Fixed-width membership mask used while enumerating the lattice.
struct Mask {
  std::vector<std::uint64_t> words;

  explicit Mask(std::size_t n = 0) : words((n + 63) / 64, 0) {}
  void set(int i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (words[i >> 6] >> (i & 63)) & 1U; }
  bool operator==(const Mask&) const = default;
};

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : m.words) h = (h ^ w) * 1099511628211ULL;
    return h;
  }
};

Mask to_mask(std::size_t n, std::span<const int> members) {
  Mask m(n);
  for (int x : members) m.set(x);
  return m;
}

// Closure of `members` under right multiplication by `generators`. Seeded
// with the identity this is the subgroup they generate.
std::vector<int> close_under(const FiniteGroup& g, std::vector<int> members,
                             std::span<const int> generators) {
  std::vector<char> in(g.order(), 0);
  for (int x : members) in[x] = 1;
  if (!in[g.identity()]) {
    in[g.identity()] = 1;
    members.push_back(g.identity());
  }
  for (std::size_t head = 0; head < members.size(); ++head) {
    const int x = members[head];
    for (int s : generators) {
      const int y = g.multiply(x, s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

bool Subgroup::contains(int element) const {
  return std::binary_search(members.begin(), members.end(), element);
}

std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) {
  if (auto c = a.members.size() <=> b.members.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.members.begin(), a.members.end(),
                                                b.members.begin(), b.members.end());
}

struct FiniteGroup::Lattice {
  std::vector<Subgroup> subgroups;
  std::vector<SubgroupClass> classes;
  std::map<std::vector<int>, std::size_t> class_of;
};

struct FiniteGroup::Cache {
  std::once_flag once;
  std::unique_ptr<Lattice> lattice;
};

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table,
                                    std::vector<int> generators,
                                    std::vector<std::string> generator_names) {
  return build(std::move(table), std::move(generators), std::move(generator_names), true);
}

FiniteGroup FiniteGroup::from_trusted_table(std::vector<std::vector<int>> table,
                                            std::vector<int> generators,
                                            std::vector<std::string> generator_names) {
  return build(std::move(table), std::move(generators), std::move(generator_names), false);
}

FiniteGroup FiniteGroup::build(std::vector<std::vector<int>> table, std::vector<int> generators,
                               std::vector<std::string> generator_names,
                               bool check_associativity) {
  const std::size_t n = table.size();
  if (n == 0) throw DomainError("a group needs at least one element");
  for (const auto& row : table) {
    if (row.size() != n) throw DomainError("multiplication table is not square");
    std::vector<char> seen(n, 0);
    for (int v : row) {
      if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) {
        throw DomainError("multiplication table row is not a permutation of the elements");
      }
      seen[v] = 1;
    }
  }
  FiniteGroup g;
  g.table_ = std::move(table);

  int identity = -1;
  for (std::size_t e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      ok = g.table_[e][x] == static_cast<int>(x) && g.table_[x][e] == static_cast<int>(x);
    }
    if (ok) identity = static_cast<int>(e);
  }
  if (identity < 0) throw DomainError("multiplication table has no identity");
  g.identity_ = identity;

  g.inverses_.assign(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (g.table_[x][y] == identity && g.table_[y][x] == identity) {
        g.inverses_[x] = static_cast<int>(y);
        break;
      }
    }
    if (g.inverses_[x] < 0) throw DomainError("element without two-sided inverse");
  }

  if (check_associativity) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const int ab = g.table_[a][b];
        for (std::size_t c = 0; c < n; ++c) {
          if (g.table_[ab][c] != g.table_[a][g.table_[b][c]]) {
            throw DomainError("multiplication table is not associative at (" +
                              std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(c) + ")");
          }
        }
      }
    }
  }

  for (int s : generators) {
    if (!g.is_element(s)) throw DomainError("generator id out of range");
  }
  if (generators.empty()) {
    std::vector<int> current{identity};
    for (std::size_t x = 0; x < n; ++x) {
      if (std::binary_search(current.begin(), current.end(), static_cast<int>(x))) continue;
      generators.push_back(static_cast<int>(x));
      current = close_under(g, current, generators);
    }
  } else if (close_under(g, {identity}, generators).size() != n) {
    throw DomainError("declared generators do not generate the group");
  }
  if (generator_names.empty()) {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      generator_names.push_back("g" + std::to_string(i + 1));
    }
  }
  if (generator_names.size() != generators.size()) {
    throw DomainError("generator names and generators differ in count");
  }
  g.generators_ = std::move(generators);
  g.generator_names_ = std::move(generator_names);
  g.cache_ = std::make_shared<Cache>();
  return g;
}

std::size_t FiniteGroup::element_order(int element) const {
  std::size_t k = 1;
  for (int x = element; x != identity_; x = multiply(x, element)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a) {
    for (std::size_t b = a + 1; b < order(); ++b) {
      if (table_[a][b] != table_[b][a]) return false;
    }
  }
  return true;
}

int FiniteGroup::evaluate(const Word& word) const {
  int x = identity_;
  for (int letter : word) {
    const std::size_t index = static_cast<std::size_t>(letter < 0 ? -letter : letter) - 1;
    if (letter == 0 || index >= generators_.size()) {
      throw DomainError("word letter " + std::to_string(letter) + " is not a generator");
    }
    const int s = generators_[index];
    x = multiply(x, letter > 0 ? s : inverse(s));
  }
  return x;
}

Subgroup FiniteGroup::generated_subgroup(std::span<const int> elements) const {
  for (int x : elements) {
    if (!is_element(x)) throw DomainError("element id out of range");
  }
  return Subgroup{close_under(*this, {identity_}, elements)};
}

const FiniteGroup::Lattice& FiniteGroup::lattice(std::size_t bound) const {
  if (order() > bound) {
    throw DomainError("group order " + std::to_string(order()) +
                      " exceeds subgroup enumeration bound " + std::to_string(bound));
  }
  std::call_once(cache_->once, [this] {
    const std::size_t n = order();
    auto lattice = std::make_unique<Lattice>();

    // Seed with cyclic subgroups, then join with cyclic subgroups until no
    // new subgroup appears. Every subgroup is a join of cyclic ones.
    std::vector<std::vector<int>> cyclic;
    std::vector<int> cyclic_generator;
    std::unordered_set<Mask, MaskHash> seen_cyclic;
    for (std::size_t x = 0; x < n; ++x) {
      const int gen = static_cast<int>(x);
      auto members = close_under(*this, {identity_}, std::span<const int>(&gen, 1));
      if (seen_cyclic.insert(to_mask(n, members)).second) {
        cyclic.push_back(std::move(members));
        cyclic_generator.push_back(gen);
      }
    }

    std::unordered_set<Mask, MaskHash> seen;
    std::vector<std::vector<int>> found;
    std::vector<std::vector<int>> found_generators;
    std::deque<std::size_t> queue;
    for (std::size_t c = 0; c < cyclic.size(); ++c) {
      if (seen.insert(to_mask(n, cyclic[c])).second) {
        found.push_back(cyclic[c]);
        found_generators.push_back({cyclic_generator[c]});
        queue.push_back(found.size() - 1);
      }
    }
    while (!queue.empty()) {
      const std::size_t index = queue.front();
      queue.pop_front();
      const Mask current = to_mask(n, found[index]);
      for (std::size_t c = 0; c < cyclic.size(); ++c) {
        if (current.test(cyclic_generator[c])) continue;
        std::vector<int> gens = found_generators[index];
        gens.push_back(cyclic_generator[c]);
        auto joined = close_under(*this, {identity_}, gens);
        if (seen.insert(to_mask(n, joined)).second) {
          found.push_back(std::move(joined));
          found_generators.push_back(std::move(gens));
          queue.push_back(found.size() - 1);
        }
      }
    }

    for (auto& members : found) lattice->subgroups.push_back(Subgroup{std::move(members)});
    std::sort(lattice->subgroups.begin(), lattice->subgroups.end());

    std::map<std::vector<int>, std::size_t> index_of;
    for (std::size_t i = 0; i < lattice->subgroups.size(); ++i) {
      index_of.emplace(lattice->subgroups[i].members, i);
    }
    std::vector<long> class_id(lattice->subgroups.size(), -1);
    std::vector<SubgroupClass> classes;
    for (std::size_t i = 0; i < lattice->subgroups.size(); ++i) {
      if (class_id[i] >= 0) continue;
      SubgroupClass cls;
      const long id = static_cast<long>(classes.size());
      for (std::size_t g = 0; g < n; ++g) {
        Subgroup conj = conjugate_subgroup(*this, lattice->subgroups[i], static_cast<int>(g));
        const std::size_t j = index_of.at(conj.members);
        if (class_id[j] < 0) {
          class_id[j] = id;
          cls.members.push_back(std::move(conj));
        }
      }
      std::sort(cls.members.begin(), cls.members.end());
      cls.representative = cls.members.front();
      classes.push_back(std::move(cls));
    }
    // Subgroups are visited in sorted order, so classes already come out
    // sorted by (order, representative).
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (const auto& member : classes[c].members) lattice->class_of.emplace(member.members, c);
    }
    lattice->classes = std::move(classes);
    cache_->lattice = std::move(lattice);
  });
  return *cache_->lattice;
}

const std::vector<Subgroup>& FiniteGroup::subgroups(std::size_t bound) const {
  return lattice(bound).subgroups;
}

const std::vector<SubgroupClass>& FiniteGroup::subgroup_classes(std::size_t bound) const {
  return lattice(bound).classes;
}

std::size_t FiniteGroup::class_index(const Subgroup& subgroup, std::size_t bound) const {
  const auto& map = lattice(bound).class_of;
  auto it = map.find(subgroup.members);
  if (it == map.end()) throw DomainError("not a subgroup of the group");
  return it->second;
}

bool is_subgroup(const FiniteGroup& group, std::span<const int> candidate) {
  if (candidate.empty()) return false;
  std::vector<char> in(group.order(), 0);
  for (int x : candidate) {
    if (!group.is_element(x)) return false;
    in[x] = 1;
  }
  // A non-empty finite subset closed under products is a subgroup.
  for (int a : candidate) {
    for (int b : candidate) {
      if (!in[group.multiply(a, b)]) return false;
    }
  }
  return true;
}

Subgroup make_subgroup(const FiniteGroup& group, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!is_subgroup(group, members)) throw DomainError("element set is not a subgroup");
  return Subgroup{std::move(members)};
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& group, std::size_t bound) {
  return group.subgroups(bound);
}

std::vector<SubgroupClass> subgroup_conjugacy_classes(const FiniteGroup& group,
                                                      std::size_t bound) {
  return group.subgroup_classes(bound);
}

Subgroup conjugate_subgroup(const FiniteGroup& group, const Subgroup& subgroup, int by) {
  std::vector<int> members;
  members.reserve(subgroup.order());
  for (int x : subgroup.members) members.push_back(group.conjugate(x, by));
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

Subgroup normalizer(const FiniteGroup& group, const Subgroup& subgroup) {
  if (!is_subgroup(group, subgroup.members)) throw DomainError("not a subgroup of the group");
  std::vector<int> members;
  for (std::size_t g = 0; g < group.order(); ++g) {
    if (conjugate_subgroup(group, subgroup, static_cast<int>(g)) == subgroup) {
      members.push_back(static_cast<int>(g));
    }
  }
  return Subgroup{std::move(members)};
}

bool is_normal(const FiniteGroup& group, const Subgroup& subgroup) {
  return normalizer(group, subgroup).order() == group.order();
}

FiniteGroup subgroup_as_group(const FiniteGroup& group, const Subgroup& subgroup) {
  if (!is_subgroup(group, subgroup.members)) throw DomainError("not a subgroup of the group");
  const std::size_t n = subgroup.order();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  auto local = [&](int x) {
    return static_cast<int>(std::lower_bound(subgroup.members.begin(), subgroup.members.end(), x) -
                            subgroup.members.begin());
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table[i][j] = local(group.multiply(subgroup.members[i], subgroup.members[j]));
    }
  }
  return FiniteGroup::from_trusted_table(std::move(table));
}

}  // namespace permstab
