#include "permstab/io.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "permstab/catalog.hpp"
#include "permstab/error.hpp"

namespace permstab::io {

namespace {

const Json& field(const Json& object, const char* key) {
  if (!object.is_object()) throw ParseError("expected a JSON object");
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_field(const Json& object, const char* key) {
  const Json& v = field(object, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_of(const Json& v, const char* what) {
  if (!v.is_string()) throw ParseError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const Json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) out.push_back(string_of(item, what));
  return out;
}

std::vector<std::string> optional_names(const Json& object, std::size_t count) {
  auto it = object.find("names");
  if (it == object.end()) return {};
  auto names = string_list(*it, "names");
  if (names.size() != count) throw ParseError("'names' must match the generator count");
  return names;
}

// Both text parsers report malformed syntax with DomainError; in a file that
// is a parse problem.
template <class F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json permutation_json(const Permutation& p) {
  Json images = Json::array();
  for (int x : p.images()) images.push_back(x + 1);
  return Json{{"degree", p.degree()}, {"images", images}};
}

Permutation permutation_from_json(const Json& value, std::optional<std::size_t> degree) {
  if (value.is_string()) {
    if (!degree) throw ParseError("permutation string needs a known degree");
    return parsing([&] { return parse_permutation(value.get<std::string>(), *degree); });
  }
  const std::size_t n = size_field(value, "degree");
  if (degree && *degree != n) throw DomainError("permutation degree does not match");
  const Json& images = field(value, "images");
  if (!images.is_array() || images.size() != n) throw ParseError("'images' must list n points");
  std::vector<int> zero_based;
  for (const auto& v : images) {
    if (!v.is_number_integer()) throw ParseError("permutation images must be integers");
    zero_based.push_back(v.get<int>() - 1);
  }
  return parsing([&] { return Permutation(std::move(zero_based)); });
}

const GroupPtr& GroupSpec::finite() const {
  if (!is_finite()) throw DomainError("a finite group is required");
  return std::get<GroupPtr>(group);
}

const FpGroupPtr& GroupSpec::presented() const {
  if (is_finite()) throw DomainError("a presented group is required");
  return std::get<FpGroupPtr>(group);
}

std::vector<std::string> GroupSpec::generator_names() const {
  if (is_finite()) {
    auto names = finite()->generator_names();
    return {names.begin(), names.end()};
  }
  auto names = presented()->generator_names();
  return {names.begin(), names.end()};
}

GroupSpec group_from_json(const Json& value, const std::filesystem::path& base) {
  if (value.is_string()) {
    const std::filesystem::path ref = base / value.get<std::string>();
    return group_from_json(load_json_file(ref), ref.parent_path());
  }
  const std::string kind = string_of(field(value, "kind"), "'kind'");
  try {
    if (kind == "table") {
      const std::size_t n = size_field(value, "order");
      const Json& rows = field(value, "table");
      if (!rows.is_array() || rows.size() != n) throw ParseError("table must have 'order' rows");
      std::vector<std::vector<int>> table;
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n) throw ParseError("table rows must have 'order' entries");
        std::vector<int> r;
        for (const auto& v : row) {
          if (!v.is_number_integer()) throw ParseError("table entries must be integers");
          r.push_back(v.get<int>());
        }
        table.push_back(std::move(r));
      }
      std::vector<int> gens;
      if (auto it = value.find("generators"); it != value.end()) {
        if (!it->is_array()) throw ParseError("'generators' must be an array of element ids");
        for (const auto& v : *it) {
          if (!v.is_number_integer()) throw ParseError("generator ids must be integers");
          gens.push_back(v.get<int>());
        }
      }
      auto names = optional_names(value, gens.size());
      return GroupSpec{std::make_shared<const FiniteGroup>(
                           FiniteGroup::from_table(std::move(table), std::move(gens), std::move(names))),
                       std::nullopt};
    }
    if (kind == "perm-gens") {
      const std::size_t n = size_field(value, "degree");
      const Json& list = field(value, "generators");
      if (!list.is_array() || list.empty()) throw ParseError("'generators' must be a non-empty array");
      std::vector<Permutation> gens;
      for (const auto& v : list) gens.push_back(permutation_from_json(v, n));
      auto names = optional_names(value, gens.size());
      auto pg = group_from_permutations(gens, std::move(names));
      return GroupSpec{pg.group, pg.natural};
    }
    if (kind == "presentation") {
      auto names = string_list(field(value, "generators"), "generator names");
      std::vector<Word> relators;
      if (auto it = value.find("relators"); it != value.end()) {
        for (const auto& r : string_list(*it, "relators")) {
          relators.push_back(parsing([&] { return parse_word(r, names); }));
        }
      }
      return GroupSpec{std::make_shared<const FpGroup>(std::move(names), std::move(relators)),
                       std::nullopt};
    }
    if (kind == "catalog") {
      const std::string name = string_of(field(value, "name"), "'name'");
      auto group = catalog_group(name);
      return GroupSpec{group, std::nullopt};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  throw ParseError("unknown group kind '" + kind + "'");
}

PermHomomorphism hom_from_json(const Json& value, const std::filesystem::path& base) {
  try {
    GroupSpec spec = group_from_json(field(value, "group"), base);
    const std::size_t n = size_field(value, "degree");
    const Json& images = field(value, "images");
    if (!images.is_object()) throw ParseError("'images' must map generator names to permutations");
    const auto names = spec.generator_names();
    for (const auto& [key, v] : images.items()) {
      if (std::find(names.begin(), names.end(), key) == names.end()) {
        throw ParseError("'images' names unknown generator '" + key + "'");
      }
    }
    std::vector<Permutation> gens;
    for (const auto& name : names) {
      auto it = images.find(name);
      if (it == images.end()) throw ParseError("'images' is missing generator '" + name + "'");
      gens.push_back(permutation_from_json(*it, n));
    }
    if (spec.is_finite()) {
      return PermHomomorphism::from_generator_images(spec.finite(), n, std::move(gens));
    }
    return PermHomomorphism::from_presentation(spec.presented(), n, std::move(gens));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

PermHomomorphism load_hom(const std::filesystem::path& path) {
  return hom_from_json(load_json_file(path), path.parent_path());
}

Json hom_images_json(const PermHomomorphism& hom) {
  Json images = Json::object();
  const auto names = hom.generator_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    images[names[k]] = to_cycle_string(hom.generator_image(k));
  }
  return Json{{"degree", hom.degree()}, {"images", images}};
}

SubgroupSpec subgroup_from_json(const FiniteGroup& group, const Json& value) {
  auto words = string_list(field(value, "generators"), "subgroup generators");
  SubgroupSpec spec;
  spec.names = optional_names(value, words.size());
  if (spec.names.empty()) {
    for (std::size_t k = 1; k <= words.size(); ++k) spec.names.push_back("h" + std::to_string(k));
  }
  const auto names = group.generator_names();
  for (const auto& w : words) {
    const Word word = parsing([&] { return parse_word(w, names); });
    spec.generator_elements.push_back(group.evaluate(word));
  }
  spec.subgroup = group.generated_subgroup(spec.generator_elements);
  return spec;
}

PermHomomorphism hom_on_subgroup(const FiniteGroup& group, const SubgroupSpec& spec,
                                 std::size_t degree, const std::vector<Permutation>& images) {
  if (images.size() != spec.generator_elements.size()) {
    throw DomainError("need one image per subgroup generator");
  }
  const auto& members = spec.subgroup.members;
  auto sub = std::make_shared<const FiniteGroup>(subgroup_as_group(group, spec.subgroup));
  auto local = [&](int element) {
    return static_cast<int>(std::lower_bound(members.begin(), members.end(), element) -
                            members.begin());
  };
  std::vector<int> gens;
  for (int e : spec.generator_elements) gens.push_back(local(e));

  std::vector<std::optional<Permutation>> value(sub->order());
  std::vector<int> queue{sub->identity()};
  value[sub->identity()] = Permutation::identity(degree);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const int y = sub->multiply(x, gens[k]);
      Permutation candidate = *value[x] * images[k];
      if (!value[y]) {
        value[y] = std::move(candidate);
        queue.push_back(y);
      } else if (*value[y] != candidate) {
        throw DomainError("subgroup generator images do not define a homomorphism");
      }
    }
  }
  std::vector<Permutation> all;
  for (auto& v : value) all.push_back(std::move(*v));
  return PermHomomorphism::from_element_images(sub, degree, std::move(all));
}

AmalgamEmbedding embedding_from_json(const Json& value, std::span<const std::string> first_names,
                                     std::span<const std::string> second_names) {
  AmalgamEmbedding embedding;
  embedding.h_generators = string_list(field(value, "h_generators"), "h_generators");
  const auto first = string_list(field(value, "first"), "first");
  const auto second = string_list(field(value, "second"), "second");
  if (first.size() != embedding.h_generators.size() ||
      second.size() != embedding.h_generators.size()) {
    throw ParseError("'first' and 'second' need one word per H generator");
  }
  for (const auto& w : first) {
    embedding.into_first.push_back(parsing([&] { return parse_word(w, first_names); }));
  }
  for (const auto& w : second) {
    embedding.into_second.push_back(parsing([&] { return parse_word(w, second_names); }));
  }
  return embedding;
}

}  // namespace permstab::io
