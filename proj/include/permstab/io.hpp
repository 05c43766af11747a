#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "permstab/finite_group.hpp"
#include "permstab/homomorphism.hpp"
#include "permstab/permutation.hpp"
#include "permstab/rational.hpp"
#include "permstab/stability.hpp"

// JSON file formats. Structural problems raise ParseError; well-formed input
// that violates a mathematical precondition raises DomainError.
namespace permstab::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file.
Json load_json_file(const std::filesystem::path& path);

/// {"degree": n, "images": [1-based]}.
Json permutation_json(const Permutation& p);
/// Accepts the object form, a cycle string or a one-line string. Strings
/// need `degree`.
Permutation permutation_from_json(const Json& value, std::optional<std::size_t> degree);

/// A group file:
///   {"kind":"table","order":n,"table":[[...]]}            0-based element ids,
///       optional "generators" (ids) and "names"
///   {"kind":"perm-gens","degree":n,"generators":[...]}    optional "names"
///   {"kind":"presentation","generators":[...],"relators":[...]}
///   {"kind":"catalog","name":"S3"}
struct GroupSpec {
  std::variant<GroupPtr, FpGroupPtr> group;
  /// The defining action for perm-gens and catalog groups.
  std::optional<PermHomomorphism> natural;

  bool is_finite() const { return std::holds_alternative<GroupPtr>(group); }
  const GroupPtr& finite() const;
  const FpGroupPtr& presented() const;
  std::vector<std::string> generator_names() const;
};

/// `base` resolves relative file references.
GroupSpec group_from_json(const Json& value, const std::filesystem::path& base = {});

/// {"group": <inline group or file name>, "degree": n, "images": {"s": perm}}
PermHomomorphism hom_from_json(const Json& value, const std::filesystem::path& base = {});
PermHomomorphism load_hom(const std::filesystem::path& path);

/// {"degree": n, "images": {name: "(cycles)"}} with generator names of the
/// source.
Json hom_images_json(const PermHomomorphism& hom);

/// Subgroup file: {"generators": ["s^2", ...], "names": ["z", ...]}, words
/// over the group's generators. Names default to h1, h2, ...
struct SubgroupSpec {
  Subgroup subgroup;
  std::vector<int> generator_elements;
  std::vector<std::string> names;
};
SubgroupSpec subgroup_from_json(const FiniteGroup& group, const Json& value);

/// Homomorphism of subgroup_as_group(G, H) given images of the subgroup's
/// named generators. Throws DomainError if the images are inconsistent.
PermHomomorphism hom_on_subgroup(const FiniteGroup& group, const SubgroupSpec& spec,
                                 std::size_t degree, const std::vector<Permutation>& images);

/// {"h_generators": ["z"], "first": ["s^2"], "second": ["t^3"]}
AmalgamEmbedding embedding_from_json(const Json& value, std::span<const std::string> first_names,
                                     std::span<const std::string> second_names);

}  // namespace permstab::io
