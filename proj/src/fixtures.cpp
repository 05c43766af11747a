#include "permstab/fixtures.hpp"

#include <memory>

#include "permstab/catalog.hpp"
#include "permstab/error.hpp"

namespace permstab::fixtures {

namespace {

PermHomomorphism klein_action(const char* a, const char* b) {
  static const GroupPtr klein = klein_four_group().group;
  return PermHomomorphism::from_generator_images(
      klein, 6, {parse_permutation(a, 6), parse_permutation(b, 6)});
}

std::vector<int> cycles_to_images(std::size_t degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<int>(i);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) images[c[i]] = c[(i + 1) % c.size()];
  }
  return images;
}

PermHomomorphism integer_action(const Permutation& image) {
  static const FpGroupPtr z = std::make_shared<const FpGroup>(FpGroup::free_group({"x"}));
  return PermHomomorphism::from_presentation(z, image.degree(), {image});
}

AmalgamInstance sl2(const char* t_image) {
  auto z4 = std::make_shared<const FpGroup>(
      FpGroup({"s"}, {parse_word("s^4", std::vector<std::string>{"s"})}));
  auto z6 = std::make_shared<const FpGroup>(
      FpGroup({"t"}, {parse_word("t^6", std::vector<std::string>{"t"})}));
  AmalgamEmbedding embedding{{"z"},
                             {parse_word("s^2", std::vector<std::string>{"s"})},
                             {parse_word("t^3", std::vector<std::string>{"t"})}};
  return AmalgamInstance{
      PermHomomorphism::from_presentation(z4, 4, {parse_permutation("(1 2 3 4)", 4)}),
      PermHomomorphism::from_presentation(z6, 4, {parse_permutation(t_image, 4)}),
      std::move(embedding)};
}

}  // namespace

PermHomomorphism theta1() { return klein_action("(1 2)(3 4)", "(1 2)(5 6)"); }
PermHomomorphism theta2() { return klein_action("(1 2)(3 4)", "(1 3)(2 4)"); }

Permutation a_k(std::size_t k) {
  if (k < 2) throw DomainError("a_k needs k >= 2");
  std::vector<std::vector<int>> cycles;
  for (std::size_t block = 0; block < k; ++block) {
    std::vector<int> c;
    for (std::size_t i = 0; i < k; ++i) c.push_back(static_cast<int>(block * k + i));
    cycles.push_back(std::move(c));
  }
  return Permutation(cycles_to_images(k * k, cycles));
}

Permutation b_k(std::size_t k) {
  if (k < 2) throw DomainError("b_k needs k >= 2");
  std::vector<std::vector<int>> cycles;
  std::vector<int> last;
  for (std::size_t block = 0; block < k; ++block) {
    std::vector<int> c;
    for (std::size_t i = 0; i + 1 < k; ++i) c.push_back(static_cast<int>(block * k + i));
    cycles.push_back(std::move(c));
    last.push_back(static_cast<int>(block * k + k - 1));
  }
  cycles.push_back(std::move(last));
  return Permutation(cycles_to_images(k * k, cycles));
}

PermHomomorphism ab_pair_first(std::size_t k) { return integer_action(direct_sum(a_k(k), b_k(k))); }
PermHomomorphism ab_pair_second(std::size_t k) { return integer_action(direct_sum(b_k(k), a_k(k))); }

AmalgamInstance sl2_instance() { return sl2("(1 3)(2 4)"); }
AmalgamInstance sl2_mismatch_instance() { return sl2("(1 2)"); }

}  // namespace permstab::fixtures
