#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permstab {

/// A word over generators: entry +k is generator k-1, entry -k its inverse.
/// The empty word is the identity.
using Word = std::vector<int>;

/// Parses `name^exp` tokens separated by spaces, e.g. "s^2 t^-3 s". A bare
/// "1" or "e" (when not a generator name) is the empty word. Throws
/// ParseError on unknown names.
Word parse_word(std::string_view text, std::span<const std::string> generator_names);

std::string format_word(const Word& word, std::span<const std::string> generator_names);

Word inverse_word(const Word& word);

/// Finitely presented group. Only word evaluation and relator checks are
/// supported; equality of elements is never decided.
class FpGroup {
 public:
  /// Throws DomainError if a relator references an unknown generator.
  FpGroup(std::vector<std::string> generator_names, std::vector<Word> relators);

  std::size_t generator_count() const { return generator_names_.size(); }
  std::span<const std::string> generator_names() const { return generator_names_; }
  const std::vector<Word>& relators() const { return relators_; }
  bool is_free() const { return relators_.empty(); }

  /// Free group on the given names.
  static FpGroup free_group(std::vector<std::string> generator_names) {
    return FpGroup(std::move(generator_names), {});
  }

 private:
  std::vector<std::string> generator_names_;
  std::vector<Word> relators_;
};

}  // namespace permstab
