#include "permstab/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "permstab/error.hpp"

namespace permstab {

namespace {

std::size_t find_generator(std::string_view name, std::span<const std::string> names) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ParseError("unknown generator '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names.begin());
}

long long parse_exponent(std::string_view text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size() || text.size() > 12) {
    throw ParseError("bad exponent '" + std::string(text) + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("bad exponent '" + std::string(text) + "'");
    }
  }
  return std::stoll(std::string(text));
}

}  // namespace

Word parse_word(std::string_view text, std::span<const std::string> generator_names) {
  Word word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::string_view tok = token;
    auto caret = tok.find('^');
    std::string_view name = tok.substr(0, caret);
    long long exponent = 1;
    if (caret != std::string_view::npos) exponent = parse_exponent(tok.substr(caret + 1));
    bool known = std::find(generator_names.begin(), generator_names.end(), name) !=
                 generator_names.end();
    if (!known && (name == "1" || name == "e")) continue;
    if (std::abs(exponent) > 1'000'000) throw ParseError("exponent too large");
    int letter = static_cast<int>(find_generator(name, generator_names)) + 1;
    if (exponent < 0) letter = -letter;
    for (long long i = 0; i < std::abs(exponent); ++i) word.push_back(letter);
  }
  return word;
}

std::string format_word(const Word& word, std::span<const std::string> generator_names) {
  if (word.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < word.size();) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    long long exponent = static_cast<long long>(j - i) * (word[i] < 0 ? -1 : 1);
    if (!out.empty()) out += ' ';
    out += generator_names[static_cast<std::size_t>(std::abs(word[i]) - 1)];
    if (exponent != 1) out += "^" + std::to_string(exponent);
    i = j;
  }
  return out;
}

Word inverse_word(const Word& word) {
  Word inv(word.rbegin(), word.rend());
  for (int& letter : inv) letter = -letter;
  return inv;
}

FpGroup::FpGroup(std::vector<std::string> generator_names, std::vector<Word> relators)
    : generator_names_(std::move(generator_names)), relators_(std::move(relators)) {
  const int count = static_cast<int>(generator_names_.size());
  for (const auto& relator : relators_) {
    for (int letter : relator) {
      if (letter == 0 || std::abs(letter) > count) {
        throw DomainError("relator references unknown generator index " +
                          std::to_string(letter));
      }
    }
  }
}

}  // namespace permstab
