#include "permstab/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "permstab/error.hpp"

namespace permstab {

namespace {

bool is_bijection(const std::vector<int>& images) {
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[v]) {
      return false;
    }
    seen[v] = 1;
  }
  return true;
}

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

// Reads a positive decimal integer at pos.
long long read_number(std::string_view text, std::size_t& pos) {
  skip_space(text, pos);
  std::size_t start = pos;
  long long value = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    if (value > 1'000'000'000) throw ParseError("point value too large");
    ++pos;
  }
  if (pos == start) {
    throw ParseError("expected a point number at offset " + std::to_string(start) +
                     " in '" + std::string(text) + "'");
  }
  return value;
}

int checked_point(long long value, std::size_t degree) {
  if (value < 1 || static_cast<std::size_t>(value) > degree) {
    throw ParseError("point " + std::to_string(value) + " out of range 1.." +
                     std::to_string(degree));
  }
  return static_cast<int>(value - 1);
}

Permutation parse_one_line(std::string_view text, std::size_t degree) {
  std::size_t pos = 1;
  std::vector<int> images;
  skip_space(text, pos);
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
  } else {
    while (true) {
      images.push_back(checked_point(read_number(text, pos), degree));
      skip_space(text, pos);
      if (pos >= text.size()) throw ParseError("unterminated one-line form");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      throw ParseError(std::string("unexpected '") + text[pos] + "' in one-line form");
    }
  }
  skip_space(text, pos);
  if (pos != text.size()) throw ParseError("trailing characters after one-line form");
  if (images.size() != degree) {
    throw ParseError("one-line form has " + std::to_string(images.size()) +
                     " entries, expected degree " + std::to_string(degree));
  }
  if (!is_bijection(images)) throw ParseError("one-line form is not a bijection");
  return Permutation(std::move(images));
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(degree, 0);
  std::size_t pos = 0;
  while (true) {
    skip_space(text, pos);
    if (pos == text.size()) break;
    if (text[pos] != '(') {
      throw ParseError(std::string("unexpected '") + text[pos] + "' in cycle form");
    }
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_space(text, pos);
      if (pos >= text.size()) throw ParseError("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      int point = checked_point(read_number(text, pos), degree);
      if (used[point]) {
        throw ParseError("point " + std::to_string(point + 1) + " repeated in cycle form");
      }
      used[point] = 1;
      cycle.push_back(point);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images));
}

}  // namespace

Permutation Permutation::identity(std::size_t degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  if (!is_bijection(images_)) throw DomainError("images do not form a bijection");
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(degree, 0);
  for (const auto& cycle : cycles) {
    for (int x : cycle) {
      if (x < 0 || static_cast<std::size_t>(x) >= degree || used[x]) {
        throw DomainError("cycles are not disjoint points of the degree");
      }
      used[x] = 1;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::size_t Permutation::fixed_point_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] == static_cast<int>(i)) ++count;
  }
  return count;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  for (std::size_t len : cycle_type(*this)) result = std::lcm(result, len);
  return result;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> result;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == static_cast<int>(start)) continue;
    std::vector<int> cycle;
    for (int x = static_cast<int>(start); !seen[x]; x = images_[x]) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw DomainError("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                      std::to_string(q.degree()));
  }
  Permutation r;
  r.images_.resize(p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) r.images_[i] = p.images_[q.images_[i]];
  return r;
}

std::strong_ordering operator<=>(const Permutation& p, const Permutation& q) {
  if (auto c = p.degree() <=> q.degree(); c != 0) return c;
  return std::lexicographical_compare_three_way(p.images_.begin(), p.images_.end(),
                                                q.images_.begin(), q.images_.end());
}

Permutation power(const Permutation& p, long long exponent) {
  Permutation base = exponent < 0 ? p.inverse() : p;
  unsigned long long e = exponent < 0 ? -static_cast<unsigned long long>(exponent)
                                      : static_cast<unsigned long long>(exponent);
  Permutation result = Permutation::identity(p.degree());
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

Permutation conjugate_by(const Permutation& p, const Permutation& c) {
  return c * p * c.inverse();
}

Permutation parse_permutation(std::string_view text, std::size_t degree) {
  std::size_t pos = 0;
  skip_space(text, pos);
  std::string_view body = text.substr(pos);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) {
    body.remove_suffix(1);
  }
  if (!body.empty() && body.front() == '[') return parse_one_line(body, degree);
  return parse_cycles(body, degree);
}

std::string to_cycle_string(const Permutation& p) {
  auto cycles = p.cycles();
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& cycle : cycles) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(cycle[i] + 1);
    }
    out += ')';
  }
  return out;
}

std::string to_one_line_string(const Permutation& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(p(static_cast<int>(i)) + 1);
  }
  out += ']';
  return out;
}

std::size_t disagreement_count(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw DomainError("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                      std::to_string(q.degree()));
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (p(static_cast<int>(i)) != q(static_cast<int>(i))) ++count;
  }
  return count;
}

Rational hamming_distance(const Permutation& p, const Permutation& q) {
  std::size_t count = disagreement_count(p, q);
  if (p.degree() == 0) return Rational(0);
  return make_rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(p.degree()));
}

Rational normalized_trace(const Permutation& p) {
  // The empty action fixes "all" of its zero points.
  if (p.degree() == 0) return Rational(1);
  return make_rational(static_cast<std::int64_t>(p.fixed_point_count()),
                       static_cast<std::int64_t>(p.degree()));
}

Permutation direct_sum(const Permutation& p, const Permutation& q) {
  std::vector<int> images(p.images().begin(), p.images().end());
  const int shift = static_cast<int>(p.degree());
  for (int v : q.images()) images.push_back(v + shift);
  return Permutation(std::move(images));
}

Permutation replicate(const Permutation& p, std::size_t copies) {
  if (copies == 0) throw DomainError("replication count must be positive");
  std::vector<int> images;
  images.reserve(p.degree() * copies);
  for (std::size_t c = 0; c < copies; ++c) {
    const int shift = static_cast<int>(c * p.degree());
    for (int v : p.images()) images.push_back(v + shift);
  }
  return Permutation(std::move(images));
}

std::vector<std::size_t> cycle_type(const Permutation& p) {
  std::vector<std::size_t> lengths;
  std::vector<char> seen(p.degree(), 0);
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (int x = static_cast<int>(start); !seen[x]; x = p(x)) {
      seen[x] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<Permutation> all_permutations(std::size_t degree) {
  if (degree > 10) throw DomainError("refusing to enumerate S_n for n > 10");
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> result;
  do {
    result.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return result;
}

}  // namespace permstab
