#include "permstab/action_stat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

#include "permstab/error.hpp"

namespace permstab {

namespace {

Rational fraction(std::size_t count, std::size_t degree, bool vacuous_value) {
  if (degree == 0) return Rational(vacuous_value ? 1 : 0);
  return make_rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(degree));
}

std::vector<Permutation> images_of(const PermHomomorphism& hom, std::span<const int> elements) {
  std::vector<Permutation> out;
  out.reserve(elements.size());
  for (int e : elements) out.push_back(hom.image(e));
  return out;
}

std::vector<Permutation> images_of(const PermHomomorphism& hom, std::span<const Word> words) {
  std::vector<Permutation> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(evaluate_word(hom, w));
  return out;
}

}  // namespace

std::size_t statistic_count(std::size_t degree, std::span<const Permutation> fixed,
                            std::span<const Permutation> moved) {
  for (const auto& p : fixed) {
    if (p.degree() != degree) throw DomainError("degree mismatch in statistic");
  }
  for (const auto& p : moved) {
    if (p.degree() != degree) throw DomainError("degree mismatch in statistic");
  }
  std::size_t count = 0;
  for (std::size_t x = 0; x < degree; ++x) {
    const int point = static_cast<int>(x);
    const bool ok =
        std::all_of(fixed.begin(), fixed.end(), [&](const Permutation& p) { return p(point) == point; }) &&
        std::all_of(moved.begin(), moved.end(), [&](const Permutation& p) { return p(point) != point; });
    if (ok) ++count;
  }
  return count;
}

Rational action_trace(const PermHomomorphism& hom, std::span<const int> elements) {
  auto perms = images_of(hom, elements);
  return fraction(statistic_count(hom.degree(), perms, {}), hom.degree(), true);
}

Rational action_trace(const PermHomomorphism& hom, std::span<const Word> elements) {
  auto perms = images_of(hom, elements);
  return fraction(statistic_count(hom.degree(), perms, {}), hom.degree(), true);
}

Rational bs_statistic(const PermHomomorphism& hom, std::span<const int> fixed,
                      std::span<const int> moved) {
  auto a = images_of(hom, fixed);
  auto b = images_of(hom, moved);
  return fraction(statistic_count(hom.degree(), a, b), hom.degree(), b.empty());
}

Rational bs_statistic(const PermHomomorphism& hom, std::span<const Word> fixed,
                      std::span<const Word> moved) {
  auto a = images_of(hom, fixed);
  auto b = images_of(hom, moved);
  return fraction(statistic_count(hom.degree(), a, b), hom.degree(), b.empty());
}

struct ActionTrace::State {
  std::size_t degree = 0;
  std::vector<Permutation> universe;
  mutable std::mutex mutex;
  mutable std::map<std::vector<int>, std::size_t> memo;
};

ActionTrace::ActionTrace(const PermHomomorphism& hom)
    : ActionTrace(hom.degree(), hom.images()) {}

ActionTrace::ActionTrace(std::size_t degree, std::vector<Permutation> universe)
    : state_(std::make_shared<State>()) {
  for (const auto& p : universe) {
    if (p.degree() != degree) throw DomainError("degree mismatch in trace universe");
  }
  state_->degree = degree;
  state_->universe = std::move(universe);
}

std::size_t ActionTrace::degree() const { return state_->degree; }
std::size_t ActionTrace::universe_size() const { return state_->universe.size(); }

std::size_t ActionTrace::fixed_count(std::span<const int> set) const {
  std::vector<int> key(set.begin(), set.end());
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  for (int i : key) {
    if (i < 0 || static_cast<std::size_t>(i) >= state_->universe.size()) {
      throw DomainError("element " + std::to_string(i) + " is outside the trace universe");
    }
  }
  {
    std::lock_guard lock(state_->mutex);
    if (auto it = state_->memo.find(key); it != state_->memo.end()) return it->second;
  }
  std::size_t count = 0;
  for (std::size_t x = 0; x < state_->degree; ++x) {
    const int point = static_cast<int>(x);
    bool fixed = true;
    for (int i : key) {
      if (state_->universe[i](point) != point) {
        fixed = false;
        break;
      }
    }
    if (fixed) ++count;
  }
  std::lock_guard lock(state_->mutex);
  state_->memo.emplace(std::move(key), count);
  return count;
}

Rational ActionTrace::operator()(std::span<const int> set) const {
  return fraction(fixed_count(set), degree(), true);
}

Rational s_from_tr(const ActionTrace& trace, std::span<const int> fixed,
                   std::span<const int> moved, std::size_t bound) {
  if (moved.size() > bound) {
    throw DomainError("inclusion-exclusion over " + std::to_string(moved.size()) +
                      " moved elements exceeds bound " + std::to_string(bound));
  }
  const std::size_t terms = std::size_t{1} << moved.size();
  long long sum = 0;
  std::vector<int> set;
  for (std::size_t v = 0; v < terms; ++v) {
    set.assign(fixed.begin(), fixed.end());
    for (std::size_t i = 0; i < moved.size(); ++i) {
      if ((v >> i) & 1U) set.push_back(moved[i]);
    }
    const long long count = static_cast<long long>(trace.fixed_count(set));
    sum += (std::popcount(v) % 2 == 0) ? count : -count;
  }
  if (trace.degree() == 0) return Rational(moved.empty() ? 1 : 0);
  return make_rational(sum, static_cast<std::int64_t>(trace.degree()));
}

std::vector<Rational> bs_table(const ActionTrace& trace, std::span<const int> universe_subset) {
  const std::size_t k = universe_subset.size();
  if (k > 20) throw DomainError("statistic table over more than 20 elements");
  std::vector<Rational> table(std::size_t{1} << k);
  std::vector<int> fixed;
  std::vector<int> moved;
  for (std::size_t t = 0; t < table.size(); ++t) {
    fixed.clear();
    moved.clear();
    for (std::size_t i = 0; i < k; ++i) {
      ((t >> i) & 1U ? fixed : moved).push_back(universe_subset[i]);
    }
    table[t] = s_from_tr(trace, fixed, moved);
  }
  return table;
}

std::vector<Rational> tr_from_s(const std::vector<std::optional<Rational>>& table) {
  if (table.empty() || !std::has_single_bit(table.size())) {
    throw DomainError("statistic table size must be a power of two");
  }
  std::vector<Rational> result(table.size());
  for (std::size_t t = 0; t < table.size(); ++t) {
    if (!table[t]) throw DomainError("statistic table is missing subset " + std::to_string(t));
    result[t] = *table[t];
  }
  // Superset-sum transform: result[A] = sum over T containing A of S(T).
  for (std::size_t bit = 1; bit < table.size(); bit <<= 1U) {
    for (std::size_t a = 0; a < table.size(); ++a) {
      if (!(a & bit)) result[a] += result[a | bit];
    }
  }
  return result;
}

}  // namespace permstab
