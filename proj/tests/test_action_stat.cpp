#include <gtest/gtest.h>

#include <thread>

#include "oracles.hpp"
#include "permstab/action_stat.hpp"
#include "permstab/catalog.hpp"
#include "permstab/error.hpp"
#include "permstab/fixtures.hpp"
#include "permstab/random.hpp"

using namespace permstab;

namespace {

// Direct point count, no memo and no inclusion-exclusion.
Rational count_stat(const PermHomomorphism& h, const std::vector<int>& fixed,
                    const std::vector<int>& moved) {
  if (h.degree() == 0) return moved.empty() ? 1 : 0;
  std::size_t hits = 0;
  for (std::size_t x = 0; x < h.degree(); ++x) {
    bool ok = true;
    for (int g : fixed) ok = ok && h.image(g)(x) == static_cast<int>(x);
    for (int g : moved) ok = ok && h.image(g)(x) != static_cast<int>(x);
    hits += ok;
  }
  return make_rational(static_cast<long long>(hits), static_cast<long long>(h.degree()));
}

std::vector<int> members_of(std::uint32_t mask, const std::vector<int>& universe) {
  std::vector<int> out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (mask >> i & 1) out.push_back(universe[i]);
  }
  return out;
}

struct Gens {
  int a, b;
};

Gens klein_gens(const PermHomomorphism& h) {
  return {h.finite_source().generators()[0], h.finite_source().generators()[1]};
}

}  // namespace

TEST(ActionStat, ThetaTraces) {
  const auto t1 = fixtures::theta1();
  const auto t2 = fixtures::theta2();
  const auto [a, b] = klein_gens(t1);
  const std::vector<int> ab{a, b};
  EXPECT_EQ(action_trace(t1, ab), 0);
  EXPECT_EQ(action_trace(t2, ab), make_rational(1, 3));
  for (std::size_t g = 0; g < 4; ++g) {
    if (static_cast<int>(g) == t1.finite_source().identity()) continue;
    const std::vector<int> single{static_cast<int>(g)};
    EXPECT_EQ(action_trace(t1, single), make_rational(1, 3));
    EXPECT_EQ(action_trace(t2, single), make_rational(1, 3));
  }
  EXPECT_EQ(action_trace(t1, std::vector<int>{}), 1);
  EXPECT_EQ(action_trace(t1, std::vector<int>{t1.finite_source().identity()}), 1);
  EXPECT_THROW(action_trace(t1, std::vector<int>{7}), DomainError);
}

TEST(ActionStat, StatisticExamples) {
  const auto t1 = fixtures::theta1();
  const auto [a, b] = klein_gens(t1);
  const std::vector<int> fa{a}, fb{b}, none{};
  EXPECT_EQ(bs_statistic(t1, fa, fb), make_rational(1, 3));
  EXPECT_EQ(bs_statistic(t1, fa, fa), 0);
  EXPECT_EQ(bs_statistic(t1, fa, none), action_trace(t1, fa));

  const ActionTrace tr(t1);
  EXPECT_EQ(s_from_tr(tr, fa, fb), make_rational(1, 3));
  EXPECT_EQ(s_from_tr(tr, fa, none), action_trace(t1, fa));
  const std::vector<int> huge(21, a);
  EXPECT_THROW(s_from_tr(tr, fa, huge), DomainError);
}

TEST(ActionStat, WordSetsOnPresentedSources) {
  const auto free2 = std::make_shared<FpGroup>(FpGroup::free_group({"x", "y"}));
  const auto h = PermHomomorphism::from_presentation(
      free2, 3, {parse_permutation("(1 2 3)", 3), parse_permutation("(1 2)", 3)});
  const auto names = free2->generator_names();
  const std::vector<Word> x{parse_word("x", names)}, y{parse_word("y", names)};
  const std::vector<Word> xx{parse_word("x^3", names)};
  EXPECT_EQ(action_trace(h, x), 0);
  EXPECT_EQ(action_trace(h, y), make_rational(1, 3));
  EXPECT_EQ(action_trace(h, xx), 1);
  EXPECT_EQ(bs_statistic(h, y, x), make_rational(1, 3));
  EXPECT_EQ(bs_statistic(h, std::vector<Word>{}, y), make_rational(2, 3));
}

TEST(ActionStat, EightTermInclusionExclusion) {
  Rng rng(21);
  const auto s4 = symmetric_group(4).group;
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = random_action(s4, 3 + rng() % 20, rng);
    const int g = static_cast<int>(rng() % 24), h1 = static_cast<int>(rng() % 24),
              h2 = static_cast<int>(rng() % 24), h3 = static_cast<int>(rng() % 24);
    auto tr = [&](std::vector<int> s) { return count_stat(h, s, {}); };
    const Rational expected = tr({g}) - tr({g, h1}) - tr({g, h2}) - tr({g, h3}) + tr({g, h1, h2}) +
                              tr({g, h1, h3}) + tr({g, h2, h3}) - tr({g, h1, h2, h3});
    const std::vector<int> fixed{g}, moved{h1, h2, h3};
    EXPECT_EQ(s_from_tr(ActionTrace(h), fixed, moved), expected);
    EXPECT_EQ(bs_statistic(h, fixed, moved), expected);
  }
}

TEST(ActionStat, AgreesWithDirectCountAndPartitionOfUnity) {
  Rng rng(22);
  for (const auto& [name, g] : small_groups(12)) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto h = random_action(g, 1 + rng() % 15, rng);
      const ActionTrace tr(h);
      std::vector<int> f;
      for (std::size_t k = 0; k < std::min<std::size_t>(4, g->order()); ++k) {
        f.push_back(static_cast<int>(rng() % g->order()));
      }
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      const auto table = bs_table(tr, f);
      ASSERT_EQ(table.size(), std::size_t{1} << f.size());
      Rational total = 0;
      for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
        const auto t = members_of(mask, f);
        const auto rest = members_of(~mask & ((1u << f.size()) - 1), f);
        EXPECT_EQ(table[mask], count_stat(h, t, rest)) << name;
        EXPECT_EQ(s_from_tr(tr, t, rest), table[mask]) << name;
        EXPECT_EQ(tr(t), count_stat(h, t, {})) << name;
        EXPECT_GE(table[mask], 0);
        total += table[mask];
      }
      EXPECT_EQ(total, 1) << name;
    }
  }
}

TEST(ActionStat, TraceInvariants) {
  Rng rng(23);
  const auto d5 = dihedral_group(5).group;
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = random_action(d5, 1 + rng() % 20, rng);
    const ActionTrace tr(h);
    std::vector<int> small{static_cast<int>(rng() % 10)};
    std::vector<int> big{small[0], static_cast<int>(rng() % 10)};
    EXPECT_GE(tr(small), tr(big));
    std::vector<int> with_one = small;
    with_one.push_back(d5->identity());
    EXPECT_EQ(tr(with_one), tr(small));
    EXPECT_EQ(tr(std::vector<int>{}), 1);
  }
}

TEST(ActionStat, RoundTripExhaustiveIntoS4) {
  // Every homomorphism of every group of order <= 8 into S_4, every F with
  // |F| <= 4.
  for (const auto& [name, g] : small_groups(8)) {
    for (const auto& table : oracle::all_homs(*g, 4)) {
      std::vector<Permutation> images;
      for (const auto& v : table) images.emplace_back(v);
      const auto h = PermHomomorphism::unchecked(g, 4, images);
      const ActionTrace tr(h);
      const std::size_t width = std::min<std::size_t>(4, g->order());
      for (std::uint32_t pick = 0; pick < (1u << g->order()); ++pick) {
        if (static_cast<std::size_t>(std::popcount(pick)) > width) continue;
        std::vector<int> f;
        for (std::size_t e = 0; e < g->order(); ++e) {
          if (pick >> e & 1) f.push_back(static_cast<int>(e));
        }
        const auto s = bs_table(tr, f);
        const auto back = tr_from_s(std::vector<std::optional<Rational>>(s.begin(), s.end()));
        for (std::uint32_t mask = 0; mask < back.size(); ++mask) {
          ASSERT_EQ(back[mask], count_stat(h, members_of(mask, f), {})) << name;
        }
      }
    }
  }
}

TEST(ActionStat, TrFromSExamples) {
  EXPECT_EQ(tr_from_s({Rational(0), Rational(1)}), (std::vector<Rational>{1, 1}));
  const auto t2 = fixtures::theta2();
  const auto [a, b] = klein_gens(t2);
  const std::vector<int> f{a, b};
  const auto s = bs_table(ActionTrace(t2), f);
  const auto back = tr_from_s(std::vector<std::optional<Rational>>(s.begin(), s.end()));
  EXPECT_EQ(back[3], make_rational(1, 3));
  EXPECT_THROW(tr_from_s({Rational(1), std::nullopt}), DomainError);
  EXPECT_THROW(tr_from_s({Rational(1), Rational(0), Rational(0)}), DomainError);
}

TEST(ActionStat, ReplicationAndDirectSumMixing) {
  Rng rng(24);
  for (const auto& [name, g] : small_groups(12)) {
    const auto phi = random_action(g, 1 + rng() % 9, rng);
    const auto psi = random_action(g, 1 + rng() % 9, rng);
    const auto sum = direct_sum(phi, psi);
    const Rational m = static_cast<long long>(phi.degree());
    const Rational n = static_cast<long long>(psi.degree());
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> a{static_cast<int>(rng() % g->order()), static_cast<int>(rng() % g->order())};
      EXPECT_EQ(action_trace(sum, a), (m * action_trace(phi, a) + n * action_trace(psi, a)) / (m + n))
          << name;
      for (std::size_t s = 1; s <= 3; ++s) {
        EXPECT_EQ(action_trace(replicate(phi, s), a), action_trace(phi, a)) << name;
      }
    }
  }
}

TEST(ActionStat, ConcurrentEvaluationMatchesSerial) {
  Rng rng(25);
  const auto s4 = symmetric_group(4);
  const auto h = random_action(s4.group, 40, rng);
  std::vector<std::vector<int>> sets;
  for (int i = 0; i < 400; ++i) {
    std::vector<int> s;
    for (int k = 0; k < 3; ++k) s.push_back(static_cast<int>(rng() % 24));
    sets.push_back(s);
  }
  const ActionTrace shared(h);
  std::vector<std::vector<Rational>> results(8, std::vector<Rational>(sets.size()));
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t k = 0; k < sets.size(); ++k) {
        const std::size_t i = (k + 37 * t) % sets.size();
        results[t][i] = shared(sets[i]);
      }
    });
  }
  for (auto& th : threads) th.join();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const Rational expected = count_stat(h, sets[i], {});
    for (const auto& r : results) EXPECT_EQ(r[i], expected);
  }
}
