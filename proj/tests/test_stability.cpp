#include <gtest/gtest.h>

#include "oracles.hpp"
#include "permstab/action_stat.hpp"
#include "permstab/catalog.hpp"
#include "permstab/error.hpp"
#include "permstab/fixtures.hpp"
#include "permstab/random.hpp"
#include "permstab/rep_theory.hpp"
#include "permstab/stability.hpp"

using namespace permstab;

namespace {

std::vector<std::vector<int>> element_table(const PermHomomorphism& h) {
  std::vector<std::vector<int>> out;
  for (std::size_t e = 0; e < h.finite_source().order(); ++e) {
    out.push_back(oracle::images_of(h.image(static_cast<int>(e))));
  }
  return out;
}

void expect_conjugates(const PermHomomorphism& h1, const PermHomomorphism& h2, const Permutation& p) {
  for (std::size_t e = 0; e < h1.finite_source().order(); ++e) {
    const int id = static_cast<int>(e);
    ASSERT_EQ(p * h1.image(id) * p.inverse(), h2.image(id));
  }
}

Subgroup generated(const FiniteGroup& g, std::initializer_list<int> gens) {
  return g.generated_subgroup(std::vector<int>(gens));
}

}  // namespace

TEST(SmallConjugator, Examples) {
  const auto t1 = fixtures::theta1();
  const auto same = small_conjugator(t1, t1);
  EXPECT_EQ(same.conjugator, Permutation::identity(6));
  EXPECT_EQ(same.agreement.size(), 6u);
  EXPECT_EQ(same.epsilon, 0);

  const auto z2 = cyclic_group(2).group;
  const auto phi1 = PermHomomorphism::from_generator_images(z2, 10, {parse_permutation("(1 2)(3 4)", 10)});
  const auto phi2 = PermHomomorphism::from_generator_images(z2, 10, {parse_permutation("(1 2)(5 6)", 10)});
  const auto res = small_conjugator(phi1, phi2);
  EXPECT_EQ(res.conjugator, parse_permutation("(3 5)(4 6)", 10));
  EXPECT_EQ(res.agreement, (std::vector<int>{0, 1, 6, 7, 8, 9}));
  EXPECT_EQ(res.epsilon, make_rational(2, 5));
  EXPECT_EQ(res.distance, make_rational(2, 5));
  EXPECT_LE(res.distance, 2 * res.epsilon);
  expect_conjugates(phi1, phi2, res.conjugator);

  EXPECT_THROW(small_conjugator(t1, fixtures::theta2()), DomainError);
}

TEST(SmallConjugator, AbPairHasAValidConjugator) {
  const auto z2 = cyclic_group(2).group;
  const auto x = direct_sum(fixtures::a_k(2), fixtures::b_k(2));
  const auto y = direct_sum(fixtures::b_k(2), fixtures::a_k(2));
  const auto phi1 = PermHomomorphism::from_generator_images(z2, 8, {x});
  const auto phi2 = PermHomomorphism::from_generator_images(z2, 8, {y});
  const auto res = small_conjugator(phi1, phi2);
  expect_conjugates(phi1, phi2, res.conjugator);
  EXPECT_EQ(res.epsilon, 1);
}

TEST(SmallConjugator, PerturbedPairsRespectTheBound) {
  Rng rng(41);
  const auto groups = small_groups(12);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& g = groups[rng() % groups.size()].group;
    const std::size_t n = 40 + rng() % 40;
    const auto phi1 = random_action(g, n, rng);
    const auto phi2 = conjugate_by(phi1, perturb(Permutation::identity(n), 2 + rng() % 3, rng));
    const auto res = small_conjugator(phi1, phi2);
    expect_conjugates(phi1, phi2, res.conjugator);
    for (int x : res.agreement) EXPECT_EQ(res.conjugator(x), x);
    // Oracle epsilon: direct max over all elements.
    Rational eps = 0;
    for (std::size_t e = 0; e < g->order(); ++e) {
      eps = std::max(eps, hamming_distance(phi1.image(static_cast<int>(e)), phi2.image(static_cast<int>(e))));
    }
    EXPECT_EQ(res.epsilon, eps);
    EXPECT_EQ(res.distance, hamming_distance(res.conjugator, Permutation::identity(n)));
    if (eps * 2 * static_cast<long long>(g->order()) < 1) {
      EXPECT_LE(res.distance, eps * static_cast<long long>(g->order()));
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(MinConjugator, Examples) {
  const auto t1 = fixtures::theta1();
  const auto self = min_conjugator_distance(t1, t1);
  ASSERT_TRUE(self);
  EXPECT_EQ(self->distance, 0);
  EXPECT_FALSE(min_conjugator_distance(t1, fixtures::theta2()));

  const auto z2 = cyclic_group(2).group;
  const auto t = PermHomomorphism::from_generator_images(z2, 3, {parse_permutation("(1 2)", 3)});
  EXPECT_EQ(min_conjugator_distance(t, t)->distance, 0);

  const auto big = fixtures::ab_pair_first(3);
  EXPECT_THROW(min_conjugator_distance(big, big), DomainError);
}

// The k = 2 pair admits conjugators that fix points: the minimum is 3/4,
// not 1.
TEST(MinConjugator, AbPairAtKTwo) {
  const auto phi1 = fixtures::ab_pair_first(2);
  const auto phi2 = fixtures::ab_pair_second(2);
  const auto res = min_conjugator_distance(phi1, phi2);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->distance, make_rational(3, 4));
  EXPECT_EQ(res->conjugator, parse_permutation("(1 4 6 7 3 5)", 8));

  // Oracle: scan every conjugator.
  const auto all = oracle::conjugators({{phi1.generator_image(0), phi2.generator_image(0)}}, 8);
  std::size_t best = 8;
  for (const auto& p : all) best = std::min(best, oracle::moved_points(p));
  EXPECT_EQ(best, 6u);
  EXPECT_EQ(res->conjugator * phi1.generator_image(0) * res->conjugator.inverse(), phi2.generator_image(0));
}

TEST(MinConjugator, NeverExceedsSmallConjugator) {
  Rng rng(42);
  const auto groups = small_groups(8);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& g = groups[rng() % groups.size()].group;
    const std::size_t n = 1 + rng() % 7;
    const auto phi1 = random_action(g, n, rng);
    const auto phi2 = conjugate_by(phi1, random_permutation(n, rng));
    const auto best = min_conjugator_distance(phi1, phi2);
    ASSERT_TRUE(best);
    EXPECT_LE(best->distance, small_conjugator(phi1, phi2).distance);
    std::size_t moved = n;
    for (const auto& p : oracle::conjugators({{phi1.generator_image(0), phi2.generator_image(0)}}, n)) {
      bool ok = true;
      const Permutation pp(p);
      for (std::size_t k = 0; k < phi1.generator_count(); ++k) {
        ok = ok && pp * phi1.generator_image(k) * pp.inverse() == phi2.generator_image(k);
      }
      if (ok) moved = std::min(moved, oracle::moved_points(p));
    }
    EXPECT_EQ(best->distance, make_rational(static_cast<long long>(moved), static_cast<long long>(n)));
  }
}

TEST(Extension, EnumerationMatchesOracle) {
  for (const auto& [name, g] : small_groups(8)) {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::set<std::vector<std::vector<int>>> ours;
      for (const auto& h : enumerate_homomorphisms(g, n)) {
        EXPECT_TRUE(check_homomorphism(h).ok);
        ours.insert(element_table(h));
      }
      const auto brute = oracle::all_homs(*g, n);
      EXPECT_EQ(ours, std::set<std::vector<std::vector<int>>>(brute.begin(), brute.end())) << name << " n=" << n;
    }
  }
}

TEST(Extension, Examples) {
  const auto s3 = symmetric_group(3);
  const auto& g = *s3.group;
  const auto a3 = generated(g, {g.generators()[0]});
  const auto a3_group = std::make_shared<FiniteGroup>(subgroup_as_group(g, a3));
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& phi : enumerate_homomorphisms(a3_group, n)) {
      const auto ext = has_extension(s3.group, a3, phi);
      ASSERT_TRUE(ext) << "n=" << n;
      EXPECT_TRUE(check_homomorphism(*ext).ok);
      for (std::size_t i = 0; i < a3.order(); ++i) {
        EXPECT_EQ(ext->image(a3.members[i]), phi.image(static_cast<int>(i)));
      }
    }
  }

  const auto whole = make_subgroup(g, {0, 1, 2, 3, 4, 5});
  const auto whole_group = std::make_shared<FiniteGroup>(subgroup_as_group(g, whole));
  const auto nat = PermHomomorphism::from_element_images(whole_group, 3, s3.natural.images());
  const auto same = has_extension(s3.group, whole, nat);
  ASSERT_TRUE(same);
  EXPECT_EQ(same->images(), s3.natural.images());

  // Z2 in Z4 with the regular action on 2 points: no element of S_2 squares to (1 2).
  const auto z4 = cyclic_group(4).group;
  const auto z2 = generated(*z4, {z4->multiply(z4->generators()[0], z4->generators()[0])});
  const auto z2_group = std::make_shared<FiniteGroup>(subgroup_as_group(*z4, z2));
  const int z2_gen = z2.members[0] == z4->identity() ? 1 : 0;
  std::vector<Permutation> images(2, Permutation::identity(2));
  images[z2_gen] = parse_permutation("(1 2)", 2);
  const auto reg = PermHomomorphism::from_element_images(z2_group, 2, images);
  EXPECT_FALSE(has_extension(z4, z2, reg));

  EXPECT_THROW(has_extension(s3.group, a3, PermHomomorphism::from_element_images(
                                                a3_group, 9, std::vector<Permutation>(3, Permutation::identity(9)))),
               DomainError);
}

TEST(Extension, SoundAndCompleteAgainstOracle) {
  std::size_t decided = 0;
  for (const auto& [name, g] : small_groups(12)) {
    const std::size_t max_n = 6;
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto g_homs = oracle::all_homs(*g, n);
      for (const auto& cls : g->subgroup_classes()) {
        const auto& h = cls.representative;
        std::set<std::vector<std::vector<int>>> restrictions;
        for (const auto& t : g_homs) {
          std::vector<std::vector<int>> r;
          for (int m : h.members) r.push_back(t[m]);
          restrictions.insert(r);
        }
        const auto h_group = std::make_shared<FiniteGroup>(subgroup_as_group(*g, h));
        for (const auto& phi_table : oracle::all_homs(*h_group, n)) {
          std::vector<Permutation> imgs;
          for (const auto& v : phi_table) imgs.emplace_back(v);
          const auto phi = PermHomomorphism::unchecked(h_group, n, imgs);
          const auto ext = has_extension(g, h, phi);
          EXPECT_EQ(ext.has_value(), restrictions.count(phi_table) > 0) << name << " n=" << n;
          if (ext) {
            EXPECT_TRUE(check_homomorphism(*ext).ok);
            for (std::size_t i = 0; i < h.order(); ++i) {
              EXPECT_EQ(ext->image(h.members[i]), phi.image(static_cast<int>(i)));
            }
          }
          ++decided;
        }
      }
    }
  }
  EXPECT_GT(decided, 1000u);
}

TEST(Complement, Examples) {
  const auto s3 = symmetric_group(3);
  const auto& g = *s3.group;
  const auto t = generated(g, {g.generators()[1]});
  const auto a3 = generated(g, {g.generators()[0]});
  const auto k = find_normal_complement(g, t);
  ASSERT_TRUE(k);
  EXPECT_EQ(*k, a3);
  EXPECT_FALSE(find_normal_complement(g, a3));
  const auto trivial = make_subgroup(g, {g.identity()});
  const auto whole = find_normal_complement(g, trivial);
  ASSERT_TRUE(whole);
  EXPECT_EQ(whole->order(), 6u);
}

TEST(Complement, AgreesWithBruteForceAndRetractionIsAHomomorphism) {
  for (const auto& [name, g] : small_groups(12)) {
    const auto subsets = oracle::subgroups_by_subsets(*g);
    for (const auto& h : g->subgroups()) {
      bool brute = false;
      for (const auto& kset : subsets) {
        if (kset.size() * h.order() != g->order()) continue;
        std::vector<int> meet;
        std::set_intersection(kset.begin(), kset.end(), h.members.begin(), h.members.end(),
                              std::back_inserter(meet));
        if (meet.size() != 1) continue;
        bool normal = true;
        for (std::size_t x = 0; x < g->order() && normal; ++x) {
          for (int m : kset) {
            normal = normal && std::binary_search(kset.begin(), kset.end(), g->conjugate(m, static_cast<int>(x)));
          }
        }
        brute = brute || normal;
      }
      const auto k = find_normal_complement(*g, h);
      EXPECT_EQ(k.has_value(), brute) << name;
      if (!k) continue;
      const auto map = retraction_map(*g, h, *k);
      for (int m : h.members) EXPECT_EQ(map[m], m);
      for (std::size_t a = 0; a < g->order(); ++a) {
        EXPECT_TRUE(h.contains(map[a]));
        for (std::size_t b = 0; b < g->order(); ++b) {
          EXPECT_EQ(map[g->multiply(static_cast<int>(a), static_cast<int>(b))], g->multiply(map[a], map[b]))
              << name;
        }
      }
    }
  }
}

TEST(Amalgam, SlTwoInstance) {
  const auto inst = fixtures::sl2_instance();
  const auto hom = amalgamated_hom(inst.first, inst.second, inst.embedding);
  EXPECT_EQ(hom.degree(), 4u);
  EXPECT_EQ(hom.generator_names(), (std::vector<std::string>{"s", "t"}));
  EXPECT_EQ(hom.evaluate(Word{1}), parse_permutation("(1 2 3 4)", 4));
  EXPECT_EQ(hom.evaluate(Word{2}), parse_permutation("(1 3)(2 4)", 4));
  EXPECT_EQ(hom.evaluate(Word{1, 2, -1}), parse_permutation("(2 4)(1 3)", 4));

  const auto pres = hom.presentation();
  ASSERT_TRUE(pres);
  const std::vector<std::string> names{"s", "t"};
  for (const char* rel : {"s^4", "t^6", "s^2 t^-3"}) {
    const auto w = parse_word(rel, names);
    EXPECT_EQ(hom.evaluate(w), Permutation::identity(4)) << rel;
    EXPECT_NE(std::find(pres->relators().begin(), pres->relators().end(), w), pres->relators().end()) << rel;
  }
  for (const auto& rel : pres->relators()) EXPECT_EQ(hom.evaluate(rel), Permutation::identity(4));
  EXPECT_TRUE(check_relators(*pres, std::vector<Permutation>{hom.evaluate(Word{1}), hom.evaluate(Word{2})}).ok);
}

TEST(Amalgam, MismatchNamesTheWitness) {
  const auto inst = fixtures::sl2_mismatch_instance();
  try {
    amalgamated_hom(inst.first, inst.second, inst.embedding);
    FAIL() << "expected a mismatch";
  } catch (const AmalgamMismatch& e) {
    EXPECT_EQ(e.h_generator(), "z");
    EXPECT_EQ(e.first_image(), parse_permutation("(1 3)(2 4)", 4));
    EXPECT_EQ(e.second_image(), parse_permutation("(1 2)", 4));
  }
}

TEST(Amalgam, TrivialFactorsAndDegreeMismatch) {
  const auto z2 = std::make_shared<FpGroup>(std::vector<std::string>{"u"}, std::vector<Word>{Word{1, 1}});
  const auto z3 = std::make_shared<FpGroup>(std::vector<std::string>{"v"}, std::vector<Word>{Word{1, 1, 1}});
  const auto p1 = PermHomomorphism::from_presentation(z2, 1, {Permutation::identity(1)});
  const auto p2 = PermHomomorphism::from_presentation(z3, 1, {Permutation::identity(1)});
  const AmalgamEmbedding none{{}, {}, {}};
  const auto hom = amalgamated_hom(p1, p2, none);
  EXPECT_EQ(hom.evaluate(Word{1, 2, -1, 2}), Permutation::identity(1));

  const auto p3 = PermHomomorphism::from_presentation(z3, 3, {parse_permutation("(1 2 3)", 3)});
  EXPECT_THROW(amalgamated_hom(p1, p3, none), DomainError);
}

TEST(Lift, ReplicationCountExamples) {
  const auto s3 = symmetric_group(3);
  const auto& g = *s3.group;
  const auto psi = direct_sum(coset_action(s3.group, generated(g, {g.generators()[1]})),
                              trivial_action(s3.group, 1));
  EXPECT_EQ(replication_count(psi, psi), 1u);
  EXPECT_EQ(replication_count(replicate(psi, 3), psi), 3u);
  EXPECT_EQ(replication_count(direct_sum(replicate(psi, 2), trivial_action(s3.group, 1)), psi), 2u);
  EXPECT_THROW(replication_count(s3.natural, trivial_action(s3.group, 1)), DomainError);
}

TEST(Lift, ReplicationCountMatchesLinearSearch) {
  Rng rng(43);
  for (const auto& [name, g] : small_groups(12)) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto psi = random_action(g, 1 + rng() % 8, rng);
      const auto phi = direct_sum(replicate(psi, rng() % 4), random_action(g, 1 + rng() % 20, rng));
      std::size_t s = 0;
      try {
        s = replication_count(phi, psi);
      } catch (const DomainError&) {
        // phi has an orbit class missing from psi.
        const auto mp = multiplicity_vector(phi), mq = multiplicity_vector(psi);
        bool missing = false;
        for (std::size_t c = 0; c < mp.counts.size(); ++c) missing = missing || (mp.counts[c] && !mq.counts[c]);
        EXPECT_TRUE(missing);
        continue;
      }
      std::size_t brute = 0;
      while (hom_order_leq(replicate(psi, brute + 1), phi)) ++brute;
      EXPECT_EQ(s, brute) << name;
    }
  }
}

TEST(Lift, ComposeLift) {
  const auto s3 = symmetric_group(3);
  const auto& g = *s3.group;
  const auto coset = coset_action(s3.group, generated(g, {g.generators()[1]}));
  const auto lift = compose_lift(coset, 2, trivial_action(s3.group, 1));
  EXPECT_EQ(lift.degree(), 7u);
  EXPECT_TRUE(check_homomorphism(lift).ok);
  const auto alone = compose_lift(coset, 1, trivial_action(s3.group, 0));
  EXPECT_EQ(alone.images(), coset.images());
  EXPECT_EQ(compose_lift(coset, 0, s3.natural).images(), s3.natural.images());

  Rng rng(44);
  for (const auto& [name, grp] : small_groups(12)) {
    const auto psi = random_action(grp, 1 + rng() % 9, rng);
    const auto eta = random_action(grp, rng() % 9, rng);
    const std::size_t s = rng() % 4;
    const auto res = compose_lift(psi, s, eta);
    ASSERT_EQ(res.degree(), s * psi.degree() + eta.degree());
    if (res.degree() == 0) continue;
    const std::vector<int> a{static_cast<int>(rng() % grp->order()), static_cast<int>(rng() % grp->order())};
    const Rational sm = static_cast<long long>(s * psi.degree());
    const Rational en = static_cast<long long>(eta.degree());
    EXPECT_EQ(action_trace(res, a), (sm * action_trace(psi, a) + en * action_trace(eta, a)) / (sm + en)) << name;
  }
  EXPECT_THROW(compose_lift(coset, 1, fixtures::theta1()), DomainError);
}

TEST(Centralizer, OrderAndElementsMatchBruteForce) {
  Rng rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_permutation(1 + rng() % 7, rng);
    const auto brute = oracle::centralizer(a);
    EXPECT_EQ(centralizer_order(a), BigInt(brute.size()));
    const auto ours = centralizer_elements(a);
    ASSERT_EQ(ours.size(), brute.size());
    for (std::size_t i = 0; i < ours.size(); ++i) EXPECT_EQ(oracle::images_of(ours[i]), brute[i]);
  }
  EXPECT_EQ(centralizer_order(Permutation::identity(12)), BigInt(479001600));
  EXPECT_THROW(centralizer_elements(Permutation::identity(12)), DomainError);
}

TEST(Centralizer, ExactCorrectionMatchesBruteForce) {
  Rng rng(46);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    const auto a = random_permutation(n, rng);
    const auto q = random_permutation(n, rng);
    std::size_t best = n + 1;
    std::vector<int> arg;
    for (const auto& c : oracle::centralizer(a)) {
      std::size_t diff = 0;
      for (std::size_t x = 0; x < n; ++x) diff += c[x] != q(x);
      if (diff < best) {
        best = diff;
        arg = c;
      }
    }
    const auto rep = centralizer_correct(a, q, CorrectionMode::kExact);
    EXPECT_EQ(rep.mode_used, CorrectionMode::kExact);
    EXPECT_EQ(oracle::images_of(rep.corrected), arg);
    EXPECT_EQ(rep.distance, make_rational(static_cast<long long>(best), static_cast<long long>(n)));
    EXPECT_EQ(rep.input_defect, hamming_distance(a * q * a.inverse() * q.inverse(), Permutation::identity(n)));

    const auto heur = centralizer_correct(a, q, CorrectionMode::kHeuristic);
    EXPECT_EQ(heur.mode_used, CorrectionMode::kHeuristic);
    EXPECT_EQ(a * heur.corrected, heur.corrected * a);
    EXPECT_GE(heur.distance, rep.distance);
    EXPECT_EQ(heur.distance, hamming_distance(q, heur.corrected));
  }
}

TEST(Centralizer, CorrectionExamples) {
  const auto a = parse_permutation("(1 2 3)", 3);
  const auto rep = centralizer_correct(a, parse_permutation("(1 2)", 3), CorrectionMode::kExact);
  EXPECT_EQ(rep.corrected, Permutation::identity(3));
  EXPECT_EQ(rep.distance, make_rational(2, 3));
  EXPECT_EQ(rep.centralizer_order, 3);

  const auto q = parse_permutation("(1 3 2)", 3);
  EXPECT_EQ(centralizer_correct(a, q, CorrectionMode::kExact).corrected, q);
  EXPECT_EQ(centralizer_correct(a, q, CorrectionMode::kHeuristic).corrected, q);
  const auto r = parse_permutation("(1 4)(2 3)", 5);
  EXPECT_EQ(centralizer_correct(Permutation::identity(5), r, CorrectionMode::kExact).corrected, r);

  // Centralizer too large to enumerate: falls back to the heuristic.
  const auto big = centralizer_correct(Permutation::identity(12), parse_permutation("(1 5 9)", 12),
                                       CorrectionMode::kExact);
  EXPECT_EQ(big.mode_used, CorrectionMode::kHeuristic);
  EXPECT_EQ(big.corrected, parse_permutation("(1 5 9)", 12));
  EXPECT_THROW(centralizer_correct(a, Permutation::identity(4), CorrectionMode::kExact), DomainError);
}

TEST(Centralizer, HeuristicAlwaysCommutesOnLargeInputs) {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 20 + rng() % 200;
    const auto a = random_permutation(n, rng);
    // Almost-centralizing input: a centralizing element with a few points disturbed.
    const auto q = perturb(power(a, static_cast<long long>(rng() % 5)), rng() % 6, rng);
    const auto rep = centralizer_correct(a, q, CorrectionMode::kHeuristic);
    EXPECT_EQ(a * rep.corrected, rep.corrected * a);
    EXPECT_EQ(rep.distance, hamming_distance(q, rep.corrected));
  }
}
