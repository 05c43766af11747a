// perm-stab: command-line front end. Every command prints one JSON object.
//
// Exit codes: 0 success, 2 domain error, 64 usage error or unknown
// subcommand, 65 malformed input, 70 internal error.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "permstab/action_stat.hpp"
#include "permstab/bs_graph.hpp"
#include "permstab/catalog.hpp"
#include "permstab/error.hpp"
#include "permstab/fixtures.hpp"
#include "permstab/io.hpp"
#include "permstab/random.hpp"
#include "permstab/rep_theory.hpp"
#include "permstab/stability.hpp"

using namespace permstab;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitMalformed = 65;
constexpr int kExitInternal = 70;

const std::set<std::string> kCommands{"trace",   "stats",   "mult",         "conj",   "order",
                                      "small-conj", "min-conj", "extend",   "complement",
                                      "amalgam", "lift",    "correct",      "graph",  "dstat",
                                      "verify-paper"};

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_degree = kMaxBruteForceDegree;
  std::size_t size_bound = 3;
  bool report = false;
  bool json = true;
};

// Files read by the command, hashed into the report.
std::vector<std::string> g_inputs;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

PermHomomorphism hom_file(const std::string& path) {
  g_inputs.push_back(path);
  return io::load_hom(path);
}

Json json_file(const std::string& path) {
  g_inputs.push_back(path);
  return io::load_json_file(path);
}

std::vector<Word> word_list(const std::string& text, std::span<const std::string> names) {
  std::vector<Word> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_word(item, names));
  }
  return out;
}

Json points_json(const std::vector<int>& points) {
  Json out = Json::array();
  for (int p : points) out.push_back(p + 1);
  return out;
}

std::string str(const Rational& r) { return to_string(r); }

std::size_t infer_degree(const std::vector<std::string>& texts) {
  std::size_t n = 0;
  for (const auto& t : texts) {
    std::size_t value = 0;
    bool in_number = false;
    for (char c : t + ' ') {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        value = value * 10 + static_cast<std::size_t>(c - '0');
        in_number = true;
        if (value > 1'000'000) throw ParseError("point value too large");
      } else if (in_number) {
        n = std::max(n, value);
        value = 0;
        in_number = false;
      }
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// verify-paper

struct Checks {
  Json list = Json::array();
  bool all = true;
  void add(const std::string& claim, bool pass, const std::string& expected,
           const std::string& observed) {
    list.push_back({{"claim", claim}, {"pass", pass}, {"expected", expected}, {"observed", observed}});
    all = all && pass;
  }
};

Json verify_paper(const Options& opt) {
  Checks checks;
  const auto t1 = fixtures::theta1();
  const auto t2 = fixtures::theta2();
  const FiniteGroup& g = t1.finite_source();
  for (const auto* theta : {&t1, &t2}) {
    const std::string which = theta == &t1 ? "theta1" : "theta2";
    for (std::size_t e = 0; e < g.order(); ++e) {
      if (static_cast<int>(e) == g.identity()) continue;
      const std::vector<int> set{static_cast<int>(e)};
      const Rational tr = action_trace(*theta, set);
      checks.add("Tr_" + which + "(g) = 1/3 for g = " + to_cycle_string(theta->image(static_cast<int>(e))),
                 tr == make_rational(1, 3), "1/3", str(tr));
    }
  }
  const std::vector<int> ab{g.generators()[0], g.generators()[1]};
  const Rational tr1 = action_trace(t1, ab);
  const Rational tr2 = action_trace(t2, ab);
  checks.add("Tr_theta1(a,b) = 0 (no global fixed point)", tr1 == 0, "0", str(tr1));
  checks.add("Tr_theta2(a,b) = 1/3 (two global fixed points)", tr2 == make_rational(1, 3), "1/3",
             str(tr2));
  const bool conj = is_conjugate(t1, t2).conjugate;
  checks.add("theta1 and theta2 are not conjugate", !conj, "false", conj ? "true" : "false");

  for (std::size_t k = 2; k <= 6; ++k) {
    const Rational d = hamming_distance(fixtures::a_k(k), fixtures::b_k(k));
    const Rational expected = make_rational(2, static_cast<std::int64_t>(k));
    checks.add("d_H(a_" + std::to_string(k) + ", b_" + std::to_string(k) + ") = 2/k", d == expected,
               str(expected), str(d));
    const auto ta = cycle_type(fixtures::a_k(k));
    const auto tb = cycle_type(fixtures::b_k(k));
    std::vector<std::size_t> want_a(k, k);
    std::vector<std::size_t> want_b(k, k - 1);
    want_b.push_back(k);
    std::sort(want_b.begin(), want_b.end());
    checks.add("cycle types of a_" + std::to_string(k) + " and b_" + std::to_string(k),
               ta == want_a && tb == want_b, "k x k; k x (k-1) + k", ta == want_a && tb == want_b ? "match" : "differ");
  }
  {
    const auto p1 = fixtures::ab_pair_first(2);
    const auto p2 = fixtures::ab_pair_second(2);
    const auto min = min_conjugator_distance(p1, p2);
    checks.add("a_2+b_2 and b_2+a_2 are conjugate in S_8", min.has_value(), "true",
               min ? "true" : "false");
    checks.add("every conjugator of the k=2 pair has d_H(p,1) = 1", min && min->distance == 1, "1",
               min ? str(min->distance) + " via " + to_cycle_string(min->conjugator) : "none");
  }

  {
    const auto inst = fixtures::sl2_instance();
    bool ok = true;
    std::string observed = "agree";
    try {
      const auto amalgam = amalgamated_hom(inst.first, inst.second, inst.embedding);
      const auto presentation = *amalgam.presentation();
      std::vector<Permutation> gens{inst.first.generator_image(0), inst.second.generator_image(0)};
      const auto check = check_relators(presentation, gens);
      ok = check.ok;
      if (!ok) observed = "relator fails: " + check.witness;
    } catch (const DomainError& e) {
      ok = false;
      observed = e.what();
    }
    checks.add("SL2(Z) instance s->(1 2 3 4), t->(1 3)(2 4) assembles", ok, "agree", observed);
    const auto bad = fixtures::sl2_mismatch_instance();
    std::string witness = "accepted";
    try {
      amalgamated_hom(bad.first, bad.second, bad.embedding);
    } catch (const AmalgamMismatch& e) {
      witness = e.h_generator();
    }
    checks.add("mismatched SL2(Z) instance rejected with witness z", witness == "z", "z", witness);
  }

  {
    const auto s3 = symmetric_group(3).group;
    const Subgroup z3 = s3->generated_subgroup(std::vector<int>{s3->generators()[0]});
    const auto sub = std::make_shared<const FiniteGroup>(subgroup_as_group(*s3, z3));
    bool all_extend = true;
    std::size_t count = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
      for (const auto& phi : enumerate_homomorphisms(sub, n)) {
        ++count;
        all_extend = all_extend && has_extension(s3, z3, phi).has_value();
      }
    }
    checks.add("every Z3 -> S_n (n <= 5) extends to S3", all_extend, "all",
               (all_extend ? "all " : "not all ") + std::to_string(count));
    const auto k3 = find_normal_complement(*s3, z3);
    checks.add("Z3 <= S3 has no normal complement", !k3, "none", k3 ? "found" : "none");
    const Subgroup z2 = s3->generated_subgroup(std::vector<int>{s3->generators()[1]});
    const auto k2 = find_normal_complement(*s3, z2);
    const bool is_a3 = k2 && k2->order() == 3 && is_normal(*s3, *k2);
    checks.add("Z2 <= S3 has normal complement A3", is_a3, "A3", k2 ? "order " + std::to_string(k2->order()) : "none");
  }

  // Seeded spot check of the inclusion-exclusion formula on random actions.
  Rng rng(opt.seed);
  const auto v4 = klein_four_group().group;
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto phi = random_action(v4, 1 + rng() % 12, rng);
    const ActionTrace trace(phi);
    for (SubsetMask a = 0; a < 16; ++a) {
      for (SubsetMask b = 0; b < 16; ++b) {
        if (a & b) continue;
        std::vector<int> fixed, moved;
        for (int e = 0; e < 4; ++e) {
          if (a >> e & 1) fixed.push_back(e);
          if (b >> e & 1) moved.push_back(e);
        }
        if (s_from_tr(trace, fixed, moved) != bs_statistic(phi, fixed, moved)) ++mismatches;
      }
    }
  }
  checks.add("S(A,B) = sum_V (-1)^|V| Tr(A u V) on 200 seeded random V4 actions", mismatches == 0,
             "0 mismatches", std::to_string(mismatches) + " mismatches");

  return Json{{"all_pass", checks.all}, {"checks", checks.list}};
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cout << error_json("usage", "expected a subcommand").dump() << '\n';
    return kExitUsage;
  }
  const std::string first = argv[1];
  if (first.empty() || (first[0] != '-' && !kCommands.count(first))) {
    std::cout << error_json("usage", "unknown subcommand '" + first + "'").dump() << '\n';
    return kExitUsage;
  }

  Options opt;
  CLI::App app{"Permutation stability toolkit", "perm-stab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", opt.seed, "Seed for randomized checks");
  app.add_option("--max-degree", opt.max_degree, "Degree bound for exhaustive searches");
  app.add_option("--size-bound", opt.size_bound, "Pattern size bound for dstat");
  app.add_flag("--report", opt.report, "Wrap the output in a run report");
  app.add_flag("--json", opt.json, "JSON output (the only mode)");

  std::function<Json()> run;
  std::string hom_path, hom_path2, set_text, fixed_text, moved_text, mode = "exact";
  std::string coef, almost, h_map, group_path, subgroup_path, phi_path, psi_path, eta_path;
  std::size_t degree = 0;
  bool encode = false;

  auto* trace = app.add_subcommand("trace", "Tr(A) for a set of words");
  trace->add_option("--hom", hom_path)->required();
  trace->add_option("--set", set_text);
  trace->callback([&] {
    run = [&] {
      const auto hom = hom_file(hom_path);
      const auto words = word_list(set_text, hom.generator_names());
      return Json{{"tr", str(action_trace(hom, words))}};
    };
  });

  auto* stats = app.add_subcommand("stats", "S(A,B) for word sets");
  stats->add_option("--hom", hom_path)->required();
  stats->add_option("--fixed", fixed_text);
  stats->add_option("--moved", moved_text);
  stats->callback([&] {
    run = [&] {
      const auto hom = hom_file(hom_path);
      const auto a = word_list(fixed_text, hom.generator_names());
      const auto b = word_list(moved_text, hom.generator_names());
      return Json{{"s", str(bs_statistic(hom, a, b))}};
    };
  });

  auto* mult = app.add_subcommand("mult", "Coset multiplicities per subgroup class");
  mult->add_option("hom", hom_path)->required();
  mult->callback([&] {
    run = [&] {
      const auto hom = hom_file(hom_path);
      const FiniteGroup& g = hom.finite_source();
      const auto mv = multiplicity_vector(hom);
      Json classes = Json::array();
      const auto& cls = g.subgroup_classes();
      for (std::size_t c = 0; c < cls.size(); ++c) {
        const auto& rep = cls[c].representative;
        classes.push_back({{"class", c},
                           {"order", rep.order()},
                           {"index", g.order() / rep.order()},
                           {"representative", rep.members},
                           {"conjugates", cls[c].members.size()},
                           {"count", mv.counts[c]},
                           {"r", str(mv.r(c))}});
      }
      return Json{{"degree", hom.degree()}, {"group_order", g.order()}, {"classes", classes}};
    };
  });

  auto* conj = app.add_subcommand("conj", "Conjugacy test with witness");
  conj->add_option("first", hom_path)->required();
  conj->add_option("second", hom_path2)->required();
  conj->callback([&] {
    run = [&] {
      const auto result = is_conjugate(hom_file(hom_path), hom_file(hom_path2));
      return Json{{"conjugate", result.conjugate},
                  {"witness", result.witness ? Json(to_cycle_string(*result.witness)) : Json()}};
    };
  });

  auto* order = app.add_subcommand("order", "Homomorphism order first <= second");
  order->add_option("first", hom_path)->required();
  order->add_option("second", hom_path2)->required();
  order->callback([&] {
    run = [&] {
      const auto a = hom_file(hom_path);
      const auto b = hom_file(hom_path2);
      const bool leq = hom_order_leq(a, b);
      return Json{{"leq", leq},
                  {"counts_first", multiplicity_vector(a).counts},
                  {"counts_second", multiplicity_vector(b).counts}};
    };
  });

  auto* small = app.add_subcommand("small-conj", "Conjugator fixing the agreement set");
  small->add_option("first", hom_path)->required();
  small->add_option("second", hom_path2)->required();
  small->callback([&] {
    run = [&] {
      const auto a = hom_file(hom_path);
      const auto b = hom_file(hom_path2);
      const auto r = small_conjugator(a, b);
      const Rational bound = Rational(static_cast<long long>(a.finite_source().order())) * r.epsilon;
      return Json{{"conjugator", to_cycle_string(r.conjugator)},
                  {"agreement", points_json(r.agreement)},
                  {"epsilon", str(r.epsilon)},
                  {"distance", str(r.distance)},
                  {"bound", str(bound)}};
    };
  });

  auto* minc = app.add_subcommand("min-conj", "Exhaustive minimum conjugator distance");
  minc->add_option("first", hom_path)->required();
  minc->add_option("second", hom_path2)->required();
  minc->callback([&] {
    run = [&] {
      const auto a = hom_file(hom_path);
      const auto b = hom_file(hom_path2);
      if (a.degree() > opt.max_degree) {
        throw DomainError("degree " + std::to_string(a.degree()) + " exceeds --max-degree");
      }
      const auto r = min_conjugator_distance(a, b);
      if (!r) return Json{{"conjugate", false}};
      return Json{{"conjugate", true},
                  {"distance", str(r->distance)},
                  {"conjugator", to_cycle_string(r->conjugator)}};
    };
  });

  auto* extend = app.add_subcommand("extend", "Extend a subgroup homomorphism to G");
  extend->add_option("group", group_path)->required();
  extend->add_option("subgroup", subgroup_path)->required();
  extend->add_option("phi", phi_path)->required();
  extend->callback([&] {
    run = [&] {
      const auto spec = io::group_from_json(json_file(group_path),
                                            std::filesystem::path(group_path).parent_path());
      const GroupPtr& g = spec.finite();
      const auto sub = io::subgroup_from_json(*g, json_file(subgroup_path));
      const Json phi_json = json_file(phi_path);
      const std::size_t n = phi_json.at("degree").get<std::size_t>();
      std::vector<Permutation> images;
      for (const auto& name : sub.names) {
        if (!phi_json.at("images").contains(name)) {
          throw ParseError("phi is missing subgroup generator '" + name + "'");
        }
        images.push_back(io::permutation_from_json(phi_json.at("images").at(name), n));
      }
      const auto phi = io::hom_on_subgroup(*g, sub, n, images);
      const auto ext = has_extension(g, sub.subgroup, phi, opt.max_degree);
      if (!ext) return Json{{"extends", false}};
      return Json{{"extends", true}, {"extension", io::hom_images_json(*ext)}};
    };
  });

  auto* complement = app.add_subcommand("complement", "Normal complement and retraction");
  complement->add_option("group", group_path)->required();
  complement->add_option("subgroup", subgroup_path)->required();
  complement->callback([&] {
    run = [&] {
      const auto spec = io::group_from_json(json_file(group_path),
                                            std::filesystem::path(group_path).parent_path());
      const GroupPtr& g = spec.finite();
      const auto sub = io::subgroup_from_json(*g, json_file(subgroup_path));
      const auto k = find_normal_complement(*g, sub.subgroup);
      if (!k) return Json{{"retract", false}, {"complement", nullptr}};
      Json out{{"retract", true}, {"complement", k->members}};
      if (spec.natural) {
        Json perms = Json::array();
        for (int x : k->members) perms.push_back(to_cycle_string(spec.natural->image(x)));
        out["complement_permutations"] = perms;
      }
      out["retraction"] = retraction_map(*g, sub.subgroup, *k);
      return out;
    };
  });

  auto* amalgam = app.add_subcommand("amalgam", "Assemble psi1 * psi2 on an amalgam");
  amalgam->add_option("first", hom_path)->required();
  amalgam->add_option("second", hom_path2)->required();
  amalgam->add_option("--h-map", h_map)->required();
  amalgam->callback([&] {
    run = [&] {
      const auto a = hom_file(hom_path);
      const auto b = hom_file(hom_path2);
      const auto embedding =
          io::embedding_from_json(json_file(h_map), a.generator_names(), b.generator_names());
      const auto hom = amalgamated_hom(a, b, embedding);
      Json out{{"agree", true}, {"degree", hom.degree()}};
      if (const auto presentation = hom.presentation()) {
        std::vector<Permutation> gens;
        for (std::size_t k = 0; k < a.generator_count(); ++k) gens.push_back(a.generator_image(k));
        for (std::size_t k = 0; k < b.generator_count(); ++k) gens.push_back(b.generator_image(k));
        const auto check = check_relators(*presentation, gens);
        Json relators = Json::array();
        for (const auto& r : presentation->relators()) {
          relators.push_back(format_word(r, presentation->generator_names()));
        }
        out["relators"] = relators;
        out["relators_ok"] = check.ok;
        if (!check.ok) out["failing_relator"] = check.witness;
      }
      return out;
    };
  });

  auto* lift = app.add_subcommand("lift", "Replication count and lifted homomorphism");
  lift->add_option("--phi", phi_path)->required();
  lift->add_option("--psi", psi_path)->required();
  lift->add_option("--eta", eta_path);
  lift->callback([&] {
    run = [&] {
      const auto phi = hom_file(phi_path);
      const auto psi = hom_file(psi_path);
      const std::size_t s = replication_count(phi, psi);
      Json out{{"replication_count", s}};
      if (!eta_path.empty()) {
        const auto lifted = compose_lift(psi, s, hom_file(eta_path));
        out["lift"] = io::hom_images_json(lifted);
      }
      return out;
    };
  });

  auto* correct = app.add_subcommand("correct", "Nearest permutation commuting with a coefficient");
  correct->add_option("--coef", coef)->required();
  correct->add_option("--almost", almost)->required();
  correct->add_option("--mode", mode)->check(CLI::IsMember({"exact", "heuristic"}));
  correct->add_option("--degree", degree, "Degree (default: largest point mentioned)");
  correct->callback([&] {
    run = [&] {
      const std::size_t n = degree ? degree : infer_degree({coef, almost});
      const auto a = parse_permutation(coef, n);
      const auto q = parse_permutation(almost, n);
      const auto r = centralizer_correct(
          a, q, mode == "exact" ? CorrectionMode::kExact : CorrectionMode::kHeuristic);
      return Json{{"corrected", to_cycle_string(r.corrected)},
                  {"distance", str(r.distance)},
                  {"input_defect", str(r.input_defect)},
                  {"mode_used", r.mode_used == CorrectionMode::kExact ? "exact" : "heuristic"},
                  {"centralizer_order", r.centralizer_order.str()}};
    };
  });

  auto* graph = app.add_subcommand("graph", "Action graph export");
  graph->add_option("hom", hom_path)->required();
  graph->add_flag("--encode", encode, "Also emit the simple-graph encoding");
  graph->callback([&] {
    run = [&] {
      const auto gamma = action_graph(hom_file(hom_path));
      Json out{{"graph", Json(to_json(gamma))}};
      if (encode) out["simple"] = Json(to_json(encode_to_simple(gamma)));
      return out;
    };
  });

  auto* dstat = app.add_subcommand("dstat", "Truncated statistical distance");
  dstat->add_option("first", hom_path)->required();
  dstat->add_option("second", hom_path2)->required();
  dstat->callback([&] {
    run = [&] {
      const auto g1 = action_graph(hom_file(hom_path));
      const auto g2 = action_graph(hom_file(hom_path2));
      const auto d = stat_distance_truncated(g1, g2, opt.size_bound);
      Json terms = Json::array();
      for (const auto& t : d.terms) {
        if (t.first == t.second) continue;
        Json edges = Json::array();
        for (const auto& [s, u, l] : t.pattern.edges) edges.push_back({s + 1, u + 1, g1.labels[l]});
        terms.push_back({{"j", t.index},
                         {"vertices", t.pattern.vertex_count},
                         {"edges", edges},
                         {"first", str(t.first)},
                         {"second", str(t.second)}});
      }
      return Json{{"d_stat", str(d.value)},
                  {"size_bound", opt.size_bound},
                  {"patterns", d.terms.size()},
                  {"per_pattern", terms}};
    };
  });

  auto* verify = app.add_subcommand("verify-paper", "Run the bundled example checks");
  verify->callback([&] { run = [&] { return verify_paper(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("usage", e.what()).dump() << '\n';
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Json outputs;
  int code = kExitOk;
  try {
    outputs = run();
  } catch (const AmalgamMismatch& e) {
    outputs = error_json("domain", e.what());
    outputs["error"]["h"] = e.h_generator();
    outputs["error"]["first"] = to_cycle_string(e.first_image());
    outputs["error"]["second"] = to_cycle_string(e.second_image());
    code = kExitDomain;
  } catch (const DomainError& e) {
    outputs = error_json("domain", e.what());
    code = kExitDomain;
  } catch (const ParseError& e) {
    outputs = error_json("malformed-input", e.what());
    code = kExitMalformed;
  } catch (const nlohmann::json::exception& e) {
    outputs = error_json("malformed-input", e.what());
    code = kExitMalformed;
  } catch (const std::exception& e) {
    outputs = error_json("internal", e.what());
    code = kExitInternal;
  }

  if (!opt.report) {
    std::cout << outputs.dump() << '\n';
    return code;
  }
  std::string command;
  std::string digest_input;
  for (int i = 1; i < argc; ++i) {
    command += (i > 1 ? " " : "") + std::string(argv[i]);
  }
  for (const auto& path : g_inputs) digest_input += path + '\0' + read_file(path) + '\0';
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json report{{"command", command},
              {"inputs_digest", sha256_hex(digest_input)},
              {"seed", opt.seed},
              {"outputs", outputs},
              {"timing_ms", ms}};
  std::cout << report.dump() << '\n';
  return code;
}
