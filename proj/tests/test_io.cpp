#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "permstab/error.hpp"
#include "permstab/io.hpp"
#include "permstab/rep_theory.hpp"

using namespace permstab;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = FIXTURE_DIR;

struct Run {
  int code = -1;
  std::string out;
  io::Json json() const { return io::Json::parse(out); }
};

Run run(const std::string& args) {
  const std::string cmd = "cd '" + kFixtures.string() + "' && '" PERM_STAB_BIN "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("permstab-io-" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }

 private:
  fs::path path_;
};

}  // namespace

TEST(Io, PermutationForms) {
  EXPECT_EQ(io::permutation_from_json(io::Json("(1 2)"), 3), parse_permutation("(1 2)", 3));
  EXPECT_EQ(io::permutation_from_json(io::Json::parse(R"j({"degree":3,"images":[2,1,3]})j"), std::nullopt),
            parse_permutation("(1 2)", 3));
  EXPECT_EQ(io::permutation_json(parse_permutation("(1 3)", 3)).dump(), R"j({"degree":3,"images":[3,2,1]})j");
  EXPECT_THROW(io::permutation_from_json(io::Json("(1 2)"), std::nullopt), ParseError);
  EXPECT_THROW(io::permutation_from_json(io::Json(5), 3), ParseError);
  EXPECT_THROW(io::permutation_from_json(io::Json::parse(R"j({"degree":2,"images":[1,1]})j"), std::nullopt),
               ParseError);
}

TEST(Io, GroupKinds) {
  const auto table = io::group_from_json(io::Json::parse(R"j({"kind":"table","order":2,"table":[[0,1],[1,0]]})j"));
  EXPECT_EQ(table.finite()->order(), 2u);
  const auto perms = io::group_from_json(
      io::Json::parse(R"j({"kind":"perm-gens","degree":3,"generators":["(1 2)","(1 2 3)"],"names":["t","c"]})j"));
  EXPECT_EQ(perms.finite()->order(), 6u);
  EXPECT_EQ(perms.generator_names(), (std::vector<std::string>{"t", "c"}));
  ASSERT_TRUE(perms.natural);
  const auto pres = io::group_from_json(
      io::Json::parse(R"j({"kind":"presentation","generators":["s","t"],"relators":["s^4","t^6","s^2 t^-3"]})j"));
  EXPECT_EQ(pres.presented()->relators().size(), 3u);
  EXPECT_EQ(io::group_from_json(io::Json::parse(R"j({"kind":"catalog","name":"A4"})j")).finite()->order(), 12u);

  EXPECT_THROW(io::group_from_json(io::Json::parse(R"j({"kind":"magic"})j")), ParseError);
  // Well-formed JSON describing something that is not a group.
  EXPECT_THROW(io::group_from_json(io::Json::parse(R"j({"kind":"table","order":2,"table":[[0,1],[1,1]]})j")),
               DomainError);
  EXPECT_THROW(io::group_from_json(io::Json::parse(R"j({"kind":"presentation","generators":["s"],"relators":["q"]})j")),
               ParseError);
  EXPECT_THROW(io::group_from_json(io::Json::parse(R"j([1,2])j")), ParseError);
}

TEST(Io, HomomorphismFiles) {
  const auto t1 = io::load_hom(kFixtures / "theta1.json");
  EXPECT_EQ(t1.degree(), 6u);
  EXPECT_EQ(io::hom_images_json(t1).dump(), R"j({"degree":6,"images":{"a":"(1 2)(3 4)","b":"(1 2)(5 6)"}})j");
  EXPECT_FALSE(is_conjugate(t1, io::load_hom(kFixtures / "theta2.json")).conjugate);
  EXPECT_THROW(io::load_hom(kFixtures / "missing.json"), ParseError);

  TempDir dir;
  const auto klein = R"j({"kind":"perm-gens","degree":4,"generators":["(1 2)(3 4)","(1 3)(2 4)"],"names":["a","b"]})j";
  const auto missing_name = dir.write("m.json", std::string(R"j({"group":)j") + klein + R"j(,"degree":2,"images":{"a":"(1 2)"}})j");
  EXPECT_THROW(io::load_hom(missing_name), ParseError);
  const auto unknown = dir.write(
      "u.json", std::string(R"j({"group":)j") + klein + R"j(,"degree":2,"images":{"a":"()","b":"()","c":"()"}})j");
  EXPECT_THROW(io::load_hom(unknown), ParseError);
  const auto not_hom = dir.write(
      "n.json", std::string(R"j({"group":)j") + klein + R"j(,"degree":3,"images":{"a":"(1 2 3)","b":"()"}})j");
  EXPECT_THROW(io::load_hom(not_hom), DomainError);
}

TEST(Io, SubgroupAndEmbedding) {
  const auto s3 = io::group_from_json(io::load_json_file(kFixtures / "s3.json")).finite();
  const auto spec = io::subgroup_from_json(*s3, io::load_json_file(kFixtures / "s3_z3.json"));
  EXPECT_EQ(spec.subgroup.order(), 3u);
  EXPECT_EQ(spec.names, (std::vector<std::string>{"z"}));
  const auto dflt = io::subgroup_from_json(*s3, io::Json::parse(R"j({"generators":["t"]})j"));
  EXPECT_EQ(dflt.names, (std::vector<std::string>{"h1"}));
  EXPECT_THROW(io::subgroup_from_json(*s3, io::Json::parse(R"j({"generators":["w"]})j")), ParseError);

  const std::vector<std::string> f{"s"}, g{"t"};
  const auto emb = io::embedding_from_json(io::load_json_file(kFixtures / "sl2_hmap.json"), f, g);
  EXPECT_EQ(emb.h_generators, (std::vector<std::string>{"z"}));
  EXPECT_EQ(emb.into_first, (std::vector<Word>{Word{1, 1}}));
  EXPECT_EQ(emb.into_second, (std::vector<Word>{Word{1, 1, 1}}));
}

TEST(Cli, DocumentedExamples) {
  auto r = run("trace --hom theta2.json --set \"a,b\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"tr\":\"1/3\"}\n");
  r = run("stats --hom theta1.json --fixed a --moved b");
  EXPECT_EQ(r.out, "{\"s\":\"1/3\"}\n");
  r = run("conj theta1.json theta1.json");
  EXPECT_EQ(r.out, "{\"conjugate\":true,\"witness\":\"()\"}\n");
  r = run("conj theta1.json theta2.json");
  EXPECT_EQ(r.json()["conjugate"], false);
  EXPECT_TRUE(r.json()["witness"].is_null());
  r = run("correct --coef \"(1 2 3)\" --almost \"(1 2)\" --mode exact");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["corrected"], "()");
  EXPECT_EQ(r.json()["distance"], "2/3");
  EXPECT_EQ(r.json()["mode_used"], "exact");
}

TEST(Cli, Subcommands) {
  auto r = run("mult theta2.json");
  ASSERT_EQ(r.code, 0);
  Rational total = 0;
  const auto mult = r.json();
  for (const auto& c : mult["classes"]) {
    total += parse_rational(c["r"].get<std::string>()) * static_cast<long long>(c["index"].get<int>());
  }
  EXPECT_EQ(total, 1);

  r = run("order theta1.json theta2.json");
  EXPECT_EQ(r.json()["leq"], false);
  r = run("min-conj ab2_first.json ab2_second.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["distance"], "3/4");
  r = run("min-conj ab2_first.json ab2_second.json --max-degree 6");
  EXPECT_EQ(r.code, 2);
  r = run("small-conj theta1.json theta1.json");
  EXPECT_EQ(r.json()["conjugator"], "()");
  r = run("extend s3.json s3_z3.json z3_phi.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["extends"], true);
  r = run("complement s3.json s3_z3.json");
  EXPECT_EQ(r.json()["retract"], false);
  r = run("complement s3.json s3_z2.json");
  EXPECT_EQ(r.json()["retract"], true);
  EXPECT_EQ(r.json()["complement_permutations"].size(), 3u);
  r = run("amalgam sl2_s.json sl2_t.json --h-map sl2_hmap.json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["agree"], true);
  EXPECT_EQ(r.json()["relators_ok"], true);
  r = run("lift --phi theta1.json --psi theta1.json");
  EXPECT_EQ(r.json()["replication_count"], 1);
  r = run("graph free2_a.json --encode");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["graph"]["vertices"], 3);
  r = run("dstat free2_a.json free2_a.json --size-bound 2");
  EXPECT_EQ(r.json()["d_stat"], "0");
  r = run("dstat free2_a.json free2_b.json --size-bound 2");
  EXPECT_NE(r.json()["d_stat"], "0");
}

TEST(Cli, ExitCodesAndErrors) {
  auto r = run("bogus");
  EXPECT_EQ(r.code, 64);
  EXPECT_EQ(r.json()["error"]["kind"], "usage");
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("trace").code, 64);
  r = run("trace --hom nowhere.json --set a");
  EXPECT_EQ(r.code, 65);
  EXPECT_EQ(r.json()["error"]["kind"], "malformed-input");
  r = run("amalgam sl2_s.json sl2_t_mismatch.json --h-map sl2_hmap.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json()["error"]["kind"], "domain");
  EXPECT_EQ(r.json()["error"]["h"], "z");
  EXPECT_EQ(r.json()["error"]["first"], "(1 3)(2 4)");
  EXPECT_EQ(r.json()["error"]["second"], "(1 2)");
  r = run("small-conj theta1.json theta2.json");
  EXPECT_EQ(r.code, 2);
  r = run("correct --coef \"(1 2\" --almost \"(1 2)\"");
  EXPECT_EQ(r.code, 65);
}

TEST(Cli, MalformedInputCorpus) {
  TempDir dir;
  const std::vector<std::pair<std::string, std::string>> corpus{
      {"not_json", "{\"group\": "},
      {"empty", ""},
      {"array", "[1, 2, 3]"},
      {"no_group", R"j({"degree":2,"images":{"a":"()"}})j"},
      {"bad_kind", R"j({"group":{"kind":"nope"},"degree":2,"images":{}})j"},
      {"bad_cycle", R"j({"group":"klein.json","degree":6,"images":{"a":"(1 2","b":"()"}})j"},
      {"big_point", R"j({"group":"klein.json","degree":6,"images":{"a":"(1 9)","b":"()"}})j"},
      {"degree_type", R"j({"group":"klein.json","degree":"six","images":{"a":"()","b":"()"}})j"},
      {"missing_gen", R"j({"group":"klein.json","degree":6,"images":{"a":"()"}})j"},
      {"not_hom", R"j({"group":"klein.json","degree":6,"images":{"a":"(1 2 3)","b":"()"}})j"},
      {"bad_table", R"j({"group":{"kind":"table","order":2,"table":[[0,1],[1,1]]},"degree":1,"images":{}})j"},
      {"bad_relator", R"j({"group":{"kind":"presentation","generators":["s"],"relators":["s^"]},"degree":1,"images":{"s":"()"}})j"},
  };
  fs::copy_file(kFixtures / "klein.json", dir.write("klein.json", "") , fs::copy_options::overwrite_existing);
  for (const auto& [name, text] : corpus) {
    const auto path = dir.write(name + ".json", text);
    const auto r = run("trace --hom '" + path.string() + "' --set a");
    EXPECT_TRUE(r.code == 65 || r.code == 2) << name << " exit " << r.code;
    io::Json j;
    ASSERT_NO_THROW(j = r.json()) << name << ": " << r.out;
    ASSERT_TRUE(j.contains("error")) << name;
    EXPECT_TRUE(j["error"].contains("kind"));
    EXPECT_TRUE(j["error"].contains("message"));
    EXPECT_EQ(j["error"]["kind"], r.code == 65 ? "malformed-input" : "domain") << name;
  }
}

TEST(Cli, DeterministicOutput) {
  for (const std::string args : {"verify-paper", "mult theta1.json", "dstat free2_a.json free2_b.json",
                                 "verify-paper --seed 7", "small-conj ab2_first.json ab2_second.json"}) {
    const auto a = run(args);
    const auto b = run(args);
    EXPECT_EQ(a.code, b.code) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
  const auto a = run("--report mult theta1.json").json();
  const auto b = run("--report mult theta1.json").json();
  EXPECT_EQ(a["outputs"], b["outputs"]);
  EXPECT_EQ(a["inputs_digest"], b["inputs_digest"]);
  EXPECT_EQ(a["inputs_digest"].get<std::string>().size(), 64u);
  EXPECT_EQ(a["outputs"], run("mult theta1.json").json());
}

TEST(Cli, VerifyPaperReportsEveryClaim) {
  const auto r = run("verify-paper");
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  bool saw_k2 = false;
  for (const auto& c : j["checks"]) {
    const std::string claim = c["claim"];
    if (claim.find("k=2") != std::string::npos && claim.find("every conjugator") != std::string::npos) {
      saw_k2 = true;
      // The exhaustive search finds a conjugator fixing two points.
      EXPECT_EQ(c["pass"], false);
      EXPECT_EQ(c["observed"].get<std::string>().rfind("3/4 ", 0), 0u);
    } else {
      EXPECT_EQ(c["pass"], true) << claim;
    }
  }
  EXPECT_TRUE(saw_k2);
  EXPECT_EQ(j["all_pass"], false);
}
