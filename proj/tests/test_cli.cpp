#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "intdep/cli.hpp"

using namespace intdep;
namespace fs = std::filesystem;

namespace {

std::string problem(const std::string& name) { return std::string(INTDEP_SOURCE_DIR) + "/problems/" + name; }

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "intdep");
  std::ostringstream out, err;
  Outcome r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

/// Fresh scratch directory removed on scope exit.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("intdep-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

nlohmann::json without_run(nlohmann::json j) {
  j.erase("run");
  return j;
}

ParseError parse_failure(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError("none", 0, 0);
}

}  // namespace

TEST(Parser, PlaneExample) {
  const ProblemSpec p = parse_problem("ring Q[X,Y]; I = (X^2, X*Y^2); J = (X^2, X*Y);");
  EXPECT_EQ(p.ring->variables(), (std::vector<std::string>{"X", "Y"}));
  EXPECT_TRUE(p.ring->is_polynomial_ring());
  ASSERT_EQ(p.ideals.size(), 2u);
  const auto X = p.ring->var(0), Y = p.ring->var(1);
  EXPECT_EQ(p.ideals[0].generators, (std::vector<Polynomial>{X * X, X * Y * Y}));
  EXPECT_EQ(p.ideals[1].generators, (std::vector<Polynomial>{X * X, X * Y}));
  EXPECT_FALSE(p.c);
  EXPECT_FALSE(p.assert_domain);
}

TEST(Parser, CubicConeExample) {
  const ProblemSpec p = parse_problem("ring Q[x,y,z] / (x^3+y^3+z^3); I = (x+y+z, y*z); J = (x+y, z);");
  EXPECT_EQ(p.ring->relations().size(), 1u);
  EXPECT_EQ(p.ring->dimension(), 2u);
  EXPECT_EQ(p.ring->multiplicity(), 3);
  EXPECT_EQ(p.ideal("J").generators().size(), 2u);
}

TEST(Parser, OptionsFieldsAndComments) {
  const ProblemSpec p = parse_problem(
      "# header\nring GF 101[a,b];\nI = (3*a^2 - (a+b)*b, 2*a*b); # trailing\n"
      "option c = 5;\noption oracle;\noption sharp-range;\noption assert-domain;\n");
  EXPECT_EQ(p.ring->field(), Field::prime(101));
  EXPECT_EQ(p.c, 5u);
  EXPECT_TRUE(p.oracle);
  EXPECT_TRUE(p.sharp_range);
  EXPECT_TRUE(p.assert_domain);
  const auto a = p.ring->var(0), b = p.ring->var(1);
  EXPECT_EQ(p.ideals[0].generators[0], a.pow(2).scaled(3) - a * b - b * b);
}

TEST(Parser, NonHomogeneousGenerator) {
  const ParseError e = parse_failure("ring Q[x,y];\nI = (x^2 + y);");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(e.message().find("homogeneous"), std::string::npos);
}

TEST(Parser, UnknownVariable) {
  const ParseError e = parse_failure("ring Q[x,y];\nI = (x, w);");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 9u);
  EXPECT_NE(e.message().find("w"), std::string::npos);
}

TEST(Parser, SyntaxErrors) {
  EXPECT_EQ(parse_failure("ring Q[x,y]\nI = (x);").line(), 2u);
  parse_failure("ring Q[x,y]; I = (x y);");
  parse_failure("ring Q[x,y]; I = x;");
  parse_failure("ring GF 4[x,y]; I = (x);");
  parse_failure("ring Q[x,x]; I = (x);");
  parse_failure("ring Q[x,y]; option frobnicate;");
  parse_failure("ring Q[x,y]; I = (x); I = (y);");
  parse_failure("I = (x);");
  parse_failure("ring Q[x,y]; I = (x) $");
}

TEST(Parser, RoundTripOnProblemFiles) {
  for (const auto& entry : fs::directory_iterator(fs::path(INTDEP_SOURCE_DIR) / "problems")) {
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    const ProblemSpec first = parse_problem(ss.str());
    const std::string text = serialize_problem(first);
    const ProblemSpec second = parse_problem(text);
    EXPECT_EQ(first, second) << entry.path();
    EXPECT_EQ(serialize_problem(second), text) << entry.path();
  }
}

TEST(Cli, CheckPlaneExample) {
  const Outcome r = run({"check", problem("ex71.ideal")});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["schema_version"], report_schema_version);
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["verdict"]["pair"], nlohmann::json({true, false}));
  EXPECT_EQ(j["verdict"]["closures_equal"], false);
  EXPECT_EQ(j["epsilon_difference"], 1);
  EXPECT_TRUE(check_report_consistent(j));
  EXPECT_TRUE(j["run"]["stats"].contains("max_coeff_bits"));
}

TEST(Cli, CheckReductionWithOracle) {
  ScratchDir dir("oracle");
  std::ifstream in(problem("reduction.ideal"));
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string file = dir.file("red.ideal", ss.str() + "option oracle;\n");
  const Outcome r = run({"check", file, "--n", "2", "--sequential"});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["verdict"]["pair"], nlohmann::json({true, true}));
  EXPECT_EQ(j["epsilon_difference"], 0);
  EXPECT_TRUE(j["equigenerated"]["closures_equal"].get<bool>());
  EXPECT_TRUE(j["oracle"]["I"]["all_match"].get<bool>());
  EXPECT_TRUE(j["oracle"]["J"]["all_match"].get<bool>());
  EXPECT_TRUE(check_report_consistent(j));
}

TEST(Cli, ColengthCubicCone) {
  const Outcome r = run({"colength", problem("ex64.ideal")});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["verdict"]["finite_colength"], false);
  EXPECT_TRUE(check_report_consistent(j));
}

TEST(Cli, RaMultCubicCone) {
  const Outcome r = run({"ra-mult", problem("ex64.ideal"), "--ideal", "I"});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  EXPECT_EQ(r.json()["ra_multiplicities"], nlohmann::json({-2, 3}));
  const Outcome rj = run({"ra-mult", problem("ex64.ideal"), "--ideal", "J"});
  EXPECT_EQ(rj.json()["ra_multiplicities"], nlohmann::json({-1, 3}));
}

TEST(Cli, MixedTables) {
  const Outcome r = run({"mixed", problem("ex71.ideal")});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const auto j = r.json();
  EXPECT_TRUE(check_report_consistent(j));
  EXPECT_EQ(j["mixed"]["R"].size(), 2u);
  EXPECT_EQ(j["mixed"]["S"].size(), 3u);
  EXPECT_EQ(j["mixed"]["closures_equal"], false);
  const Outcome sharp = run({"mixed", problem("ex71.ideal"), "--sharp-range"});
  EXPECT_EQ(sharp.json()["mixed"]["sharp_range"], true);
  EXPECT_EQ(sharp.json()["mixed"]["closures_equal"], false);
}

TEST(Cli, DensityCsv) {
  const Outcome r = run({"density", problem("ex71.ideal"), "--ideal", "I", "--n", "8", "--x-from", "2", "--x-to", "4",
                     "--x-step", "1/4"});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,x_num,x_den,f_num,f_den,g_num,g_den");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows.front().substr(0, 6), "8,2,1,");
  EXPECT_EQ(rows[1].substr(0, 6), "8,9,4,");
  // x = 3 at n = 8: l((I^8)_24) = 17, scaled by 2/8
  EXPECT_EQ(rows[4], "8,3,1,17,4,17,4");
}

TEST(Cli, DensityLine) {
  const Outcome r = run({"density", problem("line.ideal"), "--n", "5", "--x-from", "2", "--x-to", "2"});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  EXPECT_NE(r.out.find("\n5,2,1,12,5,"), std::string::npos) << r.out;
}

TEST(Cli, OracleAllMatch) {
  const Outcome r = run({"oracle", problem("ex71.ideal"), "--n", "3"});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  EXPECT_TRUE(r.json()["all_match"].get<bool>());
  EXPECT_EQ(r.json()["ideals"]["I"]["rows"].size(), 3u);
}

TEST(Cli, ExitCodes) {
  ScratchDir dir("codes");
  const Outcome parse = run({"check", dir.file("bad.ideal", "ring Q[x,y];\nI = (x^2 + y);\nJ = (x);\n")});
  EXPECT_EQ(parse.code, exit_code::parse);
  EXPECT_EQ(parse.json()["error"]["kind"], "parse");
  EXPECT_EQ(parse.json()["error"]["line"], 2);

  const std::string undeclared = dir.file("cone.ideal", "ring Q[x,y,z] / (x^3+y^3+z^3); I = (x+y+z, y*z); J = (x+y, z);");
  const Outcome hyp = run({"check", undeclared});
  EXPECT_EQ(hyp.code, exit_code::hypothesis);
  EXPECT_EQ(hyp.json()["error"]["code"], "domain_not_asserted");
  EXPECT_EQ(run({"colength", undeclared, "--assert-domain"}).code, exit_code::ok);

  const Outcome full = run({"check", dir.file("full.ideal", "ring Q[x,y]; I = (x^2, y^2); J = (x, y);")});
  EXPECT_EQ(full.code, exit_code::hypothesis);
  EXPECT_EQ(full.json()["error"]["code"], "height_full");

  EXPECT_EQ(run({"check", dir.file("noj.ideal", "ring Q[x,y]; I = (x);")}).code, exit_code::failure);
  EXPECT_EQ(run({"check", (dir.path / "missing.ideal").string()}).code, exit_code::failure);
  EXPECT_EQ(run({"check", problem("ex71.ideal"), "--c", "2"}).code, exit_code::failure);
  EXPECT_EQ(run({"frobnicate"}).code, exit_code::failure);
  EXPECT_EQ(run({"density", problem("line.ideal"), "--x-step", "0"}).code, exit_code::failure);
}

TEST(Cli, COverrideChangesOnlyTheSlope) {
  const auto a = run({"check", problem("ex71.ideal")}).json();
  const auto b = run({"check", problem("ex71.ideal"), "--c", "5"}).json();
  EXPECT_EQ(b["verdict"]["c"], 5);
  EXPECT_EQ(a["verdict"]["pair"], b["verdict"]["pair"]);
}

TEST(Cache, RepeatRunHitsAndMatches) {
  ScratchDir dir("cache");
  const std::string cache = (dir.path / "gb").string();
  const Outcome first = run({"check", problem("ex71.ideal"), "--cache-dir", cache});
  ASSERT_EQ(first.code, exit_code::ok) << first.err;
  const Outcome second = run({"check", problem("ex71.ideal"), "--cache-dir", cache, "--verify-cache"});
  ASSERT_EQ(second.code, exit_code::ok) << second.err;
  EXPECT_GT(first.json()["run"]["stats"]["cache_misses"].get<int>(), 0);
  EXPECT_GT(second.json()["run"]["stats"]["cache_hits"].get<int>(), 0);
  EXPECT_EQ(second.json()["run"]["stats"]["cache_misses"], 0);
  auto strip = [](nlohmann::json j) { return without_run(std::move(j)); };
  EXPECT_EQ(strip(first.json()), strip(second.json()));
}

TEST(Cache, OnOffGiveSameVerdicts) {
  ScratchDir dir("onoff");
  const std::string cache = (dir.path / "gb").string();
  for (const char* name : {"ex71.ideal", "ex64.ideal", "reduction.ideal"}) {
    const auto off = run({"check", problem(name)}).json();
    const auto on = run({"check", problem(name), "--cache-dir", cache}).json();
    const auto again = run({"check", problem(name), "--cache-dir", cache}).json();
    const auto disabled = run({"check", problem(name), "--cache-dir", cache, "--no-cache"}).json();
    EXPECT_EQ(without_run(off), without_run(on)) << name;
    EXPECT_EQ(without_run(off), without_run(again)) << name;
    EXPECT_EQ(without_run(off), without_run(disabled)) << name;
    EXPECT_FALSE(disabled["run"]["cache"]["enabled"].get<bool>());
  }
}

TEST(Cache, PoisonedEntryIsDiscarded) {
  ScratchDir dir("poison");
  const std::string cache = (dir.path / "gb").string();
  const auto clean = run({"check", problem("ex71.ideal"), "--cache-dir", cache}).json();
  std::size_t poisoned = 0;
  for (const auto& entry : fs::directory_iterator(cache)) {
    std::ifstream in(entry.path());
    nlohmann::json doc = nlohmann::json::parse(in);
    in.close();
    doc["checksum"] = std::string(64, '0');
    std::ofstream(entry.path()) << doc.dump();
    ++poisoned;
  }
  ASSERT_GT(poisoned, 0u);
  const Outcome again = run({"check", problem("ex71.ideal"), "--cache-dir", cache, "--sequential"});
  ASSERT_EQ(again.code, exit_code::ok) << again.err;
  const auto j = again.json();
  EXPECT_EQ(j["run"]["cache"]["warnings"].size(), poisoned);
  EXPECT_EQ(j["run"]["stats"]["cache_misses"].get<std::size_t>(), poisoned);
  EXPECT_NE(again.err.find("corrupt"), std::string::npos);
  EXPECT_EQ(without_run(j), without_run(clean));
}

TEST(Cache, GarbageFileIsDiscarded) {
  ScratchDir dir("garbage");
  FileGroebnerStore store(dir.path);
  const Field q = Field::rationals();
  const std::vector<Polynomial> basis{Polynomial::variable(2, 0, q)};
  store.save("k", basis);
  EXPECT_EQ(store.load("k", 2, q, MonomialOrder::grevlex()), basis);
  std::ofstream(store.path_for("k")) << "{not json";
  EXPECT_FALSE(store.load("k", 2, q, MonomialOrder::grevlex()));
  EXPECT_FALSE(fs::exists(store.path_for("k")));
  EXPECT_EQ(store.warnings().size(), 1u);
}

TEST(Cache, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Binary, ExitCodeFromProcess) {
  const std::string cmd = std::string(INTDEP_CLI) + " check " + problem("ex71.ideal") + " > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  const std::string bad = std::string(INTDEP_CLI) + " check " + problem("ex64.ideal") + " --c 1 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), exit_code::failure);
}
