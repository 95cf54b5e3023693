#include <gtest/gtest.h>

#include <fstream>
#include "json.hpp"
#include <sstream>

#include "ccc/cli.hpp"

using nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  ordered_json json() const { return ordered_json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ccc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CCC_TEST_DEMO_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void expect_fixture_subset(const ordered_json& report, const std::string& fixture) {
  const ordered_json want = ordered_json::parse(slurp(fixture));
  for (auto it = want.begin(); it != want.end(); ++it) {
    ASSERT_TRUE(report.contains(it.key())) << fixture << " key " << it.key();
    EXPECT_EQ(report.at(it.key()), it.value()) << fixture << " key " << it.key();
  }
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { setenv("CCC_DEMOS_DIR", CCC_TEST_DEMO_DIR, 1); }
};

}  // namespace

TEST_F(CliTest, EnvelopeCarriesInputsVersionAndSeed) {
  Outcome r = call({"endo", "limit", "--field", "Q", "--matrix", R"([["1","1"],["0","2"]])", "--weights", "1,-1",
                    "--seed", "41"});
  ASSERT_EQ(r.code, ccc::cli::kExitOk) << r.err;
  ordered_json j = r.json();
  EXPECT_EQ(j["tool"], "ccc");
  EXPECT_EQ(j["version"], "1.0.0");
  EXPECT_EQ(j["inputs"]["command"], "endo limit");
  EXPECT_EQ(j["inputs"]["argv"].size(), 10u);
  EXPECT_EQ(j["inputs"]["argv"][0], "endo");
  EXPECT_EQ(j["descriptor"], "Q");
  EXPECT_EQ(j["seed"], 41);
  EXPECT_TRUE(j["report"]["exists"].get<bool>());
  EXPECT_EQ(j["report"]["limit"]["rows"], ordered_json::parse(R"([["1","0"],["0","2"]])"));
}

TEST_F(CliTest, SameSeedSameReport) {
  const std::vector<std::string> args{"tuple", "semisimple", "--field", "Q", "--tuple", "upper_pair_Q.json", "--seed", "5"};
  Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.json()["report"]["semisimple"].get<bool>());
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(call({"bogus"}).code, ccc::cli::kExitUsage);
  EXPECT_EQ(call({"endo"}).code, ccc::cli::kExitUsage);
  EXPECT_EQ(call({"endo", "analyze", "--field", "Q", "--matrix", "no_such_file.json"}).code, ccc::cli::kExitUsage);
  EXPECT_EQ(call({"endo", "analyze", "--field", "Q", "--matrix", R"([["1"]])", "--format", "dot"}).code,
            ccc::cli::kExitUsage);
  EXPECT_EQ(call({"demo", "rsquares", "--format", "yaml"}).code, ccc::cli::kExitUsage);
}

TEST_F(CliTest, DomainErrorsExitTwoWithErrorObject) {
  Outcome r = call({"poly", "squarefree", "--field", "GF(6)", "--poly", "x^2"});
  ASSERT_EQ(r.code, ccc::cli::kExitDomain);
  ordered_json j = r.json();
  EXPECT_EQ(j["tool"], "ccc");
  EXPECT_EQ(j["error"]["kind"], "DomainError");
  EXPECT_FALSE(j["error"]["message"].get<std::string>().empty());
  EXPECT_EQ(j["inputs"]["command"], "poly squarefree");

  Outcome z = call({"poly", "factor", "--field", "GF(3)", "--poly", "0"});
  ASSERT_EQ(z.code, ccc::cli::kExitDomain);
  EXPECT_EQ(z.json()["error"]["kind"], "ZeroPolynomial");
}

TEST_F(CliTest, AnalyzeCompanionOfT12PlusT) {
  Outcome r = call({"endo", "analyze", "--field", "Fp(t):p=2", "--matrix", "comp_T12_plus_t.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  ordered_json rep = r.json()["report"];
  EXPECT_TRUE(rep["cocharacter_closed"].get<bool>());
  EXPECT_FALSE(rep["geometrically_closed"].get<bool>());
}

TEST_F(CliTest, RationalSquaresAccessibilityFromMinusOne) {
  Outcome r = call({"graph", "access", "--model", "rsquares", "--field", "Q", "--seed-point", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  ordered_json rep = r.json()["report"];
  ASSERT_EQ(rep["nodes"].size(), 2u);
  EXPECT_EQ(rep["nodes"][0]["representative"], ordered_json::parse(R"(["-1"])"));
  EXPECT_EQ(rep["nodes"][1]["representative"], ordered_json::parse(R"(["0"])"));
  EXPECT_EQ(rep["minimal"], "0");
  ASSERT_EQ(rep["edges"].size(), 1u);
}

TEST_F(CliTest, AccessibilityGraphAsDot) {
  Outcome r = call({"graph", "access", "--model", "rsquares", "--field", "Q", "--seed-point", "-1", "--format", "dot"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("// envelope: ", 0), 0u);
  EXPECT_NE(ccc::cli::dot_body(r.out).find("digraph"), std::string::npos);
}

TEST_F(CliTest, RuConjugatorForUpperTriangular) {
  Outcome r = call({"endo", "ru-conjugate", "--field", "Q", "--matrix", R"([["1","1"],["0","2"]])", "--limit",
                    R"([["1","0"],["0","2"]])", "--weights", "1,-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  ordered_json rep = r.json()["report"];
  EXPECT_EQ(rep["membership"], "InRuP");
  EXPECT_EQ(rep["conjugator"]["rows"], ordered_json::parse(R"([["1","-1"],["0","1"]])"));

  Outcome bad = call({"endo", "ru-conjugate", "--field", "Q", "--matrix", R"([["1","1"],["0","2"]])", "--limit",
                      R"([["1","0"],["0","3"]])", "--weights", "1,-1"});
  EXPECT_EQ(bad.code, ccc::cli::kExitDomain);
}

TEST_F(CliTest, TextFormatFlattensKeys) {
  Outcome r = call({"endo", "limit", "--field", "Q", "--matrix", R"([["1","1"],["0","2"]])", "--weights", "1,-1",
                    "--seed", "7", "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tool: ccc\n"), std::string::npos);
  EXPECT_NE(r.out.find("seed: 7\n"), std::string::npos);
  EXPECT_NE(r.out.find("report.exists: true\n"), std::string::npos);
}

TEST_F(CliTest, G2FigureMatchesStoredDot) {
  Outcome three = call({"g2", "figure", "--p", "3"});
  ASSERT_EQ(three.code, 0) << three.err;
  EXPECT_EQ(three.out.rfind("// envelope: ", 0), 0u);
  EXPECT_EQ(ccc::cli::dot_body(three.out), slurp("g2_figure_p3.dot"));
  for (const char* p : {"2", "5"}) {
    Outcome other = call({"g2", "figure", "--p", p});
    ASSERT_EQ(other.code, 0) << other.err;
    EXPECT_EQ(ccc::cli::dot_body(other.out), slurp("g2_figure_pnot3.dot")) << "p = " << p;
  }
  Outcome js = call({"g2", "figure", "--p", "3", "--format", "json"});
  ASSERT_EQ(js.code, 0) << js.err;
  EXPECT_TRUE(js.json().contains("report"));
}

TEST_F(CliTest, G2CollectAndLimit) {
  Outcome c = call({"g2", "collect", "--p", "0", "--word", "u(b;1)*u(a;1)"});
  ASSERT_EQ(c.code, 0) << c.err;
  Outcome l = call({"g2", "limit", "--p", "5", "--word", "u(a;1)*u(b;1)", "--cocharacter", "rho"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(call({"g2", "collect", "--p", "0", "--word", "u(a;"}).code, ccc::cli::kExitDomain);
}

TEST_F(CliTest, DemosMatchFrozenFixtures) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"demo", "rsquares"}, "rsquares.expected.json"},
      {{"demo", "pgl2"}, "pgl2.expected.json"},
      {{"demo", "insepext"}, "insepext.expected.json"},
      {{"demo", "fromf4", "--p", "5"}, "fromf4.expected.json"},
  };
  for (const auto& [args, fixture] : cases) {
    Outcome r = call(args);
    ASSERT_EQ(r.code, 0) << fixture << ": " << r.err;
    expect_fixture_subset(r.json()["report"], fixture);
  }
}

TEST_F(CliTest, VersionFlag) {
  Outcome r = call({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE((r.out + r.err).find("1.0.0"), std::string::npos);
}
