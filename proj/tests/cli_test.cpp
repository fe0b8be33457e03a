#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "h4/cli.hpp"
#include "h4/corpus.hpp"
#include "h4/io.hpp"

using namespace h4;

namespace {

struct Out {
  int code;
  std::string out;
  std::string err;
};

Out run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = cli::run(std::move(args), o, e);
  return {code, o.str(), e.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, Expand) {
  EXPECT_EQ(run({"expand", "--alpha", "one", "--digits", "5"}).out, "2 2 2 2 2\n");
  const Out ex = run({"expand", "--digits", "12"});
  EXPECT_EQ(ex.code, 0);
  EXPECT_EQ(ex.out, "3 2 3 1 2 1 3 2 3 1 2 1\n");
  const Out cut = run({"expand", "--alpha", R"({"P":[0,1],"Q":[0,0],"D":[1,0],"S":[2,0]})"});
  EXPECT_EQ(cut.code, 0);
  EXPECT_NE(cut.out.find("terminated"), std::string::npos);
}

TEST(Cli, BestJsonRoundTrip) {
  const Out o = run({"best", "--count", "4", "--json"});
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  ASSERT_EQ(j.size(), 4u);
  std::vector<std::string> names;
  for (const auto& b : j) names.push_back(fraction_from_json(b["fraction"]).str());
  EXPECT_EQ(names, (std::vector<std::string>{"2√2/1", "7/(2√2)", "16√2/9", "57/(16√2)"}));
}

TEST(Cli, BestNeedsOneBound) {
  EXPECT_EQ(run({"best"}).code, 2);
  EXPECT_EQ(run({"best", "--count", "3", "--max-q", "10"}).code, 2);
}

TEST(Cli, SurdJsonRoundTrip) {
  for (const Surd& a : make_corpus(51, 20)) {
    const json j = to_json(a);
    EXPECT_EQ(surd_from_json(json::parse(j.dump())), a);
  }
  const Surd big = Surd(ZRt2(Int("123456789012345678901234567890"), Int(7)));
  EXPECT_TRUE(to_json(big)["P"][0].is_string());
  EXPECT_EQ(surd_from_json(to_json(big)), big);
}

TEST(Cli, FractionJsonRejectsNonCanonical) {
  EXPECT_NO_THROW(fraction_from_json(json::parse(R"({"p":[7,0],"q":[0,2]})")));
  EXPECT_THROW(fraction_from_json(json::parse(R"({"p":[0,2],"q":[2,0]})")), Error);
  EXPECT_THROW(fraction_from_json(json::parse(R"({"p":[7,0],"q":[0,2],"family":"Sqrt2OverOdd"})")), Error);
}

TEST(Cli, ParseAlpha) {
  EXPECT_TRUE(std::holds_alternative<DigitStream>(parse_alpha("stream:21(2333)")));
  EXPECT_EQ(std::get<DigitStream>(parse_alpha("stream:21(2333)")).str(), "[21(2333)^∞]");
  try {
    parse_alpha("stream:2143");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("position 9"), std::string::npos);
  }
  EXPECT_THROW(parse_alpha("{\"P\": [1,"), Error);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"best", "--alpha", "{bad", "--count", "2"}).code, 2);
  EXPECT_EQ(run({"best", "--alpha", R"({"P":[1,0],"Q":[1,0],"D":[3,0],"S":[0,0]})", "--count", "2"}).code, 2);
  EXPECT_EQ(run({"best", "--count", "50", "--cap-iterations", "10"}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"k", "--alpha", R"({"P":[0,3],"Q":[0,0],"D":[1,0],"S":[1,0]})"}).code, 2);
  EXPECT_EQ(run({"k", "--stream", "A", "--exact"}).code, 2);
  EXPECT_EQ(run({"corpus", "--prng", "pcg"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, KExactForOne) {
  const Out o = run({"k", "--alpha", "one", "--exact", "--json"});
  ASSERT_EQ(o.code, 0);
  const json j = json::parse(o.out);
  EXPECT_EQ(j["method"], "ExactPeriodic");
  EXPECT_EQ(surd_from_json(j["exact"]), Surd(QRt2(ZRt2(1, 1), Int(2))));
}

TEST(Cli, KCsvRecords) {
  const Out o = run({"k", "--alpha", "one", "--csv", "--count", "5"});
  ASSERT_EQ(o.code, 0);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i,value_decimal,case,exact_num,exact_den");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Cli, Dirichlet) {
  const Out o = run({"dirichlet", "--n-max", "50", "--json"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json::parse(o.out)["failures"], 0);
}

TEST(Cli, Legendre) {
  const Out o = run({"legendre", "--p", "0,2", "--q", "1,0"});
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("BestBySufficient"), std::string::npos);
}

TEST(Cli, Deterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"corpus", "--corpus-size", "5", "--json"},
           {"best", "--max-q", "100", "--csv"},
           {"optimality", "--stream", "B", "--i-max", "3"},
           {"rosen", "--max-q", "1000"}}) {
    const Out a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, CorpusGolden) {
  const Out o = run({"corpus", "--corpus-size", "3", "--format", "json"});
  ASSERT_EQ(o.code, 0);
  const std::string golden = slurp(std::string(H4_GOLDEN_DIR) + "/corpus_seed1_size3.json");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(json::parse(o.out), json::parse(golden));
  // Every element passes the draw filter.
  for (const auto& e : json::parse(golden)) {
    const Surd a = surd_from_json(e);
    EXPECT_GT(a, Surd(0));
    EXPECT_FALSE(a.in_qh4());
  }
}

TEST(Cli, ConfigFile) {
  const std::string path = testing::TempDir() + "h4_test.conf";
  {
    std::ofstream f(path);
    f << "alpha = one\ndigits = 3\n";
  }
  EXPECT_EQ(run({"expand", "--config", path}).out, "2 2 2\n");
  EXPECT_EQ(run({"expand", "--config", path, "--digits", "2"}).out, "2 2\n");
}
