#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "symplex/cli.hpp"
#include "symplex/error.hpp"
#include "symplex/io.hpp"
#include "symplex/random_word.hpp"

using namespace symplex;

namespace {

std::string golden(const std::string& name) {
  std::ifstream f(std::string(SYMPLEX_GOLDEN_DIR) + "/" + name);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "symplex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

template <typename T, typename Parse>
void expect_round_trip(const T& value, Parse parse) {
  const io::Json j = io::to_json(value);
  EXPECT_EQ(io::dump(io::to_json(parse(j))), io::dump(j));
}

}  // namespace

TEST(Json, RingElementRoundTrip) {
  const Ring r(BaseRing::prime_field(7), MonoidSpec::free_mixed(1, 1, {"x", "y"}));
  const RingElement a = r.parse("3*x^2*y^-1 + 5 - x");
  expect_round_trip(a, [](const io::Json& j) { return io::element_from_json(j); });
  const io::Json j = io::to_json(a);
  EXPECT_EQ(j["terms"][0][0][0], "0/1");
  EXPECT_EQ(io::element_from_json(j), a);

  const Ring c(BaseRing::rationals(), MonoidSpec::c_divisible(MonoidSpec::affine({{1, 0}, {1, 1}}), 2, 2));
  const RingElement b = c.parse("m[1/4,0] - 1/2*m[1/2,1/4]");
  expect_round_trip(b, [](const io::Json& j) { return io::element_from_json(j); });
}

TEST(Json, CanonicalHandWrittenTerms) {
  // Unsorted duplicate terms merge to the same bytes as the printed form.
  const io::Json raw = io::parse(R"({"base":"Z","monoid":{"kind":"free_mixed","polynomial":1,"laurent":0},
    "terms":[[["1/1"],"2"],[["0"],"1"],[["1"],"-2"],[["2/2"],"3"]]})");
  const RingElement a = io::element_from_json(raw);
  const Ring r(BaseRing::integers(), MonoidSpec::free_mixed(1, 0));
  EXPECT_EQ(a, r.one() + r.constant(3) * r.variable(0));
}

TEST(Json, MatrixWordAndReports) {
  const Ring r(BaseRing::prime_field(7), MonoidSpec::free_mixed(0, 0));
  const GenWord w = random_word(2, 8, r, 3);
  expect_round_trip(w, io::word_from_json);
  expect_round_trip(word_eval(w).matrix(), io::matrix_from_json);

  GenWord d(2, Ring(BaseRing::rationals(), MonoidSpec::free_mixed(1, 0, {"t"})));
  d.t = d.ring.variable(0);
  d.tokens.push_back(Token::delta_conj(IndexSet(2, {1, 4}), -1));
  d.tokens.push_back(Token::sw(1, 3, d.ring.constant(2)).inverse());
  expect_round_trip(d, io::word_from_json);

  const auto fr = factor_over_field(word_eval(w));
  expect_round_trip(fr, io::factorization_from_json);
  const auto suite = run_suite({"form-axioms", "l2-table"}, 5);
  expect_round_trip(suite, io::suite_report_from_json);
}

TEST(Json, GeometryRoundTrip) {
  const RationalCone cone(2, {{1, 0}, {1, 1}, {1, 2}});
  expect_round_trip(cone, io::cone_from_json);
  expect_round_trip(shipped_polarized_example(), io::polarized_from_json);
  for (auto m : {MonoidSpec::affine({{1, 0}, {1, 1}, {1, 2}}), MonoidSpec::free_mixed(2, 1, {"a", "b", "c"}),
                 MonoidSpec::c_divisible(MonoidSpec::affine({{2, 0}, {0, 1}}), 3, 1)}) {
    const io::Json j = io::to_json(*m);
    EXPECT_TRUE(io::monoid_from_json(j)->same_as(*m));
  }
}

TEST(Json, ParseErrors) {
  for (const char* text : {"{", R"({"base":"R","terms":[]})", R"({"base":"Z","terms":[[["x"],"1"]]})",
                           R"({"n":2,"ring":{"base":"Z"},"entries":[["1"]]})"}) {
    try {
      const io::Json j = io::parse(text);
      if (j.contains("entries")) (void)io::matrix_from_json(j);
      else (void)io::element_from_json(j);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << text;
    }
  }
}

TEST(Cli, SpCheckIdentity) {
  const CliRun r = run({"sp-check"}, golden("id4.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\n  \"symplectic\": true\n}\n");

  const CliRun bad = run({"sp-check"}, R"({"n":1,"ring":{"base":"Z"},"entries":[["1","1"],["1","1"]]})");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("false"), std::string::npos);
}

TEST(Cli, FactorWordProductRoundTrips) {
  const std::string input = golden("word_product.json");
  const CliRun r = run({"factor"}, input);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto result = io::factorization_from_json(io::parse(r.out));
  EXPECT_TRUE(result.complete());
  EXPECT_EQ(word_eval(result.word).matrix(), io::matrix_from_json(io::parse(input)));
  // The committed product is the evaluation of the committed word.
  EXPECT_EQ(run({"mult"}, golden("word_z.json")).out, input);
}

TEST(Cli, VerifyTableLemma) {
  const CliRun r = run({"verify", "--lemma", "l2-table", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = io::suite_report_from_json(io::parse(r.out));
  EXPECT_TRUE(rep.lemmas.at("l2-table").failures.empty());
  EXPECT_EQ(run({"verify", "--lemma", "nope"}).code, 1);
}

TEST(Cli, RandomWordGolden) {
  EXPECT_EQ(run({"random-word", "--n", "2", "--length", "6", "--ring", "Fp:7", "--seed", "1"}).out,
            golden("random_word_seed1_n2_len6_fp7.json"));
  const CliRun empty = run({"random-word", "--n", "3", "--length", "0"});
  EXPECT_TRUE(io::word_from_json(io::parse(empty.out)).empty());
}

TEST(Cli, GoldenWordMatchesDocumentedGenerator) {
  // Replays the documented draws with a local copy of the mixing function.
  std::uint64_t state = 1;
  auto next = [&]() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  const io::Json w = io::parse(golden("random_word_seed1_n2_len6_fp7.json"));
  ASSERT_EQ(w["tokens"].size(), 6U);
  for (const auto& tok : w["tokens"]) {
    const bool se = next() % 4 < 3;
    const std::size_t i = 1 + next() % 4;
    std::size_t j = 0;
    if (se) {
      do j = 1 + next() % 4; while (j == i || j == sigma(i));
    }
    const long c = 1 + static_cast<long>(next() % 6);
    EXPECT_EQ(tok["op"], se ? "se" : "se_diag");
    EXPECT_EQ(tok["i"], i);
    if (se) EXPECT_EQ(tok["j"], j);
    EXPECT_EQ(tok["lambda"]["terms"][0][1], std::to_string(c));
  }
}

TEST(Cli, GeometryCommands) {
  const CliRun pyr = run({"pyramid-split"}, R"({"rank":2,"rays":[[1,0],[1,1],[1,2]]})");
  ASSERT_EQ(pyr.code, 0) << pyr.err;
  EXPECT_TRUE(io::parse(pyr.out).contains("pyramid"));
  const CliRun pol = run({"polarized-check", "--example"});
  EXPECT_EQ(pol.code, 0) << pol.err;
  const CliRun info = run({"monoid-info", "--bound", "4"}, R"({"kind":"affine","generators":[[1,0],[1,1],[1,2]]})");
  ASSERT_EQ(info.code, 0) << info.err;
  EXPECT_EQ(io::parse(info.out)["cone"]["extreme_rays"].size(), 2U);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"random-word", "--n", "2"}).code, 2);
  const CliRun garbage = run({"sp-check"}, "not json");
  EXPECT_EQ(garbage.code, 2);
  EXPECT_TRUE(garbage.out.empty());
  EXPECT_FALSE(garbage.err.empty());
}
