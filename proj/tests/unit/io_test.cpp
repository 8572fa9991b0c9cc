#include <gtest/gtest.h>

#include "serrewt/io.hpp"

using namespace serrewt;

namespace {

std::pair<ErrorCode, std::string> parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {ErrorCode::InternalInvariantViolation, "parsed"};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(ParseProblem, MinimalDocument) {
  const Problem pr = parse_problem(R"({"params": {"p": 3, "e": 1, "f": 2}})");
  EXPECT_EQ(pr.params.p(), 3);
  EXPECT_EQ(pr.params.f(), 2);
  EXPECT_FALSE(pr.weight.has_value());
  EXPECT_FALSE(pr.chi1.has_value());
  EXPECT_FALSE(pr.e_m.has_value());
}

TEST(ParseProblem, FullDocument) {
  const Problem pr = parse_problem(R"({
    "params": {"p": 3, "e": 2, "f": 1},
    "weight": {"eta": [2], "theta": [1]},
    "chi1": {"exps": [2], "unram": {"degree": 2, "dlog": 3}},
    "chi2": {"signature": [1]},
    "e_m": 2,
    "oracle": {"fq_degree": 4, "trunc": 30}
  })");
  EXPECT_EQ(pr.weight->eta, (std::vector<int>{2}));
  EXPECT_EQ(pr.weight->theta, (std::vector<int>{1}));
  EXPECT_EQ(pr.chi1->unram().degree, 2);
  EXPECT_EQ(pr.chi2->signature().digits(), (std::vector<int>{1}));
  EXPECT_EQ(*pr.e_m, 2);
  EXPECT_EQ(pr.oracle->fq_degree, 4);
  EXPECT_EQ(pr.oracle->trunc, 30);
  EXPECT_EQ(pr.character().signature().digits(), (std::vector<int>{1}));
}

TEST(ParseProblem, SignatureDigitOutOfRange) {
  const auto [code, msg] = parse_error(R"({"params": {"p": 3, "e": 1, "f": 2}, "chi": {"signature": [0, 1]}})");
  EXPECT_EQ(code, ErrorCode::InvariantError);
  EXPECT_TRUE(contains(msg, "signature digit out of [1,p]"));
}

TEST(ParseProblem, EMMustDivide) {
  const auto [code, msg] = parse_error(R"({"params": {"p": 3, "e": 1, "f": 2}, "e_m": 3})");
  EXPECT_EQ(code, ErrorCode::InvariantError);
  EXPECT_TRUE(contains(msg, "e_M must divide p^f-1"));
}

TEST(ParseProblem, SchemaErrorsCarryPaths) {
  auto check = [](const std::string& text, const std::string& path) {
    const auto [code, msg] = parse_error(text);
    EXPECT_EQ(code, ErrorCode::SchemaError) << text;
    EXPECT_TRUE(contains(msg, path)) << msg;
  };
  check(R"({})", "$.params");
  check(R"([1, 2])", "$");
  check(R"({"params": {"p": 3, "e": 1}})", "$.params.f");
  check(R"({"params": {"p": "3", "e": 1, "f": 1}})", "$.params.p");
  check(R"({"params": {"p": 3, "e": 1, "f": 1}, "extra": 1})", "extra");
  check(R"({"params": {"p": 3, "e": 1, "f": 1}, "chi1": {"exps": [1], "signature": [1]}})", "$.chi1");
  check(R"({"params": {"p": 3, "e": 1, "f": 1}, "chi1": {}})", "$.chi1");
  check(R"({"params": {"p": 3, "e": 1, "f": 1}, "weight": {"r": [2], "eta": [1]}})", "$.weight");
  check(R"({"params": {"p": 3, "e": 1, "f": 1}, "chi2": {"exps": [1], "unram": {"deg": 1}}})", "$.chi2.unram");
  check(R"({"params": {"p": 3, "e": 1, "f": 1}, "chi_cyclotomic": "yes"})", "$.chi_cyclotomic");
  check("{not json", "$");
}

TEST(ParseProblem, InvalidParameters) {
  EXPECT_EQ(parse_error(R"({"params": {"p": 4, "e": 1, "f": 1}})").first, ErrorCode::InvalidInput);
  EXPECT_EQ(parse_error(R"({"params": {"p": 3, "e": 0, "f": 1}})").first, ErrorCode::InvalidInput);
  EXPECT_EQ(parse_error(R"({"params": {"p": 3, "e": 1, "f": 1}, "weight": {"r": [4]}})").first,
            ErrorCode::InvariantError);
  EXPECT_EQ(parse_error(R"({"params": {"p": 3, "e": 1, "f": 1}, "weight": {"eta": [3]}})").first,
            ErrorCode::InvariantError);
}

TEST(ParseProblem, CyclotomicDeclarationChecked) {
  const auto [code, msg] = parse_error(
      R"({"params": {"p": 3, "e": 1, "f": 1}, "chi1": {"exps": [0]}, "chi2": {"exps": [0]}, "chi_cyclotomic": true})");
  EXPECT_EQ(code, ErrorCode::InvariantError);
  EXPECT_TRUE(contains(msg, "$.chi_cyclotomic"));
}

TEST(Reports, DimsReport) {
  const FieldParams params(3, 1, 2);
  const Json rep = dims_report(params, character_from_exps(params, std::vector<long long>{2, 1}));
  EXPECT_EQ(rep["status"], "ok");
  EXPECT_EQ(rep["h1_dimension"], 2);
  EXPECT_EQ(rep["jump_total"], 2);
  EXPECT_EQ(rep["jump_profile"].size(), 2U);
  EXPECT_EQ(rep["window_cardinalities"], Json::array({2}));
}

TEST(Reports, LvReportFixtures) {
  const Json one = lv_report(parse_problem(
      R"({"params": {"p": 3, "e": 2, "f": 1}, "weight": {"r": [2]}, "chi1": {"exps": [2]}, "chi2": {"exps": [1]}})"));
  EXPECT_EQ(one["labels"], Json::array({"Alpha(1,0)"}));
  EXPECT_EQ(one["dimension"], 1);
  const Json empty = lv_report(parse_problem(
      R"({"params": {"p": 5, "e": 1, "f": 1}, "weight": {"r": [1]}, "chi1": {"exps": [0]}, "chi2": {"exps": [2]}})"));
  EXPECT_EQ(empty["status"], "lv_empty");
  EXPECT_EQ(empty["labels"], Json::array());
}

TEST(Reports, OracleReportAgrees) {
  bool agree = false;
  const Json rep = oracle_report(
      parse_problem(
          R"({"params": {"p": 3, "e": 1, "f": 2}, "weight": {"r": [2, 1]}, "chi1": {"signature": [2, 1]}, "chi2": {"exps": [0, 0]}})"),
      agree);
  EXPECT_TRUE(agree);
  EXPECT_EQ(rep["oracle_labels"], rep["j_v_ah"]);
  EXPECT_EQ(rep["j_v_ah"], Json::array({"Alpha(5,0)", "Alpha(7,0)"}));
}

TEST(Reports, Deterministic) {
  const std::string doc =
      R"({"params": {"p": 3, "e": 1, "f": 2}, "weight": {"r": [2, 1]}, "chi1": {"signature": [2, 1]}, "chi2": {"exps": [0, 0]}})";
  EXPECT_EQ(lv_report(parse_problem(doc)).dump(), lv_report(parse_problem(doc)).dump());
  EXPECT_EQ(profile_report(parse_problem(doc)).dump(), profile_report(parse_problem(doc)).dump());
}

TEST(Reports, SweepCsvShape) {
  const auto rows = sweep(Grid::up_to(2, 1, 1));
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,e,f,chi_sig,r,t,s,xi,|J|,sum|I|,ok");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rows.size() + 1);
}
