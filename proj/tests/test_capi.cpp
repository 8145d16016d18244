#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "debond/debond.h"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

nlohmann::json last_error() { return nlohmann::json::parse(debond_last_error()); }

}  // namespace

TEST(CApi, MalformedConfigReportsPointer) {
  debond_problem* p = nullptr;
  nlohmann::json doc = testing_support::problem_doc({{"toughness", {{"kind", "wobbly"}}}});
  EXPECT_EQ(debond_problem_from_json(doc.dump().c_str(), &p), DEBOND_ERR_VALIDATION);
  EXPECT_EQ(p, nullptr);
  EXPECT_EQ(last_error()["pointer"], "/toughness/kind");
  EXPECT_EQ(debond_problem_from_json("{not json", &p), DEBOND_ERR_VALIDATION);
  EXPECT_EQ(last_error()["error"], "validation");
}

TEST(CApi, NullArguments) {
  EXPECT_EQ(debond_problem_from_json(nullptr, nullptr), DEBOND_ERR_ARGUMENT);
  EXPECT_EQ(debond_run_advance(nullptr, 1.0), DEBOND_ERR_ARGUMENT);
  EXPECT_EQ(debond_simulate(nullptr, "x", 0, nullptr), DEBOND_ERR_ARGUMENT);
  EXPECT_EQ(last_error()["error"], "argument");
  debond_problem_free(nullptr);
  debond_run_free(nullptr);
}

TEST(CApi, MissingFileIsIo) {
  debond_problem* p = nullptr;
  EXPECT_EQ(debond_problem_from_file("/nonexistent/config.json", &p), DEBOND_ERR_IO);
}

TEST(CApi, IncrementalRun) {
  debond_problem* p = nullptr;
  ASSERT_EQ(debond_problem_from_json(testing_support::problem_doc().dump().c_str(), &p), DEBOND_OK);
  EXPECT_STREQ(debond_last_error(), "{}");
  debond_run* r = nullptr;
  ASSERT_EQ(debond_run_create(p, &r), DEBOND_OK);
  ASSERT_EQ(debond_run_advance(r, 0.2), DEBOND_OK);
  EXPECT_GE(debond_run_time(r), 0.2 - 1e-12);
  double ell = 0.0;
  EXPECT_EQ(debond_run_front(r, 0.1, &ell), DEBOND_OK);
  EXPECT_EQ(ell, 1.0);
  EXPECT_EQ(debond_run_front(r, 5.0, &ell), DEBOND_ERR_NUMERICAL);
  size_t count = 0;
  EXPECT_EQ(debond_run_knots(r, nullptr, 0, &count), DEBOND_OK);
  std::vector<double> knots(count);
  EXPECT_EQ(debond_run_knots(r, knots.data(), knots.size(), &count), DEBOND_OK);
  EXPECT_EQ(knots.front(), 1.0);
  debond_run_free(r);
  EXPECT_EQ(debond_problem_set_epsilon(p, -1.0, 1e-3), DEBOND_ERR_VALIDATION);
  debond_problem_free(p);
}

TEST(CApi, SimulateWritesReports) {
  debond_problem* p = nullptr;
  ASSERT_EQ(debond_problem_from_json(testing_support::problem_doc().dump().c_str(), &p), DEBOND_OK);
  fs::path d = fs::temp_directory_path() / "debond_capi_sim";
  fs::remove_all(d);
  char* summary = nullptr;
  ASSERT_EQ(debond_simulate(p, d.c_str(), 0, &summary), DEBOND_OK);
  ASSERT_NE(summary, nullptr);
  auto j = nlohmann::json::parse(summary);
  EXPECT_EQ(j["ell_final"], 1.0);
  debond_string_free(summary);
  EXPECT_TRUE(fs::exists(d / "timeseries.csv"));
  EXPECT_FALSE(fs::exists(d / "field.csv"));
  int passed = 0;
  ASSERT_EQ(debond_verify(p, 0, d.c_str(), nullptr, &passed), DEBOND_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_TRUE(fs::exists(d / "verify.json"));
  debond_problem_free(p);
}
