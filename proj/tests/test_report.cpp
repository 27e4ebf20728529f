// Copyright 2026 The causaldisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "causaldisc/experiments.hpp"
#include "causaldisc/report.hpp"

namespace causaldisc {
namespace {

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

const ResultRow* find_row(const ExperimentReport& r, const std::string& quantity) {
  for (const auto& row : r.results) {
    if (row.quantity == quantity) return &row;
  }
  return nullptr;
}

ExperimentReport sample_report() {
  ExperimentReport r;
  r.experiment = "demo";
  r.parameters.seed = 18446744073709551615ULL;
  r.parameters.samples = 123;
  r.parameters.probe_theta = 0.1;
  r.parameters.probe_phi = -2.5;
  r.add("first", 2.0 / 3.0, 2.0 / 3.0, 1e-9);
  r.add("second, with \"quotes\"", 0.25, 0.5, 0.0, CheckKind::Le);
  r.add("third", 1e-300, 0.0, 1e-12, CheckKind::Ge);
  return r;
}

TEST(CheckKind, StringRoundTrip) {
  for (CheckKind k : {CheckKind::Eq, CheckKind::Le, CheckKind::Ge}) {
    EXPECT_EQ(check_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(check_kind_from_string("lt"), std::invalid_argument);
}

TEST(EvaluateCheck, Kinds) {
  EXPECT_TRUE(evaluate_check(1.0, 1.0 + 1e-10, 1e-9, CheckKind::Eq));
  EXPECT_FALSE(evaluate_check(1.0, 1.1, 1e-9, CheckKind::Eq));
  EXPECT_TRUE(evaluate_check(0.5, 0.4, 0.1, CheckKind::Le));
  EXPECT_FALSE(evaluate_check(0.6, 0.4, 0.1, CheckKind::Le));
  EXPECT_TRUE(evaluate_check(0.35, 0.4, 0.1, CheckKind::Ge));
  EXPECT_FALSE(evaluate_check(0.2, 0.4, 0.1, CheckKind::Ge));
  EXPECT_FALSE(evaluate_check(std::nan(""), 0.0, 1.0, CheckKind::Le));
  EXPECT_FALSE(evaluate_check(INFINITY, 0.0, 1.0, CheckKind::Ge));
}

TEST(Report, PassedIsConjunction) {
  ExperimentReport r;
  EXPECT_TRUE(r.passed());
  r.add("ok", 1.0, 1.0, 0.0);
  EXPECT_TRUE(r.passed());
  r.add("bad", 2.0, 1.0, 0.5);
  EXPECT_FALSE(r.results.back().pass);
  EXPECT_FALSE(r.passed());
}

TEST(Report, EmptyReportIsValidJson) {
  ExperimentReport r;
  r.experiment = "empty";
  const auto j = nlohmann::json::parse(emit(r, ReportFormat::Json));
  EXPECT_EQ(j.at("experiment"), "empty");
  EXPECT_TRUE(j.at("results").empty());
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_FALSE(j.contains("duration_seconds"));
  EXPECT_EQ(count_lines(emit(r, ReportFormat::Csv)), 1u);
}

TEST(Report, JsonRoundTrip) {
  const ExperimentReport r = sample_report();
  const std::string text = emit(r, ReportFormat::Json);
  const ExperimentReport back = report_from_json(text);
  EXPECT_EQ(back.experiment, r.experiment);
  EXPECT_EQ(back.parameters, r.parameters);
  EXPECT_EQ(back.results, r.results);
  EXPECT_EQ(emit(back, ReportFormat::Json), text);
}

TEST(Report, JsonKeyOrderAndTiming) {
  ExperimentReport r = sample_report();
  r.duration_seconds = 1.5;
  const std::string text = emit(r, ReportFormat::Json);
  const auto pos = [&](const char* key) { return text.find(std::string("\"") + key + "\""); };
  EXPECT_LT(pos("experiment"), pos("parameters"));
  EXPECT_LT(pos("parameters"), pos("results"));
  EXPECT_LT(pos("results"), pos("pass"));
  EXPECT_EQ(pos("duration_seconds"), std::string::npos);
  const auto j = nlohmann::json::parse(emit(r, ReportFormat::Json, true));
  EXPECT_DOUBLE_EQ(j.at("duration_seconds").get<double>(), 1.5);
}

TEST(Report, NonFiniteValuesBecomeNull) {
  ExperimentReport r;
  r.experiment = "nan";
  r.add("x", std::numeric_limits<double>::quiet_NaN(), 0.0, 1.0);
  const auto j = nlohmann::json::parse(emit(r, ReportFormat::Json));
  EXPECT_TRUE(j.at("results")[0].at("value").is_null());
  EXPECT_FALSE(j.at("results")[0].at("pass").get<bool>());
}

TEST(Report, CsvRowsAndQuoting) {
  const ExperimentReport r = sample_report();
  const std::string csv = emit(r, ReportFormat::Csv);
  EXPECT_EQ(count_lines(csv), r.results.size() + 1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "quantity,value,expected,tolerance,pass");
  EXPECT_NE(csv.find("\"second, with \"\"quotes\"\"\""), std::string::npos);
}

TEST(Report, MalformedJsonThrows) {
  EXPECT_THROW(report_from_json("{"), std::invalid_argument);
  EXPECT_THROW(report_from_json("{\"experiment\": 3}"), std::invalid_argument);
  EXPECT_THROW(report_format_from_string("xml"), std::invalid_argument);
}

TEST(RunExperiment, RejectsInvalidOptions) {
  EXPECT_THROW(run_experiment("nope"), std::invalid_argument);
  RunOptions o;
  o.parameters.samples = 0;
  EXPECT_THROW(run_experiment("strategies", o), std::invalid_argument);
  o = RunOptions{};
  o.parameters.alpha_sq = 1.5;
  EXPECT_THROW(run_experiment("switch-demo", o), std::invalid_argument);
  o = RunOptions{};
  o.parameters.tolerance = -1.0;
  EXPECT_THROW(run_experiment("switch-demo", o), std::invalid_argument);
}

TEST(RunExperiment, StrategiesReportKnownValues) {
  RunOptions o;
  o.parameters.samples = 2000;
  const ExperimentReport r = run_experiment("strategies", o);
  EXPECT_TRUE(r.passed());
  const ResultRow* ab = find_row(r, "sequential.ab.success_probability");
  const ResultRow* choi = find_row(r, "choi.success_probability");
  ASSERT_NE(ab, nullptr);
  ASSERT_NE(choi, nullptr);
  EXPECT_NEAR(ab->value, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(choi->value, 11.0 / 12.0, 1e-9);
}

TEST(RunExperiment, UnbalancedSwitchStillBeatsSequential) {
  RunOptions o;
  o.parameters.samples = 50;
  o.parameters.alpha_sq = 0.8;
  const ExperimentReport r = run_experiment("switch-demo", o);
  EXPECT_TRUE(r.passed());
  const ResultRow* p = find_row(r, "switch.averaged.success_probability");
  ASSERT_NE(p, nullptr);
  EXPECT_LT(p->value, 1.0 - 1e-6);
}

TEST(RunExperiment, AllExperimentsPassAtSmallSampleCounts) {
  RunOptions o;
  o.parameters.samples = 500;
  for (const auto& name : experiment_names()) {
    if (name == "tester-bound") continue;  // covered by the acceptance suite
    const ExperimentReport r = run_experiment(name, o);
    EXPECT_EQ(r.experiment, name);
    EXPECT_FALSE(r.results.empty()) << name;
    for (const auto& row : r.results) EXPECT_TRUE(row.pass) << name << ": " << row.quantity;
  }
}

TEST(RunExperiment, DeterministicForFixedSeed) {
  RunOptions o;
  o.parameters.seed = 42;
  o.parameters.samples = 300;
  const std::string a = emit(run_experiment("switch-demo", o), ReportFormat::Json);
  const std::string b = emit(run_experiment("switch-demo", o), ReportFormat::Json);
  EXPECT_EQ(a, b);
  o.parameters.seed = 43;
  EXPECT_NE(emit(run_experiment("switch-demo", o), ReportFormat::Json), a);
}

}  // namespace
}  // namespace causaldisc
