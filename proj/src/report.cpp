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

#include "causaldisc/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace causaldisc {

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double number_or_nan(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Eq: return "eq";
    case CheckKind::Le: return "le";
    case CheckKind::Ge: return "ge";
  }
  return "eq";
}

CheckKind check_kind_from_string(const std::string& s) {
  if (s == "eq") return CheckKind::Eq;
  if (s == "le") return CheckKind::Le;
  if (s == "ge") return CheckKind::Ge;
  throw std::invalid_argument("unknown check kind '" + s + "'");
}

bool evaluate_check(double value, double expected, double tolerance, CheckKind kind) {
  if (!std::isfinite(value)) return false;
  switch (kind) {
    case CheckKind::Eq: return std::abs(value - expected) <= tolerance;
    case CheckKind::Le: return value <= expected + tolerance;
    case CheckKind::Ge: return value >= expected - tolerance;
  }
  return false;
}

void ExperimentReport::add(const std::string& quantity, double value, double expected,
                           double tolerance, CheckKind kind) {
  results.push_back(ResultRow{quantity, value, expected, tolerance, kind,
                              evaluate_check(value, expected, tolerance, kind)});
}

bool ExperimentReport::passed() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format '" + s + "' (expected json or csv)");
}

std::string emit(const ExperimentReport& report, ReportFormat format, bool include_timing) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "quantity,value,expected,tolerance,pass\n";
    for (const auto& r : report.results) {
      out << csv_field(r.quantity) << ',' << num(r.value) << ',' << num(r.expected) << ','
          << num(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
  }
  const auto& p = report.parameters;
  out << "{\n  \"experiment\": " << quoted(report.experiment) << ",\n";
  out << "  \"parameters\": {\"seed\": " << p.seed << ", \"samples\": " << p.samples
      << ", \"tolerance\": " << num(p.tolerance) << ", \"probe_theta\": " << num(p.probe_theta)
      << ", \"probe_phi\": " << num(p.probe_phi) << ", \"alpha_sq\": " << num(p.alpha_sq)
      << "},\n";
  out << "  \"results\": [";
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const auto& r = report.results[i];
    out << (i == 0 ? "\n" : ",\n") << "    {\"quantity\": " << quoted(r.quantity)
        << ", \"value\": " << num(r.value) << ", \"expected\": " << num(r.expected)
        << ", \"tolerance\": " << num(r.tolerance) << ", \"check\": \"" << to_string(r.kind)
        << "\", \"pass\": " << (r.pass ? "true" : "false") << "}";
  }
  out << (report.results.empty() ? "],\n" : "\n  ],\n");
  out << "  \"pass\": " << (report.passed() ? "true" : "false");
  if (include_timing) out << ",\n  \"duration_seconds\": " << num(report.duration_seconds);
  out << "\n}\n";
  return out.str();
}

ExperimentReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ExperimentReport report;
    report.experiment = j.at("experiment").get<std::string>();
    const auto& p = j.at("parameters");
    report.parameters.seed = p.at("seed").get<std::uint64_t>();
    report.parameters.samples = p.at("samples").get<std::size_t>();
    report.parameters.tolerance = number_or_nan(p.at("tolerance"));
    report.parameters.probe_theta = number_or_nan(p.at("probe_theta"));
    report.parameters.probe_phi = number_or_nan(p.at("probe_phi"));
    report.parameters.alpha_sq = number_or_nan(p.at("alpha_sq"));
    for (const auto& r : j.at("results")) {
      report.results.push_back(ResultRow{r.at("quantity").get<std::string>(),
                                         number_or_nan(r.at("value")),
                                         number_or_nan(r.at("expected")),
                                         number_or_nan(r.at("tolerance")),
                                         check_kind_from_string(r.at("check").get<std::string>()),
                                         r.at("pass").get<bool>()});
    }
    if (j.contains("duration_seconds")) {
      report.duration_seconds = number_or_nan(j.at("duration_seconds"));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report_from_json: ") + e.what());
  }
}

}  // namespace causaldisc
