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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace causaldisc {

enum class CheckKind {
  Eq,  // |value - expected| <= tolerance
  Le,  // value <= expected + tolerance
  Ge,  // value >= expected - tolerance
};

std::string to_string(CheckKind kind);
CheckKind check_kind_from_string(const std::string& s);

struct ResultRow {
  std::string quantity;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::Eq;
  bool pass = false;

  bool operator==(const ResultRow&) const = default;
};

struct ReportParameters {
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  double tolerance = 1e-9;
  double probe_theta = 0.0;
  double probe_phi = 0.0;
  double alpha_sq = 0.5;

  bool operator==(const ReportParameters&) const = default;
};

struct ExperimentReport {
  std::string experiment;
  ReportParameters parameters;
  std::vector<ResultRow> results;
  double duration_seconds = 0.0;

  /// Appends a row and evaluates its check.
  void add(const std::string& quantity, double value, double expected, double tolerance,
           CheckKind kind = CheckKind::Eq);
  /// Conjunction of the row checks (true for an empty report).
  bool passed() const;
};

bool evaluate_check(double value, double expected, double tolerance, CheckKind kind);

enum class ReportFormat { Json, Csv };

ReportFormat report_format_from_string(const std::string& s);

/**
 * JSON: keys in a fixed order, doubles printed with 17 significant digits,
 * non-finite values as null; the duration appears only when include_timing.
 * CSV: header quantity,value,expected,tolerance,pass and one line per row.
 */
std::string emit(const ExperimentReport& report, ReportFormat format, bool include_timing = false);

/// Inverse of emit(..., Json). Throws std::invalid_argument on malformed input.
ExperimentReport report_from_json(const std::string& text);

}  // namespace causaldisc
