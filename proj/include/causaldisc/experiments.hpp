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

#include <string>
#include <vector>

#include "causaldisc/report.hpp"

namespace causaldisc {

struct RunOptions {
  ReportParameters parameters;
  /// Worker threads for Monte Carlo averages; results do not depend on it.
  unsigned threads = 1;
};

/// switch-demo, strategies, twirl-check, appendix-verify, tester-bound, multiplex.
const std::vector<std::string>& experiment_names();

/**
 * Runs a named experiment and records one row per checked quantity.
 * Identity-level rows use fixed tolerances (1e-12 or 1e-10), probability rows
 * use parameters.tolerance, Monte Carlo rows use statistical tolerances
 * derived from parameters.samples.
 *
 * Throws std::invalid_argument for an unknown experiment, samples == 0,
 * alpha_sq outside [0, 1], or a non-positive or non-finite tolerance.
 */
ExperimentReport run_experiment(const std::string& name, const RunOptions& options = {});

}  // namespace causaldisc
