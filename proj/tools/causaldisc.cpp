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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "causaldisc/experiments.hpp"
#include "causaldisc/report.hpp"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitError = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace causaldisc;

  CLI::App app{"Discrimination of no-signalling channels with the quantum switch"};
  app.set_version_flag("--version", "causaldisc 1.0.0");

  std::string experiment;
  RunOptions options;
  auto& p = options.parameters;
  std::vector<double> probe{0.0, 0.0};
  std::string output;
  std::string format = "json";
  bool timing = false;
  bool list = false;

  app.add_option("experiment", experiment, "Experiment to run")
      ->check(CLI::IsMember(experiment_names()));
  app.add_flag("--list", list, "List experiments and exit");
  app.add_option("--seed", p.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", p.samples, "Monte Carlo samples / random instances")
      ->capture_default_str();
  app.add_option("--tolerance", p.tolerance, "Tolerance for exact-value checks")
      ->capture_default_str();
  app.add_option("--probe", probe, "Probe Bloch angles THETA PHI (default |0>)")
      ->expected(2);
  app.add_option("--alpha-sq", p.alpha_sq, "|alpha|^2 of the control superposition")
      ->capture_default_str();
  app.add_option("--threads", options.threads, "Monte Carlo worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--output", output, "Write the report to this path instead of stdout");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--timing", timing, "Include the wall-clock duration in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  if (list) {
    for (const auto& name : experiment_names()) std::cout << name << '\n';
    return 0;
  }
  if (experiment.empty()) {
    std::cerr << "error: an experiment name is required (see --list)\n";
    return kExitError;
  }
  p.probe_theta = probe[0];
  p.probe_phi = probe[1];

  try {
    const ExperimentReport report = run_experiment(experiment, options);
    const std::string text = emit(report, report_format_from_string(format), timing);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output, std::ios::binary);
      out << text;
      out.close();
      if (!out) throw std::runtime_error("cannot write report to '" + output + "'");
    }
    std::fprintf(stderr, "%s: %zu checks, %s, %.3f s\n", experiment.c_str(),
                 report.results.size(), report.passed() ? "all passed" : "FAILED",
                 report.duration_seconds);
    return report.passed() ? 0 : kExitChecksFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
