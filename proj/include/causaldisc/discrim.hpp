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
#include <utility>

#include "json.hpp"

#include "causaldisc/linalg.hpp"
#include "causaldisc/spincouple.hpp"
#include "causaldisc/su2.hpp"
#include "causaldisc/switch.hpp"

namespace causaldisc {

/**
 * Optimal two-state success probability 1/2 + 1/2 ||p0 rho0 - p1 rho1||_1,
 * clipped to [1/2, 1]. Throws std::invalid_argument for negative priors,
 * p0 + p1 != 1, or mismatched dimensions.
 */
double helstrom(const CMatrix& rho0, const CMatrix& rho1, double p0 = 0.5, double p1 = 0.5);

struct StrategyResult {
  std::string strategy;
  double success_probability = 0.0;
  std::pair<CMatrix, CMatrix> output_states;
  nlohmann::json metadata = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Maximally entangled probe on (A B) (x) R; output states are the Choi
/// states C_i / 4 in (A, A', B, B') order.
StrategyResult strategy_choi();
/// Same with Monte Carlo Choi operators.
StrategyResult strategy_choi_mc(std::size_t n_samples, std::uint64_t seed);

/// Sequential circuit with identity wiring, exact Haar average via the
/// averaged Choi operators. probe: qubit ket.
StrategyResult strategy_sequential(CausalOrder order, const CMatrix& probe);
/// Sequential circuit averaged over Haar samples of the channel instances.
StrategyResult strategy_sequential_mc(CausalOrder order, const CMatrix& probe,
                                      std::size_t n_samples, std::uint64_t seed);

/// Switch applied to the averaged channels C_0, C_1.
StrategyResult strategy_switch(const CMatrix& probe, Complex alpha, Complex beta);
/// Switch applied to the instances M_U (x) M_U and X_V (x) Y_V.
StrategyResult strategy_switch(const CMatrix& probe, Complex alpha, Complex beta,
                               const SU2Element& u, const SU2Element& v);

/**
 * Gamma-states in the Y-conjugated frame: (Xi~^{1/2} (x) I) C~_i
 * (Xi~^{1/2} (x) I), Xi~ acting on factors (A, A', B). For BA the Choi
 * operators are first relabeled (A, A') <-> (B, B').
 * Throws std::invalid_argument for invalid or unnormalized testers (1e-9).
 */
std::pair<CMatrix, CMatrix> gamma_states(const SymmetricTester& t,
                                         CausalOrder order = CausalOrder::AB);

enum class OverlapMethod { Numeric, ClosedForm };

/**
 * Tr[Gamma_0 Gamma_1] = Tr[C~_0 (Xi~ (x) I) C~_1 (Xi~ (x) I)]. ClosedForm
 * evaluates 4|b01|^2/9 + 4 b11^2/27 and throws std::invalid_argument
 * unless |a| <= 1e-12.
 */
double overlap_symmetric(const SymmetricTester& t, OverlapMethod method,
                         CausalOrder order = CausalOrder::AB);

/// 1/2 + 1/4 ||Gamma_0 - Gamma_1||_1 for a normalized tester.
double gamma_helstrom(const SymmetricTester& t, CausalOrder order = CausalOrder::AB);

enum class TesterObjective { MinOverlap, MaxHelstrom };

struct OptimizerOptions {
  std::uint64_t seed = 0;
  std::size_t grid_a = 8;   // start values of a across [0, 3/8]
  std::size_t grid_r = 3;   // start values of |b01| / sqrt(b00 b11)
  double initial_step = 0.05;
  double final_step = 1e-10;
  CausalOrder order = CausalOrder::AB;
};

struct TesterOptimum {
  SymmetricTester tester;
  double value = 0.0;
  std::size_t starts = 0;
  std::size_t evaluations = 0;
};

/**
 * Pattern search over normalized testers, parametrized by a in [0, 3/8] and
 * b01 = r sqrt(b00 b11) e^{i theta}, r in [0, 1]; grid_a * grid_r starts with
 * seeded phases. Ties are broken by (value, a, Re b01, Im b01).
 */
TesterOptimum optimize_symmetric_tester(TesterObjective objective,
                                        const OptimizerOptions& options = {});

struct MultiplexOptions {
  Complex alpha{1.0 / 1.4142135623730951};
  Complex beta{1.0 / 1.4142135623730951};
  CMatrix probe = basis_ket(0, 2);
  /// Draw independent (U, V) per pair instead of using averaged channels.
  bool random_instances = false;
  std::uint64_t seed = 0;
};

/**
 * Joint success of identifying all N bits of the hypothesis (x)_n C_{i_n},
 * one switch per pair, decoding each pair with the Helstrom measurement of
 * its averaged switch outputs (the |+>/|-> control measurement at
 * alpha = beta). Throws std::invalid_argument unless n_pairs is 1 or 2.
 */
double multiplex_check(int n_pairs, const MultiplexOptions& options = {});

/// Qubit ket cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
CMatrix bloch_ket(double theta, double phi);

}  // namespace causaldisc
