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
#include <utility>
#include <vector>

#include "causaldisc/channels.hpp"
#include "causaldisc/linalg.hpp"

namespace causaldisc {

enum class CausalOrder {
  AB,  // Alice's output precedes Bob's input
  BA,  // Bob's output precedes Alice's input
};

/**
 * Parameters of the two sequential circuits and of their coherent
 * superposition. Every composite system is ordered system-first:
 *
 *   probe        ket on A (x) R
 *   probe_tilde  ket on B (x) R~
 *   w            isometry A' (x) R  -> B (x) R'
 *   w_tilde      isometry B' (x) R~ -> A (x) R~'
 *   output_iso   unitary  A' (x) R~' -> B' (x) R', identifying the outputs of
 *                the two circuits
 *
 * The superposed output lives on (B' (x) R') (x) control, control last.
 */
struct SwitchConfig {
  Complex alpha{1.0 / 1.4142135623730951};
  Complex beta{1.0 / 1.4142135623730951};
  CMatrix probe;
  CMatrix probe_tilde;
  CMatrix w;
  CMatrix w_tilde;
  CMatrix output_iso;
  std::size_t d_r = 1;
  std::size_t d_r_prime = 1;
  std::size_t d_rt = 1;
  std::size_t d_rt_prime = 1;

  /// Qubit systems, one-dimensional ancillas, W = W~ = I and both probes phi.
  static SwitchConfig trivial(const CMatrix& phi, Complex alpha, Complex beta);

  /// Throws std::invalid_argument if |alpha|^2 + |beta|^2 != 1 (1e-12), the
  /// isometries fail W^dagger W = I (1e-10), the probes are not unit vectors,
  /// or dimensions are inconsistent.
  void validate() const;

  std::size_t d_a() const { return probe.rows() / d_r; }
  std::size_t d_b() const { return probe_tilde.rows() / d_rt; }
  std::size_t d_a_out() const { return w.cols() / d_r; }
  std::size_t d_b_out() const { return output_iso.rows() / d_r_prime; }
};

/**
 * Output of one causal order, summed over Kraus indices. AB yields a state on
 * B' (x) R'; BA yields a state on A' (x) R~'.
 */
CMatrix sequential_output(const SwitchConfig& cfg, const KrausChannel& ch_a,
                          const KrausChannel& ch_b, CausalOrder order);

/**
 * State (C (x) id_R)(|psi><psi|) for psi with shape {d_in factors..., d_R}.
 * The result carries the channel's output factors followed by R.
 */
CMatrix parallel_output(const CMatrix& psi, const ChoiOperator& c);

/**
 * Sequential circuit with identity wiring A' -> B applied to a Choi operator:
 * rho = Tr_{A A' B}[C (probe^T (x) |I>><<I|_{A'B} (x) I_{B'})] for AB and the
 * mirror image for BA. Requires a bipartite Choi operator with d_A' == d_B
 * (AB) or d_B' == d_A (BA).
 */
CMatrix sequential_output_choi(const ChoiOperator& c, const CMatrix& probe, CausalOrder order);

/**
 * Superposition of both causal orders for product channels:
 * sum_{k,l} |chi_kl><chi_kl| with
 * chi_kl = alpha Psi_kl (x) |0> + beta Psi~_kl (x) |1>.
 * Output shape {d_B' d_R', 2}.
 */
CMatrix switch_output(const SwitchConfig& cfg, const KrausChannel& ch_a,
                      const KrausChannel& ch_b);

/// Terms (A_s, B_s) with K = sum_s A_s (x) B_s, from the SVD of the
/// realigned operator; singular values below 1e-12 dropped.
std::vector<std::pair<CMatrix, CMatrix>> operator_schmidt(const CMatrix& k,
                                                          const BipartiteDims& dims);

/**
 * Switch for a generic no-signalling channel, extended linearly over an
 * operator-Schmidt expansion of each Kraus operator.
 */
class GeneralSwitch {
 public:
  /// Throws std::invalid_argument if the channel signals in either direction
  /// (tolerance 1e-9) or lacks bipartite labels.
  explicit GeneralSwitch(const ChoiOperator& c);
  /// Uses this particular Kraus representation (shapes {dA', dB'} x {dA, dB}).
  explicit GeneralSwitch(const KrausChannel& ch);

  CMatrix output(const SwitchConfig& cfg) const;
  const BipartiteDims& dims() const { return dims_; }

 private:
  BipartiteDims dims_;
  std::vector<std::vector<std::pair<CMatrix, CMatrix>>> terms_;
};

/// GeneralSwitch(c).output(cfg).
CMatrix switch_choi_general(const ChoiOperator& c, const SwitchConfig& cfg);

}  // namespace causaldisc
