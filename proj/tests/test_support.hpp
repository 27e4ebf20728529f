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

// Reference implementations used as test oracles. Nothing here calls into the
// library's algorithms beyond the CMatrix container and the channel types.

#include <cstddef>
#include <random>
#include <vector>

#include "causaldisc/channels.hpp"
#include "causaldisc/linalg.hpp"

namespace causaldisc::testing {

CMatrix pauli(char axis);

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
CMatrix random_unitary(std::size_t d, std::mt19937_64& rng);
/// SU(2) element built from random_unitary with the determinant removed.
CMatrix random_su2_matrix(std::mt19937_64& rng);
/// Unit ket with the given factor shape.
CMatrix random_ket(const Shape& shape, std::mt19937_64& rng);
/// Density matrix of the given rank (Wishart).
CMatrix random_density(std::size_t d, std::size_t rank, std::mt19937_64& rng);
/// Channel from a random isometry d_in -> d_out * n_kraus.
KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus,
                            std::mt19937_64& rng);
/// K'_m = sum_k u_mk K_k with u an n_out x n isometry.
KrausChannel remix(const KrausChannel& ch, std::size_t n_out, std::mt19937_64& rng);

/// Partial trace by explicit index loops over a uniform-factor operator.
CMatrix loop_partial_trace(const CMatrix& m, const Shape& shape,
                           const std::vector<std::size_t>& traced);

/// Operator sending |i_0 ... i_{n-1}> to the ket with i_k in position perm[k].
CMatrix permutation_operator(const std::vector<std::size_t>& perm);
/// Hilbert-Schmidt projection onto the span of the 24 four-qubit permutation
/// operators, i.e. the commutant of U^{(x)4}.
CMatrix twirl_oracle(const CMatrix& m);

/// Squared total spin of the listed qubits inside an n-qubit register.
CMatrix spin_squared(std::size_t n, const std::vector<std::size_t>& qubits);
/// Total z-spin of an n-qubit register, |0> = +1/2.
CMatrix spin_z(std::size_t n);
/// Total lowering operator of an n-qubit register.
CMatrix spin_lower(std::size_t n);

/// Channel with Kraus operators V sigma V^dagger built directly from Paulis.
KrausChannel pauli_channel(const CMatrix& v, char axis);

/// Averaged Choi operators in the Y-conjugated frame, assembled from the
/// pair projectors with the coefficients of the exact twirl.
CMatrix tilde_choi_closed_form(int i);

/// Extremes of the symmetric-tester objectives over a grid of normalized
/// testers: a = 0, step, ..., 3/8 and b01 = r e^{i theta} with n_r radii
/// spanning the PSD range and n_theta phases.
struct TesterGrid {
  double min_overlap = 0.0;
  double max_helstrom = 0.0;
  std::size_t points = 0;
};
TesterGrid tester_grid(double step_a, int n_r, int n_theta, bool with_helstrom);

}  // namespace causaldisc::testing
