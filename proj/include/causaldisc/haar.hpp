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
#include <functional>

#include "causaldisc/channels.hpp"
#include "causaldisc/linalg.hpp"
#include "causaldisc/su2.hpp"

namespace causaldisc {

using SampleFunction = std::function<CMatrix(const SU2Element&)>;

/// Samples are reduced in blocks of this size, in index order.
inline constexpr std::size_t kMcBlockSize = 256;

struct McEstimate {
  CMatrix mean;
  /// Squared standard error of the mean per entry (real and imaginary
  /// variances added).
  Eigen::MatrixXd sq_std_error;
  std::size_t n_samples = 0;

  /// sqrt of the summed squared standard errors: the scale of the Frobenius
  /// distance between the estimate and its expectation.
  double frobenius_std_error() const;
};

/**
 * Mean of f(U) over n Haar samples, Hermitian-symmetrized. Sample i is drawn
 * from sample_stream(seed, i), so the result is bit-identical for any thread
 * count. threads == 0 picks the hardware concurrency. f must be thread-safe.
 * Throws std::invalid_argument for n == 0.
 */
CMatrix mc_average(const SampleFunction& f, std::size_t n, std::uint64_t seed,
                   unsigned threads = 1);

/// mc_average together with per-entry standard errors.
McEstimate mc_estimate(const SampleFunction& f, std::size_t n, std::uint64_t seed,
                       unsigned threads = 1);

/**
 * Exact average of U^{(x)4} M U^{dagger (x)4} over SU(2): in the
 * ((1,2),(3,4)) coupled basis, every block between multiplets of equal j is
 * replaced by its m-averaged diagonal times the identity on m.
 * Throws std::invalid_argument unless M is 16 x 16.
 */
CMatrix exact_twirl_u4(const CMatrix& m);

/// Conjugation of factors A (0) and B (2) of a four-qubit operator by Y.
CMatrix y_conjugate_ab(const CMatrix& m);

/// Bipartite Choi operator of M_U (x) M_U (i = 0) or X_U (x) Y_U (i = 1).
CMatrix instance_choi(int i, const SU2Element& u);

/// Lambda_i: the instance Choi operator at U = I.
CMatrix lambda_operator(int i);
/// Lambda_i conjugated on A and B by Y; the average of U^{(x)4} over it is C~_i.
CMatrix lambda_tilde(int i);

/// C~_i = exact_twirl_u4(lambda_tilde(i)).
CMatrix exact_average_choi_tilde(int i);

/// Exact Choi operator of the Haar-averaged channel C_i, in (A, A', B, B') order.
ChoiOperator exact_average_choi(int i);

/// Monte Carlo estimate of C_i from Haar samples of instance_choi.
McEstimate mc_average_choi(int i, std::size_t n, std::uint64_t seed, unsigned threads = 1);

}  // namespace causaldisc
