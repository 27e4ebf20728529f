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
#include <vector>

#include "json.hpp"

#include "causaldisc/linalg.hpp"
#include "causaldisc/su2.hpp"

namespace causaldisc {

inline constexpr double kChannelTol = 1e-10;

/**
 * Completely positive trace-preserving map rho -> sum_k K_k rho K_k^dagger.
 *
 * The column shape of the Kraus operators is the input factorization and the
 * row shape the output factorization; a product channel A (x) B keeps
 * in_shape {dA, dB} and out_shape {dA', dB'} so that the bipartite labels are
 * never guessed from dimensions.
 */
class KrausChannel {
 public:
  /// Throws std::invalid_argument if the list is empty, the operators disagree
  /// in dimension or shape, or sum K^dagger K differs from I by more than 1e-10.
  explicit KrausChannel(std::vector<CMatrix> ops);

  static KrausChannel identity(std::size_t dim);
  static KrausChannel unitary(const CMatrix& u);

  const std::vector<CMatrix>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  std::size_t d_in() const { return ops_.front().cols(); }
  std::size_t d_out() const { return ops_.front().rows(); }
  const Shape& in_shape() const { return ops_.front().col_shape(); }
  const Shape& out_shape() const { return ops_.front().row_shape(); }

 private:
  std::vector<CMatrix> ops_;
};

/// Dimensions of the four systems of a bipartite channel A (x) B -> A' (x) B'.
struct BipartiteDims {
  std::size_t a_in = 2;
  std::size_t a_out = 2;
  std::size_t b_in = 2;
  std::size_t b_out = 2;

  bool operator==(const BipartiteDims&) const = default;
};

enum class ChoiLayout {
  InOut,      // factors (in, out)
  Bipartite,  // factors (A, A', B, B')
};

/**
 * Choi operator C = sum_{ij} |i><j| (x) E(|i><j|) = sum_k |K_k>><<K_k|, input
 * factor first. Bipartite channels are stored in the order A, A', B, B'.
 *
 * Construction checks positivity and the trace-preservation marginal
 * Tr_out C = I_in.
 */
class ChoiOperator {
 public:
  static ChoiOperator in_out(const CMatrix& m, std::size_t d_in,
                             std::size_t d_out, double tol = kChannelTol);
  static ChoiOperator bipartite(const CMatrix& m, const BipartiteDims& dims,
                                double tol = kChannelTol);

  const CMatrix& matrix() const { return matrix_; }
  ChoiLayout layout() const { return layout_; }
  std::size_t d_in() const;
  std::size_t d_out() const;
  /// Throws std::logic_error for an InOut operator.
  const BipartiteDims& dims() const;

 private:
  ChoiOperator(CMatrix m, ChoiLayout layout, BipartiteDims dims)
      : matrix_(std::move(m)), layout_(layout), dims_(dims) {}

  CMatrix matrix_;
  ChoiLayout layout_;
  BipartiteDims dims_;
};

ChoiOperator kraus_to_choi(const KrausChannel& ch);

/// Choi operator in (A, A', B, B') order for a channel whose Kraus operators
/// carry two-factor input and output shapes.
ChoiOperator bipartite_choi(const KrausChannel& ch);

/// Reorders a bipartite Choi operator to (A B, A' B') InOut form.
ChoiOperator to_in_out(const ChoiOperator& c);
/// Reorders an InOut Choi operator of an (A B -> A' B') channel to bipartite form.
ChoiOperator to_bipartite(const ChoiOperator& c, const BipartiteDims& dims);

/**
 * Canonical Kraus decomposition from the eigendecomposition of the Choi
 * matrix: K_k has |K_k>> = sqrt(lambda_k) v_k, eigenvalues below 1e-10
 * dropped. Bipartite inputs yield operators with shapes {dA', dB'} x {dA, dB}.
 */
KrausChannel choi_to_kraus(const ChoiOperator& c);

CMatrix apply(const KrausChannel& ch, const CMatrix& rho);
/// Channel `second` after `first`.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
/// Product channel with Kraus operators A_k (x) B_l.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

enum class BlockedDirection {
  AToB,  // A-no-signalling: Bob's output is independent of Alice's input
  BToA,  // B-no-signalling: Alice's output is independent of Bob's input
};

/**
 * Choi marginal test. For BToA: Tr_{B'} C == Tr_{B B'} C (x) I_B / d_B; for
 * AToB: Tr_{A'} C == I_A / d_A (x) Tr_{A A'} C. Throws std::invalid_argument
 * for InOut Choi operators.
 */
bool is_no_signalling(const ChoiOperator& c, BlockedDirection blocked,
                      double tol = 1e-9);

/// Von Neumann measurement in the basis {U|0>, U|1>}.
KrausChannel build_MU(const SU2Element& u);

enum class PauliAxis { X, Y, Z };

/// Unitary channel with Kraus operator V sigma V^dagger.
KrausChannel build_rotation(const SU2Element& v, PauliAxis axis);

/// {"d_in", "d_out", "kraus": [matrix of [re, im] entries, row-major]}; adds
/// "in_shape"/"out_shape" when the channel carries a multi-factor shape.
nlohmann::json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const nlohmann::json& j);

/// Matrix as nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace causaldisc
