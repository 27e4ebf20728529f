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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace causaldisc {

using Complex = std::complex<double>;
using Shape = std::vector<std::size_t>;

/// Tolerance below which an eigenvalue is treated as zero.
inline constexpr double kZeroEigenvalueTol = 1e-10;

/**
 * Dense complex matrix that remembers how its rows and columns factor into
 * tensor-product subsystems.
 *
 * A 16x16 operator on four qubits carries row_shape = col_shape = {2,2,2,2};
 * a ket on the same space carries row_shape {2,2,2,2} and col_shape {1}.
 * Factors are ordered most-significant first, so the basis index of
 * |i0 i1 ... > is i0*d1*d2*... + i1*d2*... + ...
 *
 * Values are immutable once constructed; all operations return new matrices.
 */
class CMatrix {
 public:
  CMatrix();
  explicit CMatrix(Eigen::MatrixXcd data);
  CMatrix(Eigen::MatrixXcd data, Shape row_shape, Shape col_shape);

  static CMatrix identity(const Shape& shape);
  static CMatrix identity(std::size_t dim) { return identity(Shape{dim}); }
  static CMatrix zeros(const Shape& row_shape, const Shape& col_shape);
  /// Row-major initializer, e.g. from_rows({{0, 1}, {1, 0}}).
  static CMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  /// Column vector with the given factor shape.
  static CMatrix ket(const Eigen::VectorXcd& amplitudes, const Shape& shape);
  static CMatrix ket(const Eigen::VectorXcd& amplitudes) {
    return ket(amplitudes, Shape{static_cast<std::size_t>(amplitudes.size())});
  }

  std::size_t rows() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(data_.cols()); }
  const Shape& row_shape() const { return row_shape_; }
  const Shape& col_shape() const { return col_shape_; }
  const Eigen::MatrixXcd& data() const { return data_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return data_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  bool is_square() const { return rows() == cols(); }
  bool is_hermitian(double tol = 1e-12) const;
  Complex trace() const;
  CMatrix adjoint() const;
  CMatrix conjugate() const;
  CMatrix transpose() const;
  /// Same entries, different factorization of rows and columns.
  CMatrix reshaped(Shape row_shape, Shape col_shape) const;
  /// (M + M^dagger) / 2.
  CMatrix hermitian_part() const;

  CMatrix operator+(const CMatrix& rhs) const;
  CMatrix operator-(const CMatrix& rhs) const;
  /// Matrix product; the result takes rows from the left and columns from
  /// the right operand.
  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix operator*(Complex s) const;
  CMatrix operator/(Complex s) const { return *this * (1.0 / s); }
  CMatrix operator-() const { return *this * Complex{-1.0}; }

 private:
  Eigen::MatrixXcd data_;
  Shape row_shape_;
  Shape col_shape_;
};

inline CMatrix operator*(Complex s, const CMatrix& m) { return m * s; }

std::size_t shape_product(const Shape& shape);

/// Kronecker product with concatenated factor shapes.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron(std::initializer_list<CMatrix> factors);

/**
 * Partial trace over the listed factors (0-based, ascending or not).
 * Requires a square matrix with identical row and column shapes.
 * Throws std::invalid_argument on a bad index or non-square input.
 */
CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> traced);
CMatrix partial_trace(const CMatrix& m, std::initializer_list<std::size_t> traced);

/**
 * Reorders tensor factors: factor i of the result is factor order[i] of the
 * input. Applied to rows and columns alike for square operators with equal
 * shapes; for kets (single column) only the rows are permuted.
 */
CMatrix permute_factors(const CMatrix& m, std::span<const std::size_t> order);
CMatrix permute_factors(const CMatrix& m, std::initializer_list<std::size_t> order);

/// Conjugates factor `factor` of a square multi-factor operator by `u`.
CMatrix conjugate_factor(const CMatrix& m, std::size_t factor, const CMatrix& u);

struct HermitianEigen {
  Eigen::VectorXd values;         // ascending
  Eigen::MatrixXcd vectors;       // columns
};

/// Eigendecomposition of the Hermitian part of a square matrix.
HermitianEigen eigh(const CMatrix& m);

/// Sum of singular values.
double trace_norm(const CMatrix& m);
/// Largest singular value.
double operator_norm(const CMatrix& m);
/// Largest entrywise modulus of a - b; throws on shape mismatch.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const CMatrix& m);

/**
 * Square root of a Hermitian PSD matrix. Eigenvalues in (-1e-10, 0) are
 * clamped to zero; anything more negative throws std::domain_error.
 */
CMatrix sqrt_psd(const CMatrix& m);

/// True when the smallest eigenvalue of the Hermitian part is >= -tol.
bool is_psd(const CMatrix& m, double tol = kZeroEigenvalueTol);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

/// |v><v| for a ket v.
CMatrix projector(const CMatrix& ket);
/// <a|b> for kets a, b.
Complex inner(const CMatrix& a, const CMatrix& b);

/// Computational basis ket |b0 b1 ...> on `bits.size()` qubits.
CMatrix basis_ket(std::initializer_list<int> bits);
/// Computational basis ket |index> in dimension dim.
CMatrix basis_ket(std::size_t index, std::size_t dim);

/**
 * Double-ket |M>> = (M (x) I)|I>> = sum_n M|n> (x) |n>, with |I>> = sum_n |n n>
 * in the computational basis. The first factor carries M.
 */
CMatrix double_ket(const CMatrix& m);

}  // namespace causaldisc
