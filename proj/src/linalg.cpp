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

#include "causaldisc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace causaldisc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string shape_str(const Shape& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Row-major strides for a factor shape.
std::vector<std::size_t> strides_of(const Shape& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * shape[i];
  }
  return strides;
}

// Maps each basis index of the permuted space to the corresponding index of
// the original space.
std::vector<std::size_t> permutation_map(const Shape& shape,
                                         std::span<const std::size_t> order) {
  if (order.size() != shape.size()) {
    throw std::invalid_argument("permute_factors: order has " +
                                std::to_string(order.size()) +
                                " entries for shape " + shape_str(shape));
  }
  std::vector<bool> seen(shape.size(), false);
  for (std::size_t o : order) {
    if (o >= shape.size() || seen[o]) {
      throw std::invalid_argument("permute_factors: not a permutation");
    }
    seen[o] = true;
  }
  Shape new_shape(shape.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_shape[i] = shape[order[i]];
  const auto old_strides = strides_of(shape);
  const auto new_strides = strides_of(new_shape);
  const std::size_t total = shape_product(shape);
  std::vector<std::size_t> map(total);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t old_index = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t digit = (n / new_strides[i]) % new_shape[i];
      old_index += digit * old_strides[order[i]];
    }
    map[n] = old_index;
  }
  return map;
}

}  // namespace

std::size_t shape_product(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

CMatrix::CMatrix() : CMatrix(Eigen::MatrixXcd::Zero(1, 1)) {}

CMatrix::CMatrix(Eigen::MatrixXcd data)
    : data_(std::move(data)),
      row_shape_{static_cast<std::size_t>(data_.rows())},
      col_shape_{static_cast<std::size_t>(data_.cols())} {}

CMatrix::CMatrix(Eigen::MatrixXcd data, Shape row_shape, Shape col_shape)
    : data_(std::move(data)),
      row_shape_(std::move(row_shape)),
      col_shape_(std::move(col_shape)) {
  if (row_shape_.empty() || col_shape_.empty() ||
      shape_product(row_shape_) != rows() ||
      shape_product(col_shape_) != cols()) {
    throw std::invalid_argument("CMatrix: shapes " + shape_str(row_shape_) +
                                " x " + shape_str(col_shape_) +
                                " do not match " + std::to_string(rows()) +
                                " x " + std::to_string(cols()));
  }
}

CMatrix CMatrix::identity(const Shape& shape) {
  const auto d = idx(shape_product(shape));
  return CMatrix(Eigen::MatrixXcd::Identity(d, d), shape, shape);
}

CMatrix CMatrix::zeros(const Shape& row_shape, const Shape& col_shape) {
  return CMatrix(Eigen::MatrixXcd::Zero(idx(shape_product(row_shape)),
                                        idx(shape_product(col_shape))),
                 row_shape, col_shape);
}

CMatrix CMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n_rows = rows.size();
  const auto n_cols = rows.begin()->size();
  Eigen::MatrixXcd data(idx(n_rows), idx(n_cols));
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != n_cols) {
      throw std::invalid_argument("CMatrix::from_rows: ragged rows");
    }
    std::size_t c = 0;
    for (const auto& v : row) data(idx(r), idx(c++)) = v;
    ++r;
  }
  return CMatrix(std::move(data));
}

CMatrix CMatrix::ket(const Eigen::VectorXcd& amplitudes, const Shape& shape) {
  return CMatrix(Eigen::MatrixXcd(amplitudes), shape, Shape{1});
}

bool CMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Complex CMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: non-square matrix");
  return data_.trace();
}

CMatrix CMatrix::adjoint() const {
  return CMatrix(data_.adjoint(), col_shape_, row_shape_);
}

CMatrix CMatrix::conjugate() const {
  return CMatrix(data_.conjugate(), row_shape_, col_shape_);
}

CMatrix CMatrix::transpose() const {
  return CMatrix(data_.transpose(), col_shape_, row_shape_);
}

CMatrix CMatrix::reshaped(Shape row_shape, Shape col_shape) const {
  return CMatrix(data_, std::move(row_shape), std::move(col_shape));
}

CMatrix CMatrix::hermitian_part() const {
  if (!is_square()) throw std::invalid_argument("hermitian_part: non-square");
  return CMatrix(0.5 * (data_ + data_.adjoint()), row_shape_, col_shape_);
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
  if (rows() != rhs.rows() || cols() != rhs.cols()) {
    throw std::invalid_argument("CMatrix +: dimension mismatch");
  }
  return CMatrix(data_ + rhs.data_, row_shape_, col_shape_);
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
  if (rows() != rhs.rows() || cols() != rhs.cols()) {
    throw std::invalid_argument("CMatrix -: dimension mismatch");
  }
  return CMatrix(data_ - rhs.data_, row_shape_, col_shape_);
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  if (cols() != rhs.rows()) {
    throw std::invalid_argument("CMatrix *: inner dimensions " +
                                std::to_string(cols()) + " and " +
                                std::to_string(rhs.rows()) + " differ");
  }
  return CMatrix(data_ * rhs.data_, row_shape_, rhs.col_shape_);
}

CMatrix CMatrix::operator*(Complex s) const {
  return CMatrix(data_ * s, row_shape_, col_shape_);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const auto& ad = a.data();
  const auto& bd = b.data();
  Eigen::MatrixXcd out(ad.rows() * bd.rows(), ad.cols() * bd.cols());
  for (Eigen::Index i = 0; i < ad.rows(); ++i) {
    for (Eigen::Index j = 0; j < ad.cols(); ++j) {
      out.block(i * bd.rows(), j * bd.cols(), bd.rows(), bd.cols()) =
          ad(i, j) * bd;
    }
  }
  Shape rs = a.row_shape();
  rs.insert(rs.end(), b.row_shape().begin(), b.row_shape().end());
  Shape cs = a.col_shape();
  cs.insert(cs.end(), b.col_shape().begin(), b.col_shape().end());
  return CMatrix(std::move(out), std::move(rs), std::move(cs));
}

CMatrix kron(std::initializer_list<CMatrix> factors) {
  if (factors.size() == 0) throw std::invalid_argument("kron: no factors");
  auto it = factors.begin();
  CMatrix out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> traced) {
  if (!m.is_square() || m.row_shape() != m.col_shape()) {
    throw std::invalid_argument(
        "partial_trace: requires a square matrix with equal factor shapes");
  }
  const Shape& shape = m.row_shape();
  std::vector<bool> is_traced(shape.size(), false);
  for (std::size_t t : traced) {
    if (t >= shape.size()) {
      throw std::invalid_argument("partial_trace: factor index " +
                                  std::to_string(t) + " out of range for " +
                                  shape_str(shape));
    }
    is_traced[t] = true;
  }
  Shape kept_shape;
  Shape traced_shape;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    (is_traced[i] ? traced_shape : kept_shape).push_back(shape[i]);
  }
  if (kept_shape.empty()) kept_shape.push_back(1);

  const auto strides = strides_of(shape);
  const std::size_t n_kept = shape_product(kept_shape);
  const std::size_t n_traced = shape_product(traced_shape);
  // full_index[k][t]: index into m for kept multi-index k and traced multi-index t.
  std::vector<std::size_t> full_index(n_kept * n_traced, 0);
  for (std::size_t k = 0; k < n_kept; ++k) {
    for (std::size_t t = 0; t < n_traced; ++t) {
      std::size_t rk = k;
      std::size_t rt = t;
      std::size_t index = 0;
      for (std::size_t i = shape.size(); i-- > 0;) {
        std::size_t digit;
        if (is_traced[i]) {
          digit = rt % shape[i];
          rt /= shape[i];
        } else {
          digit = rk % shape[i];
          rk /= shape[i];
        }
        index += digit * strides[i];
      }
      full_index[k * n_traced + t] = index;
    }
  }
  const auto& d = m.data();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(idx(n_kept), idx(n_kept));
  for (std::size_t r = 0; r < n_kept; ++r) {
    for (std::size_t c = 0; c < n_kept; ++c) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < n_traced; ++t) {
        acc += d(idx(full_index[r * n_traced + t]),
                 idx(full_index[c * n_traced + t]));
      }
      out(idx(r), idx(c)) = acc;
    }
  }
  return CMatrix(std::move(out), kept_shape, kept_shape);
}

CMatrix partial_trace(const CMatrix& m,
                      std::initializer_list<std::size_t> traced) {
  return partial_trace(m, std::span<const std::size_t>(traced.begin(), traced.size()));
}

CMatrix permute_factors(const CMatrix& m, std::span<const std::size_t> order) {
  const bool ket_like = m.cols() == 1;
  if (!ket_like && m.row_shape() != m.col_shape()) {
    throw std::invalid_argument(
        "permute_factors: operator must have equal row and column shapes");
  }
  const auto map = permutation_map(m.row_shape(), order);
  Shape new_shape(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_shape[i] = m.row_shape()[order[i]];
  }
  const auto& d = m.data();
  const auto n = map.size();
  if (ket_like) {
    Eigen::MatrixXcd out(idx(n), 1);
    for (std::size_t r = 0; r < n; ++r) out(idx(r), 0) = d(idx(map[r]), 0);
    return CMatrix(std::move(out), new_shape, m.col_shape());
  }
  Eigen::MatrixXcd out(idx(n), idx(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      out(idx(r), idx(c)) = d(idx(map[r]), idx(map[c]));
    }
  }
  return CMatrix(std::move(out), new_shape, new_shape);
}

CMatrix permute_factors(const CMatrix& m,
                        std::initializer_list<std::size_t> order) {
  return permute_factors(m, std::span<const std::size_t>(order.begin(), order.size()));
}

CMatrix conjugate_factor(const CMatrix& m, std::size_t factor,
                         const CMatrix& u) {
  const Shape& shape = m.row_shape();
  if (factor >= shape.size() || shape[factor] != u.rows() || !u.is_square()) {
    throw std::invalid_argument("conjugate_factor: incompatible factor");
  }
  const std::size_t left = shape_product(Shape(shape.begin(), shape.begin() + idx(factor)));
  const std::size_t right =
      shape_product(Shape(shape.begin() + idx(factor) + 1, shape.end()));
  const CMatrix full = kron({CMatrix::identity(left), u, CMatrix::identity(right)});
  return (full * m * full.adjoint()).reshaped(shape, m.col_shape());
}

HermitianEigen eigh(const CMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("eigh: non-square matrix");
  const Eigen::MatrixXcd h = 0.5 * (m.data() + m.data().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_norm(const CMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("trace_norm: non-square matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.data());
  return svd.singularValues().sum();
}

double operator_norm(const CMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.data());
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

double frobenius_norm(const CMatrix& m) { return m.data().norm(); }

CMatrix sqrt_psd(const CMatrix& m) {
  const auto eig = eigh(m);
  Eigen::VectorXd roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -kZeroEigenvalueTol) {
      throw std::domain_error("sqrt_psd: eigenvalue " + std::to_string(v) +
                              " below -1e-10; input is not PSD");
    }
    roots(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  Eigen::MatrixXcd s =
      eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return CMatrix(0.5 * (s + s.adjoint()), m.row_shape(), m.col_shape());
}

bool is_psd(const CMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return eigh(m).values.minCoeff() >= -tol;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
  return a * b + b * a;
}

CMatrix projector(const CMatrix& ket) { return ket * ket.adjoint(); }

Complex inner(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1 || a.rows() != b.rows()) {
    throw std::invalid_argument("inner: expects two kets of equal dimension");
  }
  return a.data().col(0).dot(b.data().col(0));
}

CMatrix basis_ket(std::initializer_list<int> bits) {
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("basis_ket: bits must be 0/1");
    index = 2 * index + static_cast<std::size_t>(b);
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(idx(std::size_t{1} << bits.size()));
  v(idx(index)) = 1.0;
  return CMatrix::ket(v, Shape(bits.size(), 2));
}

CMatrix basis_ket(std::size_t index, std::size_t dim) {
  if (index >= dim) throw std::invalid_argument("basis_ket: index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(idx(dim));
  v(idx(index)) = 1.0;
  return CMatrix::ket(v);
}

CMatrix double_ket(const CMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("double_ket: non-square operator");
  const std::size_t d = m.rows();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(idx(d * d));
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t r = 0; r < d; ++r) v(idx(r * d + n)) += m(r, n);
  }
  return CMatrix::ket(v, Shape{d, d});
}

}  // namespace causaldisc
