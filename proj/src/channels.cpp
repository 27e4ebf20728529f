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

#include "causaldisc/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace causaldisc {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_choi(const CMatrix& m, const CMatrix& out_marginal,
                std::size_t d_in, double tol) {
  if (!m.is_hermitian(tol)) {
    throw std::invalid_argument("ChoiOperator: matrix is not Hermitian");
  }
  if (!is_psd(m, tol)) {
    throw std::invalid_argument("ChoiOperator: matrix is not positive semidefinite");
  }
  if (max_abs_diff(out_marginal, CMatrix::identity(d_in)) > tol) {
    throw std::invalid_argument(
        "ChoiOperator: output marginal is not the identity (not trace preserving)");
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  const auto& first = ops_.front();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(idx(first.cols()), idx(first.cols()));
  for (const auto& k : ops_) {
    if (k.rows() != first.rows() || k.cols() != first.cols() ||
        k.row_shape() != first.row_shape() || k.col_shape() != first.col_shape()) {
      throw std::invalid_argument("KrausChannel: Kraus operators differ in shape");
    }
    sum += k.data().adjoint() * k.data();
  }
  const double err =
      (sum - Eigen::MatrixXcd::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
  if (err > kChannelTol) {
    throw std::invalid_argument("KrausChannel: sum K^dagger K deviates from I by " +
                                std::to_string(err));
  }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  return KrausChannel({CMatrix::identity(dim)});
}

KrausChannel KrausChannel::unitary(const CMatrix& u) { return KrausChannel({u}); }

ChoiOperator ChoiOperator::in_out(const CMatrix& m, std::size_t d_in,
                                  std::size_t d_out, double tol) {
  if (m.rows() != d_in * d_out || !m.is_square()) {
    throw std::invalid_argument("ChoiOperator::in_out: expected a " +
                                std::to_string(d_in * d_out) + "-dimensional square matrix");
  }
  CMatrix shaped = m.reshaped(Shape{d_in, d_out}, Shape{d_in, d_out});
  check_choi(shaped, partial_trace(shaped, {1}), d_in, tol);
  BipartiteDims none{d_in, d_out, 1, 1};
  return ChoiOperator(std::move(shaped), ChoiLayout::InOut, none);
}

ChoiOperator ChoiOperator::bipartite(const CMatrix& m, const BipartiteDims& dims,
                                     double tol) {
  const Shape shape{dims.a_in, dims.a_out, dims.b_in, dims.b_out};
  if (!m.is_square() || m.rows() != shape_product(shape)) {
    throw std::invalid_argument("ChoiOperator::bipartite: dimension mismatch");
  }
  CMatrix shaped = m.reshaped(shape, shape);
  const CMatrix marginal = partial_trace(shaped, {1, 3});
  check_choi(shaped, marginal, dims.a_in * dims.b_in, tol);
  return ChoiOperator(std::move(shaped), ChoiLayout::Bipartite, dims);
}

std::size_t ChoiOperator::d_in() const {
  return layout_ == ChoiLayout::InOut ? dims_.a_in : dims_.a_in * dims_.b_in;
}

std::size_t ChoiOperator::d_out() const {
  return layout_ == ChoiLayout::InOut ? dims_.a_out : dims_.a_out * dims_.b_out;
}

const BipartiteDims& ChoiOperator::dims() const {
  if (layout_ != ChoiLayout::Bipartite) {
    throw std::logic_error("ChoiOperator: factors are not labeled as bipartite");
  }
  return dims_;
}

ChoiOperator kraus_to_choi(const KrausChannel& ch) {
  const std::size_t d_in = ch.d_in();
  const std::size_t d_out = ch.d_out();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(idx(d_in * d_out), idx(d_in * d_out));
  Eigen::VectorXcd v(idx(d_in * d_out));
  for (const auto& k : ch.ops()) {
    for (std::size_t i = 0; i < d_in; ++i) {
      for (std::size_t r = 0; r < d_out; ++r) v(idx(i * d_out + r)) = k(r, i);
    }
    c += v * v.adjoint();
  }
  return ChoiOperator::in_out(CMatrix(std::move(c)), d_in, d_out);
}

ChoiOperator bipartite_choi(const KrausChannel& ch) {
  if (ch.in_shape().size() != 2 || ch.out_shape().size() != 2) {
    throw std::invalid_argument(
        "bipartite_choi: channel lacks two-factor input/output shapes");
  }
  const BipartiteDims dims{ch.in_shape()[0], ch.out_shape()[0], ch.in_shape()[1],
                           ch.out_shape()[1]};
  return to_bipartite(kraus_to_choi(ch), dims);
}

ChoiOperator to_in_out(const ChoiOperator& c) {
  const auto& d = c.dims();
  // (A, A', B, B') -> (A, B, A', B')
  const CMatrix m = permute_factors(c.matrix(), {0, 2, 1, 3});
  return ChoiOperator::in_out(m, d.a_in * d.b_in, d.a_out * d.b_out);
}

ChoiOperator to_bipartite(const ChoiOperator& c, const BipartiteDims& dims) {
  if (c.layout() != ChoiLayout::InOut || c.d_in() != dims.a_in * dims.b_in ||
      c.d_out() != dims.a_out * dims.b_out) {
    throw std::invalid_argument("to_bipartite: dimensions do not factor as given");
  }
  const Shape shape{dims.a_in, dims.b_in, dims.a_out, dims.b_out};
  const CMatrix m = permute_factors(c.matrix().reshaped(shape, shape), {0, 2, 1, 3});
  return ChoiOperator::bipartite(m, dims);
}

KrausChannel choi_to_kraus(const ChoiOperator& c) {
  Shape in_shape;
  Shape out_shape;
  CMatrix m = c.matrix();
  if (c.layout() == ChoiLayout::Bipartite) {
    const auto& d = c.dims();
    in_shape = {d.a_in, d.b_in};
    out_shape = {d.a_out, d.b_out};
    m = to_in_out(c).matrix();
  } else {
    in_shape = {c.d_in()};
    out_shape = {c.d_out()};
  }
  const std::size_t d_in = shape_product(in_shape);
  const std::size_t d_out = shape_product(out_shape);
  const auto eig = eigh(m);
  std::vector<CMatrix> ops;
  // Descending eigenvalue order gives a deterministic operator list.
  for (Eigen::Index e = eig.values.size(); e-- > 0;) {
    const double lambda = eig.values(e);
    if (lambda < -kZeroEigenvalueTol) {
      throw std::invalid_argument("choi_to_kraus: Choi matrix is not PSD");
    }
    if (lambda <= kZeroEigenvalueTol) continue;
    const Eigen::VectorXcd v = std::sqrt(lambda) * eig.vectors.col(e);
    Eigen::MatrixXcd k(idx(d_out), idx(d_in));
    for (std::size_t i = 0; i < d_in; ++i) {
      for (std::size_t r = 0; r < d_out; ++r) k(idx(r), idx(i)) = v(idx(i * d_out + r));
    }
    ops.emplace_back(std::move(k), out_shape, in_shape);
  }
  return KrausChannel(std::move(ops));
}

CMatrix apply(const KrausChannel& ch, const CMatrix& rho) {
  if (!rho.is_square() || rho.rows() != ch.d_in()) {
    throw std::invalid_argument("apply: state dimension " + std::to_string(rho.rows()) +
                                " does not match channel input " +
                                std::to_string(ch.d_in()));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(idx(ch.d_out()), idx(ch.d_out()));
  for (const auto& k : ch.ops()) out += k.data() * rho.data() * k.data().adjoint();
  return CMatrix(std::move(out), ch.out_shape(), ch.out_shape());
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (first.d_out() != second.d_in()) {
    throw std::invalid_argument("compose: output of first (" +
                                std::to_string(first.d_out()) +
                                ") does not match input of second (" +
                                std::to_string(second.d_in()) + ")");
  }
  std::vector<CMatrix> ops;
  ops.reserve(first.size() * second.size());
  for (const auto& k1 : first.ops()) {
    for (const auto& k2 : second.ops()) {
      ops.emplace_back(k2.data() * k1.data(), second.out_shape(), first.in_shape());
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const auto& ka : a.ops()) {
    for (const auto& kb : b.ops()) ops.push_back(kron(ka, kb));
  }
  return KrausChannel(std::move(ops));
}

bool is_no_signalling(const ChoiOperator& c, BlockedDirection blocked, double tol) {
  if (c.layout() != ChoiLayout::Bipartite) {
    throw std::invalid_argument(
        "is_no_signalling: Choi operator has no bipartite factor labels");
  }
  const auto& d = c.dims();
  const CMatrix& m = c.matrix();
  if (blocked == BlockedDirection::BToA) {
    const CMatrix lhs = partial_trace(m, {3});                       // A A' B
    const CMatrix rhs = kron(partial_trace(m, {2, 3}),
                             CMatrix::identity(d.b_in) / static_cast<double>(d.b_in));
    return max_abs_diff(lhs, rhs) <= tol;
  }
  const CMatrix lhs = partial_trace(m, {1});                         // A B B'
  const CMatrix rhs = kron(CMatrix::identity(d.a_in) / static_cast<double>(d.a_in),
                           partial_trace(m, {0, 1}));
  return max_abs_diff(lhs, rhs) <= tol;
}

KrausChannel build_MU(const SU2Element& u) {
  const CMatrix& um = u.matrix();
  return KrausChannel({um * projector(basis_ket(0, 2)) * um.adjoint(),
                       um * projector(basis_ket(1, 2)) * um.adjoint()});
}

KrausChannel build_rotation(const SU2Element& v, PauliAxis axis) {
  CMatrix sigma;
  switch (axis) {
    case PauliAxis::X: sigma = pauli_x(); break;
    case PauliAxis::Y: sigma = pauli_y(); break;
    case PauliAxis::Z: sigma = pauli_z(); break;
  }
  return KrausChannel::unitary(v.matrix() * sigma * v.matrix().adjoint());
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw std::invalid_argument("matrix_from_json: expected an array of rows");
  }
  const std::size_t n_rows = j.size();
  const std::size_t n_cols = j.front().size();
  Eigen::MatrixXcd m(idx(n_rows), idx(n_cols));
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (j[r].size() != n_cols) throw std::invalid_argument("matrix_from_json: ragged rows");
    for (std::size_t c = 0; c < n_cols; ++c) {
      const auto& e = j[r][c];
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("matrix_from_json: entries must be [re, im]");
      }
      m(idx(r), idx(c)) = Complex{e[0].get<double>(), e[1].get<double>()};
    }
  }
  return CMatrix(std::move(m));
}

nlohmann::json channel_to_json(const KrausChannel& ch) {
  nlohmann::json j;
  j["d_in"] = ch.d_in();
  j["d_out"] = ch.d_out();
  nlohmann::json kraus = nlohmann::json::array();
  for (const auto& k : ch.ops()) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  if (ch.in_shape().size() > 1 || ch.out_shape().size() > 1) {
    j["in_shape"] = ch.in_shape();
    j["out_shape"] = ch.out_shape();
  }
  return j;
}

KrausChannel channel_from_json(const nlohmann::json& j) {
  const auto d_in = j.at("d_in").get<std::size_t>();
  const auto d_out = j.at("d_out").get<std::size_t>();
  Shape in_shape{d_in};
  Shape out_shape{d_out};
  if (j.contains("in_shape")) in_shape = j.at("in_shape").get<Shape>();
  if (j.contains("out_shape")) out_shape = j.at("out_shape").get<Shape>();
  std::vector<CMatrix> ops;
  for (const auto& k : j.at("kraus")) {
    CMatrix m = matrix_from_json(k);
    if (m.rows() != d_out || m.cols() != d_in) {
      throw std::invalid_argument("channel_from_json: Kraus operator has wrong dimensions");
    }
    ops.push_back(m.reshaped(out_shape, in_shape));
  }
  return KrausChannel(std::move(ops));
}

}  // namespace causaldisc
