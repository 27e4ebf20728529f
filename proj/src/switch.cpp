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

#include "causaldisc/switch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace causaldisc {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

Index idx(std::size_t i) { return static_cast<Index>(i); }

MatrixXcd id(std::size_t d) { return MatrixXcd::Identity(idx(d), idx(d)); }

MatrixXcd kron_data(const MatrixXcd& a, const MatrixXcd& b) {
  return kron(CMatrix(a), CMatrix(b)).data();
}

double isometry_defect(const CMatrix& w) {
  return (w.data().adjoint() * w.data() - id(w.cols())).cwiseAbs().maxCoeff();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_channel_dims(const SwitchConfig& cfg, std::size_t a_in, std::size_t a_out,
                        std::size_t b_in, std::size_t b_out) {
  require(a_in == cfg.d_a() && a_out == cfg.d_a_out(),
          "switch: Alice's channel does not match the configured A -> A' dimensions");
  require(b_in == cfg.d_b() && b_out == cfg.d_b_out(),
          "switch: Bob's channel does not match the configured B -> B' dimensions");
}

// (B (x) I_R') W (A (x) I_R) |Psi>, on B' (x) R'.
MatrixXcd branch_ab(const SwitchConfig& cfg, const MatrixXcd& a, const MatrixXcd& b) {
  return kron_data(b, id(cfg.d_r_prime)) * cfg.w.data() * kron_data(a, id(cfg.d_r)) *
         cfg.probe.data();
}

// (A (x) I_R~') W~ (B (x) I_R~) |Psi~>, on A' (x) R~'.
MatrixXcd branch_ba(const SwitchConfig& cfg, const MatrixXcd& a, const MatrixXcd& b) {
  return kron_data(a, id(cfg.d_rt_prime)) * cfg.w_tilde.data() * kron_data(b, id(cfg.d_rt)) *
         cfg.probe_tilde.data();
}

MatrixXcd superpose(const SwitchConfig& cfg, const MatrixXcd& ab, const MatrixXcd& ba) {
  const Index d = ab.rows();
  Eigen::VectorXcd chi(2 * d);
  const MatrixXcd ba_out = cfg.output_iso.data() * ba;
  // System first, control last: index = 2 * s + c.
  for (Index s = 0; s < d; ++s) {
    chi(2 * s) = cfg.alpha * ab(s, 0);
    chi(2 * s + 1) = cfg.beta * ba_out(s, 0);
  }
  return chi * chi.adjoint();
}

CMatrix wrap_switch(MatrixXcd rho, std::size_t d_sys) {
  const Shape shape{d_sys, 2};
  return CMatrix(std::move(rho), shape, shape);
}

}  // namespace

SwitchConfig SwitchConfig::trivial(const CMatrix& phi, Complex alpha, Complex beta) {
  SwitchConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  require(phi.rows() == 2 && phi.cols() == 1, "SwitchConfig::trivial: probe must be a qubit ket");
  cfg.probe = phi.reshaped({2, 1}, {1});
  cfg.probe_tilde = cfg.probe;
  cfg.w = CMatrix::identity(2);
  cfg.w_tilde = CMatrix::identity(2);
  cfg.output_iso = CMatrix::identity(2);
  return cfg;
}

void SwitchConfig::validate() const {
  const double norm = std::norm(alpha) + std::norm(beta);
  require(std::abs(norm - 1.0) <= 1e-12,
          "SwitchConfig: |alpha|^2 + |beta|^2 = " + std::to_string(norm) + ", expected 1");
  require(d_r > 0 && d_r_prime > 0 && d_rt > 0 && d_rt_prime > 0,
          "SwitchConfig: ancilla dimensions must be positive");
  require(probe.cols() == 1 && probe.rows() % d_r == 0, "SwitchConfig: probe is not a ket on A x R");
  require(probe_tilde.cols() == 1 && probe_tilde.rows() % d_rt == 0,
          "SwitchConfig: probe_tilde is not a ket on B x R~");
  require(std::abs(frobenius_norm(probe) - 1.0) <= 1e-10 &&
              std::abs(frobenius_norm(probe_tilde) - 1.0) <= 1e-10,
          "SwitchConfig: probes must be unit vectors");
  require(w.cols() % d_r == 0 && w.rows() == d_b() * d_r_prime,
          "SwitchConfig: W must map A' x R to B x R'");
  require(output_iso.is_square() && output_iso.rows() % d_r_prime == 0,
          "SwitchConfig: output isomorphism must be square on B' x R'");
  require(w_tilde.cols() == d_b_out() * d_rt && w_tilde.rows() == d_a() * d_rt_prime,
          "SwitchConfig: W~ must map B' x R~ to A x R~'");
  require(output_iso.cols() == d_a_out() * d_rt_prime,
          "SwitchConfig: output isomorphism must map A' x R~' to B' x R'");
  require(isometry_defect(w) <= 1e-10, "SwitchConfig: W is not an isometry");
  require(isometry_defect(w_tilde) <= 1e-10, "SwitchConfig: W~ is not an isometry");
  require(isometry_defect(output_iso) <= 1e-10, "SwitchConfig: output isomorphism is not unitary");
}

CMatrix sequential_output(const SwitchConfig& cfg, const KrausChannel& ch_a,
                          const KrausChannel& ch_b, CausalOrder order) {
  cfg.validate();
  check_channel_dims(cfg, ch_a.d_in(), ch_a.d_out(), ch_b.d_in(), ch_b.d_out());
  const std::size_t d_out =
      order == CausalOrder::AB ? cfg.d_b_out() * cfg.d_r_prime : cfg.d_a_out() * cfg.d_rt_prime;
  MatrixXcd rho = MatrixXcd::Zero(idx(d_out), idx(d_out));
  for (const auto& a : ch_a.ops()) {
    for (const auto& b : ch_b.ops()) {
      const MatrixXcd v = order == CausalOrder::AB ? branch_ab(cfg, a.data(), b.data())
                                                   : branch_ba(cfg, a.data(), b.data());
      rho += v * v.adjoint();
    }
  }
  return CMatrix(std::move(rho));
}

CMatrix parallel_output(const CMatrix& psi, const ChoiOperator& c) {
  const KrausChannel ch = choi_to_kraus(c);
  require(psi.cols() == 1 && psi.rows() % ch.d_in() == 0,
          "parallel_output: psi is not a ket on (channel input) x R");
  const std::size_t d_r = psi.rows() / ch.d_in();
  Shape out_shape = ch.out_shape();
  out_shape.push_back(d_r);
  const std::size_t d_out = ch.d_out() * d_r;
  MatrixXcd rho = MatrixXcd::Zero(idx(d_out), idx(d_out));
  for (const auto& k : ch.ops()) {
    const MatrixXcd v = kron_data(k.data(), id(d_r)) * psi.data();
    rho += v * v.adjoint();
  }
  return CMatrix(std::move(rho), out_shape, out_shape);
}

CMatrix sequential_output_choi(const ChoiOperator& c, const CMatrix& probe, CausalOrder order) {
  require(c.layout() == ChoiLayout::Bipartite,
          "sequential_output_choi: Choi operator has no bipartite labels");
  BipartiteDims d = c.dims();
  CMatrix m = c.matrix();
  if (order == CausalOrder::BA) {
    m = permute_factors(m, {2, 3, 0, 1});
    d = BipartiteDims{d.b_in, d.b_out, d.a_in, d.a_out};
  }
  require(d.a_out == d.b_in, "sequential_output_choi: first output and second input differ");
  const CMatrix rho_in = probe.cols() == 1 ? projector(probe) : probe;
  require(rho_in.rows() == d.a_in && rho_in.is_square(),
          "sequential_output_choi: probe dimension does not match the first input");
  const CMatrix link = projector(double_ket(CMatrix::identity(d.a_out)));
  const CMatrix op = kron({rho_in.transpose().reshaped({d.a_in}, {d.a_in}), link,
                           CMatrix::identity(d.b_out)});
  return partial_trace(m * op, {0, 1, 2});
}

CMatrix switch_output(const SwitchConfig& cfg, const KrausChannel& ch_a,
                      const KrausChannel& ch_b) {
  cfg.validate();
  check_channel_dims(cfg, ch_a.d_in(), ch_a.d_out(), ch_b.d_in(), ch_b.d_out());
  const std::size_t d_sys = cfg.d_b_out() * cfg.d_r_prime;
  MatrixXcd rho = MatrixXcd::Zero(idx(2 * d_sys), idx(2 * d_sys));
  for (const auto& a : ch_a.ops()) {
    for (const auto& b : ch_b.ops()) {
      rho += superpose(cfg, branch_ab(cfg, a.data(), b.data()), branch_ba(cfg, a.data(), b.data()));
    }
  }
  return wrap_switch(std::move(rho), d_sys);
}

std::vector<std::pair<CMatrix, CMatrix>> operator_schmidt(const CMatrix& k,
                                                          const BipartiteDims& d) {
  require(k.rows() == d.a_out * d.b_out && k.cols() == d.a_in * d.b_in,
          "operator_schmidt: operator does not act as (A x B) -> (A' x B')");
  // R[(a', a), (b', b)] = K[(a', b'), (a, b)]
  MatrixXcd r(idx(d.a_out * d.a_in), idx(d.b_out * d.b_in));
  for (std::size_t ap = 0; ap < d.a_out; ++ap) {
    for (std::size_t bp = 0; bp < d.b_out; ++bp) {
      for (std::size_t a = 0; a < d.a_in; ++a) {
        for (std::size_t b = 0; b < d.b_in; ++b) {
          r(idx(ap * d.a_in + a), idx(bp * d.b_in + b)) = k(ap * d.b_out + bp, a * d.b_in + b);
        }
      }
    }
  }
  Eigen::JacobiSVD<MatrixXcd> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  std::vector<std::pair<CMatrix, CMatrix>> terms;
  for (Index s = 0; s < svd.singularValues().size(); ++s) {
    const double sv = svd.singularValues()(s);
    if (sv < 1e-12) continue;
    const double root = std::sqrt(sv);
    MatrixXcd a_op(idx(d.a_out), idx(d.a_in));
    MatrixXcd b_op(idx(d.b_out), idx(d.b_in));
    for (std::size_t ap = 0; ap < d.a_out; ++ap) {
      for (std::size_t a = 0; a < d.a_in; ++a) {
        a_op(idx(ap), idx(a)) = root * svd.matrixU()(idx(ap * d.a_in + a), s);
      }
    }
    for (std::size_t bp = 0; bp < d.b_out; ++bp) {
      for (std::size_t b = 0; b < d.b_in; ++b) {
        b_op(idx(bp), idx(b)) = root * std::conj(svd.matrixV()(idx(bp * d.b_in + b), s));
      }
    }
    terms.emplace_back(CMatrix(std::move(a_op)), CMatrix(std::move(b_op)));
  }
  return terms;
}

GeneralSwitch::GeneralSwitch(const ChoiOperator& c) : GeneralSwitch(choi_to_kraus(c)) {}

GeneralSwitch::GeneralSwitch(const KrausChannel& ch) {
  const ChoiOperator c = bipartite_choi(ch);
  require(is_no_signalling(c, BlockedDirection::AToB) && is_no_signalling(c, BlockedDirection::BToA),
          "GeneralSwitch: channel signals between Alice and Bob; the switch needs a "
          "no-signalling channel");
  dims_ = c.dims();
  for (const auto& k : ch.ops()) terms_.push_back(operator_schmidt(k, dims_));
}

CMatrix GeneralSwitch::output(const SwitchConfig& cfg) const {
  cfg.validate();
  check_channel_dims(cfg, dims_.a_in, dims_.a_out, dims_.b_in, dims_.b_out);
  const std::size_t d_sys = cfg.d_b_out() * cfg.d_r_prime;
  MatrixXcd rho = MatrixXcd::Zero(idx(2 * d_sys), idx(2 * d_sys));
  for (const auto& kraus_terms : terms_) {
    MatrixXcd ab = MatrixXcd::Zero(idx(d_sys), 1);
    MatrixXcd ba = MatrixXcd::Zero(idx(cfg.d_a_out() * cfg.d_rt_prime), 1);
    for (const auto& [a, b] : kraus_terms) {
      ab += branch_ab(cfg, a.data(), b.data());
      ba += branch_ba(cfg, a.data(), b.data());
    }
    rho += superpose(cfg, ab, ba);
  }
  return wrap_switch(std::move(rho), d_sys);
}

CMatrix switch_choi_general(const ChoiOperator& c, const SwitchConfig& cfg) {
  return GeneralSwitch(c).output(cfg);
}

}  // namespace causaldisc
