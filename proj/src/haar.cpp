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

#include "causaldisc/haar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "causaldisc/spincouple.hpp"

namespace causaldisc {

namespace {

struct BlockSums {
  Eigen::MatrixXcd sum;
  Eigen::MatrixXd sq_re;
  Eigen::MatrixXd sq_im;
  Shape row_shape;
  Shape col_shape;
};

BlockSums sum_block(const SampleFunction& f, std::uint64_t seed, std::size_t begin,
                    std::size_t end, bool with_squares) {
  BlockSums b;
  for (std::size_t i = begin; i < end; ++i) {
    auto rng = sample_stream(seed, i);
    const CMatrix x = f(sample_su2(rng));
    if (i == begin) {
      b.sum = Eigen::MatrixXcd::Zero(x.data().rows(), x.data().cols());
      b.sq_re = Eigen::MatrixXd::Zero(x.data().rows(), x.data().cols());
      b.sq_im = b.sq_re;
      b.row_shape = x.row_shape();
      b.col_shape = x.col_shape();
    }
    b.sum += x.data();
    if (with_squares) {
      b.sq_re += x.data().real().cwiseAbs2();
      b.sq_im += x.data().imag().cwiseAbs2();
    }
  }
  return b;
}

McEstimate run_mc(const SampleFunction& f, std::size_t n, std::uint64_t seed, unsigned threads,
                  bool with_squares) {
  if (n == 0) throw std::invalid_argument("mc_average: n_samples must be >= 1");
  const std::size_t n_blocks = (n + kMcBlockSize - 1) / kMcBlockSize;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_blocks));

  std::vector<BlockSums> blocks(n_blocks);
  const auto worker = [&](unsigned t) {
    for (std::size_t blk = t; blk < n_blocks; blk += threads) {
      blocks[blk] = sum_block(f, seed, blk * kMcBlockSize,
                              std::min(n, (blk + 1) * kMcBlockSize), with_squares);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  BlockSums total = std::move(blocks.front());
  for (std::size_t blk = 1; blk < n_blocks; ++blk) {
    total.sum += blocks[blk].sum;
    if (with_squares) {
      total.sq_re += blocks[blk].sq_re;
      total.sq_im += blocks[blk].sq_im;
    }
  }
  const double nd = static_cast<double>(n);
  const Eigen::MatrixXcd mean = total.sum / nd;
  McEstimate est;
  est.n_samples = n;
  est.mean = CMatrix(mean, total.row_shape, total.col_shape).hermitian_part();
  if (with_squares) {
    est.sq_std_error = Eigen::MatrixXd::Zero(mean.rows(), mean.cols());
    if (n > 1) {
      const Eigen::MatrixXd var_re =
          (total.sq_re / nd - mean.real().cwiseAbs2()).cwiseMax(0.0) * (nd / (nd - 1.0));
      const Eigen::MatrixXd var_im =
          (total.sq_im / nd - mean.imag().cwiseAbs2()).cwiseMax(0.0) * (nd / (nd - 1.0));
      est.sq_std_error = (var_re + var_im) / nd;
    }
  }
  return est;
}

const CoupledBasis& paired_basis() {
  static const CoupledBasis basis = coupled_basis(4, CouplingTree::Paired);
  return basis;
}

}  // namespace

double McEstimate::frobenius_std_error() const { return std::sqrt(sq_std_error.sum()); }

CMatrix mc_average(const SampleFunction& f, std::size_t n, std::uint64_t seed,
                   unsigned threads) {
  return run_mc(f, n, seed, threads, false).mean;
}

McEstimate mc_estimate(const SampleFunction& f, std::size_t n, std::uint64_t seed,
                       unsigned threads) {
  return run_mc(f, n, seed, threads, true);
}

CMatrix exact_twirl_u4(const CMatrix& m) {
  if (m.rows() != 16 || m.cols() != 16) {
    throw std::invalid_argument("exact_twirl_u4: expected a 16 x 16 matrix, got " +
                                std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
  }
  const CoupledBasis& basis = paired_basis();
  static const Eigen::MatrixXcd u = basis.unitary().data();
  const Eigen::MatrixXcd mc = u.adjoint() * m.data() * u;

  // Multiplets as runs of consecutive states sharing labels; m descends within a run.
  struct Run {
    HalfInt j;
    Eigen::Index start;
  };
  std::vector<Run> runs;
  const auto& states = basis.states();
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (states[s].m == states[s].j) runs.push_back({states[s].j, static_cast<Eigen::Index>(s)});
  }

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(16, 16);
  for (const auto& ra : runs) {
    for (const auto& rb : runs) {
      if (ra.j != rb.j) continue;
      const Eigen::Index dim = ra.j.twice() + 1;
      Complex avg{0.0};
      for (Eigen::Index k = 0; k < dim; ++k) avg += mc(ra.start + k, rb.start + k);
      avg /= static_cast<double>(dim);
      for (Eigen::Index k = 0; k < dim; ++k) out(ra.start + k, rb.start + k) = avg;
    }
  }
  const Shape shape{2, 2, 2, 2};
  return CMatrix(u * out * u.adjoint(), shape, shape);
}

CMatrix y_conjugate_ab(const CMatrix& m) {
  const CMatrix y = pauli_y();
  return conjugate_factor(conjugate_factor(m, 0, y), 2, y);
}

CMatrix instance_choi(int i, const SU2Element& u) {
  if (i == 0) return bipartite_choi(tensor(build_MU(u), build_MU(u))).matrix();
  if (i == 1) {
    return bipartite_choi(tensor(build_rotation(u, PauliAxis::X), build_rotation(u, PauliAxis::Y)))
        .matrix();
  }
  throw std::invalid_argument("instance_choi: channel index must be 0 or 1");
}

CMatrix lambda_operator(int i) { return instance_choi(i, SU2Element::identity()); }

CMatrix lambda_tilde(int i) { return y_conjugate_ab(lambda_operator(i)); }

CMatrix exact_average_choi_tilde(int i) { return exact_twirl_u4(lambda_tilde(i)); }

ChoiOperator exact_average_choi(int i) {
  return ChoiOperator::bipartite(y_conjugate_ab(exact_average_choi_tilde(i)), BipartiteDims{});
}

McEstimate mc_average_choi(int i, std::size_t n, std::uint64_t seed, unsigned threads) {
  if (i != 0 && i != 1) throw std::invalid_argument("mc_average_choi: index must be 0 or 1");
  return mc_estimate([i](const SU2Element& u) { return instance_choi(i, u); }, n, seed, threads);
}

}  // namespace causaldisc
