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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "causaldisc/channels.hpp"
#include "causaldisc/haar.hpp"
#include "causaldisc/spincouple.hpp"
#include "causaldisc/su2.hpp"
#include "test_support.hpp"

namespace causaldisc {
namespace {

const Shape kQ4{2, 2, 2, 2};

CMatrix random_q4(std::mt19937_64& rng) {
  return CMatrix(testing::random_density(16, 16, rng).data() +
                     Complex{0.0, 1.0} * testing::random_unitary(16, rng).data(),
                 kQ4, kQ4);
}

TEST(SampleSu2, UnitaryWithUnitDeterminant) {
  auto rng = sample_stream(5, 0);
  for (int n = 0; n < 1000; ++n) {
    const CMatrix u = sample_su2(rng).matrix();
    EXPECT_LT(max_abs_diff(u.adjoint() * u, CMatrix::identity(2)), 1e-12);
    EXPECT_NEAR(std::abs(u.data().determinant() - 1.0), 0.0, 1e-12);
  }
}

TEST(SampleSu2, RejectsNonSpecialUnitary) {
  EXPECT_THROW(SU2Element(testing::pauli('X')), std::invalid_argument);
  EXPECT_THROW(SU2Element(CMatrix::identity(2) * 2.0), std::invalid_argument);
}

TEST(SampleSu2, FirstMomentVanishes) {
  constexpr std::size_t n = 100000;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(2, 2);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = sample_stream(7, i);
    sum += sample_su2(rng).matrix().data();
  }
  EXPECT_LT((sum / double(n)).cwiseAbs().maxCoeff(), 5.0 / std::sqrt(double(n)));
}

TEST(SampleSu2, SecondMomentIsMaximallyEntangled) {
  constexpr std::size_t n = 100000;
  const McEstimate est = mc_estimate(
      [](const SU2Element& u) { return kron(u.matrix(), u.matrix().conjugate()); }, n, 8);
  const CMatrix target = projector(double_ket(CMatrix::identity(2))) / 2.0;
  EXPECT_LT(frobenius_norm(est.mean - target), 3.0 * est.frobenius_std_error() + 1e-12);
  EXPECT_LT(max_abs_diff(est.mean, target), 5.0 / std::sqrt(double(n)));
}

TEST(SampleStream, DeterministicAndIndependent) {
  auto a = sample_stream(1, 3);
  auto b = sample_stream(1, 3);
  auto c = sample_stream(1, 4);
  EXPECT_EQ(a(), b());
  EXPECT_NE(sample_stream(1, 3)(), c());
}

TEST(McAverage, ConstantFunction) {
  const CMatrix k = CMatrix::from_rows({{1, 2}, {2, 5}});
  for (std::size_t n : {1, 7, 300}) {
    EXPECT_LT(max_abs_diff(mc_average([&](const SU2Element&) { return k; }, n, 0), k), 1e-14);
  }
  EXPECT_THROW(mc_average([&](const SU2Element&) { return k; }, 0, 0), std::invalid_argument);
}

TEST(McAverage, ThreadCountDoesNotChangeResult) {
  const auto f = [](const SU2Element& u) { return instance_choi(0, u); };
  const CMatrix one = mc_average(f, 1000, 42, 1);
  const CMatrix three = mc_average(f, 1000, 42, 3);
  EXPECT_EQ(one.data(), three.data());
}

TEST(McAverage, ConvergesToExactChoi) {
  const CMatrix exact = exact_average_choi(0).matrix();
  double previous = 1e9;
  for (std::size_t n : {1000, 10000, 100000}) {
    const McEstimate est = mc_average_choi(0, n, 3);
    const double dist = frobenius_norm(est.mean - exact);
    EXPECT_LT(dist, 3.0 * est.frobenius_std_error());
    EXPECT_LT(dist, 20.0 / std::sqrt(double(n)));
    EXPECT_NEAR(est.mean.trace().real(), 4.0, 1e-9);
    previous = std::min(previous, dist);
  }
  EXPECT_LT(previous, 0.05);
}

TEST(ExactTwirl, Identity) {
  const CMatrix i16 = CMatrix::identity(kQ4);
  EXPECT_LT(max_abs_diff(exact_twirl_u4(i16), i16), 1e-12);
}

TEST(ExactTwirl, MatchesPermutationOracle) {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 5; ++n) {
    const CMatrix m = random_q4(rng);
    EXPECT_LT(max_abs_diff(exact_twirl_u4(m), testing::twirl_oracle(m)), 1e-12);
  }
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT(max_abs_diff(exact_twirl_u4(lambda_tilde(i)), testing::twirl_oracle(lambda_tilde(i))),
              1e-12);
  }
}

TEST(ExactTwirl, PairProjectorClosedForms) {
  for (int i = 0; i < 2; ++i) {
    EXPECT_LT(max_abs_diff(exact_twirl_u4(lambda_tilde(i)), testing::tilde_choi_closed_form(i)), 1e-12) << i;
    EXPECT_LT(max_abs_diff(exact_average_choi_tilde(i), testing::tilde_choi_closed_form(i)), 1e-12) << i;
  }
}

TEST(ExactTwirl, IdempotentTracePositivity) {
  std::mt19937_64 rng(32);
  for (int n = 0; n < 5; ++n) {
    const CMatrix m = random_q4(rng);
    const CMatrix t = exact_twirl_u4(m);
    EXPECT_LT(max_abs_diff(exact_twirl_u4(t), t), 1e-12);
    EXPECT_NEAR(std::abs(t.trace() - m.trace()), 0.0, 1e-12);
    const CMatrix rho(testing::random_density(16, 3, rng).data(), kQ4, kQ4);
    EXPECT_TRUE(is_psd(exact_twirl_u4(rho), 1e-12));
  }
}

TEST(ExactTwirl, CommutesWithCollectiveUnitaries) {
  std::mt19937_64 rng(33);
  const CMatrix t = exact_twirl_u4(random_q4(rng));
  for (int n = 0; n < 20; ++n) {
    const CMatrix u = testing::random_su2_matrix(rng);
    const CMatrix g = kron({u, u, u, u});
    EXPECT_LT(max_abs_diff(commutator(t, g), CMatrix::zeros(kQ4, kQ4)), 1e-10);
  }
}

TEST(AverageChoi, TraceAndTildeFrame) {
  for (int i = 0; i < 2; ++i) {
    const ChoiOperator c = exact_average_choi(i);
    EXPECT_NEAR(c.matrix().trace().real(), 4.0, 1e-12);
    EXPECT_LT(max_abs_diff(y_conjugate_ab(c.matrix()), testing::tilde_choi_closed_form(i)), 1e-12);
    EXPECT_LT(max_abs_diff(y_conjugate_ab(exact_average_choi_tilde(i)), c.matrix()), 1e-12);
  }
}

TEST(AverageChoi, ExchangeInvariant) {
  for (int i = 0; i < 2; ++i) {
    const CMatrix c = exact_average_choi(i).matrix();
    EXPECT_LT(max_abs_diff(permute_factors(c, {2, 3, 0, 1}), c), 1e-12);
  }
}

TEST(AverageChoi, InvariantUnderConjugateGroup) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 2; ++i) {
    const CMatrix c = exact_average_choi(i).matrix();
    for (int n = 0; n < 5; ++n) {
      const CMatrix u = testing::random_su2_matrix(rng);
      const CMatrix g = kron({u.conjugate(), u, u.conjugate(), u});
      EXPECT_LT(max_abs_diff(g * c * g.adjoint(), c), 1e-12);
    }
  }
}

TEST(AverageChoi, InstanceChoiIsProductChannel) {
  std::mt19937_64 rng(35);
  const SU2Element u(testing::random_su2_matrix(rng));
  const CMatrix expected0 = bipartite_choi(tensor(build_MU(u), build_MU(u))).matrix();
  EXPECT_LT(max_abs_diff(instance_choi(0, u), expected0), 1e-12);
  const CMatrix expected1 = bipartite_choi(tensor(build_rotation(u, PauliAxis::X),
                                                  build_rotation(u, PauliAxis::Y)))
                                .matrix();
  EXPECT_LT(max_abs_diff(instance_choi(1, u), expected1), 1e-12);
}

TEST(AverageChoi, MonteCarloAgreesWithinThreeStandardErrors) {
  for (int i = 0; i < 2; ++i) {
    const McEstimate est = mc_average_choi(i, 100000, 11);
    const double dist = frobenius_norm(est.mean - exact_average_choi(i).matrix());
    EXPECT_LT(dist, 3.0 * est.frobenius_std_error()) << i;
  }
}

}  // namespace
}  // namespace causaldisc
