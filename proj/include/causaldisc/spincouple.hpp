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

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "causaldisc/linalg.hpp"

namespace causaldisc {

/// Integer or half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int integer) : twice_(2 * integer) {}  // NOLINT
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  int twice_ = 0;
};

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

/**
 * Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> with the Condon-Shortley
 * phase, from the Racah closed form.
 *
 * Throws std::invalid_argument when some (j, m) pair is not a valid angular
 * momentum state (j < 0, |m| > j, or j - m not an integer). Returns 0 when
 * M != m1 + m2 or (j1, j2, J) violates the triangle rule.
 */
double cg_coefficient(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

enum class CouplingTree {
  Sequential,  // ((1,2),3) for three spins, (((1,2),3),4) for four
  Paired,      // ((1,2),(3,4)), four spins only
};

/**
 * One coupled state. `intermediate` lists the intermediate total spins in
 * coupling order: (j12) for ((1,2),3); (j12, j123) for (((1,2),3),4);
 * (j12, j34) for ((1,2),(3,4)).
 */
struct CoupledState {
  std::vector<HalfInt> intermediate;
  HalfInt j;
  HalfInt m;
  CMatrix vector;  // ket with shape {2, ..., 2}
};

/**
 * Orthonormal angular-momentum basis of n spin-1/2 systems, single spin
 * convention |0> = |m = +1/2>, |1> = |m = -1/2>. States of one multiplet are
 * stored consecutively with m descending and are related by the total
 * lowering operator (standard phase).
 */
class CoupledBasis {
 public:
  CoupledBasis(std::size_t n_spins, CouplingTree tree, std::vector<CoupledState> states)
      : n_spins_(n_spins), tree_(tree), states_(std::move(states)) {}

  std::size_t n_spins() const { return n_spins_; }
  CouplingTree tree() const { return tree_; }
  const std::vector<CoupledState>& states() const { return states_; }

  /// Projector onto the span of all states with the given total j and
  /// intermediate labels.
  CMatrix projector(const std::vector<HalfInt>& intermediate, HalfInt j) const;
  /// Unitary whose columns are the basis vectors in stored order.
  CMatrix unitary() const;

 private:
  std::size_t n_spins_;
  CouplingTree tree_;
  std::vector<CoupledState> states_;
};

/// Throws std::invalid_argument for n_spins outside {3, 4} or Paired with 3 spins.
CoupledBasis coupled_basis(std::size_t n_spins, CouplingTree tree);

/**
 * P_{j;(k,l)} on four qubits: total spin j, spin k on the pair (3,4) and spin
 * l on the pair (1,2). Throws std::invalid_argument for labels that do not
 * occur in the coupling of four spin-1/2 systems.
 */
CMatrix pair_projector(HalfInt j, HalfInt k, HalfInt l);

/// Three-qubit operators on H1 (x) H2 (x) H3 (factor 2 is the traced H3).
struct HalfSpinOperators {
  /// phi[m][k]: the two j = 1/2 families; k = 0 has m = +1/2.
  std::array<std::array<CMatrix, 2>, 2> phi;
  CMatrix p32;
  /// t[m][n] = sum_k |phi[m][k]><phi[n][k]|.
  std::array<std::array<CMatrix, 2>, 2> t;
};

/// Built from the ((1,2),3) coupled basis with each j = 1/2 family phased to
/// match the double-ket expressions |Y>>_{12}|k>_3 / sqrt2 and
/// (|k>_1 |Y>>_{23} + |Y>>_{13} |k>_2) / sqrt6.
const HalfSpinOperators& half_spin_operators();

/**
 * Four-qubit j = 1 vectors. Arrays are indexed by k + 1 for the label
 * k in {-1, 0, 1}; the label counts |1>'s minus |0>'s, so it equals -m in the
 * |0> = spin-up convention.
 */
struct JOneOperators {
  /// psi[m][k + 1], m in {0, 1}.
  std::array<std::array<CMatrix, 3>, 2> psi;
  /// s[m][n] = sum_k |psi[m][k]><psi[n][k]|.
  std::array<std::array<CMatrix, 2>, 2> s;
  std::array<CMatrix, 3> v;  // span P_{1;(1,0)}
  std::array<CMatrix, 3> w;  // span P_{1;(0,1)}
  std::array<CMatrix, 3> z;  // span P_{1;(1,1)}; phase i relative to the real expansion
};

const JOneOperators& jone_operators();

/**
 * Invariant three-qubit operator a P_{3/2} + sum b_mn T^{mn} (the tester's
 * Xi in the Y-conjugated frame).
 */
struct SymmetricTester {
  double a = 0.0;
  CMatrix b = CMatrix::zeros({2}, {2});

  /// a >= 0 and b Hermitian PSD within tol.
  bool is_valid(double tol = 1e-12) const;
  /// 2a + b11 == 3/4 and b00 == 1/4 within tol.
  bool is_normalized(double tol = 1e-12) const;

  static SymmetricTester make(double a, Complex b00, Complex b01, Complex b11);
  /// Normalized tester with b00 = 1/4, b11 = 3/4 - 2a.
  static SymmetricTester normalized(double a, Complex b01);
};

/// Throws std::invalid_argument when the tester is not valid.
CMatrix xi_tilde(const SymmetricTester& t);

/// Operator norm of Tr_3[xi] - I_4 / 2, where xi is built without validity checks.
double normalization_residual(const SymmetricTester& t);

/// {"a": a, "b": [[re, im] x 4]} with b in row-major order.
nlohmann::json tester_to_json(const SymmetricTester& t);
SymmetricTester tester_from_json(const nlohmann::json& j);

}  // namespace causaldisc
