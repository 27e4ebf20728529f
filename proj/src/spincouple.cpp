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

#include "causaldisc/spincouple.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "causaldisc/su2.hpp"

namespace causaldisc {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

double factorial(int n) {
  if (n < 0) throw std::logic_error("factorial of a negative number");
  return std::tgamma(n + 1.0);
}

void check_state(HalfInt j, HalfInt m, const char* what) {
  if (j.twice() < 0 || std::abs(m.twice()) > j.twice() || (j.twice() - m.twice()) % 2 != 0) {
    throw std::invalid_argument(std::string("cg_coefficient: invalid (j, m) for ") + what +
                                ": (" + j.str() + ", " + m.str() + ")");
  }
}

// Integer value of a HalfInt expression known to be integral.
int as_int(HalfInt h) { return h.twice() / 2; }

/// Multiplet of a group of consecutive spins: kets indexed by m descending.
struct Multiplet {
  std::size_t n_spins;
  std::vector<HalfInt> intermediate;
  HalfInt j;
  std::vector<CMatrix> kets;  // kets[i] has m = j - i
};

std::vector<Multiplet> single_spin() {
  return {Multiplet{1, {}, kHalf, {basis_ket(0, 2), basis_ket(1, 2)}}};
}

std::vector<Multiplet> couple(const std::vector<Multiplet>& left,
                              const std::vector<Multiplet>& right) {
  std::vector<Multiplet> out;
  for (const auto& a : left) {
    for (const auto& b : right) {
      std::vector<HalfInt> labels = a.intermediate;
      if (a.n_spins > 1) labels.push_back(a.j);
      labels.insert(labels.end(), b.intermediate.begin(), b.intermediate.end());
      if (b.n_spins > 1) labels.push_back(b.j);
      const HalfInt j_min = HalfInt::from_twice(std::abs(a.j.twice() - b.j.twice()));
      for (HalfInt jt = j_min; jt <= a.j + b.j; jt = jt + HalfInt(1)) {
        Multiplet mult{a.n_spins + b.n_spins, labels, jt, {}};
        for (HalfInt m = jt; m >= -jt; m = m - HalfInt(1)) {
          CMatrix v = CMatrix::zeros(Shape(mult.n_spins, 2), {1});
          for (std::size_t ia = 0; ia < a.kets.size(); ++ia) {
            const HalfInt ma = a.j - HalfInt(static_cast<int>(ia));
            const HalfInt mb = m - ma;
            if (std::abs(mb.twice()) > b.j.twice()) continue;
            const double c = cg_coefficient(a.j, ma, b.j, mb, jt, m);
            if (c == 0.0) continue;
            const auto ib = static_cast<std::size_t>(as_int(b.j - mb));
            v = v + kron(a.kets[ia], b.kets[ib]) * Complex{c};
          }
          mult.kets.push_back(std::move(v));
        }
        out.push_back(std::move(mult));
      }
    }
  }
  return out;
}

/// Places kets on the given factors of an n-qubit register and returns the
/// ket in ascending factor order.
CMatrix embed(std::initializer_list<std::pair<CMatrix, std::vector<std::size_t>>> parts,
              std::size_t n) {
  CMatrix v = CMatrix::ket(Eigen::VectorXcd::Ones(1), {1});
  std::vector<std::size_t> positions;
  bool first = true;
  for (const auto& [ket, factors] : parts) {
    v = first ? ket : kron(v, ket);
    first = false;
    positions.insert(positions.end(), factors.begin(), factors.end());
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = static_cast<std::size_t>(
        std::find(positions.begin(), positions.end(), i) - positions.begin());
  }
  return permute_factors(v.reshaped(Shape(n, 2), {1}), order);
}

CMatrix pair_ket(const CMatrix& m) { return double_ket(m).reshaped({2, 2}, {1}); }

/// Phase e^{i theta} with literal == e^{i theta} * reference; throws if the
/// two vectors are not parallel.
Complex relative_phase(const CMatrix& literal, const CMatrix& reference) {
  const Complex ov = inner(reference, literal);
  const Complex phase = ov / std::abs(ov);
  if (max_abs_diff(literal, reference * phase) > 1e-12) {
    throw std::logic_error("coupled basis does not reproduce the reference family");
  }
  return phase;
}

CMatrix outer_sum(const CMatrix& lhs0, const CMatrix& rhs0, const CMatrix& lhs1,
                  const CMatrix& rhs1) {
  return lhs0 * rhs0.adjoint() + lhs1 * rhs1.adjoint();
}

CMatrix build_xi(const SymmetricTester& t) {
  const auto& ops = half_spin_operators();
  CMatrix xi = ops.p32 * Complex{t.a};
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t n = 0; n < 2; ++n) xi = xi + ops.t[m][n] * t.b(m, n);
  }
  return xi;
}

}  // namespace

double cg_coefficient(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  check_state(j1, m1, "j1");
  check_state(j2, m2, "j2");
  check_state(J, M, "J");
  if (m1 + m2 != M) return 0.0;
  if (J.twice() < std::abs(j1.twice() - j2.twice()) || J > j1 + j2) return 0.0;
  if (!(j1 + j2 + J).is_integer()) return 0.0;

  const double pre =
      std::sqrt((J.twice() + 1) * factorial(as_int(J + j1 - j2)) *
                factorial(as_int(J - j1 + j2)) * factorial(as_int(j1 + j2 - J)) /
                factorial(as_int(j1 + j2 + J) + 1)) *
      std::sqrt(factorial(as_int(J + M)) * factorial(as_int(J - M)) *
                factorial(as_int(j1 - m1)) * factorial(as_int(j1 + m1)) *
                factorial(as_int(j2 - m2)) * factorial(as_int(j2 + m2)));
  double sum = 0.0;
  const int k_max = std::min({as_int(j1 + j2 - J), as_int(j1 - m1), as_int(j2 + m2)});
  const int k_min = std::max({0, -as_int(J - j2 + m1), -as_int(J - j1 - m2)});
  for (int k = k_min; k <= k_max; ++k) {
    const double den = factorial(k) * factorial(as_int(j1 + j2 - J) - k) *
                       factorial(as_int(j1 - m1) - k) * factorial(as_int(j2 + m2) - k) *
                       factorial(as_int(J - j2 + m1) + k) *
                       factorial(as_int(J - j1 - m2) + k);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) / den;
  }
  return pre * sum;
}

CMatrix CoupledBasis::projector(const std::vector<HalfInt>& intermediate, HalfInt j) const {
  const Shape shape(n_spins_, 2);
  CMatrix p = CMatrix::zeros(shape, shape);
  bool found = false;
  for (const auto& s : states_) {
    if (s.j == j && s.intermediate == intermediate) {
      p = p + causaldisc::projector(s.vector);
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("CoupledBasis::projector: no states with these labels");
  return p;
}

CMatrix CoupledBasis::unitary() const {
  const auto dim = static_cast<Eigen::Index>(states_.size());
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) u.col(c) = states_[static_cast<std::size_t>(c)].vector.data();
  const Shape shape(n_spins_, 2);
  return CMatrix(std::move(u), shape, {static_cast<std::size_t>(dim)});
}

CoupledBasis coupled_basis(std::size_t n_spins, CouplingTree tree) {
  std::vector<Multiplet> families;
  const auto spin = single_spin();
  if (n_spins == 3 && tree == CouplingTree::Sequential) {
    families = couple(couple(spin, spin), spin);
  } else if (n_spins == 4 && tree == CouplingTree::Sequential) {
    families = couple(couple(couple(spin, spin), spin), spin);
  } else if (n_spins == 4 && tree == CouplingTree::Paired) {
    const auto pair = couple(spin, spin);
    families = couple(pair, pair);
  } else {
    throw std::invalid_argument("coupled_basis: unsupported coupling tree for " +
                                std::to_string(n_spins) + " spins");
  }
  std::vector<CoupledState> states;
  for (auto& f : families) {
    for (std::size_t i = 0; i < f.kets.size(); ++i) {
      states.push_back(CoupledState{f.intermediate, f.j, f.j - HalfInt(static_cast<int>(i)),
                                    std::move(f.kets[i])});
    }
  }
  return CoupledBasis(n_spins, tree, std::move(states));
}

CMatrix pair_projector(HalfInt j, HalfInt k, HalfInt l) {
  const auto valid_pair = [](HalfInt s) { return s == HalfInt(0) || s == HalfInt(1); };
  if (!valid_pair(k) || !valid_pair(l) || j.twice() < std::abs(k.twice() - l.twice()) ||
      j > k + l || !j.is_integer()) {
    throw std::invalid_argument("pair_projector: inconsistent labels (" + j.str() + "; " +
                                k.str() + ", " + l.str() + ")");
  }
  static const CoupledBasis basis = coupled_basis(4, CouplingTree::Paired);
  // Stored labels are (j12, j34); l belongs to the pair (1,2).
  return basis.projector({l, k}, j);
}

const HalfSpinOperators& half_spin_operators() {
  static const HalfSpinOperators ops = [] {
    const CoupledBasis basis = coupled_basis(3, CouplingTree::Sequential);
    const CMatrix y = pair_ket(pauli_y());
    HalfSpinOperators r;
    for (std::size_t k = 0; k < 2; ++k) {
      const CMatrix e = basis_ket(k, 2);
      const CMatrix lit0 = embed({{y, {0, 1}}, {e, {2}}}, 3) / Complex{std::sqrt(2.0)};
      const CMatrix lit1 =
          (embed({{e, {0}}, {y, {1, 2}}}, 3) + embed({{y, {0, 2}}, {e, {1}}}, 3)) /
          Complex{std::sqrt(6.0)};
      r.phi[0][k] = lit0;
      r.phi[1][k] = lit1;
    }
    // Align each j = 1/2 family of the coupled basis with the double-ket form.
    for (int fam = 0; fam < 2; ++fam) {
      std::vector<const CoupledState*> members;
      for (const auto& s : basis.states()) {
        if (s.j == kHalf && s.intermediate.front() == HalfInt(fam)) members.push_back(&s);
      }
      const Complex phase = relative_phase(r.phi[fam][0], members[0]->vector);
      for (std::size_t k = 0; k < 2; ++k) {
        const CMatrix aligned = members[k]->vector * phase;
        relative_phase(r.phi[fam][k], aligned);
        r.phi[fam][k] = aligned;
      }
    }
    for (std::size_t m = 0; m < 2; ++m) {
      for (std::size_t n = 0; n < 2; ++n) {
        r.t[m][n] = outer_sum(r.phi[m][0], r.phi[n][0], r.phi[m][1], r.phi[n][1]);
      }
    }
    r.p32 = CMatrix::identity(Shape{2, 2, 2}) - r.t[0][0] - r.t[1][1];
    return r;
  }();
  return ops;
}

const JOneOperators& jone_operators() {
  static const JOneOperators ops = [] {
    const CMatrix y = pair_ket(pauli_y());
    const CMatrix x = pair_ket(pauli_x());
    const CMatrix e0 = basis_ket(0, 2);
    const CMatrix e1 = basis_ket(1, 2);
    const Complex r2{std::sqrt(2.0)};
    JOneOperators r;
    // k = 1, 0, -1 at indices 2, 1, 0.
    r.psi[0][2] = embed({{y, {0, 1}}, {e1, {2}}, {e1, {3}}}, 4) / r2;
    r.psi[0][1] = embed({{y, {0, 1}}, {x, {2, 3}}}, 4) / Complex{2.0};
    r.psi[0][0] = embed({{y, {0, 1}}, {e0, {2}}, {e0, {3}}}, 4) / r2;
    r.psi[1][2] = (embed({{e1, {0}}, {y, {1, 2}}, {e1, {3}}}, 4) +
                   embed({{y, {0, 2}}, {e1, {1}}, {e1, {3}}}, 4)) /
                  Complex{std::sqrt(6.0)};
    r.psi[1][1] = (embed({{x, {0, 3}}, {y, {1, 2}}}, 4) + embed({{y, {0, 2}}, {x, {1, 3}}}, 4)) /
                  Complex{2.0 * std::sqrt(3.0)};
    r.psi[1][0] = (embed({{e0, {0}}, {y, {1, 2}}, {e0, {3}}}, 4) +
                   embed({{y, {0, 2}}, {e0, {1}}, {e0, {3}}}, 4)) /
                  Complex{std::sqrt(6.0)};
    for (std::size_t m = 0; m < 2; ++m) {
      for (std::size_t n = 0; n < 2; ++n) {
        r.s[m][n] = r.psi[m][0] * r.psi[n][0].adjoint() + r.psi[m][1] * r.psi[n][1].adjoint() +
                    r.psi[m][2] * r.psi[n][2].adjoint();
      }
    }
    r.v = r.psi[0];
    r.w[2] = embed({{e1, {0}}, {e1, {1}}, {y, {2, 3}}}, 4) / r2;
    r.w[1] = embed({{x, {0, 1}}, {y, {2, 3}}}, 4) / Complex{2.0};
    r.w[0] = embed({{e0, {0}}, {e0, {1}}, {y, {2, 3}}}, 4) / r2;
    const Complex i_half{0.0, 0.5};
    r.z[2] = (embed({{e1, {0}}, {e1, {1}}, {x, {2, 3}}}, 4) -
              embed({{x, {0, 1}}, {e1, {2}}, {e1, {3}}}, 4)) *
             i_half;
    r.z[1] = (basis_ket({1, 1, 0, 0}) - basis_ket({0, 0, 1, 1})) * Complex{0.0, 1.0 / std::sqrt(2.0)};
    r.z[0] = (embed({{x, {0, 1}}, {e0, {2}}, {e0, {3}}}, 4) -
              embed({{e0, {0}}, {e0, {1}}, {x, {2, 3}}}, 4)) *
             i_half;
    return r;
  }();
  return ops;
}

bool SymmetricTester::is_valid(double tol) const {
  if (a < -tol) return false;
  if (b.rows() != 2 || b.cols() != 2 || !b.is_hermitian(tol)) return false;
  return is_psd(b, tol);
}

bool SymmetricTester::is_normalized(double tol) const {
  return std::abs(2.0 * a + b(1, 1).real() - 0.75) <= tol && std::abs(b(1, 1).imag()) <= tol &&
         std::abs(b(0, 0) - Complex{0.25}) <= tol;
}

SymmetricTester SymmetricTester::make(double a, Complex b00, Complex b01, Complex b11) {
  SymmetricTester t;
  t.a = a;
  t.b = CMatrix::from_rows({{b00, b01}, {std::conj(b01), b11}});
  return t;
}

SymmetricTester SymmetricTester::normalized(double a, Complex b01) {
  return make(a, 0.25, b01, 0.75 - 2.0 * a);
}

CMatrix xi_tilde(const SymmetricTester& t) {
  if (!t.is_valid()) {
    throw std::invalid_argument("xi_tilde: tester needs a >= 0 and b Hermitian PSD");
  }
  return build_xi(t);
}

double normalization_residual(const SymmetricTester& t) {
  const CMatrix reduced = partial_trace(build_xi(t), {2});
  return operator_norm(reduced - CMatrix::identity(Shape{2, 2}) * Complex{0.5});
}

nlohmann::json tester_to_json(const SymmetricTester& t) {
  nlohmann::json b = nlohmann::json::array();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) b.push_back({t.b(r, c).real(), t.b(r, c).imag()});
  }
  return nlohmann::json{{"a", t.a}, {"b", b}};
}

SymmetricTester tester_from_json(const nlohmann::json& j) {
  const auto& b = j.at("b");
  if (!b.is_array() || b.size() != 4) {
    throw std::invalid_argument("tester_from_json: \"b\" must hold four [re, im] entries");
  }
  std::array<Complex, 4> e;
  for (std::size_t i = 0; i < 4; ++i) {
    e[i] = Complex{b[i].at(0).get<double>(), b[i].at(1).get<double>()};
  }
  SymmetricTester t;
  t.a = j.at("a").get<double>();
  t.b = CMatrix::from_rows({{e[0], e[1]}, {e[2], e[3]}});
  return t;
}

}  // namespace causaldisc
