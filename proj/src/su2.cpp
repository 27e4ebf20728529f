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

#include "causaldisc/su2.hpp"

#include <cmath>
#include <stdexcept>

namespace causaldisc {

namespace {
constexpr double kUnitaryTol = 1e-10;
}

SU2Element::SU2Element(const CMatrix& u) : u_(u) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw std::invalid_argument("SU2Element: expected a 2x2 matrix");
  }
  if (max_abs_diff(u.adjoint() * u, CMatrix::identity(2)) > kUnitaryTol) {
    throw std::invalid_argument("SU2Element: matrix is not unitary");
  }
  if (std::abs(u.data().determinant() - Complex{1.0}) > kUnitaryTol) {
    throw std::invalid_argument("SU2Element: determinant is not 1");
  }
  u_ = CMatrix(u.data());
}

SU2Element SU2Element::identity() {
  return SU2Element(CMatrix::identity(2), Unchecked{});
}

SU2Element SU2Element::from_quaternion(double w, double x, double y, double z) {
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(norm > 0.0)) {
    throw std::invalid_argument("SU2Element::from_quaternion: zero quaternion");
  }
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;
  return SU2Element(CMatrix::from_rows({{Complex{w, z}, Complex{y, x}},
                                        {Complex{-y, x}, Complex{w, -z}}}),
                    Unchecked{});
}

SU2Element SU2Element::adjoint() const {
  return SU2Element(u_.adjoint(), Unchecked{});
}

SU2Element SU2Element::operator*(const SU2Element& rhs) const {
  return SU2Element(u_ * rhs.u_, Unchecked{});
}

SU2Element sample_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    const double w = gauss(rng);
    const double x = gauss(rng);
    const double y = gauss(rng);
    const double z = gauss(rng);
    if (w * w + x * x + y * y + z * z > 1e-300) {
      return SU2Element::from_quaternion(w, x, y, z);
    }
  }
}

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

CMatrix pauli_x() { return CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

CMatrix pauli_y() {
  return CMatrix::from_rows({{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}});
}

CMatrix pauli_z() { return CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

}  // namespace causaldisc
