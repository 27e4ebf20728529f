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

#include <cstdint>
#include <random>

#include "causaldisc/linalg.hpp"

namespace causaldisc {

/// A 2x2 unitary with unit determinant.
class SU2Element {
 public:
  /// Throws std::invalid_argument unless u is 2x2, unitary and det u == 1
  /// within 1e-10.
  explicit SU2Element(const CMatrix& u);

  static SU2Element identity();
  /// Maps a unit quaternion (w, x, y, z) to [[w + iz, y + ix], [-y + ix, w - iz]].
  /// The quaternion is normalized first; the zero quaternion is rejected.
  static SU2Element from_quaternion(double w, double x, double y, double z);

  const CMatrix& matrix() const { return u_; }
  SU2Element adjoint() const;
  SU2Element operator*(const SU2Element& rhs) const;

 private:
  struct Unchecked {};
  SU2Element(CMatrix u, Unchecked) : u_(std::move(u)) {}
  CMatrix u_;
};

/// Haar-distributed element: four i.i.d. standard Gaussians, normalized to a
/// uniformly random unit quaternion.
SU2Element sample_su2(std::mt19937_64& rng);

/// Independent generator for sample `index` of the stream keyed by `seed`.
/// Used wherever samples may be evaluated out of order.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

/// Pauli matrices in the computational basis; Z = -iXY.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace causaldisc
