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

#include "causaldisc/discrim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "causaldisc/channels.hpp"
#include "causaldisc/haar.hpp"

namespace causaldisc {

namespace {

const std::array<CMatrix, 2>& choi_tilde() {
  static const std::array<CMatrix, 2> c{exact_average_choi_tilde(0), exact_average_choi_tilde(1)};
  return c;
}

const std::array<ChoiOperator, 2>& averaged_choi() {
  static const std::array<ChoiOperator, 2> c{exact_average_choi(0), exact_average_choi(1)};
  return c;
}

CMatrix ordered_tilde(int i, CausalOrder order) {
  const CMatrix& c = choi_tilde()[static_cast<std::size_t>(i)];
  return order == CausalOrder::AB ? c : permute_factors(c, {2, 3, 0, 1});
}

CMatrix xi_on_four(const CMatrix& xi) { return kron(xi, CMatrix::identity(2)); }

StrategyResult make_result(std::string name, CMatrix rho0, CMatrix rho1) {
  StrategyResult r;
  r.strategy = std::move(name);
  r.success_probability = helstrom(rho0, rho1);
  r.output_states = {std::move(rho0), std::move(rho1)};
  return r;
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

CMatrix positive_projector(const CMatrix& m) {
  const auto eig = eigh(m);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(eig.vectors.rows(), eig.vectors.cols());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > kZeroEigenvalueTol) p += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return CMatrix(std::move(p), m.row_shape(), m.col_shape());
}

struct SearchPoint {
  double a;
  double r;
  double theta;
};

SymmetricTester tester_at(const SearchPoint& p) {
  const double b11 = std::max(0.0, 0.75 - 2.0 * p.a);
  const double mag = p.r * std::sqrt(0.25 * b11);
  return SymmetricTester::normalized(p.a, std::polar(mag, p.theta));
}

SearchPoint clamp(SearchPoint p) {
  p.a = std::clamp(p.a, 0.0, 0.375);
  p.r = std::clamp(p.r, 0.0, 1.0);
  p.theta = std::remainder(p.theta, 2.0 * std::numbers::pi);
  return p;
}

// Lexicographic key used to order candidate optima.
std::tuple<double, double, double, double> rank(double value, const SymmetricTester& t) {
  return {value, t.a, t.b(0, 1).real(), t.b(0, 1).imag()};
}

}  // namespace

double helstrom(const CMatrix& rho0, const CMatrix& rho1, double p0, double p1) {
  if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > 1e-12) {
    throw std::invalid_argument("helstrom: priors must be nonnegative and sum to 1");
  }
  if (rho0.rows() != rho1.rows() || !rho0.is_square() || !rho1.is_square()) {
    throw std::invalid_argument("helstrom: states must be square matrices of equal dimension");
  }
  const double p = 0.5 + 0.5 * trace_norm(rho0 * Complex{p0} - rho1 * Complex{p1});
  return std::clamp(p, 0.5, 1.0);
}

nlohmann::json StrategyResult::to_json() const {
  return nlohmann::json{{"strategy", strategy},
                        {"success_probability", success_probability},
                        {"metadata", metadata},
                        {"output_states",
                         {matrix_to_json(output_states.first), matrix_to_json(output_states.second)}}};
}

StrategyResult strategy_choi() {
  // |I>> / 2 on (A B) (x) R with R = C^4.
  const CMatrix psi = double_ket(CMatrix::identity(4)).reshaped({2, 2, 4}, {1}) / Complex{2.0};
  std::array<CMatrix, 2> rho;
  for (int i = 0; i < 2; ++i) {
    const CMatrix out = parallel_output(psi, averaged_choi()[static_cast<std::size_t>(i)]);
    // (A', B', R = A B) -> (A, A', B, B')
    const Shape four{2, 2, 2, 2};
    rho[static_cast<std::size_t>(i)] = permute_factors(out.reshaped(four, four), {2, 0, 3, 1});
  }
  StrategyResult r = make_result("choi", rho[0], rho[1]);
  r.metadata["probe"] = "maximally entangled (A B) x R";
  return r;
}

StrategyResult strategy_choi_mc(std::size_t n_samples, std::uint64_t seed) {
  const McEstimate c0 = mc_average_choi(0, n_samples, seed);
  const McEstimate c1 = mc_average_choi(1, n_samples, seed + 1);
  StrategyResult r = make_result("choi-mc", c0.mean / Complex{4.0}, c1.mean / Complex{4.0});
  r.metadata["samples"] = n_samples;
  r.metadata["seed"] = seed;
  return r;
}

StrategyResult strategy_sequential(CausalOrder order, const CMatrix& probe) {
  if (probe.rows() != 2 || probe.cols() != 1 || std::abs(frobenius_norm(probe) - 1.0) > 1e-10) {
    throw std::invalid_argument("strategy_sequential: probe must be a normalized qubit ket");
  }
  StrategyResult r =
      make_result(order == CausalOrder::AB ? "sequential-ab" : "sequential-ba",
                  sequential_output_choi(averaged_choi()[0], probe, order),
                  sequential_output_choi(averaged_choi()[1], probe, order));
  r.metadata["probe"] = {complex_json(probe(0, 0)), complex_json(probe(1, 0))};
  return r;
}

StrategyResult strategy_sequential_mc(CausalOrder order, const CMatrix& probe,
                                      std::size_t n_samples, std::uint64_t seed) {
  const SwitchConfig cfg = SwitchConfig::trivial(probe, 1.0, 0.0);
  const CMatrix rho0 = mc_average(
      [&](const SU2Element& u) {
        return sequential_output(cfg, build_MU(u), build_MU(u), order);
      },
      n_samples, seed);
  const CMatrix rho1 = mc_average(
      [&](const SU2Element& v) {
        return sequential_output(cfg, build_rotation(v, PauliAxis::X),
                                 build_rotation(v, PauliAxis::Y), order);
      },
      n_samples, seed + 1);
  StrategyResult r = make_result(order == CausalOrder::AB ? "sequential-ab-mc" : "sequential-ba-mc",
                                 rho0, rho1);
  r.metadata["samples"] = n_samples;
  r.metadata["seed"] = seed;
  return r;
}

StrategyResult strategy_switch(const CMatrix& probe, Complex alpha, Complex beta) {
  const SwitchConfig cfg = SwitchConfig::trivial(probe, alpha, beta);
  StrategyResult r = make_result("switch", switch_choi_general(averaged_choi()[0], cfg),
                                 switch_choi_general(averaged_choi()[1], cfg));
  r.metadata["alpha"] = complex_json(alpha);
  r.metadata["beta"] = complex_json(beta);
  r.metadata["probe"] = {complex_json(probe(0, 0)), complex_json(probe(1, 0))};
  return r;
}

StrategyResult strategy_switch(const CMatrix& probe, Complex alpha, Complex beta,
                               const SU2Element& u, const SU2Element& v) {
  const SwitchConfig cfg = SwitchConfig::trivial(probe, alpha, beta);
  StrategyResult r = make_result(
      "switch-instance", switch_output(cfg, build_MU(u), build_MU(u)),
      switch_output(cfg, build_rotation(v, PauliAxis::X), build_rotation(v, PauliAxis::Y)));
  r.metadata["alpha"] = complex_json(alpha);
  r.metadata["beta"] = complex_json(beta);
  r.metadata["probe"] = {complex_json(probe(0, 0)), complex_json(probe(1, 0))};
  return r;
}

std::pair<CMatrix, CMatrix> gamma_states(const SymmetricTester& t, CausalOrder order) {
  if (!t.is_normalized(1e-9)) {
    throw std::invalid_argument("gamma_states: tester must satisfy 2a + b11 = 3/4, b00 = 1/4");
  }
  const CMatrix s = xi_on_four(sqrt_psd(xi_tilde(t)));
  return {s * ordered_tilde(0, order) * s, s * ordered_tilde(1, order) * s};
}

double overlap_symmetric(const SymmetricTester& t, OverlapMethod method, CausalOrder order) {
  if (method == OverlapMethod::ClosedForm) {
    if (std::abs(t.a) > 1e-12) {
      throw std::invalid_argument("overlap_symmetric: closed form holds only at a = 0");
    }
    const double b11 = t.b(1, 1).real();
    return 4.0 * std::norm(t.b(0, 1)) / 9.0 + 4.0 * b11 * b11 / 27.0;
  }
  const CMatrix x = xi_on_four(xi_tilde(t));
  return (ordered_tilde(0, order) * x * ordered_tilde(1, order) * x).trace().real();
}

double gamma_helstrom(const SymmetricTester& t, CausalOrder order) {
  const auto [g0, g1] = gamma_states(t, order);
  return helstrom(g0, g1);
}

TesterOptimum optimize_symmetric_tester(TesterObjective objective,
                                        const OptimizerOptions& options) {
  if (options.grid_a < 2 || options.grid_r < 1 || options.initial_step <= options.final_step) {
    throw std::invalid_argument("optimize_symmetric_tester: invalid optimizer options");
  }
  std::size_t evaluations = 0;
  const auto cost = [&](const SearchPoint& p) {
    ++evaluations;
    const SymmetricTester t = tester_at(p);
    return objective == TesterObjective::MinOverlap
               ? overlap_symmetric(t, OverlapMethod::Numeric, options.order)
               : -gamma_helstrom(t, options.order);
  };

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  bool have_best = false;
  TesterOptimum best;
  double best_cost = 0.0;
  std::size_t starts = 0;
  for (std::size_t ia = 0; ia < options.grid_a; ++ia) {
    for (std::size_t ir = 0; ir < options.grid_r; ++ir) {
      SearchPoint p{0.375 * static_cast<double>(ia) / static_cast<double>(options.grid_a - 1),
                    options.grid_r == 1 ? 0.0
                                        : static_cast<double>(ir) /
                                              static_cast<double>(options.grid_r - 1),
                    phase(rng)};
      ++starts;
      double fp = cost(p);
      for (double step = options.initial_step; step > options.final_step;) {
        bool improved = false;
        for (int dim = 0; dim < 3; ++dim) {
          for (double sign : {1.0, -1.0}) {
            SearchPoint q = p;
            if (dim == 0) q.a += sign * step;
            if (dim == 1) q.r += sign * step;
            if (dim == 2) q.theta += sign * step * 2.0 * std::numbers::pi;
            q = clamp(q);
            const double fq = cost(q);
            if (fq < fp) {
              p = q;
              fp = fq;
              improved = true;
            }
          }
        }
        if (!improved) step *= 0.5;
      }
      const SymmetricTester t = tester_at(p);
      if (!have_best || rank(fp, t) < rank(best_cost, best.tester)) {
        best.tester = t;
        best.value = objective == TesterObjective::MinOverlap ? fp : -fp;
        best_cost = fp;
        have_best = true;
      }
    }
  }
  best.starts = starts;
  best.evaluations = evaluations;
  return best;
}

double multiplex_check(int n_pairs, const MultiplexOptions& options) {
  if (n_pairs < 1 || n_pairs > 2) {
    throw std::invalid_argument("multiplex_check: n_pairs must be 1 or 2 (got " +
                                std::to_string(n_pairs) + ")");
  }
  const SwitchConfig cfg = SwitchConfig::trivial(options.probe, options.alpha, options.beta);
  const std::array<CMatrix, 2> averaged{switch_choi_general(averaged_choi()[0], cfg),
                                        switch_choi_general(averaged_choi()[1], cfg)};
  const CMatrix pi0 = positive_projector(averaged[0] - averaged[1]);
  const std::array<CMatrix, 2> decoder{pi0, CMatrix::identity(pi0.row_shape()) - pi0};

  const auto n = static_cast<std::size_t>(n_pairs);
  std::vector<std::array<CMatrix, 2>> states(n, averaged);
  if (options.random_instances) {
    for (std::size_t k = 0; k < n; ++k) {
      auto rng = sample_stream(options.seed, k);
      const SU2Element u = sample_su2(rng);
      const SU2Element v = sample_su2(rng);
      states[k][0] = switch_output(cfg, build_MU(u), build_MU(u));
      states[k][1] = switch_output(cfg, build_rotation(v, PauliAxis::X),
                                   build_rotation(v, PauliAxis::Y));
    }
  }

  const std::size_t n_hyp = std::size_t{1} << n;
  double success = 0.0;
  for (std::size_t h = 0; h < n_hyp; ++h) {
    CMatrix rho = states[0][(h >> (n - 1)) & 1U];
    CMatrix meas = decoder[(h >> (n - 1)) & 1U];
    for (std::size_t k = 1; k < n; ++k) {
      const std::size_t bit = (h >> (n - 1 - k)) & 1U;
      rho = kron(rho, states[k][bit]);
      meas = kron(meas, decoder[bit]);
    }
    success += (rho * meas).trace().real();
  }
  return success / static_cast<double>(n_hyp);
}

CMatrix bloch_ket(double theta, double phi) {
  Eigen::VectorXcd v(2);
  v << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
  return CMatrix::ket(v);
}

}  // namespace causaldisc
