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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "causaldisc/channels.hpp"
#include "causaldisc/discrim.hpp"
#include "causaldisc/experiments.hpp"
#include "causaldisc/haar.hpp"
#include "causaldisc/linalg.hpp"
#include "causaldisc/report.hpp"
#include "causaldisc/spincouple.hpp"
#include "causaldisc/su2.hpp"
#include "causaldisc/switch.hpp"
#include "test_support.hpp"

namespace causaldisc {
namespace {

using testing::pauli;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check but keeps the first message.
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string name;
  std::function<void(Outcome&)> run;
};

double dist(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

CMatrix plus() { return projector((basis_ket(0, 2) + basis_ket(1, 2)) * kInvSqrt2); }
CMatrix minus() { return projector((basis_ket(0, 2) - basis_ket(1, 2)) * kInvSqrt2); }
CMatrix control(const CMatrix& rho) { return partial_trace(rho, {0}); }

CMatrix p_singlet() { return projector((basis_ket({0, 1}) - basis_ket({1, 0})) * kInvSqrt2); }
CMatrix p_triplet() { return CMatrix::identity(Shape{2, 2}) - p_singlet(); }

KrausChannel tensor_mixture(const std::vector<std::pair<KrausChannel, KrausChannel>>& parts,
                            const std::vector<double>& p) {
  std::vector<CMatrix> ops;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const KrausChannel product = tensor(parts[j].first, parts[j].second);
    for (const auto& k : product.ops()) {
      ops.push_back(k * std::sqrt(p[j]));
    }
  }
  return KrausChannel(std::move(ops));
}

SwitchConfig random_config(std::mt19937_64& rng) {
  SwitchConfig cfg;
  cfg.alpha = kInvSqrt2;
  cfg.beta = std::polar(kInvSqrt2, 0.4);
  cfg.d_r = cfg.d_r_prime = cfg.d_rt = cfg.d_rt_prime = 2;
  cfg.probe = testing::random_ket({2, 2}, rng);
  cfg.probe_tilde = testing::random_ket({2, 2}, rng);
  cfg.w = testing::random_unitary(4, rng);
  cfg.w_tilde = testing::random_unitary(4, rng);
  cfg.output_iso = testing::random_unitary(4, rng);
  return cfg;
}

void switch_perfect(Outcome& out) {
  std::mt19937_64 rng(101);
  double worst_p = 0.0;
  double worst_c = 0.0;
  for (int n = 0; n < 100; ++n) {
    const SU2Element u(testing::random_su2_matrix(rng));
    const SU2Element v(testing::random_su2_matrix(rng));
    const CMatrix phi = testing::random_ket({2}, rng);
    const StrategyResult r = strategy_switch(phi, kInvSqrt2, kInvSqrt2, u, v);
    worst_p = std::max(worst_p, std::abs(r.success_probability - 1.0));
    worst_c = std::max(worst_c, dist(control(r.output_states.first), plus()));
    worst_c = std::max(worst_c, dist(control(r.output_states.second), minus()));
  }
  out.require(worst_p <= 1e-10, "success probability");
  out.require(worst_c <= 1e-12, "control marginals");
  out.detail << "max |p-1| = " << worst_p << ", max control deviation = " << worst_c;
}

void sequential_two_thirds(Outcome& out) {
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    const CMatrix phi = testing::random_ket({2}, rng);
    for (CausalOrder order : {CausalOrder::AB, CausalOrder::BA}) {
      worst = std::max(worst,
                       std::abs(strategy_sequential(order, phi).success_probability - 2.0 / 3.0));
    }
  }
  out.require(worst <= 1e-9, "sequential success");
  out.detail << "max |p-2/3| = " << worst << " over 10 probes and both orders";
}

void choi_strategy(Outcome& out) {
  const StrategyResult r = strategy_choi();
  const double tn = trace_norm(testing::tilde_choi_closed_form(0) - testing::tilde_choi_closed_form(1));
  const double direct = helstrom(exact_average_choi(0).matrix() / 4.0,
                                 exact_average_choi(1).matrix() / 4.0);
  out.require(std::abs(r.success_probability - 11.0 / 12.0) <= 1e-9, "choi success");
  out.require(std::abs(tn - 20.0 / 3.0) <= 1e-9, "trace norm");
  out.require(std::abs(direct - r.success_probability) <= 1e-12, "helstrom of averaged Choi states");
  out.detail << "p = " << r.success_probability << ", ||C0~-C1~||_1 = " << tn;
}

void twirl(Outcome& out) {
  double worst = 0.0;
  double worst_mc = 0.0;
  for (int i = 0; i < 2; ++i) {
    const CMatrix expected = testing::tilde_choi_closed_form(i);
    worst = std::max(worst, dist(exact_twirl_u4(lambda_tilde(i)), expected));
    worst = std::max(worst, dist(testing::twirl_oracle(lambda_tilde(i)), expected));
    worst = std::max(worst, dist(y_conjugate_ab(exact_average_choi(i).matrix()), expected));
    const McEstimate est = mc_average_choi(i, 100000, 7 + i);
    const double d = frobenius_norm(est.mean - exact_average_choi(i).matrix());
    const double se = est.frobenius_std_error();
    out.require(d <= 3.0 * se, "Monte Carlo within 3 SE");
    worst_mc = std::max(worst_mc, d / se);
  }
  out.require(worst <= 1e-12, "closed forms");
  out.detail << "closed-form deviation = " << worst << ", MC distance / SE = " << worst_mc;
}

void half_spin_traces(Outcome& out) {
  const auto& h = half_spin_operators();
  const CMatrix zero = CMatrix::zeros(Shape{2, 2}, Shape{2, 2});
  double worst = 0.0;
  worst = std::max(worst, dist(partial_trace(h.p32, {2}), p_triplet() * (4.0 / 3.0)));
  worst = std::max(worst, dist(partial_trace(h.t[0][0], {2}), p_singlet() * 2.0));
  worst = std::max(worst, dist(partial_trace(h.t[1][1], {2}), p_triplet() * (2.0 / 3.0)));
  worst = std::max(worst, dist(partial_trace(h.t[0][1], {2}), zero));
  worst = std::max(worst, dist(partial_trace(h.t[1][0], {2}), zero));
  worst = std::max(worst, dist(testing::loop_partial_trace(h.p32, {2, 2, 2}, {2}),
                               p_triplet() * (4.0 / 3.0)));
  out.require(worst <= 1e-12, "partial traces");
  out.detail << "max deviation = " << worst;
}

void overlap_table(Outcome& out) {
  const auto& j = jone_operators();
  double worst = 0.0;
  for (int idx = 0; idx < 3; ++idx) {
    worst = std::max(worst, std::abs(inner(j.psi[0][idx], j.v[idx]) - 1.0));
    worst = std::max(worst, std::abs(inner(j.psi[1][idx], j.w[idx]) + 1.0 / std::sqrt(3.0)));
    worst = std::max(worst, std::abs(inner(j.psi[1][idx], j.z[idx]) - std::sqrt(2.0 / 3.0)));
  }
  out.require(worst <= 1e-12, "overlaps");
  out.detail << "max deviation over 9 entries = " << worst;
}

void overlap_formula(Outcome& out) {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const double r = std::sqrt(0.25 * 0.75) * unit(rng);
    const Complex b01 = std::polar(r, 2.0 * M_PI * unit(rng));
    const SymmetricTester t = SymmetricTester::normalized(0.0, b01);
    const double numeric = overlap_symmetric(t, OverlapMethod::Numeric);
    const double formula = 4.0 * std::norm(b01) / 9.0 + 4.0 * 0.75 * 0.75 / 27.0;
    worst = std::max(worst, std::abs(numeric - formula));
  }
  const double spot = overlap_symmetric(SymmetricTester::normalized(0.0, 0.0), OverlapMethod::Numeric);
  out.require(worst <= 1e-12, "formula");
  out.require(std::abs(spot - 1.0 / 12.0) <= 1e-12, "spot value");
  out.detail << "max deviation over 50 testers = " << worst << ", spot = " << spot;
}

void normalization_equivalence(Outcome& out) {
  std::size_t mismatches = 0;
  std::size_t normalized = 0;
  for (int ia = 0; ia < 10; ++ia) {
    for (int i00 = 0; i00 < 10; ++i00) {
      for (int i11 = 0; i11 < 10; ++i11) {
        for (int i01 = 0; i01 < 10; ++i01) {
          const SymmetricTester t =
              SymmetricTester::make(ia / 16.0, i00 / 16.0, (i01 - 5) / 20.0, i11 / 16.0);
          const bool by_trace = normalization_residual(t) <= 1e-12;
          const bool by_coeff = std::abs(2.0 * t.a + t.b(1, 1).real() - 0.75) <= 1e-12 &&
                                std::abs(t.b(0, 0).real() - 0.25) <= 1e-12;
          normalized += by_coeff;
          mismatches += by_trace != by_coeff;
        }
      }
    }
  }
  out.require(mismatches == 0, "equivalence");
  out.require(normalized > 0, "grid contains normalized testers");
  out.detail << mismatches << " mismatches over 10^4 testers (" << normalized << " normalized)";
}

void tester_bounds(Outcome& out) {
  const TesterOptimum mn = optimize_symmetric_tester(TesterObjective::MinOverlap);
  const TesterOptimum mx = optimize_symmetric_tester(TesterObjective::MaxHelstrom);
  const testing::TesterGrid gmin = testing::tester_grid(1e-3, 6, 4, false);
  const testing::TesterGrid gmax = testing::tester_grid(2.5e-3, 3, 2, true);
  out.require(mn.value >= 0.01, "min overlap >= 0.01");
  out.require(gmin.min_overlap >= 0.01, "grid min overlap >= 0.01");
  out.require(mn.value <= gmin.min_overlap + 1e-12, "optimizer below grid");
  out.require(std::abs(mn.value - 1.0 / 72.0) <= 1e-8, "min overlap equals 1/72");
  out.require(mx.value < 0.999, "max helstrom < 0.999");
  out.require(mx.value >= gmax.max_helstrom - 1e-12, "optimizer above grid");
  double exch = 0.0;
  for (const TesterOptimum* o : {&mn, &mx}) {
    exch = std::max(exch, std::abs(overlap_symmetric(o->tester, OverlapMethod::Numeric,
                                                     CausalOrder::BA) -
                                   overlap_symmetric(o->tester, OverlapMethod::Numeric)));
    exch = std::max(exch, std::abs(gamma_helstrom(o->tester, CausalOrder::BA) -
                                   gamma_helstrom(o->tester)));
  }
  out.require(exch <= 1e-10, "BA exchange");
  out.detail.precision(15);
  out.detail << "min overlap = " << mn.value << " (grid " << gmin.min_overlap
             << "), max helstrom = " << mx.value << " (grid " << gmax.max_helstrom
             << "), BA deviation = " << exch;
}

void commuting_pairs(Outcome& out) {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto phase = [&] { return std::polar(1.0, 2.0 * M_PI * unit(rng)); };
  double worst_c = 0.0;
  double worst_a = 0.0;
  for (int n = 0; n < 50; ++n) {
    const CMatrix w = testing::random_unitary(2, rng);
    const SwitchConfig cfg =
        SwitchConfig::trivial(testing::random_ket({2}, rng), kInvSqrt2, kInvSqrt2);
    const double p = unit(rng);
    const double q = unit(rng);
    const auto diag = [&](double weight) {
      return w * CMatrix::from_rows({{phase(), 0}, {0, phase()}}) * w.adjoint() *
             std::sqrt(weight);
    };
    const KrausChannel a0({diag(p), diag(1.0 - p)});
    const KrausChannel b0({diag(q), diag(1.0 - q)});
    worst_c = std::max(worst_c, dist(control(switch_output(cfg, a0, b0)), plus()));

    const auto in_plane = [&](double t, double weight) {
      return w * (pauli('X') * std::cos(t) + pauli('Y') * std::sin(t)) * w.adjoint() *
             std::sqrt(weight);
    };
    const KrausChannel a1(
        {in_plane(2.0 * M_PI * unit(rng), p), in_plane(2.0 * M_PI * unit(rng), 1.0 - p)});
    const KrausChannel b1({w * pauli('Z') * w.adjoint() * std::sqrt(q),
                           w * pauli('Z') * w.adjoint() * phase() * std::sqrt(1.0 - q)});
    worst_a = std::max(worst_a, dist(control(switch_output(cfg, a1, b1)), minus()));
  }
  out.require(worst_c <= 1e-12, "commuting");
  out.require(worst_a <= 1e-12, "anticommuting");
  out.detail << "max control deviation: commuting " << worst_c << ", anticommuting " << worst_a;
}

void kraus_invariance(Outcome& out) {
  std::mt19937_64 rng(111);
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const KrausChannel mix = tensor_mixture(
        {{testing::random_channel(2, 2, 2, rng), testing::random_channel(2, 2, 2, rng)},
         {testing::random_channel(2, 2, 1, rng), testing::random_channel(2, 2, 3, rng)}},
        {0.4, 0.6});
    const KrausChannel remixed = testing::remix(mix, mix.size() + 3, rng);
    const SwitchConfig cfg = random_config(rng);
    worst = std::max(worst,
                     dist(GeneralSwitch(mix).output(cfg), GeneralSwitch(remixed).output(cfg)));
  }
  out.require(worst <= 1e-10, "remix invariance");
  out.detail << "max deviation over 20 trials = " << worst;
}

void multiplex(Outcome& out) {
  const double two = multiplex_check(2);
  MultiplexOptions random;
  random.random_instances = true;
  random.seed = 112;
  const double two_random = multiplex_check(2, random);
  out.require(std::abs(two - 1.0) <= 1e-10, "averaged channels");
  out.require(std::abs(two_random - 1.0) <= 1e-10, "random instances");
  out.detail << "P(2 pairs) = " << two << ", with random instances = " << two_random;
}

void determinism(Outcome& out) {
  for (const char* name : {"switch-demo", "strategies"}) {
    RunOptions options;
    options.parameters.seed = 42;
    options.parameters.samples = 2000;
    const std::string first = emit(run_experiment(name, options), ReportFormat::Json);
    const std::string second = emit(run_experiment(name, options), ReportFormat::Json);
    out.require(first == second, std::string(name) + " JSON");
    const std::string csv1 = emit(run_experiment(name, options), ReportFormat::Csv);
    const std::string csv2 = emit(run_experiment(name, options), ReportFormat::Csv);
    out.require(csv1 == csv2, std::string(name) + " CSV");
  }
  out.detail << "reports compared byte for byte";
}

}  // namespace
}  // namespace causaldisc

int main() {
  using namespace causaldisc;
  const std::vector<Criterion> criteria{
      {1, "switch discriminates perfectly for 100 random (U, V, phi)", switch_perfect},
      {2, "sequential strategies reach 2/3 for both orders", sequential_two_thirds},
      {3, "Choi strategy reaches 11/12", choi_strategy},
      {4, "exact twirl closed forms and Monte Carlo agreement", twirl},
      {5, "partial traces of the half-spin operators", half_spin_traces},
      {6, "spin-one overlap table", overlap_table},
      {7, "overlap formula for a = 0 testers", overlap_formula},
      {8, "normalization equivalence on a 10^4 grid", normalization_equivalence},
      {9, "fixed-order tester bounds", tester_bounds},
      {10, "commuting and anticommuting Kraus pairs", commuting_pairs},
      {11, "switch output independent of Kraus representation", kraus_invariance},
      {12, "two-pair multiplexing is perfect", multiplex},
      {13, "reports are deterministic for a fixed seed", determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    failures += !out.pass;
    std::printf("%s criterion %d: %s [%s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
