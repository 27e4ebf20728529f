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

#include "causaldisc/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "causaldisc/channels.hpp"
#include "causaldisc/discrim.hpp"
#include "causaldisc/haar.hpp"
#include "causaldisc/linalg.hpp"
#include "causaldisc/spincouple.hpp"
#include "causaldisc/su2.hpp"
#include "causaldisc/switch.hpp"

namespace causaldisc {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kSwitchTol = 1e-10;

struct Context {
  const RunOptions& options;
  ExperimentReport& report;

  const ReportParameters& p() const { return options.parameters; }
  double tol() const { return p().tolerance; }
  double alpha() const { return std::sqrt(p().alpha_sq); }
  double beta() const { return std::sqrt(1.0 - p().alpha_sq); }
  bool balanced() const { return std::abs(p().alpha_sq - 0.5) <= 1e-15; }
  CMatrix probe() const { return bloch_ket(p().probe_theta, p().probe_phi); }
  // Statistical tolerance for Monte Carlo success probabilities.
  double mc_tol() const { return 5.0 / std::sqrt(static_cast<double>(p().samples)); }
  void add(const std::string& q, double value, double expected, double tolerance,
           CheckKind kind = CheckKind::Eq) {
    report.add(q, value, expected, tolerance, kind);
  }
};

double as_flag(bool b) { return b ? 1.0 : 0.0; }

CMatrix control_marginal(const CMatrix& rho) { return partial_trace(rho, {0}); }

CMatrix control_ket(double alpha, double beta, double sign) {
  Eigen::VectorXcd v(2);
  v << alpha, sign * beta;
  return CMatrix::ket(v);
}

std::string k_label(int idx) { return "k=" + std::to_string(idx - 1); }

void switch_demo(Context& ctx) {
  const CMatrix probe = ctx.probe();
  const double a = ctx.alpha();
  const double b = ctx.beta();
  const CMatrix plus = projector(control_ket(a, b, 1.0));
  const CMatrix minus = projector(control_ket(a, b, -1.0));

  const StrategyResult averaged = strategy_switch(probe, a, b);
  if (ctx.balanced()) {
    ctx.add("switch.averaged.success_probability", averaged.success_probability, 1.0, ctx.tol());
  } else {
    ctx.add("switch.averaged.success_probability", averaged.success_probability, 2.0 / 3.0,
            ctx.tol(), CheckKind::Ge);
  }
  ctx.add("switch.averaged.control_deviation.c0",
          max_abs_diff(control_marginal(averaged.output_states.first), plus), 0.0, kSwitchTol,
          CheckKind::Le);
  ctx.add("switch.averaged.control_deviation.c1",
          max_abs_diff(control_marginal(averaged.output_states.second), minus), 0.0, kSwitchTol,
          CheckKind::Le);

  const SwitchConfig cfg = SwitchConfig::trivial(probe, a, b);
  double min_success = 1.0;
  double dev0 = 0.0;
  double dev1 = 0.0;
  for (std::size_t i = 0; i < ctx.p().samples; ++i) {
    auto rng = sample_stream(ctx.p().seed, i);
    const SU2Element u = sample_su2(rng);
    const SU2Element v = sample_su2(rng);
    const CMatrix rho0 = switch_output(cfg, build_MU(u), build_MU(u));
    const CMatrix rho1 =
        switch_output(cfg, build_rotation(v, PauliAxis::X), build_rotation(v, PauliAxis::Y));
    dev0 = std::max(dev0, max_abs_diff(control_marginal(rho0), plus));
    dev1 = std::max(dev1, max_abs_diff(control_marginal(rho1), minus));
    if (ctx.balanced()) min_success = std::min(min_success, helstrom(rho0, rho1));
  }
  ctx.add("switch.instance.max_control_deviation.c0", dev0, 0.0, kIdentityTol, CheckKind::Le);
  ctx.add("switch.instance.max_control_deviation.c1", dev1, 0.0, kIdentityTol, CheckKind::Le);
  if (ctx.balanced()) {
    ctx.add("switch.instance.min_success_probability", min_success, 1.0, kSwitchTol);
  }
}

void strategies(Context& ctx) {
  const CMatrix probe = ctx.probe();
  ctx.add("sequential.ab.success_probability",
          strategy_sequential(CausalOrder::AB, probe).success_probability, 2.0 / 3.0, ctx.tol());
  ctx.add("sequential.ba.success_probability",
          strategy_sequential(CausalOrder::BA, probe).success_probability, 2.0 / 3.0, ctx.tol());
  ctx.add("choi.success_probability", strategy_choi().success_probability, 11.0 / 12.0,
          ctx.tol());
  ctx.add("choi.trace_norm_tilde_difference",
          trace_norm(exact_average_choi_tilde(0) - exact_average_choi_tilde(1)), 20.0 / 3.0,
          ctx.tol());
  const double sw = strategy_switch(probe, ctx.alpha(), ctx.beta()).success_probability;
  if (ctx.balanced()) {
    ctx.add("switch.success_probability", sw, 1.0, ctx.tol());
  } else {
    ctx.add("switch.success_probability", sw, 2.0 / 3.0, ctx.tol(), CheckKind::Ge);
  }
  ctx.add("choi.mc.success_probability",
          strategy_choi_mc(ctx.p().samples, ctx.p().seed).success_probability, 11.0 / 12.0,
          ctx.mc_tol());
  ctx.add("sequential.ab.mc.success_probability",
          strategy_sequential_mc(CausalOrder::AB, probe, ctx.p().samples, ctx.p().seed)
              .success_probability,
          2.0 / 3.0, ctx.mc_tol());
}

CMatrix tilde_closed_form(int i) {
  const auto P = [](int j, int k, int l) { return pair_projector(j, k, l); };
  if (i == 1) return P(2, 1, 1) * (2.0 / 5.0) + P(1, 1, 1) * (2.0 / 3.0);
  return P(2, 1, 1) * (2.0 / 15.0) + P(0, 1, 1) * (1.0 / 3.0) +
         (P(1, 1, 0) + P(1, 0, 1)) * (1.0 / 3.0) + P(0, 0, 0);
}

void twirl_check(Context& ctx) {
  for (int i = 0; i < 2; ++i) {
    const std::string tag = "c" + std::to_string(i);
    const CMatrix tilde = exact_twirl_u4(lambda_tilde(i));
    ctx.add("twirl." + tag + ".closed_form_deviation",
            max_abs_diff(tilde, tilde_closed_form(i)), 0.0, kIdentityTol, CheckKind::Le);
    ctx.add("twirl." + tag + ".idempotence_deviation",
            max_abs_diff(exact_twirl_u4(tilde), tilde), 0.0, kIdentityTol, CheckKind::Le);

    const ChoiOperator c = exact_average_choi(i);
    ctx.add("twirl." + tag + ".trace", c.matrix().trace().real(), 4.0, kIdentityTol);
    ctx.add("twirl." + tag + ".exchange_deviation",
            max_abs_diff(permute_factors(c.matrix(), {2, 3, 0, 1}), c.matrix()), 0.0,
            kIdentityTol, CheckKind::Le);

    double invariance = 0.0;
    for (std::size_t s = 0; s < 20; ++s) {
      auto rng = sample_stream(ctx.p().seed ^ 0x7457697274ULL, s);
      const CMatrix u = sample_su2(rng).matrix();
      const CMatrix g = kron({u.conjugate(), u, u.conjugate(), u});
      invariance = std::max(invariance, max_abs_diff(g * c.matrix() * g.adjoint(), c.matrix()));
    }
    ctx.add("twirl." + tag + ".invariance_deviation", invariance, 0.0, kIdentityTol,
            CheckKind::Le);
    ctx.add("twirl." + tag + ".no_signalling.a_to_b",
            as_flag(is_no_signalling(c, BlockedDirection::AToB)), 1.0, 0.0);
    ctx.add("twirl." + tag + ".no_signalling.b_to_a",
            as_flag(is_no_signalling(c, BlockedDirection::BToA)), 1.0, 0.0);

    const McEstimate est = mc_average_choi(i, ctx.p().samples, ctx.p().seed, ctx.options.threads);
    ctx.add("twirl." + tag + ".mc.frobenius_distance", frobenius_norm(est.mean - c.matrix()),
            3.0 * est.frobenius_std_error(), 0.0, CheckKind::Le);
  }
}

// a, b00, b11 on a sixteenths lattice so that the constraint 2a + b11 = 3/4
// is met exactly at some points; b01 takes ten real values.
std::size_t normalization_mismatches() {
  std::size_t mismatches = 0;
  for (int ia = 0; ia < 10; ++ia) {
    for (int i00 = 0; i00 < 10; ++i00) {
      for (int i11 = 0; i11 < 10; ++i11) {
        for (int i01 = 0; i01 < 10; ++i01) {
          const double a = ia / 16.0;
          const double b00 = i00 / 16.0;
          const double b11 = i11 / 16.0;
          const double b01 = (i01 - 5) / 20.0;
          const bool residual_zero =
              normalization_residual(SymmetricTester::make(a, b00, b01, b11)) <= kIdentityTol;
          const bool relations = std::abs(2.0 * a + b11 - 0.75) <= kIdentityTol &&
                                 std::abs(b00 - 0.25) <= kIdentityTol;
          if (residual_zero != relations) ++mismatches;
        }
      }
    }
  }
  return mismatches;
}

void spin_identities(Context& ctx) {
  const auto& h = half_spin_operators();
  const CMatrix p0 = projector((basis_ket({0, 1}) - basis_ket({1, 0})) / std::sqrt(2.0));
  const CMatrix p1 = CMatrix::identity(Shape{2, 2}) - p0;
  ctx.add("partial_trace.p32", max_abs_diff(partial_trace(h.p32, {2}), p1 * (4.0 / 3.0)), 0.0,
          kIdentityTol, CheckKind::Le);
  ctx.add("partial_trace.t11", max_abs_diff(partial_trace(h.t[1][1], {2}), p1 * (2.0 / 3.0)),
          0.0, kIdentityTol, CheckKind::Le);
  ctx.add("partial_trace.t00", max_abs_diff(partial_trace(h.t[0][0], {2}), p0 * 2.0), 0.0,
          kIdentityTol, CheckKind::Le);
  ctx.add("partial_trace.t01", max_abs_diff(partial_trace(h.t[0][1], {2}), p0 * 0.0), 0.0,
          kIdentityTol, CheckKind::Le);

  const auto& j = jone_operators();
  double imag = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Complex v = inner(j.psi[0][k], j.v[k]);
    const Complex w = inner(j.psi[1][k], j.w[k]);
    const Complex z = inner(j.psi[1][k], j.z[k]);
    ctx.add("overlap.psi0_v." + k_label(k), v.real(), 1.0, kIdentityTol);
    ctx.add("overlap.psi1_w." + k_label(k), w.real(), -1.0 / std::sqrt(3.0), kIdentityTol);
    ctx.add("overlap.psi1_z." + k_label(k), z.real(), std::sqrt(2.0 / 3.0), kIdentityTol);
    imag = std::max({imag, std::abs(v.imag()), std::abs(w.imag()), std::abs(z.imag())});
  }
  ctx.add("overlap.max_imaginary_part", imag, 0.0, kIdentityTol, CheckKind::Le);

  const auto span = [](const std::array<CMatrix, 3>& vs) {
    return vs[0] * vs[0].adjoint() + vs[1] * vs[1].adjoint() + vs[2] * vs[2].adjoint();
  };
  ctx.add("completeness.v", max_abs_diff(span(j.v), pair_projector(1, 1, 0)), 0.0, kIdentityTol,
          CheckKind::Le);
  ctx.add("completeness.w", max_abs_diff(span(j.w), pair_projector(1, 0, 1)), 0.0, kIdentityTol,
          CheckKind::Le);
  ctx.add("completeness.z", max_abs_diff(span(j.z), pair_projector(1, 1, 1)), 0.0, kIdentityTol,
          CheckKind::Le);

  std::mt19937_64 rng(ctx.p().seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double formula = 0.0;
  for (int n = 0; n < 50; ++n) {
    const double r = unit(rng) * std::sqrt(0.25 * 0.75);
    const double theta = 2.0 * M_PI * unit(rng);
    const SymmetricTester t = SymmetricTester::normalized(0.0, std::polar(r, theta));
    formula = std::max(formula, std::abs(overlap_symmetric(t, OverlapMethod::Numeric) -
                                         overlap_symmetric(t, OverlapMethod::ClosedForm)));
  }
  ctx.add("overlap_formula.max_deviation", formula, 0.0, ctx.tol(), CheckKind::Le);
  const SymmetricTester spot = SymmetricTester::normalized(0.0, 0.0);
  ctx.add("overlap_formula.spot.numeric", overlap_symmetric(spot, OverlapMethod::Numeric),
          1.0 / 12.0, ctx.tol());
  ctx.add("overlap_formula.spot.closed_form", overlap_symmetric(spot, OverlapMethod::ClosedForm),
          1.0 / 12.0, ctx.tol());
  ctx.add("normalization.equivalence_mismatches", static_cast<double>(normalization_mismatches()),
          0.0, 0.0);
}

std::size_t incompatibility_violations() {
  std::size_t violations = 0;
  for (int ia = 0; ia < 10; ++ia) {
    for (int i00 = 0; i00 < 10; ++i00) {
      for (int i11 = 0; i11 < 10; ++i11) {
        for (int ir = 0; ir < 10; ++ir) {
          const double a = ia / 18.0;
          const double b00 = i00 / 18.0;
          const double b11 = i11 / 12.0;
          const double b01 = (ir / 9.0) * std::sqrt(b00 * b11);
          const SymmetricTester t = SymmetricTester::make(a, b00, b01, b11);
          if (overlap_symmetric(t, OverlapMethod::Numeric) < 1e-9 &&
              normalization_residual(t) < 1e-9) {
            ++violations;
          }
        }
      }
    }
  }
  return violations;
}

void tester_bound(Context& ctx) {
  OptimizerOptions opts;
  opts.seed = ctx.p().seed;
  const TesterOptimum mo = optimize_symmetric_tester(TesterObjective::MinOverlap, opts);
  ctx.add("min_overlap.value", mo.value, 0.01, 0.0, CheckKind::Ge);
  ctx.add("min_overlap.derived_optimum", mo.value, 1.0 / 72.0, ctx.tol());
  ctx.add("min_overlap.normalization_residual", normalization_residual(mo.tester), 0.0, 1e-9,
          CheckKind::Le);
  ctx.add("min_overlap.exchange_deviation",
          std::abs(overlap_symmetric(mo.tester, OverlapMethod::Numeric, CausalOrder::BA) -
                   mo.value),
          0.0, kSwitchTol, CheckKind::Le);

  const TesterOptimum mh = optimize_symmetric_tester(TesterObjective::MaxHelstrom, opts);
  ctx.add("max_helstrom.value", mh.value, 1.0 - 1e-3, 0.0, CheckKind::Le);
  ctx.add("max_helstrom.normalization_residual", normalization_residual(mh.tester), 0.0, 1e-9,
          CheckKind::Le);
  ctx.add("max_helstrom.exchange_deviation",
          std::abs(gamma_helstrom(mh.tester, CausalOrder::BA) - mh.value), 0.0, kSwitchTol,
          CheckKind::Le);

  ctx.add("gamma_helstrom.uniform_tester",
          gamma_helstrom(SymmetricTester::make(0.25, 0.25, 0.0, 0.25)), 11.0 / 12.0, ctx.tol());
  ctx.add("incompatibility.violations", static_cast<double>(incompatibility_violations()), 0.0,
          0.0);
}

void multiplex(Context& ctx) {
  MultiplexOptions opts;
  opts.alpha = ctx.alpha();
  opts.beta = ctx.beta();
  opts.probe = ctx.probe();
  opts.seed = ctx.p().seed;
  const double n1 = multiplex_check(1, opts);
  const double n2 = multiplex_check(2, opts);
  if (ctx.balanced()) {
    ctx.add("multiplex.n1.success_probability", n1, 1.0, kSwitchTol);
    ctx.add("multiplex.n2.success_probability", n2, 1.0, kSwitchTol);
    opts.random_instances = true;
    ctx.add("multiplex.n2.random_instances.success_probability", multiplex_check(2, opts), 1.0,
            kSwitchTol);
    opts.random_instances = false;
  } else {
    ctx.add("multiplex.n1.success_probability", n1,
            strategy_switch(opts.probe, opts.alpha, opts.beta).success_probability, kSwitchTol);
    ctx.add("multiplex.n2.success_probability", n2, n1 * n1, kSwitchTol);
  }
  opts.alpha = 1.0;
  opts.beta = 0.0;
  ctx.add("multiplex.n2.no_superposition.success_probability", multiplex_check(2, opts),
          4.0 / 9.0, kSwitchTol);
}

using Runner = std::function<void(Context&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"switch-demo", switch_demo},   {"strategies", strategies},
      {"twirl-check", twirl_check},   {"appendix-verify", spin_identities},
      {"tester-bound", tester_bound}, {"multiplex", multiplex},
  };
  return table;
}

void validate(const ReportParameters& p) {
  if (p.samples == 0) throw std::invalid_argument("samples must be positive");
  if (!std::isfinite(p.tolerance) || p.tolerance <= 0.0) {
    throw std::invalid_argument("tolerance must be positive and finite");
  }
  if (!std::isfinite(p.alpha_sq) || p.alpha_sq < 0.0 || p.alpha_sq > 1.0) {
    throw std::invalid_argument("alpha-sq must lie in [0, 1] so that |alpha|^2 + |beta|^2 = 1");
  }
  if (!std::isfinite(p.probe_theta) || !std::isfinite(p.probe_phi)) {
    throw std::invalid_argument("probe angles must be finite");
  }
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"switch-demo",     "strategies",
                                              "twirl-check",     "appendix-verify",
                                              "tester-bound",    "multiplex"};
  return names;
}

ExperimentReport run_experiment(const std::string& name, const RunOptions& options) {
  const auto it = runners().find(name);
  if (it == runners().end()) throw std::invalid_argument("unknown experiment '" + name + "'");
  validate(options.parameters);

  ExperimentReport report;
  report.experiment = name;
  report.parameters = options.parameters;
  Context ctx{options, report};
  const auto start = std::chrono::steady_clock::now();
  it->second(ctx);
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace causaldisc
