// Acceptance suite: one line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rectdim/applications.hpp"
#include "rectdim/coverlab.hpp"
#include "rectdim/dimcore.hpp"
#include "rectdim/verify.hpp"

using namespace rectdim;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s (%s)\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

apps::CantorAxisSpec axis(int base, std::vector<int> digits = {}) {
  apps::CantorAxisSpec ax;
  ax.base = base;
  ax.digits = std::move(digits);
  return ax;
}

// ---------------------------------------------------------------- criterion 1
// hat-restricted minimum equals the full minimum on 10^4 random instances
void criterion1() {
  constexpr double kTol = 1e-12;
  constexpr double kBudget = 5.0;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240901);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::uniform_int_distribution<int> D(1, 6);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    core::ProductSpaceSpec space;
    space.d = D(rng);
    space.kappa = 0.9 * U(rng);
    core::ExponentProfile p;
    for (int k = 0; k < space.d; ++k) {
      space.deltas.push_back(3.0 * (1.0 - U(rng)));
      p.a.push_back(5.0 * (1.0 - U(rng)));
      p.t.push_back(5.0 * U(rng));
    }
    const double full = core::compute_s(space, p).value;
    const double hat = core::compute_s_hat(space, p).value;
    worst = std::max(worst, std::abs(full - hat));
  }
  const double dt = seconds_since(t0);
  report(1, worst <= kTol && dt < kBudget,
         fmt("10000 instances, max |s - s_hat| = %.3g, %.2fs", worst, dt));
}

// ---------------------------------------------------------------- criterion 2
// closed forms against the general machinery, and against literal fractions
void criterion2() {
  constexpr double kTol = 1e-10;
  constexpr double kBudget = 1.0;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  auto track = [&worst](const apps::SolverReport& rep, double expect) {
    worst = std::max(worst, std::abs(rep.value - expect));
    if (!rep.full_measure)
      worst = std::max(worst, std::abs(rep.closed_form - rep.report.value));
  };

  apps::SimultaneousInstance s1;
  s1.m = 1;
  s1.tau = {2.0};
  track(apps::simultaneous_dim(s1), 2.0 / 3.0);

  apps::SimultaneousInstance s2;
  s2.m = 2;
  s2.tau = {2.0, 1.0};
  track(apps::simultaneous_dim(s2), 4.0 / 3.0);

  apps::LinearFormsInstance l1;
  l1.m = 1;
  l1.n = 2;
  l1.lambda = {4.0};
  track(apps::linear_forms_dim(l1), 1.75);

  apps::LinearFormsInstance l2;
  l2.m = 2;
  l2.n = 1;
  l2.lambda = {3.0, 2.0};
  track(apps::linear_forms_dim(l2), 4.0 / 3.0);

  const double dt = seconds_since(t0);
  report(2, worst <= kTol && dt < kBudget,
         fmt("4 closed forms, max error = %.3g, %.2fs", worst, dt));
}

// ---------------------------------------------------------------- criterion 3
// worked multiplicative pair: closed form and candidate minimum both 1.375
void criterion3() {
  constexpr double kTol = 1e-12;
  const apps::MultPairReport rep = apps::mult_pair_dim(2.0, 1.0, 1.0, 1.0, 2.0, 0.5);
  const double e1 = std::abs(rep.closed_form - 1.375);
  const double e2 = std::abs(rep.report.value - 1.375);
  report(3, e1 <= kTol && e2 <= kTol,
         fmt("closed form error %.3g, candidate-table error %.3g", e1, e2));
}

// ---------------------------------------------------------------- criterion 4
// exceptional regime: strict sandwich and an interior maximizer
void criterion4() {
  constexpr double kGap = 1e-3;
  constexpr double kBudget = 1.0;
  const auto t0 = std::chrono::steady_clock::now();
  apps::MultiplicativeInstance inst;
  inst.log_a = std::log(16.0);
  inst.delta1 = 1.0;
  inst.log_b = std::log(4.0);
  inst.delta2 = 0.5;
  inst.t = 1.0;
  const apps::MultiplicativeInstance rep = apps::mult_dim(inst);

  const double lower = 1.290470107902;
  const double upper = 1.367465012273;
  bool ok = rep.regime == apps::MultRegime::FormulaFails;
  ok = ok && rep.dim - lower >= kGap && upper - rep.dim >= kGap;
  ok = ok && rep.that_t2.has_value();
  double that = rep.that_t2.value_or(-1.0);
  if (ok) {
    ok = that > 0.0 && that < inst.t;
    // the maximizer is bracketed by a sign change of the slope
    const double h = 1e-4;
    auto f = [&](double t2) {
      return apps::mult_pair_dim(inst.log_a, inst.delta1, inst.log_b, inst.delta2,
                                 inst.t - t2, t2)
          .value;
    };
    const double dl = f(that) - f(that - h);
    const double dr = f(that + h) - f(that);
    ok = ok && dl > 0.0 && dr < 0.0;
  }
  const double dt = seconds_since(t0);
  report(4, ok && dt < kBudget,
         fmt("dim %.12f in (%.12f, %.12f), interior max verified", rep.dim, lower,
             upper) +
             fmt(", t2_hat %.9f, %.2fs", that, dt));
}

// shared box-counting report for criteria 5 and 6
const cover::EmpiricalExponentReport& boxcount_report() {
  static const cover::EmpiricalExponentReport rep = cover::empirical_critical_exponent(
      {axis(2), axis(3, {0, 2})}, {{2, 1}, {1, 1}}, 6, 10, 64);
  return rep;
}

// ---------------------------------------------------------------- criterion 5
// box-counting estimate lands within 0.05 of the predicted value
void criterion5() {
  constexpr double kTol = 0.05;
  constexpr double kBudget = 30.0;
  const auto t0 = std::chrono::steady_clock::now();
  const auto& rep = boxcount_report();
  const double expect = 1.1309297535714573;
  const double err = std::abs(rep.value - expect);
  const double dt = seconds_since(t0);
  report(5, err <= kTol && std::abs(rep.reference_s - expect) <= 1e-12 && dt < kBudget,
         fmt("estimate %.6f vs %.6f, error %.4f", rep.value, expect, err) +
             fmt(", %.2fs", dt));
}

// ---------------------------------------------------------------- criterion 6
// the cost-optimal radius tracks the alphabet at every level
void criterion6() {
  const auto& rep = boxcount_report();
  double worst = 0.0;
  for (double steps : rep.model_argmin_steps) worst = std::max(worst, steps);
  report(6, !rep.model_argmin_steps.empty() && worst <= 1.0,
         fmt("max argmin distance %.2f grid steps over %.0f levels", worst,
             static_cast<double>(rep.model_argmin_steps.size())));
}

// ---------------------------------------------------------------- criterion 7
// ubiquity coverage: shrinking full, simultaneous nearly full
void criterion7() {
  constexpr double kBudget = 60.0;
  const auto t0 = std::chrono::steady_clock::now();

  verify::UbiquitySystemSpec shr;
  shr.kind = verify::SystemKind::Shrinking;
  shr.axes = {axis(2), axis(3, {0, 2})};
  shr.rho = verify::RhoKind::Exponential;
  verify::Ball cube;
  cube.center = {0.5, 0.5};
  cube.radius = 0.5;
  const verify::CoverageReport srep =
      verify::ubiquity_coverage(shr, cube, 3, verify::CoverageMethod::Exact1D);
  bool ok = srep.fraction == 1.0;

  verify::UbiquitySystemSpec sim;
  sim.kind = verify::SystemKind::Simultaneous;
  sim.m = 1;
  sim.a = {2.0};
  sim.M = 32;
  verify::Ball full;
  full.center = {0.5};
  full.radius = 0.5;
  int k_full = 1;
  while (!sim.admissible(k_full, full.radius)) ++k_full;
  const verify::CoverageReport frep =
      verify::ubiquity_coverage(sim, full, k_full, verify::CoverageMethod::Exact1D);
  ok = ok && frep.admissible && frep.fraction >= 0.5;

  double min_sub = 1.0;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    verify::Ball b;
    b.radius = 0.05 + 0.15 * U(rng);
    b.center = {b.radius + (1.0 - 2.0 * b.radius) * U(rng)};
    int k = 1;
    while (!sim.admissible(k, b.radius)) ++k;
    const verify::CoverageReport sub =
        verify::ubiquity_coverage(sim, b, k, verify::CoverageMethod::Exact1D);
    min_sub = std::min(min_sub, sub.fraction);
  }
  ok = ok && min_sub >= 0.45;

  const double dt = seconds_since(t0);
  report(7, ok && dt < kBudget,
         fmt("shrinking %.3f, unit ball %.6f, worst sub-ball %.6f", srep.fraction,
             frep.fraction, min_sub) +
             fmt(" (k=%.0f), %.2fs", static_cast<double>(k_full), dt));
}

// ---------------------------------------------------------------- criterion 8
// depth-4 mass tree: conservation and the scaling dichotomy
void criterion8() {
  constexpr double kBudget = 120.0;
  const auto t0 = std::chrono::steady_clock::now();

  verify::MassTree tree =
      verify::build_mass_tree({axis(2), axis(3, {0, 2})}, {{2, 1}, {1, 1}}, {4, 6, 8, 16});
  verify::assign_mass(tree);
  bool ok = tree.geometry_ok && tree.conservation_error <= 1e-12;

  const apps::SolverReport target =
      apps::shrinking_target_dim({axis(2), axis(3, {0, 2})}, {std::log(2.0), 0.0});
  const double s_below = target.value - 0.05;
  const double s_sum = 1.0 + std::log(2.0) / std::log(3.0);

  const verify::HolderReport good = verify::holder_test(tree, s_below, 0.85, 10000, 97);
  const verify::HolderReport bad = verify::holder_test(tree, s_sum, 0.85, 10000, 97);
  ok = ok && good.pass && !bad.pass;

  const double dt = seconds_since(t0);
  report(8, ok && dt < kBudget,
         fmt("conservation %.3g, slope %.3f at s*-0.05 vs %.3f at sum(delta)",
             tree.conservation_error, good.slope, bad.slope) +
             fmt(", %.0f leaves, %.2fs", static_cast<double>(tree.leaves.size()), dt));
}

// ---------------------------------------------------------------- criterion 9
// monotonicity in t, and the boundary regimes raise their flags
void criterion9() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::uniform_int_distribution<int> D(1, 6);
  bool monotone = true;
  for (int i = 0; i < 1000 && monotone; ++i) {
    core::ProductSpaceSpec space;
    space.d = D(rng);
    space.kappa = 0.9 * U(rng);
    core::ExponentProfile lo, hi;
    for (int k = 0; k < space.d; ++k) {
      space.deltas.push_back(3.0 * (1.0 - U(rng)));
      lo.a.push_back(5.0 * (1.0 - U(rng)));
      lo.t.push_back(5.0 * U(rng));
      hi.a.push_back(lo.a[k]);
      hi.t.push_back(lo.t[k] + 3.0 * U(rng));
    }
    monotone = core::compute_s(space, hi).value <=
               core::compute_s(space, lo).value + 1e-12;
  }

  apps::SimultaneousInstance flat;
  flat.m = 2;
  flat.tau = {0.5, 0.5};
  const apps::SolverReport sflat = apps::simultaneous_dim(flat);
  bool flags = sflat.full_measure && sflat.value == 2.0;

  apps::LinearFormsInstance lflat;
  lflat.m = 1;
  lflat.n = 2;
  lflat.lambda = {3.0};
  const apps::SolverReport lrep = apps::linear_forms_dim(lflat);
  flags = flags && lrep.full_measure && lrep.value == 2.0;

  const apps::SolverReport zrep =
      apps::shrinking_target_dim({axis(2), axis(3, {0, 2})}, {0.0, 0.0});
  flags = flags && zrep.full_measure &&
          std::abs(zrep.value - (1.0 + std::log(2.0) / std::log(3.0))) <= 1e-12;

  apps::MultiplicativeInstance mz;
  mz.log_a = std::log(16.0);
  mz.delta1 = 1.0;
  mz.log_b = std::log(4.0);
  mz.delta2 = 0.5;
  mz.t = 0.0;
  const apps::MultiplicativeInstance mrep = apps::mult_dim(mz);
  flags = flags && mrep.full_measure && std::abs(mrep.dim - 1.5) <= 1e-12;

  report(9, monotone && flags,
         std::string("1000 ordered pairs monotone: ") + (monotone ? "yes" : "no") +
             ", boundary flags: " + (flags ? "all set" : "missing"));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0)
    std::printf("acceptance: all 9 criteria passed\n");
  else
    std::printf("acceptance: %d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
