#include "rectdim.h"

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "rectdim/applications.hpp"
#include "rectdim/coverlab.hpp"
#include "rectdim/dimcore.hpp"
#include "rectdim/errors.hpp"
#include "rectdim/verify.hpp"

namespace {

thread_local std::string g_last_error;

template <typename F>
rectdim_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RECTDIM_OK;
  } catch (const rectdim::budget_error& e) {
    g_last_error = e.what();
    return RECTDIM_BUDGET_EXCEEDED;
  } catch (const rectdim::verification_error& e) {
    g_last_error = e.what();
    return RECTDIM_VERIFICATION_FAILED;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return RECTDIM_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RECTDIM_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown failure";
    return RECTDIM_INTERNAL_ERROR;
  }
}

void need(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<rectdim::apps::CantorAxisSpec> make_axes(int naxes, const int* bases,
                                                     const int* digits,
                                                     const int* digit_counts) {
  need(naxes >= 1, "at least one axis required");
  need(bases != nullptr, "bases must not be null");
  std::vector<rectdim::apps::CantorAxisSpec> axes(naxes);
  const int* cur = digits;
  for (int i = 0; i < naxes; ++i) {
    axes[i].base = bases[i];
    const int c = digit_counts ? digit_counts[i] : 0;
    if (c > 0) {
      need(cur != nullptr, "digits must not be null when digit_counts is set");
      axes[i].digits.assign(cur, cur + c);
      cur += c;
    }
  }
  return axes;
}

std::vector<std::pair<long long, long long>> make_et(int naxes, const long long* et_p,
                                                     const long long* et_q) {
  need(et_p != nullptr && et_q != nullptr, "e^{t} ratios must not be null");
  std::vector<std::pair<long long, long long>> et(naxes);
  for (int i = 0; i < naxes; ++i) et[i] = {et_p[i], et_q[i]};
  return et;
}

}  // namespace

struct rectdim_dim_report {
  rectdim::core::DimensionReport rep;
};

struct rectdim_solver_report {
  rectdim::apps::SolverReport rep;
  rectdim_dim_report table;
};

struct rectdim_mult_pair_report {
  rectdim::apps::MultPairReport rep;
  rectdim_dim_report table;
};

struct rectdim_mult_report {
  rectdim::apps::MultiplicativeInstance inst;
};

struct rectdim_orbit_report {
  rectdim::apps::OrbitResult res;
};

struct rectdim_boxcount_report {
  rectdim::cover::EmpiricalExponentReport rep;
};

struct rectdim_coverage_report {
  rectdim::verify::CoverageReport rep;
};

struct rectdim_mass_tree {
  rectdim::verify::MassTree tree;
};

struct rectdim_holder_report {
  rectdim::verify::HolderReport rep;
};

extern "C" {

const char* rectdim_version(void) { return "1.0.0"; }

const char* rectdim_last_error(void) { return g_last_error.c_str(); }

void rectdim_string_free(char* s) { delete[] s; }

/* ---------- dimensional numbers ---------- */

rectdim_status rectdim_compute_s(int d, const double* deltas, double kappa, const double* a,
                                 const double* t, int tie_policy, int use_hat,
                                 rectdim_dim_report** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be null");
    need(d >= 1, "d must be >= 1");
    need(deltas && a && t, "deltas, a, t must not be null");
    need(tie_policy >= 0 && tie_policy <= 2, "tie_policy must be 0, 1 or 2");
    rectdim::core::ProductSpaceSpec space;
    space.d = d;
    space.deltas.assign(deltas, deltas + d);
    space.kappa = kappa;
    rectdim::core::ExponentProfile profile;
    profile.a.assign(a, a + d);
    profile.t.assign(t, t + d);
    const auto policy = static_cast<rectdim::core::TiePolicy>(tie_policy);
    auto h = new rectdim_dim_report;
    h->rep = use_hat ? rectdim::core::compute_s_hat(space, profile, policy)
                     : rectdim::core::compute_s(space, profile, policy);
    *out = h;
  });
}

double rectdim_dim_report_value(const rectdim_dim_report* h) { return h ? h->rep.value : 0; }

double rectdim_dim_report_argmin(const rectdim_dim_report* h) {
  return h ? h->rep.argmin : 0;
}

int rectdim_dim_report_rows(const rectdim_dim_report* h) {
  return h ? static_cast<int>(h->rep.table.size()) : 0;
}

rectdim_status rectdim_dim_report_row(const rectdim_dim_report* h, int idx, double* A,
                                      double* value) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->rep.table.size()), "row index out of range");
    if (A) *A = h->rep.table[idx].A;
    if (value) *value = h->rep.table[idx].value;
  });
}

rectdim_status rectdim_dim_report_row_partition_sizes(const rectdim_dim_report* h, int idx,
                                                      int* n1, int* n2, int* n3) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->rep.table.size()), "row index out of range");
    const auto& p = h->rep.table[idx].partition;
    if (n1) *n1 = static_cast<int>(p.k1.size());
    if (n2) *n2 = static_cast<int>(p.k2.size());
    if (n3) *n3 = static_cast<int>(p.k3.size());
  });
}

rectdim_status rectdim_dim_report_row_partition(const rectdim_dim_report* h, int idx,
                                                int* k1, int* k2, int* k3) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->rep.table.size()), "row index out of range");
    const auto& p = h->rep.table[idx].partition;
    if (k1) std::memcpy(k1, p.k1.data(), p.k1.size() * sizeof(int));
    if (k2) std::memcpy(k2, p.k2.data(), p.k2.size() * sizeof(int));
    if (k3) std::memcpy(k3, p.k3.data(), p.k3.size() * sizeof(int));
  });
}

void rectdim_dim_report_free(rectdim_dim_report* h) { delete h; }

/* ---------- application solvers ---------- */

namespace {

rectdim_status wrap_solver(rectdim::apps::SolverReport rep, rectdim_solver_report** out) {
  auto h = new rectdim_solver_report;
  h->rep = std::move(rep);
  h->table.rep = h->rep.report;
  *out = h;
  return RECTDIM_OK;
}

}  // namespace

rectdim_status rectdim_simultaneous_dim(int m, const double* tau,
                                        rectdim_solver_report** out) {
  return guarded([&] {
    need(out && tau, "tau and out must not be null");
    rectdim::apps::SimultaneousInstance inst;
    inst.m = m;
    inst.tau.assign(tau, tau + (m >= 0 ? m : 0));
    wrap_solver(rectdim::apps::simultaneous_dim(inst), out);
  });
}

rectdim_status rectdim_linear_forms_dim(int m, int n, const double* lambda,
                                        rectdim_solver_report** out) {
  return guarded([&] {
    need(out && lambda, "lambda and out must not be null");
    rectdim::apps::LinearFormsInstance inst;
    inst.m = m;
    inst.n = n;
    inst.lambda.assign(lambda, lambda + (m >= 0 ? m : 0));
    wrap_solver(rectdim::apps::linear_forms_dim(inst), out);
  });
}

rectdim_status rectdim_shrinking_dim(int d, const int* bases, const int* digits,
                                     const int* digit_counts, const double* t,
                                     rectdim_solver_report** out) {
  return guarded([&] {
    need(out && t, "t and out must not be null");
    const auto axes = make_axes(d, bases, digits, digit_counts);
    wrap_solver(rectdim::apps::shrinking_target_dim(axes, {t, t + d}), out);
  });
}

double rectdim_solver_report_value(const rectdim_solver_report* h) {
  return h ? h->rep.value : 0;
}

double rectdim_solver_report_closed_form(const rectdim_solver_report* h) {
  return h ? h->rep.closed_form : 0;
}

int rectdim_solver_report_argmin_i(const rectdim_solver_report* h) {
  return h ? h->rep.argmin_i : 0;
}

int rectdim_solver_report_full_measure(const rectdim_solver_report* h) {
  return h && h->rep.full_measure ? 1 : 0;
}

int rectdim_solver_report_full_hs_measure(const rectdim_solver_report* h) {
  return h && h->rep.full_hs_measure ? 1 : 0;
}

int rectdim_solver_report_dims(const rectdim_solver_report* h) {
  return h ? static_cast<int>(h->rep.space.deltas.size()) : 0;
}

rectdim_status rectdim_solver_report_space(const rectdim_solver_report* h, double* deltas,
                                           double* kappa) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    if (deltas)
      std::memcpy(deltas, h->rep.space.deltas.data(),
                  h->rep.space.deltas.size() * sizeof(double));
    if (kappa) *kappa = h->rep.space.kappa;
  });
}

rectdim_status rectdim_solver_report_profile(const rectdim_solver_report* h, double* a,
                                             double* t) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(!h->rep.profile.a.empty(), "no exponent profile in the boundary regime");
    if (a)
      std::memcpy(a, h->rep.profile.a.data(), h->rep.profile.a.size() * sizeof(double));
    if (t)
      std::memcpy(t, h->rep.profile.t.data(), h->rep.profile.t.size() * sizeof(double));
  });
}

const rectdim_dim_report* rectdim_solver_report_table(const rectdim_solver_report* h) {
  return h ? &h->table : nullptr;
}

void rectdim_solver_report_free(rectdim_solver_report* h) { delete h; }

/* ---------- multiplicative approximation ---------- */

rectdim_status rectdim_mult_pair(double log_a, double delta1, double log_b, double delta2,
                                 double t1, double t2, rectdim_mult_pair_report** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be null");
    auto h = new rectdim_mult_pair_report;
    try {
      h->rep = rectdim::apps::mult_pair_dim(log_a, delta1, log_b, delta2, t1, t2);
    } catch (...) {
      delete h;
      throw;
    }
    h->table.rep = h->rep.report;
    *out = h;
  });
}

double rectdim_mult_pair_value(const rectdim_mult_pair_report* h) {
  return h ? h->rep.value : 0;
}

double rectdim_mult_pair_closed_form(const rectdim_mult_pair_report* h) {
  return h ? h->rep.closed_form : 0;
}

int rectdim_mult_pair_case(const rectdim_mult_pair_report* h) {
  return h ? h->rep.pair_case : 0;
}

const rectdim_dim_report* rectdim_mult_pair_table(const rectdim_mult_pair_report* h) {
  return h ? &h->table : nullptr;
}

void rectdim_mult_pair_free(rectdim_mult_pair_report* h) { delete h; }

rectdim_status rectdim_mult(double log_a, double delta1, double log_b, double delta2,
                            double t, int threads, rectdim_mult_report** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be null");
    rectdim::apps::MultiplicativeInstance inst;
    inst.log_a = log_a;
    inst.delta1 = delta1;
    inst.log_b = log_b;
    inst.delta2 = delta2;
    inst.t = t;
    auto h = new rectdim_mult_report;
    try {
      h->inst = rectdim::apps::mult_dim(inst, threads);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

double rectdim_mult_value(const rectdim_mult_report* h) { return h ? h->inst.dim : 0; }

int rectdim_mult_formula_fails(const rectdim_mult_report* h) {
  return h && h->inst.regime == rectdim::apps::MultRegime::FormulaFails ? 1 : 0;
}

double rectdim_mult_factor_formula(const rectdim_mult_report* h) { return h ? h->inst.factor_formula : 0; }

double rectdim_mult_covering_upper(const rectdim_mult_report* h) {
  return h ? h->inst.covering_upper : 0;
}

double rectdim_mult_slicing_lower(const rectdim_mult_report* h) {
  return h ? h->inst.slicing_lower : 0;
}

int rectdim_mult_swapped(const rectdim_mult_report* h) {
  return h && h->inst.swapped ? 1 : 0;
}

int rectdim_mult_full_measure(const rectdim_mult_report* h) {
  return h && h->inst.full_measure ? 1 : 0;
}

namespace {

int optional_out(const std::optional<double>& v, double* out) {
  if (!v) return 0;
  if (out) *out = *v;
  return 1;
}

}  // namespace

int rectdim_mult_that_t2(const rectdim_mult_report* h, double* out) {
  return h ? optional_out(h->inst.that_t2, out) : 0;
}

int rectdim_mult_crossing_case_i(const rectdim_mult_report* h, double* out) {
  return h ? optional_out(h->inst.crossing_case_i, out) : 0;
}

int rectdim_mult_crossing_displayed(const rectdim_mult_report* h, double* out) {
  return h ? optional_out(h->inst.crossing_displayed, out) : 0;
}

void rectdim_mult_free(rectdim_mult_report* h) { delete h; }

/* ---------- exponent orbits ---------- */

rectdim_status rectdim_orbit(int samples, int families, const double* n_values,
                             const double* psi, const double* rho_log, double cluster_eps,
                             rectdim_orbit_report** out) {
  return guarded([&] {
    need(out && n_values && psi && rho_log, "orbit inputs must not be null");
    need(samples >= 1 && families >= 1, "samples and families must be >= 1");
    std::vector<std::vector<double>> psi_rows(samples);
    for (int i = 0; i < samples; ++i)
      psi_rows[i].assign(psi + static_cast<std::size_t>(i) * families,
                         psi + static_cast<std::size_t>(i + 1) * families);
    auto h = new rectdim_orbit_report;
    try {
      h->res = rectdim::apps::exponent_orbit({n_values, n_values + samples}, psi_rows,
                                             {rho_log, rho_log + samples}, cluster_eps);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

int rectdim_orbit_samples(const rectdim_orbit_report* h) {
  return h ? static_cast<int>(h->res.orbit.size()) : 0;
}

int rectdim_orbit_families(const rectdim_orbit_report* h) {
  return h && !h->res.orbit.empty() ? static_cast<int>(h->res.orbit[0].size()) : 0;
}

rectdim_status rectdim_orbit_row(const rectdim_orbit_report* h, int idx, double* out) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->res.orbit.size()), "row index out of range");
    need(out != nullptr, "out must not be null");
    std::memcpy(out, h->res.orbit[idx].data(), h->res.orbit[idx].size() * sizeof(double));
  });
}

int rectdim_orbit_clusters(const rectdim_orbit_report* h) {
  return h ? static_cast<int>(h->res.clusters.size()) : 0;
}

rectdim_status rectdim_orbit_cluster(const rectdim_orbit_report* h, int idx, double* out) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->res.clusters.size()),
         "cluster index out of range");
    need(out != nullptr, "out must not be null");
    std::memcpy(out, h->res.clusters[idx].data(),
                h->res.clusters[idx].size() * sizeof(double));
  });
}

double rectdim_orbit_liminf_t(const rectdim_orbit_report* h) {
  return h ? h->res.liminf_t : 0;
}

void rectdim_orbit_free(rectdim_orbit_report* h) { delete h; }

/* ---------- covering laboratory ---------- */

rectdim_status rectdim_singular_cover_cost(int d, const double* sides, double s,
                                           double* out) {
  return guarded([&] {
    need(out && sides, "sides and out must not be null");
    need(d >= 1, "d must be >= 1");
    rectdim::cover::RectangleSpec rect;
    rect.sides.assign(sides, sides + d);
    *out = rectdim::cover::singular_cover_cost(rect, s);
  });
}

namespace {

rectdim::cover::LevelSpec make_level(int d, const double* deltas, double kappa,
                                     const double* a, const double* t, double r,
                                     const double* log_counts) {
  need(d >= 1, "d must be >= 1");
  need(deltas && a && t, "deltas, a, t must not be null");
  rectdim::cover::LevelSpec level;
  level.space.d = d;
  level.space.deltas.assign(deltas, deltas + d);
  level.space.kappa = kappa;
  level.profile.a.assign(a, a + d);
  level.profile.t.assign(t, t + d);
  level.r = r;
  if (log_counts) level.log_counts.assign(log_counts, log_counts + d);
  return level;
}

}  // namespace

rectdim_status rectdim_cover_count(int d, const double* deltas, double kappa,
                                   const double* a, const double* t, double r,
                                   const double* log_counts, double A, double* out) {
  return guarded([&] {
    need(out != nullptr, "out must not be null");
    *out = rectdim::cover::cover_count(make_level(d, deltas, kappa, a, t, r, log_counts), A);
  });
}

rectdim_status rectdim_critical_exponent(int d, const double* deltas, double kappa,
                                         const double* a, const double* t, int nlevels,
                                         const double* r, double s_lo, double s_hi,
                                         double tol, double* out) {
  return guarded([&] {
    need(out && r, "r and out must not be null");
    need(nlevels >= 1, "at least one level required");
    std::vector<rectdim::cover::LevelSpec> levels;
    levels.reserve(nlevels);
    for (int i = 0; i < nlevels; ++i)
      levels.push_back(make_level(d, deltas, kappa, a, t, r[i], nullptr));
    *out = rectdim::cover::critical_exponent(levels, s_lo, s_hi, tol);
  });
}

rectdim_status rectdim_boxcount(int d, const int* bases, const int* digits,
                                const int* digit_counts, const long long* et_p,
                                const long long* et_q, int n_from, int n_to, int grid_steps,
                                rectdim_boxcount_report** out) {
  return guarded([&] {
    need(out != nullptr, "out must not be null");
    const auto axes = make_axes(d, bases, digits, digit_counts);
    const auto et = make_et(d, et_p, et_q);
    auto h = new rectdim_boxcount_report;
    try {
      h->rep = rectdim::cover::empirical_critical_exponent(axes, et, n_from, n_to,
                                                           grid_steps);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

double rectdim_boxcount_value(const rectdim_boxcount_report* h) {
  return h ? h->rep.value : 0;
}

double rectdim_boxcount_regression(const rectdim_boxcount_report* h) {
  return h ? h->rep.regression_estimate : 0;
}

double rectdim_boxcount_last_raw(const rectdim_boxcount_report* h) {
  return h ? h->rep.last_raw : 0;
}

double rectdim_boxcount_reference_s(const rectdim_boxcount_report* h) {
  return h ? h->rep.reference_s : 0;
}

int rectdim_boxcount_levels(const rectdim_boxcount_report* h) {
  return h ? static_cast<int>(h->rep.n_values.size()) : 0;
}

rectdim_status rectdim_boxcount_level(const rectdim_boxcount_report* h, int idx, int* n,
                                      double* raw, double* model_steps,
                                      double* oracle_steps) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->rep.n_values.size()),
         "level index out of range");
    if (n) *n = h->rep.n_values[idx];
    if (raw) *raw = h->rep.raw_sequence[idx];
    if (model_steps) *model_steps = h->rep.model_argmin_steps[idx];
    if (oracle_steps) *oracle_steps = h->rep.oracle_argmin_steps[idx];
  });
}

int rectdim_boxcount_rows(const rectdim_boxcount_report* h) {
  return h ? static_cast<int>(h->rep.rows.size()) : 0;
}

rectdim_status rectdim_boxcount_row(const rectdim_boxcount_report* h, int idx, int* n,
                                    double* A, double* eps, double* log_count,
                                    double* cost) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->rep.rows.size()), "row index out of range");
    const auto& row = h->rep.rows[idx];
    if (n) *n = row.n;
    if (A) *A = row.A;
    if (eps) *eps = row.eps;
    if (log_count) *log_count = row.log_count;
    if (cost) *cost = row.cost;
  });
}

void rectdim_boxcount_free(rectdim_boxcount_report* h) { delete h; }

/* ---------- ubiquity verification ---------- */

rectdim_status rectdim_ubiquity_coverage(int system, int m, int n, const double* a,
                                         int naxes, const int* bases, const int* digits,
                                         const int* digit_counts, long long M,
                                         const double* ball_center, double ball_radius,
                                         int k, int method, long long samples,
                                         uint64_t seed, int threads, int literal_radius,
                                         rectdim_coverage_report** out) {
  return guarded([&] {
    need(out && ball_center, "ball_center and out must not be null");
    need(system >= 0 && system <= 2, "system must be 0, 1 or 2");
    need(method == 0 || method == 1, "method must be 0 or 1");
    rectdim::verify::UbiquitySystemSpec spec;
    spec.M = M;
    switch (system) {
      case 0:
        spec.kind = rectdim::verify::SystemKind::Simultaneous;
        spec.m = m;
        need(a != nullptr, "a must not be null");
        spec.a.assign(a, a + (m >= 1 ? m : 0));
        spec.rho = rectdim::verify::RhoKind::InversePower;
        break;
      case 1:
        spec.kind = rectdim::verify::SystemKind::LinearForms;
        spec.m = m;
        spec.n = n;
        need(a != nullptr, "a must not be null");
        spec.a.assign(a, a + (m >= 1 ? m : 0));
        spec.rho = rectdim::verify::RhoKind::InversePower;
        break;
      default:
        spec.kind = rectdim::verify::SystemKind::Shrinking;
        spec.axes = make_axes(naxes, bases, digits, digit_counts);
        spec.rho = rectdim::verify::RhoKind::Exponential;
        break;
    }
    spec.validate();
    rectdim::verify::Ball ball;
    ball.center.assign(ball_center, ball_center + spec.dim());
    ball.radius = ball_radius;
    const auto meth = method == 0 ? rectdim::verify::CoverageMethod::Exact1D
                                  : rectdim::verify::CoverageMethod::MonteCarlo;
    auto h = new rectdim_coverage_report;
    try {
      h->rep = rectdim::verify::ubiquity_coverage(spec, ball, k, meth, samples, seed,
                                                  threads, literal_radius != 0);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

double rectdim_coverage_fraction(const rectdim_coverage_report* h) {
  return h ? h->rep.fraction : 0;
}

double rectdim_coverage_stderr(const rectdim_coverage_report* h) {
  return h ? h->rep.stderr_est : 0;
}

int rectdim_coverage_level(const rectdim_coverage_report* h) {
  return h ? h->rep.level : 0;
}

double rectdim_coverage_l_k(const rectdim_coverage_report* h) { return h ? h->rep.l_k : 0; }

double rectdim_coverage_u_k(const rectdim_coverage_report* h) { return h ? h->rep.u_k : 0; }

int rectdim_coverage_degenerate(const rectdim_coverage_report* h) {
  return h && h->rep.degenerate ? 1 : 0;
}

int rectdim_coverage_admissible(const rectdim_coverage_report* h) {
  return h && h->rep.admissible ? 1 : 0;
}

long long rectdim_coverage_samples(const rectdim_coverage_report* h) {
  return h ? h->rep.samples : 0;
}

void rectdim_coverage_free(rectdim_coverage_report* h) { delete h; }

/* ---------- mass distribution verification ---------- */

rectdim_status rectdim_mass_tree_build(int naxes, const int* bases, const int* digits,
                                       const int* digit_counts, const long long* et_p,
                                       const long long* et_q, int depth,
                                       const int* schedule, long long max_nodes,
                                       rectdim_mass_tree** out) {
  return guarded([&] {
    need(out && schedule, "schedule and out must not be null");
    need(depth >= 1, "depth must be >= 1");
    const auto axes = make_axes(naxes, bases, digits, digit_counts);
    const auto et = make_et(naxes, et_p, et_q);
    rectdim::verify::TreeBudget budget;
    if (max_nodes > 0) budget.max_nodes = max_nodes;
    auto h = new rectdim_mass_tree;
    try {
      h->tree =
          rectdim::verify::build_mass_tree(axes, et, {schedule, schedule + depth}, budget);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

rectdim_status rectdim_mass_tree_assign(rectdim_mass_tree* h) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    rectdim::verify::assign_mass(h->tree);
  });
}

long long rectdim_mass_tree_nodes(const rectdim_mass_tree* h) {
  return h ? static_cast<long long>(h->tree.nodes.size()) : 0;
}

long long rectdim_mass_tree_leaf_count(const rectdim_mass_tree* h) {
  return h ? static_cast<long long>(h->tree.leaves.size()) : 0;
}

double rectdim_mass_tree_conservation_error(const rectdim_mass_tree* h) {
  return h ? h->tree.conservation_error : 0;
}

long long rectdim_mass_tree_anchor_fallbacks(const rectdim_mass_tree* h) {
  return h ? h->tree.anchor_fallbacks : 0;
}

int rectdim_mass_tree_geometry_ok(const rectdim_mass_tree* h) {
  return h && h->tree.geometry_ok ? 1 : 0;
}

double rectdim_mass_tree_leaf_radius(const rectdim_mass_tree* h) {
  return h ? h->tree.leaf_radius : 0;
}

rectdim_status rectdim_mass_tree_level(const rectdim_mass_tree* h, int idx,
                                       long long* balls, double* ratio_min,
                                       double* ratio_max) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->tree.per_level_balls.size()),
         "level index out of range");
    if (balls) *balls = h->tree.per_level_balls[idx];
    if (ratio_min) *ratio_min = h->tree.division_ratio_min[idx];
    if (ratio_max) *ratio_max = h->tree.division_ratio_max[idx];
  });
}

rectdim_status rectdim_mass_tree_ball_mass(const rectdim_mass_tree* h, const double* center,
                                           double r, double* out) {
  return guarded([&] {
    need(h && center && out, "handle, center and out must not be null");
    *out = rectdim::verify::tree_ball_mass(
        h->tree, {center, center + h->tree.axes.size()}, r);
  });
}

rectdim_status rectdim_mass_tree_json(const rectdim_mass_tree* h, char** out) {
  return guarded([&] {
    need(h && out, "handle and out must not be null");
    const std::string s = rectdim::verify::tree_to_json(h->tree);
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

void rectdim_mass_tree_free(rectdim_mass_tree* h) { delete h; }

rectdim_status rectdim_holder_test(const rectdim_mass_tree* h, double s, double epsilon,
                                   int samples, uint64_t seed, int threads,
                                   rectdim_holder_report** out) {
  return guarded([&] {
    need(h && out, "handle and out must not be null");
    auto rep = new rectdim_holder_report;
    try {
      rep->rep = rectdim::verify::holder_test(h->tree, s, epsilon, samples, seed, threads);
    } catch (...) {
      delete rep;
      throw;
    }
    *out = rep;
  });
}

double rectdim_holder_slope(const rectdim_holder_report* h) { return h ? h->rep.slope : 0; }

int rectdim_holder_pass(const rectdim_holder_report* h) {
  return h && h->rep.pass ? 1 : 0;
}

double rectdim_holder_max_ratio(const rectdim_holder_report* h) {
  return h ? h->rep.max_ratio : 0;
}

int rectdim_holder_buckets(const rectdim_holder_report* h) {
  return h ? static_cast<int>(h->rep.buckets.size()) : 0;
}

rectdim_status rectdim_holder_bucket(const rectdim_holder_report* h, int idx, double* log_r,
                                     double* log_ratio) {
  return guarded([&] {
    need(h != nullptr, "null handle");
    need(idx >= 0 && idx < static_cast<int>(h->rep.buckets.size()),
         "bucket index out of range");
    if (log_r) *log_r = h->rep.buckets[idx].log_r;
    if (log_ratio) *log_ratio = h->rep.buckets[idx].log_ratio;
  });
}

void rectdim_holder_free(rectdim_holder_report* h) { delete h; }

}  // extern "C"
