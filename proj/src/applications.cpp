#include "rectdim/applications.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "rectdim/errors.hpp"

namespace rectdim::apps {

namespace {

std::vector<int> descending_order(const std::vector<double>& v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] > v[j]; });
  return idx;
}

std::vector<double> apply_order(const std::vector<double>& v, const std::vector<int>& order) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = v[order[i]];
  return out;
}

// suffix[i] = sum of v[i..end)
std::vector<double> suffix_sums(const std::vector<double>& v) {
  std::vector<double> s(v.size() + 1, 0.0);
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) s[i] = s[i + 1] + v[i];
  return s;
}

void check_cross(double closed, double core_value, const char* what) {
  if (!(std::fabs(closed - core_value) <= 1e-10))
    throw verification_error(std::string(what) +
                             ": closed form and candidate scan disagree");
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void SimultaneousInstance::validate() const {
  require(m >= 1, "m must be a positive integer");
  require(static_cast<int>(tau.size()) == m, "tau must have m entries");
  for (double x : tau)
    require(std::isfinite(x) && x >= 0.0, "tau entries must be non-negative reals");
}

void LinearFormsInstance::validate() const {
  require(m >= 1 && n >= 1, "m and n must be positive integers");
  require(static_cast<int>(lambda.size()) == m, "lambda must have m entries");
  for (double x : lambda)
    require(std::isfinite(x) && x >= 1.0, "lambda entries must satisfy lambda_i >= 1");
}

bool CantorAxisSpec::full() const {
  return digits.empty() || static_cast<int>(digits.size()) == base;
}

int CantorAxisSpec::digit_count() const {
  return digits.empty() ? base : static_cast<int>(digits.size());
}

double CantorAxisSpec::delta() const {
  return std::log(static_cast<double>(digit_count())) / std::log(static_cast<double>(base));
}

double CantorAxisSpec::log_base() const { return std::log(static_cast<double>(base)); }

void CantorAxisSpec::validate() const {
  require(base >= 2, "axis base must be >= 2");
  if (!digits.empty()) {
    require(digits.size() >= 2, "digit set must have at least two digits");
    for (std::size_t i = 0; i < digits.size(); ++i) {
      require(digits[i] >= 0 && digits[i] < base, "digits must lie in {0..base-1}");
      if (i > 0) require(digits[i] > digits[i - 1], "digits must be strictly increasing");
    }
  }
}

core::ExponentProfile simultaneous_exponent_choice(const SimultaneousInstance& inst) {
  inst.validate();
  const int m = inst.m;
  const std::vector<double>& tau = inst.tau;
  require(std::is_sorted(tau.begin(), tau.end(), std::greater<double>()),
          "tau must be sorted descending");
  const auto tails = suffix_sums(tau);
  require(tails[0] > 1.0, "exponent choice needs sum tau > 1");

  core::ExponentProfile p;
  p.a.resize(m);
  p.t.resize(m);
  if (tau[m - 1] >= 1.0 / m) {
    for (int i = 0; i < m; ++i) {
      p.a[i] = 1.0 + 1.0 / m;
      p.t[i] = tau[i] - 1.0 / m;
    }
  } else {
    int K = 0;
    for (int k = m; k >= 1; --k) {
      if (tau[k - 1] > (1.0 - tails[k]) / k) {
        K = k;
        break;
      }
    }
    if (K == 0) throw std::invalid_argument("no valid K in exponent choice");
    const double head = (1.0 - tails[K]) / K + 1.0;
    for (int i = 0; i < m; ++i) {
      p.a[i] = (i < K) ? head : tau[i] + 1.0;
      p.t[i] = 1.0 + tau[i] - p.a[i];
      if (p.t[i] < 0.0 && p.t[i] > -1e-12) p.t[i] = 0.0;
    }
  }
  const auto asum = suffix_sums(p.a)[0];
  if (std::fabs(asum - (m + 1.0)) > 1e-9 * (m + 1.0))
    throw verification_error("exponent choice violates sum a = m+1");
  p.validate();
  return p;
}

SolverReport simultaneous_dim(const SimultaneousInstance& inst) {
  inst.validate();
  SolverReport r;
  r.order = descending_order(inst.tau);
  SimultaneousInstance sorted = inst;
  sorted.tau = apply_order(inst.tau, r.order);
  const int m = inst.m;
  r.space.d = m;
  r.space.deltas.assign(m, 1.0);
  r.space.kappa = 0.0;

  const auto tails = suffix_sums(sorted.tau);
  if (tails[0] <= 1.0) {
    r.value = r.closed_form = static_cast<double>(m);
    r.full_measure = true;
    r.report.value = r.value;
    return r;
  }

  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < m; ++i) {
    const double v =
        (m + 1.0 + (m - (i + 1)) * sorted.tau[i] - tails[i + 1]) / (1.0 + sorted.tau[i]);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  r.closed_form = best;
  r.argmin_i = arg + 1;
  r.profile = simultaneous_exponent_choice(sorted);
  r.report = core::compute_s(r.space, r.profile);
  check_cross(r.closed_form, r.report.value, "simultaneous_dim");
  r.value = r.closed_form;
  return r;
}

SolverReport linear_forms_dim(const LinearFormsInstance& inst) {
  inst.validate();
  SolverReport r;
  r.order = descending_order(inst.lambda);
  std::vector<double> lam = apply_order(inst.lambda, r.order);
  const int m = inst.m;
  const int n = inst.n;
  r.space.d = m;
  r.space.deltas.assign(m, static_cast<double>(n));
  r.space.kappa = 1.0 - 1.0 / n;

  const auto tails = suffix_sums(lam);
  if (tails[0] <= m + static_cast<double>(n)) {
    r.value = r.closed_form = static_cast<double>(m) * n;
    r.full_measure = true;
    r.report.value = r.value;
    return r;
  }

  core::ExponentProfile p;
  p.a.resize(m);
  p.t.resize(m);
  if (lam[m - 1] >= 1.0 + static_cast<double>(n) / m) {
    for (int i = 0; i < m; ++i) {
      p.a[i] = 1.0 + static_cast<double>(n) / m;
      p.t[i] = lam[i] - p.a[i];
    }
  } else {
    int K = 0;
    for (int k = m; k >= 1; --k) {
      if (lam[k - 1] > (m + n - tails[k]) / k) {
        K = k;
        break;
      }
    }
    if (K == 0) throw std::invalid_argument("no valid K in exponent choice");
    const double head = (m + n - tails[K]) / K;
    for (int i = 0; i < m; ++i) {
      p.a[i] = (i < K) ? head : lam[i];
      p.t[i] = lam[i] - p.a[i];
      if (p.t[i] < 0.0 && p.t[i] > -1e-12) p.t[i] = 0.0;
    }
  }
  const double asum = suffix_sums(p.a)[0];
  if (std::fabs(asum - (m + static_cast<double>(n))) > 1e-9 * (m + n))
    throw verification_error("exponent choice violates sum a = m+n");
  p.validate();

  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < m; ++i) {
    const double v = m * (n - 1.0) +
                     (m + n + (m - (i + 1)) * lam[i] - tails[i + 1]) / lam[i];
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  r.closed_form = best;
  r.argmin_i = arg + 1;
  r.profile = p;
  r.report = core::compute_s(r.space, r.profile);
  check_cross(r.closed_form, r.report.value, "linear_forms_dim");
  r.value = r.closed_form;
  return r;
}

SolverReport shrinking_target_dim(const std::vector<CantorAxisSpec>& axes,
                                  const std::vector<double>& t) {
  require(!axes.empty(), "at least one axis required");
  require(axes.size() == t.size(), "t must have one entry per axis");
  SolverReport r;
  const int d = static_cast<int>(axes.size());
  r.space.d = d;
  r.space.kappa = 0.0;
  core::ExponentProfile p;
  for (int i = 0; i < d; ++i) {
    axes[i].validate();
    require(std::isfinite(t[i]) && t[i] >= 0.0, "t entries must be non-negative reals");
    r.space.deltas.push_back(axes[i].delta());
    p.a.push_back(axes[i].log_base());
    p.t.push_back(t[i]);
  }
  r.order.resize(d);
  std::iota(r.order.begin(), r.order.end(), 0);
  r.profile = p;
  r.report = core::compute_s(r.space, p);
  r.value = r.closed_form = r.report.value;
  r.full_hs_measure = true;
  r.full_measure = std::all_of(t.begin(), t.end(), [](double x) { return x == 0.0; });
  return r;
}

MultPairReport mult_pair_dim(double log_a, double delta1, double log_b, double delta2,
                             double t1, double t2) {
  require(std::isfinite(log_a) && log_a > 0.0 && std::isfinite(log_b) && log_b > 0.0,
          "log a and log b must be positive");
  require(std::isfinite(delta1) && delta1 > 0.0 && delta1 <= 1.0 &&
              std::isfinite(delta2) && delta2 > 0.0 && delta2 <= 1.0,
          "deltas must lie in (0,1]");
  require(std::isfinite(t1) && t1 >= 0.0 && std::isfinite(t2) && t2 >= 0.0,
          "t1 and t2 must be non-negative");
  if (log_a < log_b) {
    std::swap(log_a, log_b);
    std::swap(delta1, delta2);
    std::swap(t1, t2);
  }
  MultPairReport out;
  core::ProductSpaceSpec space{2, {delta1, delta2}, 0.0};
  core::ExponentProfile prof{{log_a, log_b}, {t1, t2}};
  out.report = core::compute_s(space, prof);

  const double la = log_a, lb = log_b, d1 = delta1, d2 = delta2;
  if (t2 + lb <= la) {
    out.pair_case = 1;
    out.closed_form = std::min(d1 + d2 - t2 * d2 / (t2 + lb),
                               d1 + d2 - (d1 * t1 + d2 * t2) / (t1 + la));
  } else if (t2 + lb <= t1 + la) {
    out.pair_case = 2;
    out.closed_form = std::min((d1 * la + d2 * lb) / (t2 + lb),
                               d1 + d2 - (d1 * t1 + d2 * t2) / (t1 + la));
  } else {
    out.pair_case = 3;
    out.closed_form = std::min((d1 * la + d2 * lb) / (t1 + la),
                               d1 + d2 - (d1 * t1 + d2 * t2) / (t2 + lb));
  }
  check_cross(out.closed_form, out.report.value, "mult_pair_dim");
  out.value = out.report.value;
  return out;
}

void MultiplicativeInstance::validate() const {
  require(std::isfinite(log_a) && log_a > 0.0 && std::isfinite(log_b) && log_b > 0.0,
          "log a and log b must be positive");
  require(std::isfinite(delta1) && delta1 > 0.0 && delta1 <= 1.0 &&
              std::isfinite(delta2) && delta2 > 0.0 && delta2 <= 1.0,
          "deltas must lie in (0,1]");
  require(std::isfinite(t) && t >= 0.0, "t must be a non-negative real");
  if (axis_a) axis_a->validate();
  if (axis_b) axis_b->validate();
}

std::pair<double, double> mult_sup_numeric(const MultiplicativeInstance& inst,
                                           int grid_points, double tol, int threads) {
  const double t = inst.t;
  auto f = [&inst, t](double t2) {
    return mult_pair_dim(inst.log_a, inst.delta1, inst.log_b, inst.delta2, t - t2, t2)
        .value;
  };
  if (t == 0.0) return {0.0, f(0.0)};

  const int G = std::max(grid_points, 3);
  std::vector<double> vals(G);
  const int nthreads = std::max(1, std::min(threads, G));
  if (nthreads == 1) {
    for (int i = 0; i < G; ++i) vals[i] = f(t * i / (G - 1));
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w]() {
        for (int i = w; i < G; i += nthreads) vals[i] = f(t * i / (G - 1));
      });
    }
    for (auto& th : pool) th.join();
  }
  int best = 0;
  for (int i = 1; i < G; ++i)
    if (vals[i] > vals[best]) best = i;

  double lo = t * std::max(0, best - 1) / (G - 1);
  double hi = t * std::min(G - 1, best + 1) / (G - 1);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

namespace {

// bisect g on [0,t]; scans for a sign change first
std::optional<double> find_root(const std::function<double(double)>& g, double t) {
  const int scan = 1000;
  double x0 = 0.0, g0 = g(0.0);
  for (int i = 1; i <= scan; ++i) {
    const double x1 = t * i / scan;
    const double g1 = g(x1);
    if (g0 == 0.0) return x0;
    if (g0 * g1 < 0.0) {
      double lo = x0, hi = x1, glo = g0;
      for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (glo * gm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          glo = gm;
        }
      }
      return 0.5 * (lo + hi);
    }
    x0 = x1;
    g0 = g1;
  }
  return std::nullopt;
}

}  // namespace

MultiplicativeInstance mult_dim(MultiplicativeInstance inst, int threads) {
  if (inst.delta1 < inst.delta2) {
    std::swap(inst.log_a, inst.log_b);
    std::swap(inst.delta1, inst.delta2);
    std::swap(inst.axis_a, inst.axis_b);
    inst.swapped = true;
  }
  inst.validate();
  const double la = inst.log_a, lb = inst.log_b;
  const double d1 = inst.delta1, d2 = inst.delta2, t = inst.t;

  inst.factor_formula = std::max(d1 + d2 * lb / (t + lb), d2 + d1 * la / (t + la));
  inst.covering_upper = (la > lb) ? d1 + d2 * la / (t + la) : inst.factor_formula;
  inst.slicing_lower = inst.factor_formula;

  if (t == 0.0) {
    inst.dim = d1 + d2;
    inst.regime = MultRegime::FormulaHolds;
    inst.full_measure = true;
    return inst;
  }

  const bool fails = (la > lb) && (la > t + lb) && (d2 * (t + la) < d1 * la);
  inst.regime = fails ? MultRegime::FormulaFails : MultRegime::FormulaHolds;
  if (!fails) {
    inst.dim = inst.factor_formula;
    return inst;
  }

  auto [argmax, fmax] = mult_sup_numeric(inst, 1000, 1e-10, threads);
  inst.that_t2 = argmax;
  inst.dim = fmax;
  if (!(inst.dim > inst.factor_formula && inst.dim < inst.covering_upper))
    throw verification_error("multiplicative sandwich check failed");

  inst.crossing_case_i = find_root(
      [&](double t2) {
        const double t1 = t - t2;
        return t2 * d2 / (t2 + lb) - (d1 * t1 + d2 * t2) / (t1 + la);
      },
      t);
  inst.crossing_displayed = find_root(
      [&](double t2) {
        const double t1 = t - t2;
        return (d1 * la + d2 * lb) / (t1 + la) - (d1 + d2) +
               (d1 * t1 + d2 * t2) / (t2 + lb);
      },
      t);
  return inst;
}

OrbitResult exponent_orbit(const std::vector<double>& n_values,
                           const std::vector<std::vector<double>>& psi,
                           const std::vector<double>& rho_log, double cluster_eps) {
  if (n_values.empty()) throw std::invalid_argument("empty sample sequence");
  require(psi.size() == n_values.size() && rho_log.size() == n_values.size(),
          "samples, psi rows and rho_log must have equal length");
  require(std::isfinite(cluster_eps) && cluster_eps > 0.0, "cluster eps must be positive");
  const std::size_t d = psi.front().size();
  require(d >= 1, "psi rows must be nonempty");

  OrbitResult r;
  r.orbit.resize(n_values.size());
  double liminf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    require(std::isfinite(n_values[i]) && n_values[i] > 0.0, "n values must be positive");
    if (i > 0) require(n_values[i] > n_values[i - 1], "n values must be increasing");
    require(psi[i].size() == d, "psi rows must have equal width");
    require(std::isfinite(rho_log[i]) && rho_log[i] < 0.0, "log rho must be negative");
    r.orbit[i].resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      require(psi[i][j] > 0.0 && psi[i][j] < 1.0, "psi values must lie in (0,1)");
      r.orbit[i][j] = std::log(psi[i][j]) / rho_log[i];
    }
    liminf = std::min(liminf, -std::log(psi[i][0]) / n_values[i]);
  }
  r.liminf_t = liminf;

  std::map<std::vector<long long>, std::pair<std::vector<double>, int>> cells;
  for (const auto& x : r.orbit) {
    std::vector<long long> key(d);
    for (std::size_t j = 0; j < d; ++j) key[j] = std::llround(x[j] / cluster_eps);
    auto& cell = cells[key];
    if (cell.second == 0) cell.first.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) cell.first[j] += x[j];
    ++cell.second;
  }
  for (auto& [key, cell] : cells) {
    std::vector<double> rep(d);
    for (std::size_t j = 0; j < d; ++j) rep[j] = cell.first[j] / cell.second;
    r.clusters.push_back(std::move(rep));
  }
  std::sort(r.clusters.begin(), r.clusters.end());
  return r;
}

}  // namespace rectdim::apps
