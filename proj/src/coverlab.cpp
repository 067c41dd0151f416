#include "rectdim/coverlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rectdim/errors.hpp"

namespace rectdim::cover {

namespace {

constexpr long long kIntervalBudget = 1000000;
constexpr long long kDenLimit = 2000000000000000000LL;  // 2e18

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// base^exp, or -1 if it exceeds limit
long long checked_pow(long long base, int exp, long long limit) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > limit / base) return -1;
    v *= base;
  }
  return v;
}

void merge_sorted(std::vector<std::pair<long long, long long>>& iv) {
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<long long, long long>> out;
  for (const auto& [lo, hi] : iv) {
    if (!out.empty() && lo <= out.back().second)
      out.back().second = std::max(out.back().second, hi);
    else
      out.emplace_back(lo, hi);
  }
  iv = std::move(out);
}

}  // namespace

void RectangleSpec::validate() const {
  require(!sides.empty(), "rectangle needs at least one side");
  for (double l : sides)
    require(std::isfinite(l) && l > 0.0 && l <= 1.0, "sides must lie in (0,1]");
}

double singular_cover_cost(const RectangleSpec& rect, double s) {
  rect.validate();
  const int d = static_cast<int>(rect.sides.size());
  require(std::isfinite(s) && s >= 0.0 && s <= d, "s must lie in [0,d]");
  std::vector<double> l = rect.sides;
  std::sort(l.begin(), l.end(), std::greater<double>());
  double best = std::numeric_limits<double>::infinity();
  double prefix = 1.0;  // l_1 ... l_{i-1}
  for (int i = 1; i <= d; ++i) {
    best = std::min(best, prefix * std::pow(l[i - 1], s - i + 1));
    prefix *= l[i - 1];
  }
  return best;
}

void LevelSpec::validate() const {
  space.validate();
  profile.validate();
  require(profile.d() == space.d, "profile dimension must match space");
  require(std::isfinite(r) && r > 0.0 && r < 1.0, "scale r must lie in (0,1)");
  if (!log_counts.empty()) {
    require(static_cast<int>(log_counts.size()) == space.d,
            "log_counts must have one entry per direction");
    for (double c : log_counts)
      require(std::isfinite(c) && c >= 0.0, "big-ball counts must be >= 1");
  }
}

double LevelSpec::log_count(int k) const {
  if (!log_counts.empty()) return log_counts[k];
  return profile.a[k] * space.deltas[k] * std::log(1.0 / r);
}

double cover_count(const LevelSpec& level, double A) {
  level.validate();
  require(std::isfinite(A) && A > 0.0, "A must be positive");
  const double L = std::log(1.0 / level.r);
  const core::Partition part = core::partition_for(A, level.profile);
  double total = 0.0;
  for (int k : part.k1) total += level.space.deltas[k] * A * L;
  for (int k : part.k2)
    total += level.log_count(k) +
             level.space.deltas[k] * (A - level.profile.a[k] - level.profile.t[k]) * L;
  for (int k : part.k3) total += level.log_count(k);
  return total;
}

double critical_exponent(const std::vector<LevelSpec>& levels, double s_lo, double s_hi,
                         double tol) {
  require(!levels.empty(), "at least one level required");
  require(std::isfinite(s_lo) && std::isfinite(s_hi) && s_lo < s_hi,
          "search bounds must satisfy s_lo < s_hi");
  require(std::isfinite(tol) && tol > 0.0, "tolerance must be positive");
  const LevelSpec* deepest = &levels.front();
  for (const auto& lv : levels) {
    lv.validate();
    if (lv.r < deepest->r) deepest = &lv;
  }
  const core::Alphabet alpha = core::build_alphabet(deepest->profile);
  const double logr = std::log(deepest->r);
  auto h = [&](double s) {
    double best = std::numeric_limits<double>::infinity();
    for (double A : alpha.entries)
      best = std::min(best, cover_count(*deepest, A) + s * A * logr);
    return best;
  };
  double lo = s_lo, hi = s_hi;
  if (!(h(lo) > 0.0 && h(hi) < 0.0))
    throw std::invalid_argument("bracket does not straddle the critical exponent");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

std::vector<int> axis_digits(const apps::CantorAxisSpec& axis) {
  if (!axis.digits.empty()) return axis.digits;
  std::vector<int> d(axis.base);
  std::iota(d.begin(), d.end(), 0);
  return d;
}

// all digit words of length n as integers in base b, ascending
std::vector<long long> digit_words(const std::vector<int>& digits, int b, int n) {
  std::vector<long long> ks{0};
  for (int i = 0; i < n; ++i) {
    std::vector<long long> next;
    next.reserve(ks.size() * digits.size());
    for (long long k : ks)
      for (int d : digits) next.push_back(k * b + d);
    ks = std::move(next);
  }
  return ks;
}

}  // namespace

ProductIntervalUnion build_shrinking_level(
    const std::vector<apps::CantorAxisSpec>& axes,
    const std::vector<std::vector<int>>& anchors,
    const std::vector<std::pair<long long, long long>>& et, int n) {
  require(!axes.empty(), "at least one axis required");
  require(et.size() == axes.size(), "one e^t ratio per axis required");
  require(anchors.empty() || anchors.size() == axes.size(),
          "one anchor digit string per axis, or none");
  require(n >= 1, "level n must be >= 1");

  ProductIntervalUnion out;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const apps::CantorAxisSpec& axis = axes[i];
    axis.validate();
    const auto [p, q] = et[i];
    require(p >= 1 && q >= 1 && p >= q, "e^t must be a rational p/q >= 1");
    const int b = axis.base;
    const std::vector<int> digits = axis_digits(axis);

    long long count = checked_pow(static_cast<long long>(digits.size()), n, kIntervalBudget);
    if (count < 0) throw budget_error("per-direction interval budget exceeded");

    std::vector<int> anchor = anchors.empty() ? std::vector<int>{} : anchors[i];
    for (int d : anchor) require(d >= 0 && d < b, "anchor digits must lie in {0..b-1}");
    const int L = static_cast<int>(anchor.size());

    // common denominator D = b^{n+L} p^n; center(K) = (K b^L + Ka) p^n / D,
    // half-width = q^n b^L / D
    const long long bL = checked_pow(b, L, kDenLimit);
    const long long bn = checked_pow(b, n, kDenLimit);
    const long long pn = checked_pow(p, n, kDenLimit);
    const long long qn = checked_pow(q, n, kDenLimit);
    if (bL < 0 || bn < 0 || pn < 0 || qn < 0)
      throw budget_error("exact denominator exceeds integer range");
    long long den = bn;
    if (bL > 0 && den > kDenLimit / bL) throw budget_error("exact denominator exceeds integer range");
    den *= bL;
    if (den > kDenLimit / pn) throw budget_error("exact denominator exceeds integer range");
    den *= pn;

    long long ka = 0;
    for (int d : anchor) ka = ka * b + d;
    const long long hw = qn * bL;

    DirectionUnion du;
    du.den = den;
    du.pre_merge_count = count;
    du.iv.reserve(static_cast<std::size_t>(count));
    for (long long K : digit_words(digits, b, n)) {
      const long long center = (K * bL + ka) * pn;
      long long lo = std::max(center - hw, 0LL);
      long long hi = std::min(center + hw, den);
      if (lo <= hi) du.iv.emplace_back(lo, hi);
    }
    merge_sorted(du.iv);
    out.dirs.push_back(std::move(du));
  }
  return out;
}

DirectionUnion cantor_cylinders(const apps::CantorAxisSpec& axis, int m) {
  axis.validate();
  require(m >= 1, "cylinder level must be >= 1");
  DirectionUnion du;
  if (axis.full()) {
    du.den = 1;
    du.iv.emplace_back(0, 1);
    du.pre_merge_count = 1;
    return du;
  }
  const int b = axis.base;
  long long count =
      checked_pow(static_cast<long long>(axis.digits.size()), m, kIntervalBudget);
  if (count < 0) throw budget_error("per-direction interval budget exceeded");
  const long long den = checked_pow(b, m, kDenLimit);
  if (den < 0) throw budget_error("exact denominator exceeds integer range");
  du.den = den;
  du.pre_merge_count = count;
  for (long long K : digit_words(axis.digits, b, m)) du.iv.emplace_back(K, K + 1);
  merge_sorted(du.iv);
  return du;
}

DirectionUnion intersect(const DirectionUnion& x, const DirectionUnion& y) {
  // scale both to lcm of the denominators
  const long long g = std::gcd(x.den, y.den);
  const long long fx = y.den / g;
  if (x.den > kDenLimit / fx) throw budget_error("exact denominator exceeds integer range");
  const long long den = x.den * fx;
  const long long fy = den / y.den;

  DirectionUnion out;
  out.den = den;
  out.pre_merge_count = static_cast<long long>(x.iv.size() + y.iv.size());
  std::size_t i = 0, j = 0;
  while (i < x.iv.size() && j < y.iv.size()) {
    const long long lo = std::max(x.iv[i].first * fx, y.iv[j].first * fy);
    const long long hi = std::min(x.iv[i].second * fx, y.iv[j].second * fy);
    if (lo <= hi) out.iv.emplace_back(lo, hi);
    if (x.iv[i].second * fx < y.iv[j].second * fy)
      ++i;
    else
      ++j;
  }
  return out;
}

namespace {

// cells [j*eps,(j+1)*eps) meeting the union, j clamped to [0, ceil(1/eps)-1]
double count_cells(const DirectionUnion& u, double eps, long long* exact) {
  double inv = 1.0 / eps;
  if (inv >= 9.0e17) {
    // counts beyond integer range: carry in log space, error <= 1 cell/interval
    double total = 0.0;
    for (const auto& [lo, hi] : u.iv)
      total += (static_cast<double>(hi) - lo) / u.den * inv + 1.0;
    *exact = -1;
    return total;
  }
  if (std::fabs(inv - std::llround(inv)) < 1e-9 * inv)
    inv = static_cast<double>(std::llround(inv));
  const long long jmax = static_cast<long long>(std::ceil(inv)) - 1;
  long long cnt = 0;
  long long last = -1;
  for (const auto& [lo, hi] : u.iv) {
    const double a = static_cast<double>(lo) / u.den;
    const double b = static_cast<double>(hi) / u.den;
    long long ja = static_cast<long long>(std::floor(a / eps));
    long long jb = static_cast<long long>(std::floor(b / eps));
    ja = std::max({ja, 0LL, last + 1});
    jb = std::min(jb, jmax);
    if (jb >= ja) {
      cnt += jb - ja + 1;
      last = jb;
    }
  }
  *exact = cnt;
  return static_cast<double>(cnt);
}

}  // namespace

GridCount grid_count(const ProductIntervalUnion& u, double eps) {
  require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, "eps must lie in (0,1)");
  require(!u.dirs.empty(), "union must have at least one direction");
  GridCount out;
  out.log_total = 0.0;
  for (const auto& du : u.dirs) {
    long long exact = 0;
    const double n = count_cells(du, eps, &exact);
    out.per_direction.push_back(exact);
    out.log_total += n > 0.0 ? std::log(n) : -std::numeric_limits<double>::infinity();
  }
  return out;
}

EmpiricalExponentReport empirical_critical_exponent(
    const std::vector<apps::CantorAxisSpec>& axes,
    const std::vector<std::pair<long long, long long>>& et, int n_from, int n_to,
    int grid_steps) {
  require(n_from >= 1 && n_to >= n_from, "need 1 <= n_from <= n_to");
  require(grid_steps >= 2, "grid needs at least two steps");
  require(et.size() == axes.size(), "one e^t ratio per axis required");

  core::ProductSpaceSpec space;
  core::ExponentProfile profile;
  space.d = static_cast<int>(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    axes[i].validate();
    const auto [p, q] = et[i];
    require(p >= 1 && q >= 1 && p >= q, "e^t must be a rational p/q >= 1");
    space.deltas.push_back(axes[i].delta());
    profile.a.push_back(axes[i].log_base());
    profile.t.push_back(std::log(static_cast<double>(p) / q));
  }
  space.kappa = 0.0;

  const core::Alphabet alpha = core::build_alphabet(profile);
  const double a_min = alpha.entries.front();
  const double a_max = alpha.entries.back();
  if (a_max == a_min) grid_steps = 1;  // t = 0 everywhere: one radius per level
  const double step = grid_steps > 1 ? (a_max - a_min) / (grid_steps - 1) : 1.0;

  EmpiricalExponentReport rep;
  rep.reference_s = core::compute_s(space, profile).value;

  std::vector<double> xs, ys;
  for (int n = n_from; n <= n_to; ++n) {
    const ProductIntervalUnion base = build_shrinking_level(axes, {}, et, n);
    std::vector<double> log_n(grid_steps), a_grid(grid_steps);
    for (int j = 0; j < grid_steps; ++j) {
      const double A = a_min + step * (grid_steps > 1 ? j : 0);
      const double eps = std::exp(-n * A);
      double total = 0.0;
      for (std::size_t i = 0; i < axes.size(); ++i) {
        const DirectionUnion* du = &base.dirs[i];
        DirectionUnion refined;
        if (!axes[i].full()) {
          int m = n;
          while (std::pow(static_cast<double>(axes[i].base), -m) > eps) ++m;
          if (m > n) {
            refined = intersect(*du, cantor_cylinders(axes[i], m));
            du = &refined;
          }
        }
        long long exact = 0;
        const double cells = count_cells(*du, eps, &exact);
        if (cells <= 0.0) throw verification_error("refined level count vanished");
        total += std::log(cells);
      }
      a_grid[j] = A;
      log_n[j] = total;
      rep.rows.push_back({n, A, eps, total, total - rep.reference_s * n * A});
    }

    int raw_arg = 0;
    double raw_best = std::numeric_limits<double>::infinity();
    int cost_arg = 0;
    double cost_best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_steps; ++j) {
      const double ratio = log_n[j] / (n * a_grid[j]);
      if (ratio < raw_best) {
        raw_best = ratio;
        raw_arg = j;
      }
      const double cost = log_n[j] - rep.reference_s * n * a_grid[j];
      if (cost < cost_best) {
        cost_best = cost;
        cost_arg = j;
      }
    }
    rep.n_values.push_back(n);
    rep.raw_sequence.push_back(raw_best);
    xs.push_back(n * a_grid[raw_arg]);
    ys.push_back(log_n[raw_arg]);

    auto dist_steps = [&](double A) {
      double best = std::numeric_limits<double>::infinity();
      for (double a : alpha.entries) best = std::min(best, std::fabs(A - a));
      return best / step;
    };
    rep.oracle_argmin_steps.push_back(dist_steps(a_grid[cost_arg]));

    LevelSpec model{space, profile, std::exp(-static_cast<double>(n)), {}};
    int marg = 0;
    double mbest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_steps; ++j) {
      const double c = cover_count(model, a_grid[j]) - rep.reference_s * n * a_grid[j];
      if (c < mbest) {
        mbest = c;
        marg = j;
      }
    }
    rep.model_argmin_steps.push_back(dist_steps(a_grid[marg]));
  }

  rep.last_raw = rep.raw_sequence.back();
  const double k = static_cast<double>(xs.size());
  if (xs.size() >= 2) {
    const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
    const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    rep.regression_estimate = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  } else {
    rep.regression_estimate = rep.last_raw;
  }
  rep.value = rep.regression_estimate;
  return rep;
}

}  // namespace rectdim::cover
