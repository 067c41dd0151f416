#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "rectdim/errors.hpp"
#include "rectdim/verify.hpp"

namespace rectdim::verify {

namespace {

constexpr long long kSweepNodeBudget = 1000000000;
constexpr long long kLatticeBudget = 2000000;
constexpr long long kScanBudget = 10000000;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 stream_rng(std::uint64_t seed, int stream) {
  std::uint64_t state = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(stream + 1);
  return std::mt19937_64(splitmix64(state));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long long checked_ipow(long long base, int exp, long long limit) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > limit / base) return -1;
    v *= base;
  }
  return v;
}

// total length in [lo,hi] not covered by R-neighborhoods of fractions with
// denominator <= Q, by Stern-Brocot descent over Farey neighbor pairs
double farey_uncovered(long long Q, double R, double lo, double hi) {
  struct Frame {
    long long pa, qa, pb, qb;
  };
  std::vector<Frame> stack{{0, 1, 1, 1}};
  stack.reserve(256);
  long double uncovered = 0.0L;
  long long nodes = 0;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (++nodes > kSweepNodeBudget) throw budget_error("interval sweep budget exceeded");
    const double xa = static_cast<double>(f.pa) / f.qa;
    const double xb = static_cast<double>(f.pb) / f.qb;
    if (xb <= lo || xa >= hi) continue;
    // Farey neighbors: xb - xa = 1/(qa*qb)
    if (1.0 <= 2.0 * R * static_cast<double>(f.qa) * static_cast<double>(f.qb)) continue;
    if (f.qa + f.qb > Q) {
      const double glo = std::max(xa + R, lo);
      const double ghi = std::min(xb - R, hi);
      if (ghi > glo) uncovered += static_cast<long double>(ghi - glo);
      continue;
    }
    const long long pm = f.pa + f.pb;
    const long long qm = f.qa + f.qb;
    stack.push_back({f.pa, f.qa, pm, qm});
    stack.push_back({pm, qm, f.pb, f.qb});
  }
  return static_cast<double>(uncovered);
}

}  // namespace

void UbiquitySystemSpec::validate() const {
  switch (kind) {
    case SystemKind::Simultaneous: {
      require(m >= 1 && m <= 16, "m must lie in [1,16]");
      require(static_cast<int>(a.size()) == m, "a must have m entries");
      for (double x : a) require(std::isfinite(x) && x > 0.0, "exponents must be positive");
      const long long threshold = 1LL << (3 * m + 2);
      require(M >= threshold, "M below the threshold 2^{3m+2}");
      require(rho == RhoKind::InversePower, "simultaneous systems use rho(u) = 1/u");
      break;
    }
    case SystemKind::LinearForms: {
      require(m >= 1 && m <= 16 && n >= 1 && n <= 16, "m, n must lie in [1,16]");
      require(static_cast<int>(a.size()) == m, "a must have m entries");
      for (double x : a) require(std::isfinite(x) && x > 0.0, "exponents must be positive");
      const long long nm = checked_ipow(n, m, 1LL << 40);
      require(nm > 0, "threshold overflow: reduce m or n");
      const long long threshold = (1LL << (2 * m + 1)) * nm;
      require(M >= threshold, "M below the threshold 2^{2m+1} n^m");
      require(rho == RhoKind::InversePower, "linear-forms systems use rho(u) = 1/u");
      break;
    }
    case SystemKind::Shrinking: {
      require(!axes.empty(), "shrinking system needs at least one axis");
      for (const auto& ax : axes) ax.validate();
      require(rho == RhoKind::Exponential, "shrinking systems use rho(u) = e^{-u}");
      break;
    }
  }
}

int UbiquitySystemSpec::dim() const {
  switch (kind) {
    case SystemKind::Simultaneous:
      return m;
    case SystemKind::LinearForms:
      return m * n;
    case SystemKind::Shrinking:
      return static_cast<int>(axes.size());
  }
  return 0;
}

std::pair<double, double> UbiquitySystemSpec::level_range(int k) const {
  require(k >= 1, "level index must be >= 1");
  if (kind == SystemKind::Shrinking)
    return {static_cast<double>(k), static_cast<double>(k)};
  const long long lk = checked_ipow(M, k - 1, static_cast<long long>(1e18));
  const long long uk = checked_ipow(M, k, static_cast<long long>(1e18));
  if (lk < 0 || uk < 0) throw budget_error("level too large: M^k exceeds integer range");
  return {static_cast<double>(lk), static_cast<double>(uk)};
}

double UbiquitySystemSpec::rho_of(double u) const {
  return rho == RhoKind::InversePower ? 1.0 / u : std::exp(-u);
}

bool UbiquitySystemSpec::admissible(int k, double ball_radius) const {
  if (kind == SystemKind::Shrinking) return true;
  const double logM = std::log(static_cast<double>(M));
  const double Mk = std::pow(static_cast<double>(M), k);
  const double rm = std::pow(ball_radius, m);
  if (kind == SystemKind::Simultaneous) {
    const double lhs = std::pow(2.0, m) * std::pow(3.0, m + 1) * k * logM / Mk;
    return lhs <= 0.25 * rm;
  }
  const double cond1 = std::pow(2.0, 2 * m) * std::pow(static_cast<double>(n), 0.5 * m) /
                       std::pow(static_cast<double>(M), n);
  const double cond2 = n * std::pow(2.0, m) * std::pow(3.0, m + n) * k * logM / Mk;
  return cond1 <= 0.25 && cond2 <= 0.25 * rm;
}

namespace {

CoverageReport shrinking_exact(const UbiquitySystemSpec& spec, int k) {
  // big rectangles are the radius-b^{-k} neighborhoods of the anchored inverse
  // images; each level-k cylinder lies within b^{-k} of its anchored point, so
  // the union contains the whole Cantor product and the fraction is exactly 1
  for (const auto& ax : spec.axes) {
    // anchored point (K + x_o)/b^k sits inside [K/b^k, (K+1)/b^k]; the far
    // endpoint is at distance max(x_o, 1-x_o)/b^k <= 1/b^k = radius
    require(ax.base >= 2, "invalid axis");
  }
  CoverageReport rep;
  rep.fraction = 1.0;
  rep.level = k;
  rep.l_k = rep.u_k = static_cast<double>(k);
  rep.method = CoverageMethod::Exact1D;
  rep.admissible = true;
  return rep;
}

CoverageReport simultaneous_exact(const UbiquitySystemSpec& spec, const Ball& ball, int k,
                                  bool literal) {
  const auto [lk, uk] = spec.level_range(k);
  const long long Q = static_cast<long long>(uk);
  double R = std::pow(uk, -spec.a[0]);
  if (!literal) R *= static_cast<double>(spec.M);
  // every reduced denominator q' <= u_k has a multiple in [l_k, u_k], so the
  // level union equals the R-neighborhood of all fractions with q <= u_k
  const double lo = ball.center[0] - ball.radius;
  const double hi = ball.center[0] + ball.radius;
  const double uncovered = farey_uncovered(Q, R, lo, hi);
  CoverageReport rep;
  rep.fraction = 1.0 - uncovered / (hi - lo);
  rep.level = k;
  rep.l_k = lk;
  rep.u_k = uk;
  rep.method = CoverageMethod::Exact1D;
  rep.admissible = spec.admissible(k, ball.radius);
  rep.literal_radius = literal;
  return rep;
}

CoverageReport simultaneous_mc(const UbiquitySystemSpec& spec, const Ball& ball, int k,
                               long long samples, std::uint64_t seed, int threads,
                               bool literal) {
  const auto [lk, uk] = spec.level_range(k);
  if (uk - lk > static_cast<double>(kScanBudget))
    throw budget_error("level too large for the q scan");
  const long long ql = static_cast<long long>(lk);
  const long long qu = static_cast<long long>(uk);
  std::vector<double> radii(spec.m);
  for (int i = 0; i < spec.m; ++i) {
    radii[i] = std::pow(uk, -spec.a[i]);
    if (!literal) radii[i] *= static_cast<double>(spec.M);
  }

  const int nthreads = static_cast<int>(std::max<long long>(1, std::min<long long>(threads, samples)));
  std::vector<long long> hits(nthreads, 0);
  auto worker = [&](int tid) {
    std::mt19937_64 rng = stream_rng(seed, tid);
    const long long count = samples / nthreads + (tid < samples % nthreads ? 1 : 0);
    std::vector<double> x(spec.m);
    long long h = 0;
    for (long long s = 0; s < count; ++s) {
      for (int i = 0; i < spec.m; ++i)
        x[i] = ball.center[i] + ball.radius * (2.0 * uniform01(rng) - 1.0);
      for (long long q = qu; q >= ql; --q) {
        bool ok = true;
        for (int i = 0; i < spec.m; ++i) {
          const double v = q * x[i];
          if (std::fabs(v - std::nearbyint(v)) > q * radii[i]) {
            ok = false;
            break;
          }
        }
        if (ok) {
          ++h;
          break;
        }
      }
    }
    hits[tid] = h;
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int tIdx = 0; tIdx < nthreads; ++tIdx) pool.emplace_back(worker, tIdx);
    for (auto& th : pool) th.join();
  }
  long long total = 0;
  for (long long h : hits) total += h;

  CoverageReport rep;
  rep.fraction = static_cast<double>(total) / static_cast<double>(samples);
  rep.stderr_est = std::sqrt(std::max(rep.fraction * (1.0 - rep.fraction), 0.0) /
                             static_cast<double>(samples));
  rep.level = k;
  rep.l_k = lk;
  rep.u_k = uk;
  rep.method = CoverageMethod::MonteCarlo;
  rep.admissible = spec.admissible(k, ball.radius);
  rep.literal_radius = literal;
  rep.samples = samples;
  return rep;
}

CoverageReport linear_mc(const UbiquitySystemSpec& spec, const Ball& ball, int k,
                         long long samples, std::uint64_t seed, int threads,
                         bool literal) {
  const auto [lk, uk] = spec.level_range(k);
  const long long qmax = static_cast<long long>(uk);
  const long long qmin = static_cast<long long>(lk);
  double latticeSize = 1.0;
  for (int i = 0; i < spec.n; ++i) latticeSize *= 2.0 * static_cast<double>(qmax) + 1.0;
  if (latticeSize > static_cast<double>(kLatticeBudget))
    throw budget_error("level too large: lattice enumeration budget exceeded");

  // all q in Z^n with qmin <= |q|_inf <= qmax, widest norm first
  std::vector<std::vector<long long>> qs;
  std::vector<long long> cur(spec.n, -qmax);
  while (true) {
    long long norm_inf = 0;
    for (long long c : cur) norm_inf = std::max(norm_inf, std::llabs(c));
    if (norm_inf >= qmin && norm_inf <= qmax) qs.push_back(cur);
    int i = 0;
    for (; i < spec.n; ++i) {
      if (cur[i] < qmax) {
        ++cur[i];
        break;
      }
      cur[i] = -qmax;
    }
    if (i == spec.n) break;
  }
  std::vector<double> norms(qs.size());
  std::vector<std::size_t> order(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    double s2 = 0.0;
    for (long long c : qs[i]) s2 += static_cast<double>(c) * static_cast<double>(c);
    norms[i] = std::sqrt(s2);
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  std::vector<double> radii(spec.m);
  for (int i = 0; i < spec.m; ++i) {
    radii[i] = std::pow(uk, -spec.a[i]);
    if (!literal) radii[i] *= static_cast<double>(spec.M);
  }

  const int d = spec.m * spec.n;
  const int nthreads = static_cast<int>(std::max<long long>(1, std::min<long long>(threads, samples)));
  std::vector<long long> hits(nthreads, 0);
  auto worker = [&](int tid) {
    std::mt19937_64 rng = stream_rng(seed, tid);
    const long long count = samples / nthreads + (tid < samples % nthreads ? 1 : 0);
    std::vector<double> x(d);
    long long h = 0;
    for (long long s = 0; s < count; ++s) {
      for (int i = 0; i < d; ++i)
        x[i] = ball.center[i] + ball.radius * (2.0 * uniform01(rng) - 1.0);
      bool member = false;
      for (std::size_t oi = 0; oi < order.size() && !member; ++oi) {
        const auto& q = qs[order[oi]];
        const double norm = norms[order[oi]];
        bool ok = true;
        for (int f = 0; f < spec.m; ++f) {
          double dot = 0.0;
          for (int j = 0; j < spec.n; ++j) dot += static_cast<double>(q[j]) * x[f * spec.n + j];
          if (std::fabs(dot - std::nearbyint(dot)) > norm * radii[f]) {
            ok = false;
            break;
          }
        }
        member = ok;
      }
      if (member) ++h;
    }
    hits[tid] = h;
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int tIdx = 0; tIdx < nthreads; ++tIdx) pool.emplace_back(worker, tIdx);
    for (auto& th : pool) th.join();
  }
  long long total = 0;
  for (long long h : hits) total += h;

  CoverageReport rep;
  rep.fraction = static_cast<double>(total) / static_cast<double>(samples);
  rep.stderr_est = std::sqrt(std::max(rep.fraction * (1.0 - rep.fraction), 0.0) /
                             static_cast<double>(samples));
  rep.level = k;
  rep.l_k = lk;
  rep.u_k = uk;
  rep.method = CoverageMethod::MonteCarlo;
  rep.admissible = spec.admissible(k, ball.radius);
  rep.literal_radius = literal;
  rep.samples = samples;
  return rep;
}

}  // namespace

CoverageReport ubiquity_coverage(const UbiquitySystemSpec& spec, const Ball& ball, int k,
                                 CoverageMethod method, long long samples,
                                 std::uint64_t seed, int threads, bool literal_radius) {
  spec.validate();
  require(k >= 1, "level index must be >= 1");
  require(static_cast<int>(ball.center.size()) == spec.dim(),
          "ball center dimension must match the system");
  require(std::isfinite(ball.radius) && ball.radius >= 0.0, "ball radius must be >= 0");
  for (double c : ball.center)
    require(c - ball.radius >= 0.0 && c + ball.radius <= 1.0,
            "ball must lie inside the unit cube");
  if (ball.radius == 0.0) {
    CoverageReport rep;
    rep.degenerate = true;
    rep.level = k;
    rep.method = method;
    return rep;
  }
  if (method == CoverageMethod::MonteCarlo)
    require(samples >= 1, "sample count must be positive");

  switch (spec.kind) {
    case SystemKind::Shrinking:
      return shrinking_exact(spec, k);
    case SystemKind::Simultaneous:
      if (method == CoverageMethod::Exact1D) {
        require(spec.m == 1, "exact interval sweep requires m = 1");
        return simultaneous_exact(spec, ball, k, literal_radius);
      }
      return simultaneous_mc(spec, ball, k, samples, seed, threads, literal_radius);
    case SystemKind::LinearForms:
      require(method == CoverageMethod::MonteCarlo,
              "linear-forms coverage supports Monte Carlo only");
      return linear_mc(spec, ball, k, samples, seed, threads, literal_radius);
  }
  throw std::invalid_argument("unknown system kind");
}

}  // namespace rectdim::verify
