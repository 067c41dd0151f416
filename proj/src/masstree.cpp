#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "rectdim/errors.hpp"
#include "rectdim/verify.hpp"

namespace rectdim::verify {

namespace {

using i128 = __int128;

constexpr long long kRatLimit = 4000000000000000000LL;
constexpr long long kWorkBudget = 100000000;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Rat rat_reduce(long long num, long long den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rat rat_combine(const Rat& a, const Rat& b, int sign) {
  const long long g = std::gcd(a.den, b.den);
  const long long bd = b.den / g;
  const i128 den = static_cast<i128>(a.den) * bd;
  const i128 num = static_cast<i128>(a.num) * bd +
                   static_cast<i128>(sign) * static_cast<i128>(b.num) * (a.den / g);
  if (den > kRatLimit || num > static_cast<i128>(kRatLimit) ||
      num < -static_cast<i128>(kRatLimit))
    throw budget_error("rational overflow in tree construction");
  return rat_reduce(static_cast<long long>(num), static_cast<long long>(den));
}

Rat rat_add(const Rat& a, const Rat& b) { return rat_combine(a, b, +1); }
Rat rat_sub(const Rat& a, const Rat& b) { return rat_combine(a, b, -1); }

bool rat_lt(const Rat& a, const Rat& b) {
  return static_cast<i128>(a.num) * b.den < static_cast<i128>(b.num) * a.den;
}
bool rat_le(const Rat& a, const Rat& b) {
  return static_cast<i128>(a.num) * b.den <= static_cast<i128>(b.num) * a.den;
}

long long floor_scaled(const Rat& x, long long scale) {
  const i128 p = static_cast<i128>(x.num) * scale;
  return static_cast<long long>(p >= 0 ? p / x.den : -((-p + x.den - 1) / x.den));
}

long long ceil_scaled(const Rat& x, long long scale) {
  const i128 p = static_cast<i128>(x.num) * scale;
  return static_cast<long long>(p >= 0 ? (p + x.den - 1) / x.den : -((-p) / x.den));
}

long long checked_pow_ll(long long base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > kRatLimit / base) return -1;
    v *= base;
  }
  return v;
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

struct DirLevel {
  long long b = 2;
  std::vector<int> digits;  // ascending; full alphabet listed explicitly
  long long bn = 1;         // b^n
  long long bn1 = 1;        // b^{n+1}
  Rat h;                    // shrunk half-width (q/(bp))^n
  int m = 0;                // anchored division level
  long long bm1 = 1;        // b^{m+1}
  long long anchor_digit = 0;
  std::vector<long long> pow_b;  // b^0..b^max(n,m)
};

// level-j cylinder words (digits restricted to Lambda) whose closed cylinder
// meets [lo, hi]
void collect_words(const DirLevel& dir, int depth, long long prefix, int target,
                   const Rat& lo, const Rat& hi, std::vector<long long>& out,
                   long long& work) {
  if (++work > kWorkBudget) throw budget_error("tree construction work budget exceeded");
  const long long bj = dir.pow_b[depth];
  if (rat_lt(Rat{prefix + 1, bj}, lo) || rat_lt(hi, Rat{prefix, bj})) return;
  if (depth == target) {
    out.push_back(prefix);
    return;
  }
  for (int d : dir.digits)
    collect_words(dir, depth + 1, prefix * dir.b + d, target, lo, hi, out, work);
}

// anchored points of level-m extensions of the given word, inside [lo, hi];
// anchors are strictly interior to their cylinder, so pruning may use the
// open intersection
void collect_anchors(const DirLevel& dir, int depth, long long prefix, const Rat& lo,
                     const Rat& hi, std::vector<Rat>& out, long long& work) {
  if (++work > kWorkBudget) throw budget_error("tree construction work budget exceeded");
  const long long bj = dir.pow_b[depth];
  if (rat_le(Rat{prefix + 1, bj}, lo) || rat_le(hi, Rat{prefix, bj})) return;
  if (depth == dir.m) {
    const Rat a{prefix * dir.b + dir.anchor_digit, dir.bm1};
    if (rat_le(lo, a) && rat_le(a, hi)) out.push_back(a);
    return;
  }
  for (int d : dir.digits)
    collect_anchors(dir, depth + 1, prefix * dir.b + d, lo, hi, out, work);
}

}  // namespace

MassTree build_mass_tree(const std::vector<apps::CantorAxisSpec>& axes,
                         const std::vector<std::pair<long long, long long>>& et,
                         const std::vector<int>& schedule, const TreeBudget& budget) {
  require(!axes.empty(), "at least one axis required");
  for (const auto& ax : axes) ax.validate();
  require(et.size() == axes.size(), "one e^{t} ratio per axis required");
  for (const auto& [p, q] : et)
    require(q >= 1 && p >= q, "e^{t} = p/q needs p >= q >= 1");
  require(!schedule.empty(), "schedule must be non-empty");
  require(schedule.front() >= 4, "first level must refine to depth >= 4");
  for (std::size_t k = 1; k < schedule.size(); ++k)
    require(schedule[k] >= schedule[k - 1] + 2, "schedule depths must grow by >= 2");

  const int d = static_cast<int>(axes.size());
  // the sparse-axis anchor sits at the top digit; a gap below it inside the
  // cylinder is only guaranteed when 0 is an admissible digit
  for (const auto& ax : axes)
    if (!ax.full())
      require(std::find(ax.digits.begin(), ax.digits.end(), 0) != ax.digits.end(),
              "sparse axes must admit digit 0");

  MassTree t;
  t.axes = axes;
  t.et = et;
  t.schedule = schedule;

  TreeNode root;
  root.id = 0;
  root.parent = -1;
  root.kind = NodeKind::Ball;
  root.level = 0;
  root.center.assign(d, Rat{1, 2});
  root.radii.assign(d, Rat{1, 2});
  t.nodes.push_back(root);

  std::vector<int> frontier{0};
  long long work = 0;

  for (std::size_t k = 1; k <= schedule.size(); ++k) {
    const int n = schedule[k - 1];
    std::vector<DirLevel> dirs(d);
    Rat r{1, 1};
    for (int i = 0; i < d; ++i) {
      DirLevel& dl = dirs[i];
      dl.b = axes[i].base;
      if (axes[i].full()) {
        dl.digits.resize(axes[i].base);
        std::iota(dl.digits.begin(), dl.digits.end(), 0);
        dl.anchor_digit = axes[i].base / 2;
      } else {
        dl.digits = axes[i].digits;
        std::sort(dl.digits.begin(), dl.digits.end());
        dl.anchor_digit = dl.digits.back();
      }
      dl.bn = checked_pow_ll(dl.b, n);
      if (dl.bn < 0) throw budget_error("cylinder denominator overflow");
      dl.bn1 = dl.bn <= kRatLimit / dl.b ? dl.bn * dl.b : -1;
      if (dl.bn1 < 0) throw budget_error("cylinder denominator overflow");
      const auto [p, q] = et[i];
      const long long hn = checked_pow_ll(q, n);
      const long long hd = checked_pow_ll(dl.b * p, n);
      if (hn < 0 || hd < 0) throw budget_error("shrunk half-width overflow");
      dl.h = rat_reduce(hn, hd);
    }
    r = dirs[0].h;
    for (int i = 1; i < d; ++i)
      if (rat_lt(dirs[i].h, r)) r = dirs[i].h;
    const double r_dbl = r.to_double();
    const Rat six_r = rat_reduce(6 * r.num, r.den);

    double formula = 1.0;
    for (int i = 0; i < d; ++i) {
      DirLevel& dl = dirs[i];
      const double lg = std::log(1.0 / (6.0 * r_dbl)) / std::log(static_cast<double>(dl.b));
      dl.m = std::max(n, static_cast<int>(std::floor(lg)));
      dl.bm1 = checked_pow_ll(dl.b, dl.m + 1);
      if (dl.bm1 < 0) throw budget_error("anchor denominator overflow");
      dl.pow_b.resize(std::max(n, dl.m) + 1);
      dl.pow_b[0] = 1;
      for (int j = 1; j <= std::max(n, dl.m); ++j) dl.pow_b[j] = dl.pow_b[j - 1] * dl.b;
      formula *= std::pow(dl.h.to_double() / r_dbl, axes[i].delta());
    }

    std::vector<int> next_frontier;
    std::vector<std::vector<long long>> level_words;
    long long level_balls = 0;
    double ratio_min = std::numeric_limits<double>::infinity();
    double ratio_max = -std::numeric_limits<double>::infinity();

    for (int pid : frontier) {
      std::vector<std::vector<long long>> words(d);
      for (int i = 0; i < d; ++i) {
        const Rat half = rat_reduce(t.nodes[pid].radii[i].num, 2 * t.nodes[pid].radii[i].den);
        const Rat lo = rat_sub(t.nodes[pid].center[i], half);
        const Rat hi = rat_add(t.nodes[pid].center[i], half);
        if (axes[i].full()) {
          long long kmin = ceil_scaled(lo, dirs[i].bn) - 1;
          long long kmax = floor_scaled(hi, dirs[i].bn);
          kmin = std::max(kmin, 0LL);
          kmax = std::min(kmax, dirs[i].bn - 1);
          for (long long w = kmin; w <= kmax; ++w) words[i].push_back(w);
        } else {
          collect_words(dirs[i], 0, 0, n, lo, hi, words[i], work);
        }
        if (words[i].empty())
          throw verification_error("parent ball meets no cylinder in some direction");
      }

      std::vector<std::size_t> idx(d, 0);
      while (true) {
        std::vector<long long> tuple(d);
        for (int i = 0; i < d; ++i) tuple[i] = words[i][idx[i]];
        level_words.push_back(tuple);

        TreeNode big;
        big.id = static_cast<int>(t.nodes.size());
        big.parent = pid;
        big.kind = NodeKind::Big;
        big.level = static_cast<int>(k);
        big.center.resize(d);
        big.radii.resize(d);
        std::vector<Rat> anchor(d), slo(d), shi(d);
        for (int i = 0; i < d; ++i) {
          big.center[i] = rat_reduce(2 * tuple[i] + 1, 2 * dirs[i].bn);
          big.radii[i] = rat_reduce(1, 2 * dirs[i].bn);
          anchor[i] = rat_reduce(tuple[i] * dirs[i].b + dirs[i].anchor_digit, dirs[i].bn1);
          const Rat cyl_lo{tuple[i], dirs[i].bn};
          const Rat cyl_hi{tuple[i] + 1, dirs[i].bn};
          Rat a = rat_sub(anchor[i], dirs[i].h);
          Rat b = rat_add(anchor[i], dirs[i].h);
          slo[i] = rat_lt(a, cyl_lo) ? cyl_lo : a;
          shi[i] = rat_lt(cyl_hi, b) ? cyl_hi : b;
          if (!rat_lt(slo[i], shi[i])) throw verification_error("degenerate shrunk rectangle");
        }
        t.nodes.push_back(big);

        TreeNode shrunk;
        shrunk.id = static_cast<int>(t.nodes.size());
        shrunk.parent = big.id;
        shrunk.kind = NodeKind::Shrunk;
        shrunk.level = static_cast<int>(k);
        shrunk.center.resize(d);
        shrunk.radii.resize(d);
        for (int i = 0; i < d; ++i) {
          const Rat sum = rat_add(slo[i], shi[i]);
          const Rat diff = rat_sub(shi[i], slo[i]);
          shrunk.center[i] = rat_reduce(sum.num, 2 * sum.den);
          shrunk.radii[i] = rat_reduce(diff.num, 2 * diff.den);
        }
        t.nodes.push_back(shrunk);
        t.nodes[big.id].children.push_back(shrunk.id);

        long long npts = 1;
        std::vector<std::vector<Rat>> pts(d);
        for (int i = 0; i < d; ++i) {
          const Rat wlo = rat_add(slo[i], r);
          const Rat whi = rat_sub(shi[i], r);
          if (rat_lt(whi, wlo)) throw verification_error("division window is empty");
          collect_anchors(dirs[i], n, tuple[i], wlo, whi, pts[i], work);
          std::vector<Rat> kept;
          for (const Rat& a : pts[i]) {
            if (kept.empty() || rat_lt(six_r, rat_sub(a, kept.back()))) kept.push_back(a);
          }
          if (kept.empty()) {
            if (!(rat_le(wlo, anchor[i]) && rat_le(anchor[i], whi)))
              throw verification_error("anchor fallback lies outside the division window");
            kept.push_back(anchor[i]);
            ++t.anchor_fallbacks;
          }
          pts[i] = std::move(kept);
          npts *= static_cast<long long>(pts[i].size());
        }

        const double ratio = static_cast<double>(npts) / formula;
        ratio_min = std::min(ratio_min, ratio);
        ratio_max = std::max(ratio_max, ratio);
        level_balls += npts;

        std::vector<std::size_t> bidx(d, 0);
        while (true) {
          TreeNode ball;
          ball.id = static_cast<int>(t.nodes.size());
          ball.parent = shrunk.id;
          ball.kind = NodeKind::Ball;
          ball.level = static_cast<int>(k);
          ball.center.resize(d);
          ball.radii.assign(d, r);
          for (int i = 0; i < d; ++i) ball.center[i] = pts[i][bidx[i]];
          t.nodes.push_back(ball);
          t.nodes[shrunk.id].children.push_back(ball.id);
          next_frontier.push_back(ball.id);
          int c = 0;
          for (; c < d; ++c) {
            if (++bidx[c] < pts[c].size()) break;
            bidx[c] = 0;
          }
          if (c == d) break;
        }
        t.nodes[pid].children.push_back(big.id);

        if (static_cast<long long>(t.nodes.size()) > budget.max_nodes)
          throw budget_error("tree node budget exceeded");

        int c = 0;
        for (; c < d; ++c) {
          if (++idx[c] < words[c].size()) break;
          idx[c] = 0;
        }
        if (c == d) break;
      }
    }

    std::sort(level_words.begin(), level_words.end());
    for (std::size_t j = 1; j < level_words.size(); ++j)
      if (level_words[j] == level_words[j - 1])
        throw verification_error("two parent balls selected the same big rectangle");

    t.per_level_balls.push_back(level_balls);
    t.division_ratio_min.push_back(ratio_min);
    t.division_ratio_max.push_back(ratio_max);
    frontier = std::move(next_frontier);
    if (k == schedule.size()) t.leaf_radius = r.to_double();
  }

  t.leaves = frontier;
  t.geometry_ok = true;
  return t;
}

void assign_mass(MassTree& tree) {
  require(!tree.nodes.empty(), "empty tree");
  tree.nodes[0].mu = 1.0;
  for (const TreeNode& node : tree.nodes) {
    if (node.children.empty()) continue;
    const double share = node.kind == NodeKind::Big
                             ? node.mu
                             : node.mu / static_cast<double>(node.children.size());
    for (int c : node.children) tree.nodes[c].mu = share;
  }
  double worst = 0.0;
  for (const TreeNode& node : tree.nodes) {
    if (node.children.empty()) continue;
    double sum = 0.0;
    for (int c : node.children) sum += tree.nodes[c].mu;
    worst = std::max(worst, std::fabs(sum - node.mu));
  }
  tree.conservation_error = worst;
}

namespace {

struct BoxIndex {
  int dim = 0;
  std::vector<double> lo, hi;  // flattened per node
};

BoxIndex build_boxes(const MassTree& t) {
  BoxIndex bx;
  bx.dim = static_cast<int>(t.axes.size());
  const std::size_t n = t.nodes.size();
  bx.lo.assign(n * bx.dim, 0.0);
  bx.hi.assign(n * bx.dim, 0.0);
  for (std::size_t id = n; id-- > 0;) {
    const TreeNode& node = t.nodes[id];
    double* lo = &bx.lo[id * bx.dim];
    double* hi = &bx.hi[id * bx.dim];
    if (node.children.empty()) {
      for (int i = 0; i < bx.dim; ++i) {
        lo[i] = node.center[i].to_double() - node.radii[i].to_double();
        hi[i] = node.center[i].to_double() + node.radii[i].to_double();
      }
      continue;
    }
    for (int i = 0; i < bx.dim; ++i) {
      lo[i] = std::numeric_limits<double>::infinity();
      hi[i] = -std::numeric_limits<double>::infinity();
    }
    for (int c : node.children) {
      const double* clo = &bx.lo[static_cast<std::size_t>(c) * bx.dim];
      const double* chi = &bx.hi[static_cast<std::size_t>(c) * bx.dim];
      for (int i = 0; i < bx.dim; ++i) {
        lo[i] = std::min(lo[i], clo[i]);
        hi[i] = std::max(hi[i], chi[i]);
      }
    }
  }
  return bx;
}

double box_mass(const MassTree& t, const BoxIndex& bx, const double* qlo, const double* qhi) {
  double total = 0.0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const TreeNode& node = t.nodes[id];
    const double* lo = &bx.lo[static_cast<std::size_t>(id) * bx.dim];
    const double* hi = &bx.hi[static_cast<std::size_t>(id) * bx.dim];
    bool disjoint = false, contained = true;
    for (int i = 0; i < bx.dim; ++i) {
      if (lo[i] > qhi[i] || hi[i] < qlo[i]) {
        disjoint = true;
        break;
      }
      if (lo[i] < qlo[i] || hi[i] > qhi[i]) contained = false;
    }
    if (disjoint) continue;
    if (contained || node.children.empty()) {
      total += node.mu;
      continue;
    }
    for (int c : node.children) stack.push_back(c);
  }
  return total;
}

}  // namespace

double tree_ball_mass(const MassTree& tree, const std::vector<double>& center, double r) {
  require(center.size() == tree.axes.size(), "query center dimension mismatch");
  require(std::isfinite(r) && r >= 0.0, "query radius must be >= 0");
  const BoxIndex bx = build_boxes(tree);
  std::vector<double> qlo(bx.dim), qhi(bx.dim);
  for (int i = 0; i < bx.dim; ++i) {
    qlo[i] = center[i] - r;
    qhi[i] = center[i] + r;
  }
  return box_mass(tree, bx, qlo.data(), qhi.data());
}

HolderReport holder_test(const MassTree& tree, double s, double epsilon, int samples,
                         std::uint64_t seed, int threads) {
  require(!tree.leaves.empty(), "tree has no leaves");
  require(tree.nodes[0].mu > 0.0, "assign_mass must run before the scaling test");
  require(samples >= 1, "sample count must be positive");
  require(std::isfinite(s) && s > 0.0, "exponent must be positive");
  require(std::isfinite(epsilon) && epsilon > 0.0, "tolerance must be positive");

  const BoxIndex bx = build_boxes(tree);
  const int dim = bx.dim;
  const double lr_min = std::log(tree.leaf_radius);
  constexpr int kBuckets = 20;

  const int nthreads = std::max(1, std::min(threads, samples));
  struct Acc {
    std::vector<double> best_ratio, best_logr;
    double max_log_ratio = -std::numeric_limits<double>::infinity();
  };
  std::vector<Acc> accs(nthreads);
  const std::uint64_t nleaves = tree.leaves.size();

  auto worker = [&](int tid) {
    Acc& acc = accs[tid];
    acc.best_ratio.assign(kBuckets, -std::numeric_limits<double>::infinity());
    acc.best_logr.assign(kBuckets, 0.0);
    std::mt19937_64 rng = stream_rng(seed, tid);
    const int count = samples / nthreads + (tid < samples % nthreads ? 1 : 0);
    std::vector<double> x(dim), qlo(dim), qhi(dim);
    for (int sIdx = 0; sIdx < count; ++sIdx) {
      const std::uint64_t leaf_pick =
          static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * nleaves) >> 64);
      const TreeNode& leaf = tree.nodes[tree.leaves[leaf_pick]];
      for (int i = 0; i < dim; ++i) x[i] = leaf.center[i].to_double();
      const double log_r = lr_min * uniform01(rng);
      const double r = std::exp(log_r);
      for (int i = 0; i < dim; ++i) {
        qlo[i] = x[i] - r;
        qhi[i] = x[i] + r;
      }
      const double q = box_mass(tree, bx, qlo.data(), qhi.data());
      const double log_ratio = std::log(q) - s * log_r;
      const int b = std::min(kBuckets - 1, static_cast<int>(kBuckets * log_r / lr_min));
      if (log_ratio > acc.best_ratio[b]) {
        acc.best_ratio[b] = log_ratio;
        acc.best_logr[b] = log_r;
      }
      acc.max_log_ratio = std::max(acc.max_log_ratio, log_ratio);
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int tIdx = 0; tIdx < nthreads; ++tIdx) pool.emplace_back(worker, tIdx);
    for (auto& th : pool) th.join();
  }

  std::vector<double> best_ratio(kBuckets, -std::numeric_limits<double>::infinity());
  std::vector<double> best_logr(kBuckets, 0.0);
  double max_log_ratio = -std::numeric_limits<double>::infinity();
  for (const Acc& acc : accs) {
    for (int b = 0; b < kBuckets; ++b) {
      if (acc.best_ratio[b] > best_ratio[b]) {
        best_ratio[b] = acc.best_ratio[b];
        best_logr[b] = acc.best_logr[b];
      }
    }
    max_log_ratio = std::max(max_log_ratio, acc.max_log_ratio);
  }

  HolderReport rep;
  rep.s = s;
  rep.epsilon = epsilon;
  rep.samples = samples;
  rep.seed = seed;
  rep.max_ratio = std::exp(max_log_ratio);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (int b = 0; b < kBuckets; ++b) {
    if (!std::isfinite(best_ratio[b])) continue;
    rep.buckets.push_back({best_logr[b], best_ratio[b]});
    sx += best_logr[b];
    sy += best_ratio[b];
    sxx += best_logr[b] * best_logr[b];
    sxy += best_logr[b] * best_ratio[b];
    ++cnt;
  }
  const double det = cnt * sxx - sx * sx;
  rep.slope = (cnt >= 2 && det > 0.0) ? (cnt * sxy - sx * sy) / det : 0.0;
  rep.pass = rep.slope >= -epsilon;
  return rep;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Big:
      return "big";
    case NodeKind::Shrunk:
      return "shrunk";
    case NodeKind::Ball:
      return "ball";
  }
  return "ball";
}

}  // namespace

std::string tree_to_json(const MassTree& tree) {
  std::string out;
  out.reserve(tree.nodes.size() * 128 + 1024);
  out += "{\"schema_version\":1,\"kind\":\"mass_tree\",\"axes\":[";
  for (std::size_t i = 0; i < tree.axes.size(); ++i) {
    if (i) out += ',';
    out += "{\"base\":" + std::to_string(tree.axes[i].base) + ",\"digits\":[";
    for (std::size_t j = 0; j < tree.axes[i].digits.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(tree.axes[i].digits[j]);
    }
    out += "]}";
  }
  out += "],\"et\":[";
  for (std::size_t i = 0; i < tree.et.size(); ++i) {
    if (i) out += ',';
    out += '[' + std::to_string(tree.et[i].first) + ',' + std::to_string(tree.et[i].second) +
           ']';
  }
  out += "],\"schedule\":[";
  for (std::size_t i = 0; i < tree.schedule.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tree.schedule[i]);
  }
  out += "],\"per_level_balls\":[";
  for (std::size_t i = 0; i < tree.per_level_balls.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tree.per_level_balls[i]);
  }
  out += "],\"division_ratio_min\":[";
  for (std::size_t i = 0; i < tree.division_ratio_min.size(); ++i) {
    if (i) out += ',';
    append_double(out, tree.division_ratio_min[i]);
  }
  out += "],\"division_ratio_max\":[";
  for (std::size_t i = 0; i < tree.division_ratio_max.size(); ++i) {
    if (i) out += ',';
    append_double(out, tree.division_ratio_max[i]);
  }
  out += "],\"anchor_fallbacks\":" + std::to_string(tree.anchor_fallbacks);
  out += ",\"conservation_error\":";
  append_double(out, tree.conservation_error);
  out += ",\"geometry_ok\":";
  out += tree.geometry_ok ? "true" : "false";
  out += ",\"leaf_radius\":";
  append_double(out, tree.leaf_radius);
  out += ",\"nodes\":[";
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const TreeNode& node = tree.nodes[id];
    if (id) out += ',';
    out += "{\"id\":" + std::to_string(node.id) + ",\"parent\":" + std::to_string(node.parent);
    out += ",\"kind\":\"";
    out += kind_name(node.kind);
    out += "\",\"level\":" + std::to_string(node.level) + ",\"center\":[";
    for (std::size_t i = 0; i < node.center.size(); ++i) {
      if (i) out += ',';
      append_double(out, node.center[i].to_double());
    }
    out += "],\"radii\":[";
    for (std::size_t i = 0; i < node.radii.size(); ++i) {
      if (i) out += ',';
      append_double(out, node.radii[i].to_double());
    }
    out += "],\"mu\":";
    append_double(out, node.mu);
    out += '}';
  }
  out += "]}";
  return out;
}

}  // namespace rectdim::verify
