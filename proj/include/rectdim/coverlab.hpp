#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rectdim/applications.hpp"
#include "rectdim/dimcore.hpp"

namespace rectdim::cover {

struct RectangleSpec {
  std::vector<double> sides;  // side lengths in (0,1]
  void validate() const;
};

// One construction level: shrunk rectangles at scale r with per-direction
// big-ball counts T_k (log_counts holds log T_k; empty selects the default
// T_k = r^{-a_k delta_k}).
struct LevelSpec {
  core::ProductSpaceSpec space;
  core::ExponentProfile profile;
  double r = 0.5;
  std::vector<double> log_counts;

  void validate() const;
  double log_count(int k) const;
};

// Union of disjoint closed intervals [num_lo/den, num_hi/den] in [0,1],
// sorted, with exact integer endpoints over a common denominator.
struct DirectionUnion {
  long long den = 1;
  std::vector<std::pair<long long, long long>> iv;
  long long pre_merge_count = 0;  // interval count before merging
};

struct ProductIntervalUnion {
  std::vector<DirectionUnion> dirs;
};

struct GridCount {
  std::vector<long long> per_direction;  // -1 when carried in log space only
  double log_total = 0.0;
};

double singular_cover_cost(const RectangleSpec& rect, double s);

// log of the modeled number of radius-r^A balls covering the level
double cover_count(const LevelSpec& level, double A);

// smallest s at which the alphabet-optimal cover cost of the deepest level
// turns negative (log scale); bisection to tol
double critical_exponent(const std::vector<LevelSpec>& levels, double s_lo, double s_hi,
                         double tol = 1e-6);

// Level-n shrinking-target set: per direction the union over digit words v of
// [x(v) - h, x(v) + h] with h = b^{-n} (q/p)^n for e^{t} = p/q >= 1, clipped to
// [0,1] and merged exactly. anchors holds x_o digit strings (empty: x_o = 0).
ProductIntervalUnion build_shrinking_level(
    const std::vector<apps::CantorAxisSpec>& axes,
    const std::vector<std::vector<int>>& anchors,
    const std::vector<std::pair<long long, long long>>& et, int n);

// plain level-m cylinder union of the axis' Cantor set
DirectionUnion cantor_cylinders(const apps::CantorAxisSpec& axis, int m);

DirectionUnion intersect(const DirectionUnion& x, const DirectionUnion& y);

// number of grid cells [j*eps, (j+1)*eps), j in [0, ceil(1/eps)-1], meeting
// each direction's union; product reported in log space
GridCount grid_count(const ProductIntervalUnion& u, double eps);

struct EmpiricalLevelRow {
  int n = 0;
  double A = 0.0;
  double eps = 0.0;
  double log_count = 0.0;  // refined grid count, log
  double cost = 0.0;       // log_count + s * log(eps) at the reference s
};

struct EmpiricalExponentReport {
  std::vector<int> n_values;
  std::vector<double> raw_sequence;  // per-level root of min_eps N(eps) eps^s = 1
  double last_raw = 0.0;
  double regression_estimate = 0.0;  // slope of log N vs -log eps at per-level argmin
  double value = 0.0;                // headline estimate (regression)
  double reference_s = 0.0;          // compute_s for the instance
  std::vector<double> model_argmin_steps;   // grid-step distance to nearest alphabet A
  std::vector<double> oracle_argmin_steps;  // same for the raw grid-count cost
  std::vector<EmpiricalLevelRow> rows;
};

// Box-counting oracle over levels n_from..n_to with the eps grid
// {e^{-nA}: A spanning the alphabet range in grid_steps steps}. Counts are
// refined per direction by descending to the cylinder level matching eps
// before counting, so sub-cylinder structure is resolved.
EmpiricalExponentReport empirical_critical_exponent(
    const std::vector<apps::CantorAxisSpec>& axes,
    const std::vector<std::pair<long long, long long>>& et, int n_from, int n_to,
    int grid_steps = 64);

}  // namespace rectdim::cover
