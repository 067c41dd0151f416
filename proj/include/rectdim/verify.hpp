#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rectdim/applications.hpp"

namespace rectdim::verify {

enum class SystemKind { Simultaneous, LinearForms, Shrinking };
enum class RhoKind { InversePower, Exponential };  // u -> 1/u resp. u -> e^{-u}

struct UbiquitySystemSpec {
  SystemKind kind = SystemKind::Simultaneous;
  int m = 1;
  int n = 1;  // linear forms only
  std::vector<double> a;
  std::vector<apps::CantorAxisSpec> axes;  // shrinking only
  long long M = 32;
  RhoKind rho = RhoKind::InversePower;

  void validate() const;
  int dim() const;  // ambient dimension of the sampled space
  // level window: (M^{k-1}, M^k) for simultaneous/linear, (k, k) for shrinking
  std::pair<double, double> level_range(int k) const;
  double rho_of(double u) const;
  // the proof's smallness condition at (k, ball radius)
  bool admissible(int k, double ball_radius) const;
};

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

enum class CoverageMethod { Exact1D, MonteCarlo };

struct CoverageReport {
  double fraction = 0.0;
  double stderr_est = 0.0;
  int level = 0;
  double l_k = 0.0, u_k = 0.0;
  CoverageMethod method = CoverageMethod::Exact1D;
  bool degenerate = false;
  bool admissible = false;
  bool literal_radius = false;
  long long samples = 0;
};

// fraction of the ball covered by the level-k neighborhoods
// Delta(R_alpha, M * rho(u_k)^{a_i}); literal_radius drops the M inflation
CoverageReport ubiquity_coverage(const UbiquitySystemSpec& spec, const Ball& ball, int k,
                                 CoverageMethod method, long long samples = 10000,
                                 std::uint64_t seed = 1, int threads = 1,
                                 bool literal_radius = false);

enum class NodeKind { Big, Shrunk, Ball };

struct Rat {
  long long num = 0;
  long long den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct TreeNode {
  int id = 0;
  int parent = -1;
  NodeKind kind = NodeKind::Ball;
  int level = 0;  // construction level; root ball is level 0
  std::vector<Rat> center;
  std::vector<Rat> radii;
  double mu = 0.0;
  std::vector<int> children;
};

struct TreeBudget {
  long long max_nodes = 5000000;
};

struct MassTree {
  std::vector<apps::CantorAxisSpec> axes;
  std::vector<std::pair<long long, long long>> et;  // e^{t_i} = p/q per axis
  std::vector<int> schedule;                        // n_k per level
  std::vector<TreeNode> nodes;                      // nodes[0] is the root ball
  std::vector<int> leaves;                          // ids of deepest-level balls

  std::vector<long long> per_level_balls;
  std::vector<double> division_ratio_min, division_ratio_max;  // count/formula
  long long anchor_fallbacks = 0;
  double conservation_error = 0.0;  // set by assign_mass
  bool geometry_ok = false;
  double leaf_radius = 0.0;
};

// kappa = 0 shrinking-target construction: per level, big rectangles are the
// level-n_k cylinder products meeting the inner half of the parent ball, each
// carrying one shrunk rectangle (cylinder clipped around the anchored inverse
// image) divided into balls of the smallest shrunk half-width, greedily spaced
// more than 6x the ball radius apart.
MassTree build_mass_tree(const std::vector<apps::CantorAxisSpec>& axes,
                         const std::vector<std::pair<long long, long long>>& et,
                         const std::vector<int>& schedule, const TreeBudget& budget = {});

void assign_mass(MassTree& tree);

struct HolderBucket {
  double log_r = 0.0;
  double log_ratio = 0.0;
};

struct HolderReport {
  double s = 0.0;
  double epsilon = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double slope = 0.0;      // of log max-ratio vs log r across radius buckets
  double max_ratio = 0.0;  // max over samples of mu(B(x,r))/r^s
  bool pass = false;       // slope >= -epsilon
  std::vector<HolderBucket> buckets;
};

HolderReport holder_test(const MassTree& tree, double s, double epsilon, int samples,
                         std::uint64_t seed, int threads = 1);

// mu(B(x, r)) by traversal (leaf balls intersecting the product ball)
double tree_ball_mass(const MassTree& tree, const std::vector<double>& center, double r);

std::string tree_to_json(const MassTree& tree);

}  // namespace rectdim::verify
