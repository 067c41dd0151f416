#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "rectdim/errors.hpp"
#include "rectdim/verify.hpp"

using namespace rectdim;
using namespace rectdim::verify;

namespace {

apps::CantorAxisSpec axis(int base, std::vector<int> digits = {}) {
  apps::CantorAxisSpec ax;
  ax.base = base;
  ax.digits = std::move(digits);
  return ax;
}

UbiquitySystemSpec sim1(double a = 2.0, long long M = 32) {
  UbiquitySystemSpec spec;
  spec.kind = SystemKind::Simultaneous;
  spec.m = 1;
  spec.a = {a};
  spec.M = M;
  return spec;
}

Ball unit_ball(int d) {
  Ball b;
  b.center.assign(d, 0.5);
  b.radius = 0.5;
  return b;
}

MassTree worked_tree(std::vector<int> schedule) {
  return build_mass_tree({axis(2), axis(3, {0, 2})}, {{2, 1}, {1, 1}}, schedule);
}

}  // namespace

TEST_CASE("ubiquity spec validation and geometry") {
  UbiquitySystemSpec spec = sim1();
  spec.validate();
  CHECK(spec.dim() == 1);
  CHECK(spec.level_range(2) == std::pair<double, double>(32.0, 1024.0));
  CHECK(spec.rho_of(4.0) == doctest::Approx(0.25).epsilon(1e-15));

  UbiquitySystemSpec small = sim1(2.0, 16);  // M below 2^{3m+2}
  CHECK_THROWS_AS(small.validate(), std::invalid_argument);

  UbiquitySystemSpec lin;
  lin.kind = SystemKind::LinearForms;
  lin.m = 1;
  lin.n = 2;
  lin.a = {3.0};
  lin.M = 16;  // threshold 2^{2m+1} n^m = 16
  lin.validate();
  CHECK(lin.dim() == 2);
  lin.M = 8;
  CHECK_THROWS_AS(lin.validate(), std::invalid_argument);

  UbiquitySystemSpec shr;
  shr.kind = SystemKind::Shrinking;
  shr.axes = {axis(2), axis(3, {0, 2})};
  shr.rho = RhoKind::Exponential;
  shr.validate();
  CHECK(shr.dim() == 2);
  CHECK(shr.level_range(3) == std::pair<double, double>(3.0, 3.0));
  CHECK(shr.rho_of(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("level admissibility thresholds") {
  const UbiquitySystemSpec spec = sim1();
  CHECK_FALSE(spec.admissible(1, 0.5));
  CHECK(spec.admissible(2, 0.5));   // 2 * 3^2 * 2 log 32 / 32^2 <= 1/8
  CHECK_FALSE(spec.admissible(2, 0.4));
  CHECK(spec.admissible(3, 0.03));
  CHECK_FALSE(spec.admissible(3, 0.02));
}

TEST_CASE("exact rational sweep: frozen coverage fractions") {
  const UbiquitySystemSpec spec = sim1();
  const CoverageReport rep =
      ubiquity_coverage(spec, unit_ball(1), 2, CoverageMethod::Exact1D);
  CHECK(rep.method == CoverageMethod::Exact1D);
  CHECK(rep.l_k == 32.0);
  CHECK(rep.u_k == 1024.0);
  CHECK(rep.admissible);
  CHECK(rep.fraction == doctest::Approx(0.990456).epsilon(2e-5));

  const CoverageReport lit = ubiquity_coverage(spec, unit_ball(1), 2,
                                               CoverageMethod::Exact1D, 10000, 1, 1,
                                               /*literal_radius=*/true);
  CHECK(lit.literal_radius);
  CHECK(lit.fraction == doctest::Approx(0.567734).epsilon(2e-5));
  CHECK(lit.fraction < rep.fraction);

  // sub-ball coverage stays high
  Ball sub;
  sub.center = {0.3};
  sub.radius = 0.1;
  const CoverageReport subrep = ubiquity_coverage(spec, sub, 2, CoverageMethod::Exact1D);
  CHECK(subrep.fraction >= 0.9);
  CHECK(subrep.fraction <= 1.0);
}

TEST_CASE("monte carlo simultaneous coverage") {
  UbiquitySystemSpec spec;
  spec.kind = SystemKind::Simultaneous;
  spec.m = 2;
  spec.a = {1.5, 1.5};
  spec.M = 256;

  // radius M rho(u_1)^{1.5} = 1/16, so q = 16 alone covers everything
  const CoverageReport full =
      ubiquity_coverage(spec, unit_ball(2), 1, CoverageMethod::MonteCarlo, 2000, 7);
  CHECK(full.fraction == 1.0);
  CHECK(full.samples == 2000);

  UbiquitySystemSpec sparse = spec;
  sparse.a = {3.0, 3.0};
  const CoverageReport thin =
      ubiquity_coverage(sparse, unit_ball(2), 1, CoverageMethod::MonteCarlo, 2000, 7);
  CHECK(thin.fraction < 0.2);
  CHECK(thin.stderr_est >= 0.0);

  // same seed, same estimate; exact method is unavailable for m >= 2
  const CoverageReport again =
      ubiquity_coverage(sparse, unit_ball(2), 1, CoverageMethod::MonteCarlo, 2000, 7);
  CHECK(again.fraction == thin.fraction);
  CHECK_THROWS_AS(ubiquity_coverage(spec, unit_ball(2), 1, CoverageMethod::Exact1D),
                  std::invalid_argument);
}

TEST_CASE("monte carlo linear forms coverage") {
  UbiquitySystemSpec spec;
  spec.kind = SystemKind::LinearForms;
  spec.m = 1;
  spec.n = 2;
  spec.a = {3.0};
  spec.M = 32;

  const CoverageReport rep =
      ubiquity_coverage(spec, unit_ball(2), 1, CoverageMethod::MonteCarlo, 2000, 3);
  CHECK(rep.fraction > 0.5);
  CHECK(rep.fraction <= 1.0);
  CHECK_THROWS_AS(ubiquity_coverage(spec, unit_ball(2), 1, CoverageMethod::Exact1D),
                  std::invalid_argument);
}

TEST_CASE("shrinking systems cover everything at every level") {
  UbiquitySystemSpec spec;
  spec.kind = SystemKind::Shrinking;
  spec.axes = {axis(2), axis(3, {0, 2})};
  spec.rho = RhoKind::Exponential;
  const CoverageReport rep =
      ubiquity_coverage(spec, unit_ball(2), 3, CoverageMethod::MonteCarlo);
  CHECK(rep.fraction == 1.0);
  CHECK(rep.admissible);
}

TEST_CASE("coverage input validation") {
  const UbiquitySystemSpec spec = sim1();
  Ball wrong_dim;
  wrong_dim.center = {0.5, 0.5};
  wrong_dim.radius = 0.25;
  CHECK_THROWS_AS(ubiquity_coverage(spec, wrong_dim, 2, CoverageMethod::Exact1D),
                  std::invalid_argument);

  Ball outside;
  outside.center = {0.9};
  outside.radius = 0.3;
  CHECK_THROWS_AS(ubiquity_coverage(spec, outside, 2, CoverageMethod::Exact1D),
                  std::invalid_argument);

  CHECK_THROWS_AS(ubiquity_coverage(spec, unit_ball(1), 0, CoverageMethod::Exact1D),
                  std::invalid_argument);

  Ball point;
  point.center = {0.5};
  point.radius = 0.0;
  const CoverageReport degen = ubiquity_coverage(spec, point, 2, CoverageMethod::Exact1D);
  CHECK(degen.degenerate);
}

TEST_CASE("mass tree construction") {
  const MassTree tree = worked_tree({4, 6});
  REQUIRE(tree.per_level_balls.size() == 2);
  CHECK(tree.per_level_balls[0] == 60);
  CHECK(tree.per_level_balls[1] == 120);
  CHECK(tree.leaves.size() == 120);
  CHECK(tree.geometry_ok);
  CHECK(tree.leaf_radius == 1.0 / 4096.0);
  CHECK(tree.anchor_fallbacks == 180);  // window degenerates to a point on axis one
  CHECK(tree.division_ratio_min[0] == doctest::Approx(0.483830).epsilon(2e-4));
  CHECK(tree.division_ratio_max[0] == doctest::Approx(0.483830).epsilon(2e-4));
  CHECK(tree.nodes[0].kind == NodeKind::Ball);
  CHECK(tree.nodes[0].mu == 0.0);  // mass not assigned yet
}

TEST_CASE("mass assignment conserves mass") {
  MassTree tree = worked_tree({4, 6});
  assign_mass(tree);
  CHECK(tree.nodes[0].mu == 1.0);
  CHECK(tree.conservation_error <= 1e-12);
  double leaf_sum = 0.0;
  for (int id : tree.leaves) leaf_sum += tree.nodes[id].mu;
  CHECK(leaf_sum == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(tree_ball_mass(tree, {0.5, 0.5}, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double corner = tree_ball_mass(tree, {0.01, 0.01}, 0.02);
  CHECK(corner >= 0.0);
  CHECK(corner < 0.5);
}

TEST_CASE("holder scaling test separates admissible exponents") {
  MassTree tree = worked_tree({4, 6});
  assign_mass(tree);

  const HolderReport low = holder_test(tree, 0.3, 0.85, 4000, 11);
  CHECK(low.pass);
  CHECK(low.max_ratio > 0.0);
  CHECK_FALSE(low.buckets.empty());

  const HolderReport high = holder_test(tree, 3.0, 0.85, 4000, 11);
  CHECK_FALSE(high.pass);
  CHECK(high.slope < low.slope);

  CHECK_THROWS_AS(holder_test(tree, -1.0, 0.85, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(holder_test(tree, 1.0, 0.85, 0, 1), std::invalid_argument);
}

TEST_CASE("tree serialization") {
  MassTree tree = worked_tree({4});
  assign_mass(tree);
  const std::string json = tree_to_json(tree);
  const auto doc = nlohmann::json::parse(json);
  CHECK(doc.at("kind") == "mass_tree");
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("nodes").size() == tree.nodes.size());
  CHECK(doc.at("per_level_balls")[0] == 60);
  CHECK(doc.at("axes")[0].at("base") == 2);
  CHECK(doc.at("nodes")[0].at("kind") == "ball");
}

TEST_CASE("tree construction validation and budget") {
  CHECK_THROWS_AS(build_mass_tree({axis(3, {1, 2}), axis(2)}, {{1, 1}, {1, 1}}, {4}),
                  std::invalid_argument);  // sparse axis needs digit 0
  CHECK_THROWS_AS(worked_tree({3}), std::invalid_argument);       // first level too shallow
  CHECK_THROWS_AS(worked_tree({4, 5}), std::invalid_argument);    // step below 2
  CHECK_THROWS_AS(worked_tree({}), std::invalid_argument);
  CHECK_THROWS_AS(build_mass_tree({axis(2)}, {{1, 2}}, {4}), std::invalid_argument);
  CHECK_THROWS_AS(build_mass_tree({axis(2)}, {{2, 1}, {1, 1}}, {4}),
                  std::invalid_argument);

  TreeBudget tiny;
  tiny.max_nodes = 10;
  CHECK_THROWS_AS(build_mass_tree({axis(2), axis(3, {0, 2})}, {{2, 1}, {1, 1}}, {4, 6},
                                  tiny),
                  budget_error);
}
