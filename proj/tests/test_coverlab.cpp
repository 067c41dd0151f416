#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "rectdim/coverlab.hpp"
#include "rectdim/errors.hpp"

using namespace rectdim;
using namespace rectdim::cover;

namespace {

apps::CantorAxisSpec axis(int base, std::vector<int> digits = {}) {
  apps::CantorAxisSpec ax;
  ax.base = base;
  ax.digits = std::move(digits);
  return ax;
}

LevelSpec worked_level(double r) {
  LevelSpec lv;
  lv.space.d = 2;
  lv.space.deltas = {1.0, 1.0};
  lv.space.kappa = 0.0;
  lv.profile.a = {2.0, 1.0};
  lv.profile.t = {2.0, 0.5};
  lv.r = r;
  return lv;
}

}  // namespace

TEST_CASE("singular cover cost") {
  RectangleSpec rect;
  rect.sides = {0.5, 0.125};
  const double expect = 0.5 * std::sqrt(0.125);  // keep the long side, split the short
  CHECK(singular_cover_cost(rect, 1.5) == doctest::Approx(expect).epsilon(1e-14));

  RectangleSpec swapped;
  swapped.sides = {0.125, 0.5};  // order does not matter
  CHECK(singular_cover_cost(swapped, 1.5) == doctest::Approx(expect).epsilon(1e-14));

  // s = d counts volume, s = 0 counts one box
  CHECK(singular_cover_cost(rect, 2.0) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(singular_cover_cost(rect, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(singular_cover_cost(rect, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(singular_cover_cost(rect, -0.1), std::invalid_argument);
  RectangleSpec bad;
  bad.sides = {1.5};
  CHECK_THROWS_AS(singular_cover_cost(bad, 0.5), std::invalid_argument);
}

TEST_CASE("modeled cover count") {
  const LevelSpec lv = worked_level(std::exp(-1.0));
  CHECK(cover_count(lv, 1.5) == doctest::Approx(2.5).epsilon(1e-13));

  // saturated regime on both directions
  CHECK(cover_count(lv, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  // both shrunk sides resolved
  CHECK(cover_count(lv, 4.0) == doctest::Approx(3.0 + 2.5).epsilon(1e-13));

  // custom big-ball budgets replace the default r^{-a delta}
  LevelSpec custom = worked_level(std::exp(-1.0));
  custom.log_counts = {2.0, 0.5};
  CHECK(cover_count(custom, 1.5) == doctest::Approx(1.5 + 0.5).epsilon(1e-13));

  // non-decreasing in A
  double prev = 0.0;
  for (double A = 0.25; A <= 5.0; A += 0.25) {
    const double cur = cover_count(lv, A);
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("critical exponent by bisection") {
  LevelSpec lv;
  lv.space.d = 1;
  lv.space.deltas = {1.0};
  lv.space.kappa = 0.0;
  lv.profile.a = {1.0};
  lv.profile.t = {1.0};
  lv.r = 1e-3;
  CHECK(critical_exponent({lv}, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-5));

  // worked 2d instance: zero of min_A (cover_count(A) - s A L)
  LevelSpec two = worked_level(1e-4);
  const double s = critical_exponent({two}, 0.0, 2.0);
  CHECK(s == doctest::Approx(1.375).epsilon(1e-5));

  // the deepest level decides
  LevelSpec shallow = worked_level(0.5);
  CHECK(critical_exponent({shallow, two}, 0.0, 2.0) == doctest::Approx(s).epsilon(1e-6));

  CHECK_THROWS_AS(critical_exponent({lv}, 0.6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_exponent({}, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_exponent({lv}, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("cantor cylinders") {
  const DirectionUnion full = cantor_cylinders(axis(2), 2);
  CHECK(full.iv.size() == 1);  // full digit set short-circuits to [0,1]
  CHECK(full.iv[0].first == 0);
  CHECK(full.iv[0].second == full.den);

  const DirectionUnion sparse = cantor_cylinders(axis(3, {0, 2}), 2);
  CHECK(sparse.den == 9);
  REQUIRE(sparse.iv.size() == 4);
  CHECK(sparse.iv[0] == std::pair<long long, long long>(0, 1));
  CHECK(sparse.iv[1] == std::pair<long long, long long>(2, 3));
  CHECK(sparse.iv[2] == std::pair<long long, long long>(6, 7));
  CHECK(sparse.iv[3] == std::pair<long long, long long>(8, 9));
}

TEST_CASE("interval intersection") {
  const DirectionUnion a = cantor_cylinders(axis(3, {0, 2}), 1);  // [0,1/3] u [2/3,1]
  const DirectionUnion b = cantor_cylinders(axis(3, {0, 1}), 1);  // [0,2/3]
  const DirectionUnion c = intersect(a, b);
  REQUIRE(c.iv.size() == 2);
  const double den = static_cast<double>(c.den);
  CHECK(c.iv[0].first / den == doctest::Approx(0.0));
  CHECK(c.iv[0].second / den == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c.iv[1].first / den == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(c.iv[1].second / den == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("shrinking level unions") {
  // base 2, e^t = 2: h = 4^{-n}, anchors at the dyadic grid
  const auto u = build_shrinking_level({axis(2)}, {}, {{2, 1}}, 2);
  REQUIRE(u.dirs.size() == 1);
  const DirectionUnion& du = u.dirs[0];
  CHECK(du.pre_merge_count == 4);
  REQUIRE(du.iv.size() == 4);
  const double den = static_cast<double>(du.den);
  CHECK(du.iv[0].first / den == doctest::Approx(0.0));  // clipped at the left edge
  CHECK(du.iv[0].second / den == doctest::Approx(1.0 / 16).epsilon(1e-15));
  CHECK(du.iv[1].first / den == doctest::Approx(0.25 - 1.0 / 16).epsilon(1e-15));
  CHECK(du.iv[1].second / den == doctest::Approx(0.25 + 1.0 / 16).epsilon(1e-15));

  // t = 0: windows of one cylinder length around each anchor; neighbours merge
  const auto flat = build_shrinking_level({axis(3, {0, 2})}, {}, {{1, 1}}, 2);
  REQUIRE(flat.dirs[0].iv.size() == 2);
  const double fden = static_cast<double>(flat.dirs[0].den);
  CHECK(flat.dirs[0].iv[0].second / fden == doctest::Approx(3.0 / 9.0).epsilon(1e-15));
  CHECK(flat.dirs[0].iv[1].first / fden == doctest::Approx(5.0 / 9.0).epsilon(1e-15));

  // explicit anchor digits move the targets
  const auto moved = build_shrinking_level({axis(2)}, {{1}}, {{2, 1}}, 1);
  const DirectionUnion& mv = moved.dirs[0];
  const double mden = static_cast<double>(mv.den);
  // x_o = 1/2, inverse images {1/4, 3/4} at level 1, h = 1/4: [0,1/2] u [1/2,1]
  CHECK(mv.iv.front().first / mden == doctest::Approx(0.0));
  CHECK(mv.iv.back().second / mden == doctest::Approx(1.0));
}

TEST_CASE("grid counts") {
  const auto u = build_shrinking_level({axis(2)}, {}, {{2, 1}}, 2);
  const GridCount g16 = grid_count(u, 1.0 / 16.0);
  CHECK(g16.per_direction[0] == 11);
  CHECK(g16.log_total == doctest::Approx(std::log(11.0)).epsilon(1e-13));

  // refining the grid never lowers the count
  long long prev = 0;
  for (int k = 2; k <= 10; ++k) {
    const GridCount g = grid_count(u, std::pow(2.0, -k));
    CHECK(g.per_direction[0] >= prev);
    prev = g.per_direction[0];
  }

  // ... and eps below the gap structure resolves each window
  const GridCount fine = grid_count(u, 1.0 / 256.0);
  CHECK(fine.per_direction[0] == 17 + 3 * 33);  // clipped window + three full ones

  ProductIntervalUnion prod;
  prod.dirs = {u.dirs[0], u.dirs[0]};
  const GridCount g2 = grid_count(prod, 1.0 / 16.0);
  CHECK(g2.log_total == doctest::Approx(2.0 * std::log(11.0)).epsilon(1e-13));

  CHECK_THROWS_AS(grid_count(u, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(grid_count(u, 1.5), std::invalid_argument);
}

TEST_CASE("box counting oracle smoke") {
  const auto rep = empirical_critical_exponent({axis(2), axis(3, {0, 2})},
                                               {{2, 1}, {1, 1}}, 4, 6, 16);
  CHECK(rep.reference_s == doctest::Approx(1.1309297535714573).epsilon(1e-12));
  REQUIRE(rep.n_values.size() == 3);
  REQUIRE(rep.raw_sequence.size() == 3);
  CHECK(rep.last_raw == rep.raw_sequence.back());
  CHECK(rep.value == rep.regression_estimate);
  CHECK(std::abs(rep.value - rep.reference_s) < 0.25);
  CHECK(rep.rows.size() == 3 * 16);
  for (const auto& row : rep.rows) {
    CHECK(row.eps > 0.0);
    CHECK(row.eps < 1.0);
    CHECK(std::isfinite(row.cost));
  }
  // the modeled optimum sits on the alphabet for this instance
  for (double steps : rep.model_argmin_steps) CHECK(steps <= 1.0);
}

TEST_CASE("oracle rejects bad input") {
  CHECK_THROWS_AS(empirical_critical_exponent({axis(2)}, {{2, 1}}, 0, 4, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(empirical_critical_exponent({axis(2)}, {{2, 1}}, 4, 3, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(empirical_critical_exponent({axis(2)}, {{1, 2}}, 4, 6, 16),
                  std::invalid_argument);  // e^t < 1
  CHECK_THROWS_AS(empirical_critical_exponent({axis(2)}, {{2, 1}, {1, 1}}, 4, 6, 16),
                  std::invalid_argument);
}
