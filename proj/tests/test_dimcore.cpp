#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "rectdim/dimcore.hpp"

using namespace rectdim::core;

namespace {

ProductSpaceSpec space1(double delta, double kappa = 0.0) {
  ProductSpaceSpec s;
  s.d = 1;
  s.deltas = {delta};
  s.kappa = kappa;
  return s;
}

ProductSpaceSpec euclidean(int d) {
  ProductSpaceSpec s;
  s.d = d;
  s.deltas.assign(d, 1.0);
  s.kappa = 0.0;
  return s;
}

ExponentProfile profile(std::vector<double> a, std::vector<double> t) {
  ExponentProfile p;
  p.a = std::move(a);
  p.t = std::move(t);
  return p;
}

}  // namespace

TEST_CASE("alphabet collects side exponents") {
  const Alphabet alpha = build_alphabet(profile({2.0}, {1.0}));
  REQUIRE(alpha.entries == std::vector<double>{2.0, 3.0});
  REQUIRE(alpha.hat_entries == std::vector<double>{3.0});

  const Alphabet dup = build_alphabet(profile({2.0, 1.0}, {0.0, 1.0}));
  REQUIRE(dup.entries == std::vector<double>{1.0, 2.0});  // deduplicated
  REQUIRE(dup.hat_entries == std::vector<double>{2.0});
}

TEST_CASE("partition splits directions around A") {
  const ExponentProfile p = profile({2.0, 1.0}, {2.0, 0.5});
  const Partition part = partition_for(1.5, p);
  REQUIRE(part.k1 == std::vector<int>{0});
  REQUIRE(part.k2 == std::vector<int>{1});
  REQUIRE(part.k3.empty());

  const Partition low = partition_for(1.0, p);
  REQUIRE(low.k1 == std::vector<int>{0, 1});

  const Partition high = partition_for(4.0, p);
  REQUIRE(high.k1.empty());
  REQUIRE(high.k2 == std::vector<int>{0, 1});
}

TEST_CASE("worked example: full candidate table") {
  const ExponentProfile p = profile({2.0, 1.0}, {2.0, 0.5});
  const DimensionReport rep = compute_s(euclidean(2), p);

  REQUIRE(rep.table.size() == 4);
  CHECK(rep.table[0].A == 1.0);
  CHECK(rep.table[1].A == 1.5);
  CHECK(rep.table[2].A == 2.0);
  CHECK(rep.table[3].A == 4.0);
  CHECK(rep.table[0].value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rep.table[1].value == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(rep.table[2].value == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(rep.table[3].value == doctest::Approx(1.375).epsilon(1e-14));

  CHECK(rep.value == doctest::Approx(1.375).epsilon(1e-14));
  CHECK(rep.argmin == 4.0);
  CHECK(rep.partition.k2 == std::vector<int>{0, 1});
}

TEST_CASE("one dimensional closed form") {
  // s = delta (kappa + (1-kappa) a / (a+t))
  const DimensionReport r1 = compute_s(space1(1.0), profile({2.0}, {1.0}));
  CHECK(r1.value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  const double c2 = candidate_dim(4.0, space1(2.0, 0.5), profile({3.0}, {1.0}));
  CHECK(c2 == doctest::Approx(1.75).epsilon(1e-14));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double delta = 0.1 + 2.9 * U(rng);
    const double kappa = 0.9 * U(rng);
    const double a = 0.1 + 4.9 * U(rng);
    const double t = 5.0 * U(rng);
    const double expect = delta * (kappa + (1.0 - kappa) * a / (a + t));
    const DimensionReport rep = compute_s(space1(delta, kappa), profile({a}, {t}));
    CHECK(rep.value == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("t = 0 gives the ambient dimension") {
  const DimensionReport rep = compute_s(euclidean(3), profile({2.0, 1.0, 0.5}, {0, 0, 0}));
  CHECK(rep.value == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(rep.argmin == 0.5);  // ties resolved to the smallest A
}

TEST_CASE("hat restriction agrees with the full minimum") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + static_cast<int>(6 * U(rng)) % 6;
    ProductSpaceSpec space;
    space.d = d;
    space.kappa = 0.9 * U(rng);
    ExponentProfile p;
    for (int k = 0; k < d; ++k) {
      space.deltas.push_back(0.05 + 2.95 * U(rng));
      p.a.push_back(0.05 + 4.95 * U(rng));
      p.t.push_back(5.0 * U(rng));
    }
    const DimensionReport full = compute_s(space, p);
    const DimensionReport hat = compute_s_hat(space, p);
    CHECK(std::abs(full.value - hat.value) <= 1e-12);
    CHECK(hat.table.size() <= full.table.size());
  }
}

TEST_CASE("tie policies only move boundary indices, never the value") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const int d = 1 + static_cast<int>(4 * U(rng)) % 4;
    ProductSpaceSpec space;
    space.d = d;
    space.kappa = 0.9 * U(rng);
    ExponentProfile p;
    for (int k = 0; k < d; ++k) {
      space.deltas.push_back(0.05 + 2.95 * U(rng));
      // small integer exponents force ties between alphabet entries
      p.a.push_back(1.0 + static_cast<int>(3 * U(rng)) % 3);
      p.t.push_back(static_cast<int>(3 * U(rng)) % 3);
    }
    const double v0 = compute_s(space, p, TiePolicy::Default).value;
    const double v1 = compute_s(space, p, TiePolicy::StrictK1).value;
    const double v2 = compute_s(space, p, TiePolicy::MergeEqualIntoK2).value;
    CHECK(std::abs(v0 - v1) <= 1e-12);
    CHECK(std::abs(v0 - v2) <= 1e-12);
  }
}

TEST_CASE("scaling a and t together leaves the value unchanged") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const int d = 1 + static_cast<int>(5 * U(rng)) % 5;
    ProductSpaceSpec space;
    space.d = d;
    space.kappa = 0.9 * U(rng);
    ExponentProfile p;
    for (int k = 0; k < d; ++k) {
      space.deltas.push_back(0.05 + 2.95 * U(rng));
      p.a.push_back(0.05 + 4.95 * U(rng));
      p.t.push_back(5.0 * U(rng));
    }
    const double c = 0.1 + 9.9 * U(rng);
    ExponentProfile scaled = p;
    for (int k = 0; k < d; ++k) {
      scaled.a[k] *= c;
      scaled.t[k] *= c;
    }
    const double v = compute_s(space, p).value;
    const double vc = compute_s(space, scaled).value;
    CHECK(std::abs(v - vc) <= 1e-10 * std::max(1.0, v));
  }
}

TEST_CASE("monotone in t") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const int d = 1 + static_cast<int>(4 * U(rng)) % 4;
    ProductSpaceSpec space;
    space.d = d;
    space.kappa = 0.9 * U(rng);
    ExponentProfile p;
    for (int k = 0; k < d; ++k) {
      space.deltas.push_back(0.05 + 2.95 * U(rng));
      p.a.push_back(0.05 + 4.95 * U(rng));
      p.t.push_back(5.0 * U(rng));
    }
    ExponentProfile q = p;
    for (int k = 0; k < d; ++k) q.t[k] += 3.0 * U(rng);
    CHECK(compute_s(space, q).value <= compute_s(space, p).value + 1e-12);
  }
}

TEST_CASE("sup over candidates picks the first maximizer") {
  const ProductSpaceSpec space = euclidean(1);
  const std::vector<ExponentProfile> cands = {
      profile({1.0}, {1.0}),  // 1/2
      profile({2.0}, {1.0}),  // 2/3
      profile({4.0}, {2.0}),  // 2/3 again
  };
  const auto [value, idx] = sup_over_candidates(space, cands);
  CHECK(value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(idx == 1);
}

TEST_CASE("validation rejects malformed input") {
  CHECK_THROWS_AS(compute_s(euclidean(0), profile({}, {})), std::invalid_argument);
  CHECK_THROWS_AS(compute_s(euclidean(2), profile({1.0}, {1.0})), std::invalid_argument);

  ProductSpaceSpec bad_kappa = euclidean(1);
  bad_kappa.kappa = 1.0;
  CHECK_THROWS_AS(compute_s(bad_kappa, profile({1.0}, {1.0})), std::invalid_argument);

  ProductSpaceSpec bad_delta = euclidean(1);
  bad_delta.deltas = {-1.0};
  CHECK_THROWS_AS(compute_s(bad_delta, profile({1.0}, {1.0})), std::invalid_argument);

  CHECK_THROWS_AS(compute_s(euclidean(1), profile({0.0}, {1.0})), std::invalid_argument);
  CHECK_THROWS_AS(compute_s(euclidean(1), profile({1.0}, {-0.5})), std::invalid_argument);
}
