#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "qmgeo/metric_space.hpp"
#include "qmgeo/transforms.hpp"

using namespace qmgeo;

namespace {

FiniteMetricSpace line_points(std::vector<double> xs) {
  return FiniteMetricSpace::from_points(std::move(xs), 1, AmbientKind::Euclidean);
}

std::vector<double> random_cloud(std::mt19937_64& rng, int n, int dim) {
  auto unit = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
  std::vector<double> pts;
  for (int i = 0; i < n * dim; ++i) pts.push_back(2.0 * unit() - 1.0);
  return pts;
}

}  // namespace

TEST_CASE("inversion weights follow the reciprocal formula") {
  // X = {0, 1, 2, 4} on the line, invert at 0
  FiniteMetricSpace s = line_points({0.0, 1.0, 2.0, 4.0});
  TransformedSpace t = invert(s, 0);
  CHECK(t.kind == TransformKind::Invert);
  CHECK(t.n == 3);
  CHECK(t.infinity_index == -1);
  int i1 = t.index_of_source(1), i2 = t.index_of_source(2), i4 = t.index_of_source(3);
  REQUIRE(i1 >= 0);
  REQUIRE(i4 >= 0);
  CHECK(t.index_of_source(0) == -1);  // the base point is removed

  // f_0(x,y) = |x-y| / (|x| |y|), which on the line is |1/x - 1/y|
  CHECK(t.base_at(i1, i4) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(t.base_at(i1, i2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.base_at(i2, i4) == doctest::Approx(0.25).epsilon(1e-15));

  // Euclidean inversion is itself a metric (the pullback under x -> x/|x|^2),
  // so chaining cannot shorten anything
  CHECK(t.chain_at(i1, i4) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(t.chain_at(i1, i2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("inversion keeps a point at infinity only for unbounded sources") {
  FiniteMetricSpace s = line_points({0.0, 1.0, 2.0});
  TransformedSpace t = invert(s, 0, true);
  REQUIRE(t.infinity_index >= 0);
  CHECK(t.labels[t.infinity_index] == -1);
  int i1 = t.index_of_source(1), i2 = t.index_of_source(2);
  CHECK(t.base_at(i1, t.infinity_index) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.base_at(i2, t.infinity_index) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.base_at(t.infinity_index, t.infinity_index) == 0.0);
}

TEST_CASE("sphericalization compresses large scales") {
  FiniteMetricSpace s = line_points({0.0, 1.0, 3.0});
  TransformedSpace t = sphericalize(s, 0);
  CHECK(t.n == 4);  // all points plus infinity
  REQUIRE(t.infinity_index >= 0);
  int i0 = t.index_of_source(0), i1 = t.index_of_source(1), i3 = t.index_of_source(2);

  // s_p(x,y) = d(x,y) / ((1+d(x,p))(1+d(y,p)))
  CHECK(t.base_at(i0, i1) == doctest::Approx(1.0 / 2.0).epsilon(1e-15));
  CHECK(t.base_at(i0, i3) == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
  CHECK(t.base_at(i1, i3) == doctest::Approx(2.0 / (2.0 * 4.0)).epsilon(1e-15));
  // s_p(x, infinity) = 1 / (1+d(x,p))
  CHECK(t.base_at(i0, t.infinity_index) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.base_at(i3, t.infinity_index) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("chains shorten triangle-violating base weights") {
  // three points plus a base point placed so the inversive weight of the far
  // pair is twice the two-hop route
  std::vector<double> d{
      0, 1, 2, 1,   // a
      1, 0, 1, 2,   // b
      2, 1, 0, 1,   // c
      1, 2, 1, 0};  // p
  FiniteMetricSpace s = FiniteMetricSpace::from_matrix(d, 4);
  REQUIRE(validate_metric(s).ok);
  TransformedSpace t = invert(s, 3);
  int a = t.index_of_source(0), b = t.index_of_source(1), c = t.index_of_source(2);
  CHECK(t.base_at(a, c) == doctest::Approx(2.0));
  CHECK(t.base_at(a, b) == doctest::Approx(0.5));
  CHECK(t.base_at(b, c) == doctest::Approx(0.5));
  // brute force over the four possible chains from a to c
  CHECK(t.chain_at(a, c) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.chain_at(a, c) >= 0.25 * t.base_at(a, c));
}

TEST_CASE("chain metric passes the metric axioms") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 6 + int(rng() % 20);
    FiniteMetricSpace s =
        FiniteMetricSpace::from_points(random_cloud(rng, n, 2), 2, AmbientKind::Euclidean);
    int p = int(rng() % n);
    for (bool spherical : {true, false}) {
      TransformedSpace t = spherical ? sphericalize(s, p) : invert(s, p);
      FiniteMetricSpace chain = FiniteMetricSpace::from_matrix(t.chain, t.n);
      CHECK(validate_metric(chain).ok);
      SandwichReport rep = sandwich_check(t);
      CHECK(rep.pass);
      CHECK(rep.min_ratio >= 0.25 - 1e-12);
      CHECK(rep.max_ratio <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("snowflaked clouds satisfy the sandwich too") {
  std::mt19937_64 rng(31);
  FiniteMetricSpace s = FiniteMetricSpace::from_points(random_cloud(rng, 25, 2), 2,
                                                       AmbientKind::Snowflake, 0.7);
  for (bool spherical : {true, false}) {
    TransformedSpace t = spherical ? sphericalize(s, 3) : invert(s, 3);
    SandwichReport rep = sandwich_check(t);
    CHECK(rep.pass);
  }
}

TEST_CASE("adding points never increases the chain metric") {
  std::mt19937_64 rng(37);
  std::vector<double> pts = random_cloud(rng, 30, 2);
  FiniteMetricSpace big = FiniteMetricSpace::from_points(pts, 2, AmbientKind::Euclidean);
  std::vector<int> subset_ids;
  for (int i = 0; i < 15; ++i) subset_ids.push_back(i);
  FiniteMetricSpace small = big.subspace(subset_ids);

  TransformedSpace tb = sphericalize(big, 0);
  TransformedSpace ts = sphericalize(small, 0);
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      double over = ts.chain_at(ts.index_of_source(i), ts.index_of_source(j));
      double under = tb.chain_at(tb.index_of_source(i), tb.index_of_source(j));
      REQUIRE(under <= over * (1 + 1e-12));
    }
}

TEST_CASE("matrix entry points agree with the space entry points") {
  std::mt19937_64 rng(41);
  FiniteMetricSpace s =
      FiniteMetricSpace::from_points(random_cloud(rng, 12, 2), 2, AmbientKind::Euclidean);
  std::vector<double> m = s.to_matrix();
  TransformedSpace a = sphericalize(s, 2);
  TransformedSpace b = sphericalize_matrix(m, s.size(), 2);
  REQUIRE(a.n == b.n);
  for (std::size_t i = 0; i < a.n * a.n; ++i) {
    CHECK(a.base[i] == doctest::Approx(b.base[i]).epsilon(1e-15));
    CHECK(a.chain[i] == doctest::Approx(b.chain[i]).epsilon(1e-15));
  }
  TransformedSpace c = invert(s, 2);
  TransformedSpace d = invert_matrix(m, s.size(), 2);
  REQUIRE(c.n == d.n);
  for (std::size_t i = 0; i < c.n * c.n; ++i)
    CHECK(c.chain[i] == doctest::Approx(d.chain[i]).epsilon(1e-15));
}

TEST_CASE("degenerate base points are rejected") {
  FiniteMetricSpace s = line_points({0.0, 0.0, 1.0});  // duplicate point
  CHECK_THROWS_AS(invert(s, 0), std::invalid_argument);
  FiniteMetricSpace ok = line_points({0.0, 1.0});
  CHECK_THROWS_AS(invert(ok, 5), std::out_of_range);
  CHECK_THROWS_AS(sphericalize(ok, -1), std::out_of_range);
}

TEST_CASE("round trip through infinity stays 16-bilipschitz") {
  // dyadic scales exercise widely separated magnitudes
  std::vector<double> xs;
  for (int i = -10; i <= 10; ++i) xs.push_back(std::ldexp(1.0, i));
  FiniteMetricSpace s = line_points(xs);
  RoundTripReport rep = roundtrip_check(s, 10);  // p = 1.0
  CHECK(rep.pass);
  CHECK(rep.worst_ratio <= 16.0);
  CHECK(rep.worst_ratio >= 1.0);
  CHECK(rep.worst_pair.first >= 0);
  REQUIRE(rep.dprime.size() == s.size() * s.size());
  CHECK(validate_metric(FiniteMetricSpace::from_matrix(rep.dprime, s.size())).ok);

  // the ratio bound is attained within a factor; the worst pair reproduces
  int a = rep.worst_pair.first, b = rep.worst_pair.second;
  double d = s.distance(a, b);
  double dp = rep.dprime[std::size_t(a) * s.size() + b];
  double ratio = std::max(dp / d, d / dp);
  CHECK(ratio == doctest::Approx(rep.worst_ratio).epsilon(1e-12));
}

TEST_CASE("two-point round trip is trivially within bounds") {
  FiniteMetricSpace s = line_points({0.0, 1.0});
  RoundTripReport rep = roundtrip_check(s, 0);
  CHECK(rep.pass);
  CHECK(rep.worst_ratio <= 16.0);
}
