#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "qmgeo/domain_gen.hpp"
#include "qmgeo/quasihyperbolic.hpp"

using namespace qmgeo;

namespace {

int id_of_value(const DomainSpace& dom, double v) {
  for (int i : dom.interior())
    if (dom.ambient().point(i)[0] == v) return i;
  return -1;
}

int id_of_point(const DomainSpace& dom, double x, double y) {
  for (int i : dom.interior()) {
    const double* p = dom.ambient().point(i);
    if (p[0] == x && p[1] == y) return i;
  }
  return -1;
}

// one Dijkstra per distinct source instead of one per pair
std::vector<double> grouped_qh(const DomainSpace& dom, QhWeightMode mode,
                               const std::vector<std::pair<int, int>>& pairs) {
  WeightedGraph g = qh_graph(dom, mode);
  std::vector<double> out(pairs.size());
  std::map<int, ShortestPathTree> trees;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    auto it = trees.find(x);
    if (it == trees.end()) it = trees.emplace(x, dijkstra(g, dom.local_index(x))).first;
    out[i] = it->second.dist[dom.local_index(y)];
  }
  return out;
}

}  // namespace

TEST_CASE("half-line logarithmic identities are exact") {
  DomainSpace hl = gen_halfline(1.01, -400, 400);
  int one = id_of_value(hl, 1.0);
  int two = id_of_value(hl, 2.0);
  int three = id_of_value(hl, 3.0);
  REQUIRE(one >= 0);
  REQUIRE(two >= 0);
  REQUIRE(three >= 0);

  // boundary distance on (0, inf) is the coordinate itself
  CHECK(hl.boundary_distance(one) == 1.0);
  CHECK(hl.boundary_distance(three) == 3.0);

  // j(x,y) = log(max/min) for collinear points with the boundary at 0
  CHECK(j_distance(hl, one, three) == std::log(3.0));
  CHECK(j_distance(hl, one, two) == std::log(2.0));
  CHECK(j_distance(hl, two, three) == std::log(1.5));
  CHECK(j_distance(hl, one, one) == 0.0);
  CHECK(j_distance(hl, three, one) == j_distance(hl, one, three));

  CHECK(relative_distance(hl, one, two) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(relative_distance(hl, one, three) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(relative_distance(hl, two, two) == 0.0);

  // the discrete upper sum converges to log 2 from above; at ratio 1.01 it
  // lands within 1.5 percent
  double k12 = qh_distance(hl, one, two, QhWeightMode::Upper);
  CHECK(k12 >= std::log(2.0));
  CHECK(k12 <= 1.05 * std::log(2.0));
  CHECK(k12 == doctest::Approx(0.7036095033792791).epsilon(1e-12));
}

TEST_CASE("quadrature weights match the edge formulas") {
  // values 0, 2..10, 12 with unit gaps: adjacent interior points are joined
  // by exactly one mesh edge
  std::vector<double> pts{0.0};
  for (int i = 0; i < 9; ++i) pts.push_back(2.0 + i);
  pts.push_back(12.0);
  FiniteMetricSpace amb = FiniteMetricSpace::from_points(pts, 1, AmbientKind::Euclidean);
  DomainSpace dom = DomainSpace::build(amb, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 10},
                                       MeshParams{0.5, 2});
  // edge between values 2 and 3: length 1, boundary distances 2 and 3
  CHECK(qh_distance(dom, 1, 2, QhWeightMode::Upper) == doctest::Approx(1.0 / (2.0 - 1.0)));
  CHECK(qh_distance(dom, 1, 2, QhWeightMode::Trapezoid) ==
        doctest::Approx(1.0 * (1.0 / 2.0 + 1.0 / 3.0) / 2.0));
}

TEST_CASE("lower bounds hold with zero tolerance on sampled pairs") {
  for (const DomainSpace& dom : {gen_disk(0.1), gen_slit_disk(0.1)}) {
    auto pairs = sample_interior_pairs(dom);
    std::vector<double> k = grouped_qh(dom, QhWeightMode::Upper, pairs);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [x, y] = pairs[i];
      double j = j_distance(dom, x, y);
      double bx = dom.boundary_distance(x), by = dom.boundary_distance(y);
      // evaluate the bound as log(max/min), not |log(bx/by)|: flipping the
      // division costs an ulp and the comparison below is at zero tolerance
      double lo = std::log(std::max(bx, by) / std::min(bx, by));
      REQUIRE(k[i] >= j);
      REQUIRE(j >= lo);
    }
  }
}

TEST_CASE("trapezoid and upper sums bracket each other") {
  DomainSpace dom = gen_disk(0.1);
  auto pairs = sample_interior_pairs(dom);
  // thin the pair set; the bracketing is per-pair so any subset is a fair test
  std::vector<std::pair<int, int>> sub;
  for (std::size_t i = 0; i < pairs.size(); i += 37) sub.push_back(pairs[i]);
  std::vector<double> up = grouped_qh(dom, QhWeightMode::Upper, sub);
  std::vector<double> tr = grouped_qh(dom, QhWeightMode::Trapezoid, sub);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    REQUIRE(tr[i] <= up[i] * (1 + 1e-12));
    REQUIRE(up[i] <= 3.0 * tr[i] * (1 + 1e-12));
  }
}

TEST_CASE("quadrature distance is symmetric and satisfies the triangle inequality") {
  DomainSpace dom = gen_disk(0.1);
  std::vector<int> ids{dom.interior()[0], dom.interior()[50], dom.interior()[100],
                       dom.interior()[150]};
  for (auto mode : {QhWeightMode::Upper, QhWeightMode::Trapezoid}) {
    for (int a : ids)
      for (int b : ids) {
        double ab = qh_distance(dom, a, b, mode);
        CHECK(ab == doctest::Approx(qh_distance(dom, b, a, mode)).epsilon(1e-12));
        for (int c : ids) {
          double ac = qh_distance(dom, a, c, mode);
          double cb = qh_distance(dom, c, b, mode);
          CHECK(ab <= ac + cb + 1e-12);
        }
      }
  }
}

TEST_CASE("geodesics reproduce the distance and stay interior") {
  DomainSpace dom = gen_disk(0.1);
  int a = id_of_point(dom, -0.5, 0.0);
  int b = id_of_point(dom, 0.5, 0.0);
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  QhPath p = qh_geodesic(dom, a, b, QhWeightMode::Upper);
  REQUIRE(p.vertices.size() >= 2);
  CHECK(p.vertices.front() == a);
  CHECK(p.vertices.back() == b);
  CHECK(p.value == doctest::Approx(qh_distance(dom, a, b, QhWeightMode::Upper)).epsilon(1e-12));
  CHECK(p.arc_length >= dom.ambient_distance(a, b) - 1e-12);
  for (int v : p.vertices) CHECK(dom.is_interior(v));
  // degenerate pair
  QhPath q = qh_geodesic(dom, a, a, QhWeightMode::Upper);
  CHECK(q.value == 0.0);
  CHECK(q.arc_length == 0.0);
  REQUIRE(q.vertices.size() == 1);
  CHECK(q.vertices.front() == a);
}

TEST_CASE("small-scale comparison matches the disk example") {
  DomainSpace disk = gen_disk(0.05);
  int a = id_of_point(disk, 0.0, 0.0);
  int b = id_of_point(disk, 0.1, 0.0);
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);

  SmallScaleResult tr = check_small_scale(disk, a, b, 1.0, 1.0, QhWeightMode::Trapezoid);
  CHECK(tr.status == SmallScaleResult::Status::Pass);
  CHECK(tr.bound == doctest::Approx(0.2).epsilon(1e-2));
  CHECK(tr.measured == doctest::Approx(0.105409).epsilon(1e-3));
  CHECK(tr.measured < tr.bound);

  SmallScaleResult up = check_small_scale(disk, a, b, 1.0, 1.0, QhWeightMode::Upper);
  CHECK(up.status == SmallScaleResult::Status::Pass);
  CHECK(up.bound == doctest::Approx(0.4).epsilon(1e-2));  // (1+2*beta) allowance

  SmallScaleResult same = check_small_scale(disk, a, a, 1.0, 1.0, QhWeightMode::Trapezoid);
  CHECK(same.status == SmallScaleResult::Status::Pass);
  CHECK(same.measured == 0.0);

  int far = id_of_point(disk, 0.8, 0.0);
  REQUIRE(far >= 0);
  SmallScaleResult oos = check_small_scale(disk, a, far, 1.0, 1.0, QhWeightMode::Trapezoid);
  CHECK(oos.status == SmallScaleResult::Status::OutOfScope);
}

TEST_CASE("pair sampler is exhaustive on small interiors") {
  DomainSpace dom = gen_disk(0.1);  // 193 interior points, under the limit
  auto pairs = sample_interior_pairs(dom);
  CHECK(pairs.size() == 193 * 192 / 2);
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));
  for (auto [a, b] : pairs) REQUIRE(a < b);
  CHECK(std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end());
}

TEST_CASE("pair sampler covers the boundary-hugging block on large interiors") {
  DomainSpace dom = gen_disk(0.05);  // 1005 interior points
  auto pairs = sample_interior_pairs(dom);
  CHECK(pairs.size() >= 10000);
  CHECK(pairs.size() <= 11500);
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));
  CHECK(std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end());
  for (auto [a, b] : pairs) {
    REQUIRE(a < b);
    REQUIRE(dom.is_interior(a));
    REQUIRE(dom.is_interior(b));
  }

  // all pairs among the fifty lowest-clearance points must be present
  std::vector<std::pair<double, int>> by_bd;
  for (int i : dom.interior()) by_bd.emplace_back(dom.boundary_distance(i), i);
  std::sort(by_bd.begin(), by_bd.end());
  std::set<std::pair<int, int>> have(pairs.begin(), pairs.end());
  for (int i = 0; i < 50; ++i)
    for (int j = i + 1; j < 50; ++j) {
      int a = by_bd[i].second, b = by_bd[j].second;
      if (a > b) std::swap(a, b);
      REQUIRE(have.count({a, b}) == 1);
    }

  // deterministic for a seed, different across seeds
  CHECK(sample_interior_pairs(dom) == pairs);
  PairSampleOptions other;
  other.seed = 18;
  CHECK(sample_interior_pairs(dom, other) != pairs);
}
