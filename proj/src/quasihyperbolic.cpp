#include "qmgeo/quasihyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>

namespace qmgeo {

std::string to_string(QhWeightMode m) {
  return m == QhWeightMode::Upper ? "upper" : "trapezoid";
}

WeightedGraph qh_graph(const DomainSpace& dom, QhWeightMode mode) {
  const WeightedGraph& g = dom.length_graph();
  if (mode == QhWeightMode::Upper) {
    return g.reweighted([&](int u, int v) {
      double len = dom.ambient_distance(dom.ambient_id(u), dom.ambient_id(v));
      double m = std::min(dom.boundary_distance_local(u), dom.boundary_distance_local(v));
      return len / (m - len);  // m > len since beta <= 1/2
    });
  }
  return g.reweighted([&](int u, int v) {
    double len = dom.ambient_distance(dom.ambient_id(u), dom.ambient_id(v));
    return len * (1.0 / dom.boundary_distance_local(u) + 1.0 / dom.boundary_distance_local(v)) /
           2.0;
  });
}

double relative_distance(const DomainSpace& dom, int x, int y) {
  if (x == y) {
    dom.local_index(x);
    return 0.0;
  }
  double bmin = std::min(dom.boundary_distance(x), dom.boundary_distance(y));
  return dom.ambient_distance(x, y) / bmin;
}

double j_distance(const DomainSpace& dom, int x, int y) {
  if (x == y) {
    dom.local_index(x);
    return 0.0;
  }
  double bx = dom.boundary_distance(x), by = dom.boundary_distance(y);
  double bmin = std::min(bx, by), bmax = std::max(bx, by);
  // bmin + d >= bmax holds exactly (boundary distance is 1-Lipschitz) but a
  // rounded d can undercut it by an ulp on collinear pairs; the clamp keeps
  // the value at or above log(bmax/bmin) through the shared denominator
  double num = std::max(bmin + dom.ambient_distance(x, y), bmax);
  return std::log(num / bmin);
}

double qh_distance(const DomainSpace& dom, int x, int y, QhWeightMode mode) {
  int lx = dom.local_index(x), ly = dom.local_index(y);
  if (lx == ly) return 0.0;
  return dijkstra(qh_graph(dom, mode), lx).dist[ly];
}

QhPath qh_geodesic(const DomainSpace& dom, int x, int y, QhWeightMode mode) {
  int lx = dom.local_index(x), ly = dom.local_index(y);
  QhPath p;
  if (lx == ly) {
    p.vertices = {x};
    return p;
  }
  ShortestPathTree t = dijkstra(qh_graph(dom, mode), lx);
  std::vector<int> locals = extract_path(t, lx, ly);
  if (locals.empty()) throw std::runtime_error("no mesh path between the points");
  p.value = t.dist[ly];
  p.vertices.reserve(locals.size());
  for (int l : locals) p.vertices.push_back(dom.ambient_id(l));
  for (std::size_t i = 1; i < p.vertices.size(); ++i)
    p.arc_length += dom.ambient_distance(p.vertices[i - 1], p.vertices[i]);
  return p;
}

SmallScaleResult check_small_scale(const DomainSpace& dom, int x, int y, double lambda0,
                                   double c0, QhWeightMode mode) {
  if (!(lambda0 > 0.0) || !(c0 >= 1.0))
    throw std::invalid_argument("require lambda0 > 0 and c0 >= 1");
  SmallScaleResult r{SmallScaleResult::Status::Pass, 0.0, 0.0};
  if (x == y) {
    dom.local_index(x);
    return r;
  }
  double ratio = dom.ambient_distance(x, y) / dom.boundary_distance(x);
  if (ratio > lambda0 / (2.0 * c0)) {
    r.status = SmallScaleResult::Status::OutOfScope;
    return r;
  }
  r.bound = 2.0 * c0 * ratio;
  if (mode == QhWeightMode::Upper) r.bound *= 1.0 + 2.0 * dom.mesh_params().beta;
  r.measured = qh_distance(dom, x, y, mode);
  r.status = (r.measured <= r.bound) ? SmallScaleResult::Status::Pass
                                     : SmallScaleResult::Status::Fail;
  return r;
}

// size of the always-included low-boundary-distance block in the sampler
constexpr std::size_t kLowClearanceBlock = 50;

std::vector<std::pair<int, int>> sample_interior_pairs(const DomainSpace& dom,
                                                       PairSampleOptions opt) {
  const std::size_t n = dom.interior_count();
  if (n < 2) throw std::invalid_argument("need at least two interior points");
  std::vector<std::pair<int, int>> out;

  if (n <= opt.exhaustive_limit) {
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        out.emplace_back(dom.ambient_id(int(i)), dom.ambient_id(int(j)));
    return out;
  }

  auto decade_of = [&](std::size_t i, std::size_t j, double& r) {
    double bmin = std::min(dom.boundary_distance_local(int(i)), dom.boundary_distance_local(int(j)));
    r = dom.ambient_distance(dom.ambient_id(int(i)), dom.ambient_id(int(j))) / bmin;
    return std::clamp(int(std::floor(std::log10(r))), -30, 30);
  };

  // first pass: decade populations and the extreme pair of each decade
  struct Bucket {
    std::size_t count = 0;
    double max_r = -1.0;
    std::pair<std::size_t, std::size_t> argmax{0, 0};
  };
  std::map<int, Bucket> buckets;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double r;
      Bucket& b = buckets[decade_of(i, j, r)];
      ++b.count;
      if (r > b.max_r) {
        b.max_r = r;
        b.argmax = {i, j};
      }
    }

  // equal quotas across populated decades, spare budget redistributed
  std::map<int, std::size_t> quota;
  std::size_t assigned = 0;
  for (auto& [d, b] : buckets) {
    quota[d] = std::min(b.count, opt.target / buckets.size());
    assigned += quota[d];
  }
  bool grew = true;
  while (assigned < opt.target && grew) {
    grew = false;
    for (auto& [d, q] : quota) {
      if (assigned == opt.target) break;
      if (q < buckets[d].count) {
        ++q;
        ++assigned;
        grew = true;
      }
    }
  }

  // second pass: per-decade reservoir sampling in a fixed traversal order
  std::mt19937_64 rng(opt.seed);
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> chosen;
  std::map<int, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double r;
      int d = decade_of(i, j, r);
      std::size_t q = quota[d];
      if (q == 0) continue;
      auto& res = chosen[d];
      std::size_t& s = seen[d];
      if (res.size() < q) {
        res.emplace_back(i, j);
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, s);
        std::size_t z = pick(rng);
        if (z < q) res[z] = {i, j};
      }
      ++s;
    }

  for (auto& [d, res] : chosen) {
    auto ext = buckets[d].argmax;
    if (std::find(res.begin(), res.end(), ext) == res.end()) res[0] = ext;
    for (auto& [i, j] : res) out.emplace_back(dom.ambient_id(int(i)), dom.ambient_id(int(j)));
  }

  // every pair among the lowest-boundary-distance points: worst uniform-curve
  // and quadrature witnesses hug the boundary, where random draws from the
  // crowded middle decades rarely land
  std::size_t m = std::min<std::size_t>(kLowClearanceBlock, n);
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = int(i);
  std::nth_element(order.begin(), order.begin() + (m - 1), order.end(), [&](int a, int b) {
    double ba = dom.boundary_distance_local(a), bb = dom.boundary_distance_local(b);
    return ba < bb || (ba == bb && a < b);
  });
  order.resize(m);
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      out.emplace_back(dom.ambient_id(order[i]), dom.ambient_id(order[j]));

  for (auto& pr : out)
    if (pr.first > pr.second) std::swap(pr.first, pr.second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qmgeo
