#include "qmgeo/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace qmgeo {

UniformCurveScore curve_score(const DomainSpace& dom, const std::vector<int>& path) {
  if (path.empty()) throw std::invalid_argument("empty path");
  UniformCurveScore s;
  const std::size_t m = path.size();
  std::vector<double> prefix(m, 0.0);
  for (std::size_t i = 1; i < m; ++i)
    prefix[i] = prefix[i - 1] + dom.ambient_distance(path[i - 1], path[i]);
  double total = prefix.back();
  double dxy = dom.ambient_distance(path.front(), path.back());
  s.turning = (path.front() == path.back()) ? 1.0 : total / dxy;
  s.cigar = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double v = std::min(prefix[i], total - prefix[i]) / dom.boundary_distance(path[i]);
    s.cigar = std::max(s.cigar, v);
  }
  s.score = std::max(s.turning, s.cigar);
  return s;
}

namespace {

// pair list regrouped as (target local, original index) per source local id
std::vector<std::vector<std::pair<int, std::size_t>>> group_by_source(
    const DomainSpace& dom, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<std::pair<int, std::size_t>>> by_src(dom.interior_count());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    by_src[dom.local_index(pairs[i].first)].push_back({dom.local_index(pairs[i].second), i});
  return by_src;
}

}  // namespace

UniformityEstimate uniformity_estimate(const DomainSpace& dom, PairSampleOptions opt) {
  std::vector<std::pair<int, int>> pairs = sample_interior_pairs(dom, opt);
  UniformityEstimate est;
  est.pairs = pairs.size();
  est.exhaustive = dom.interior_count() <= opt.exhaustive_limit;
  const WeightedGraph* graphs[3] = {&dom.length_graph(), nullptr, nullptr};
  WeightedGraph up = qh_graph(dom, QhWeightMode::Upper);
  WeightedGraph trap = qh_graph(dom, QhWeightMode::Trapezoid);
  graphs[1] = &up;
  graphs[2] = &trap;

  auto by_src = group_by_source(dom, pairs);
  for (std::size_t s = 0; s < by_src.size(); ++s) {
    if (by_src[s].empty()) continue;
    ShortestPathTree trees[3];
    for (int gi = 0; gi < 3; ++gi) trees[gi] = dijkstra(*graphs[gi], int(s));
    for (auto& [ly, idx] : by_src[s]) {
      (void)idx;
      UniformCurveScore best;
      std::vector<int> best_path;
      bool have = false;
      for (int gi = 0; gi < 3; ++gi) {
        std::vector<int> locals = extract_path(trees[gi], int(s), ly);
        if (locals.empty()) continue;
        std::vector<int> amb(locals.size());
        for (std::size_t t = 0; t < locals.size(); ++t) amb[t] = dom.ambient_id(locals[t]);
        UniformCurveScore sc = curve_score(dom, amb);
        if (!have || sc.score < best.score) {
          best = sc;
          best_path = std::move(amb);
          have = true;
        }
      }
      if (!have) throw std::runtime_error("sampled pair is not mesh-connected");
      if (best.score > est.c_est || est.x < 0) {
        est.c_est = std::max(est.c_est, best.score);
        est.x = dom.ambient_id(int(s));
        est.y = dom.ambient_id(ly);
        est.worst = best;
        est.worst_path = std::move(best_path);
      }
    }
  }
  return est;
}

QhUniformity qh_uniformity(const DomainSpace& dom, PairSampleOptions opt) {
  std::vector<std::pair<int, int>> pairs = sample_interior_pairs(dom, opt);
  QhUniformity res;
  res.pairs = pairs.size();
  WeightedGraph up = qh_graph(dom, QhWeightMode::Upper);
  WeightedGraph trap = qh_graph(dom, QhWeightMode::Trapezoid);
  auto by_src = group_by_source(dom, pairs);
  for (std::size_t s = 0; s < by_src.size(); ++s) {
    if (by_src[s].empty()) continue;
    ShortestPathTree tu = dijkstra(up, int(s));
    ShortestPathTree tt = dijkstra(trap, int(s));
    for (auto& [ly, idx] : by_src[s]) {
      (void)idx;
      int x = dom.ambient_id(int(s)), y = dom.ambient_id(ly);
      double j = j_distance(dom, x, y);
      double ratio_t = tt.dist[ly] / j;
      res.c_upper = std::max(res.c_upper, tu.dist[ly] / j);
      if (ratio_t > res.c_trapezoid) {
        res.c_trapezoid = ratio_t;
        res.x = x;
        res.y = y;
      }
    }
  }
  return res;
}

std::vector<std::vector<double>> length_table(const DomainSpace& dom) {
  const int n = int(dom.interior_count());
  std::vector<std::vector<double>> table(n);
  for (int s = 0; s < n; ++s) table[s] = dijkstra(dom.length_graph(), s).dist;
  return table;
}

BallPairScan ball_pair_scan(const MetricView& ambient, const std::vector<double>& bdist,
                            const std::vector<std::vector<double>>& length, double lambda) {
  const int n = int(ambient.n);
  if (bdist.size() != ambient.n || length.size() != ambient.n)
    throw std::invalid_argument("ball_pair_scan input sizes disagree");
  BallPairScan r;
  r.lambda = lambda;
  std::vector<int> ball;
  for (int x = 0; x < n; ++x) {
    double rad = lambda * bdist[x];
    ball.clear();
    for (int v = 0; v < n; ++v)
      if (ambient.d(x, v) < rad) ball.push_back(v);
    for (std::size_t i = 0; i < ball.size(); ++i)
      for (std::size_t j = i + 1; j < ball.size(); ++j) {
        double d = ambient.d(ball[i], ball[j]);
        if (!(d > 0.0)) continue;
        ++r.pairs;
        double ratio = length[ball[i]][ball[j]] / d;
        if (ratio > r.c) {
          r.c = ratio;
          r.center = x;
          r.y1 = ball[i];
          r.y2 = ball[j];
        }
      }
  }
  r.vacuous = (r.pairs == 0);
  return r;
}

std::vector<QuasiconvexityRow> quasiconvexity_estimate(const DomainSpace& dom,
                                                       const std::vector<double>& lambdas) {
  const int n = int(dom.interior_count());
  std::vector<std::vector<double>> table = length_table(dom);
  std::vector<double> bd(n);
  for (int i = 0; i < n; ++i) bd[i] = dom.boundary_distance_local(i);
  MetricView amb{std::size_t(n), [&dom](int i, int j) {
                   return dom.ambient_distance(dom.ambient_id(i), dom.ambient_id(j));
                 }};
  std::vector<QuasiconvexityRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    BallPairScan b = ball_pair_scan(amb, bd, table, lambda);
    QuasiconvexityRow row;
    row.lambda = lambda;
    row.c = b.c;
    row.pairs = b.pairs;
    row.vacuous = b.vacuous;
    if (!b.vacuous) {
      row.center = dom.ambient_id(b.center);
      row.y1 = dom.ambient_id(b.y1);
      row.y2 = dom.ambient_id(b.y2);
    }
    rows.push_back(row);
  }
  return rows;
}

WeightedGraph knn_graph(const FiniteMetricSpace& space, int k) {
  const int n = int(space.size());
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::set<std::pair<int, int>> edge_set;
  std::vector<std::pair<double, int>> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) cand.push_back({space.distance(i, j), j});
    std::size_t take = std::min<std::size_t>(k, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + take, cand.end());
    for (std::size_t t = 0; t < take; ++t)
      edge_set.insert({std::min(i, cand[t].second), std::max(i, cand[t].second)});
  }
  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
  std::vector<double> w(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    w[e] = space.distance(edges[e].first, edges[e].second);
  return WeightedGraph(n, edges, w);
}

AnnularCheck annular_convexity_check(const MetricView& m, const WeightedGraph& g, double c,
                                     const AnnularOptions& opt) {
  const int n = int(m.n);
  if (g.size() != n) throw std::invalid_argument("graph and metric view sizes disagree");
  if (!(c >= 1.0)) throw std::invalid_argument("annular constant must be >= 1");
  AnnularCheck out;

  std::vector<double> radii = opt.radii;
  if (radii.empty()) {
    double diam = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) diam = std::max(diam, m.d(i, j));
    radii = {diam / 4.0, diam / 8.0, diam / 16.0};
  }

  std::vector<int> centers;
  if (std::size_t(n) <= opt.centers) {
    for (int i = 0; i < n; ++i) centers.push_back(i);
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::set<int> seen;
    while (seen.size() < opt.centers) seen.insert(pick(rng));
    centers.assign(seen.begin(), seen.end());
  }

  std::vector<char> blocked(n, 0);
  std::vector<int> annulus;
  for (int x : centers)
    for (double r : radii) {
      if (!(r > 0.0)) continue;
      annulus.clear();
      for (int v = 0; v < n; ++v) {
        double d = m.d(x, v);
        blocked[v] = (d < r / c) ? 1 : 0;
        if (d >= r && d < 2.0 * r) annulus.push_back(v);
      }
      for (std::size_t i = 0; i < annulus.size(); ++i) {
        int y = annulus[i];
        ShortestPathTree t = dijkstra(g, y, &blocked);
        for (std::size_t j = i + 1; j < annulus.size(); ++j) {
          int z = annulus[j];
          double d = m.d(y, z);
          if (!(d > 0.0)) continue;
          ++out.pairs;
          out.vacuous = false;
          double ratio = t.dist[z] / d;
          if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.center = x;
            out.y = y;
            out.z = z;
            out.r = r;
          }
          if (!(t.dist[z] <= c * d + 1e-12)) out.pass = false;
        }
      }
    }
  return out;
}

AdditiveFit additive_fit(const DomainSpace& dom, PairSampleOptions opt, QhWeightMode mode,
                         double c_max) {
  std::vector<std::pair<int, int>> pairs = sample_interior_pairs(dom, opt);
  WeightedGraph g = qh_graph(dom, mode);
  std::vector<double> k(pairs.size()), j(pairs.size());
  auto by_src = group_by_source(dom, pairs);
  for (std::size_t s = 0; s < by_src.size(); ++s) {
    if (by_src[s].empty()) continue;
    ShortestPathTree t = dijkstra(g, int(s));
    for (auto& [ly, idx] : by_src[s]) {
      k[idx] = t.dist[ly];
      j[idx] = j_distance(dom, pairs[idx].first, pairs[idx].second);
    }
  }
  AdditiveFit fit;
  for (double c = 1.0; c <= c_max + 1e-9; c += 0.25) {
    double worst = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      double excess = k[i] - c * j[i];
      if (excess > worst) {
        worst = excess;
        arg = i;
      }
    }
    fit.table.push_back({c, worst});
    if (fit.table.size() == 1) {
      fit.c = c;
      fit.cprime = worst;
      fit.x = pairs[arg].first;
      fit.y = pairs[arg].second;
    }
  }
  return fit;
}

double c6_constant(double c0) {
  if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be positive");
  auto g = [c0](double u) { return u * std::expm1(2.0 * c0 / u); };
  const double lo = 2.0, hi = 1e6;
  const int steps = 4000;
  double best_u = lo, best = g(lo);
  for (int i = 1; i <= steps; ++i) {
    double u = lo * std::pow(hi / lo, double(i) / steps);
    double v = g(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  double a = std::max(lo, best_u / std::pow(hi / lo, 1.0 / steps));
  double b = std::min(hi, best_u * std::pow(hi / lo, 1.0 / steps));
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    double m1 = b - phi * (b - a), m2 = a + phi * (b - a);
    if (g(m1) >= g(m2))
      b = m2;
    else
      a = m1;
  }
  for (double u : {a, b, (a + b) / 2.0}) best = std::max(best, g(u));
  return best;
}

bool diverges(const std::vector<double>& levels, double factor) {
  if (levels.size() < 3) return false;
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i] >= factor * levels[i - 1])) return false;
  return true;
}

}  // namespace qmgeo
