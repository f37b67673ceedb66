#include "qmgeo/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qmgeo {

namespace {

const double kAlphaGrid[] = {1.0, 0.5, 1.0 / 3.0, 0.25};

// log-space envelope shape: max(alpha*s, s/alpha) for s = log t
double shape_log(double s, double alpha) { return std::max(alpha * s, s / alpha); }

void fit_envelope(ScanResult& r) {
  double best_gap[4];
  std::size_t best_idx[4] = {0, 0, 0, 0};
  for (int a = 0; a < 4; ++a) best_gap[a] = -kUnreachable;
  double best_ratio = -kUnreachable;
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    double ls = std::log(s.in), lo = std::log(s.out);
    if (lo - ls > best_ratio) {
      best_ratio = lo - ls;
      r.worst_ratio = s;
    }
    for (int a = 0; a < 4; ++a) {
      double gap = lo - shape_log(ls, kAlphaGrid[a]);
      if (gap > best_gap[a]) {
        best_gap[a] = gap;
        best_idx[a] = i;
      }
    }
  }
  double min_gap = kUnreachable;
  for (int a = 0; a < 4; ++a) min_gap = std::min(min_gap, best_gap[a]);
  // smallest achievable C, then the largest alpha within 25% of it; the
  // larger exponent gives the flatter, more informative envelope
  int pick = 3;
  for (int a = 0; a < 4; ++a)
    if (best_gap[a] <= min_gap + std::log(1.25)) {
      pick = a;
      break;
    }
  r.envelope.alpha = kAlphaGrid[pick];
  r.envelope.C = std::exp(best_gap[pick]);
  if (!r.samples.empty()) r.worst = r.samples[best_idx[pick]];
}

void validate_map(std::size_t n_in, std::size_t n_out, const std::vector<int>& map) {
  if (map.size() != n_in) throw std::invalid_argument("correspondence size mismatch");
  std::vector<char> seen(n_out, 0);
  for (int v : map) {
    if (v < 0 || std::size_t(v) >= n_out) throw std::invalid_argument("correspondence out of range");
    if (seen[v]) throw std::invalid_argument("correspondence is not injective");
    seen[v] = 1;
  }
}

}  // namespace

MetricView view_of(const FiniteMetricSpace& space) {
  return {space.size(), [&space](int i, int j) { return space.distance(i, j); }};
}

MetricView view_of_matrix(const std::vector<double>& m, std::size_t n) {
  if (m.size() != n * n) throw std::invalid_argument("matrix size must be n*n");
  return {n, [&m, n](int i, int j) { return m[std::size_t(i) * n + j]; }};
}

double EtaEnvelope::eval(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("envelope argument must be positive");
  return C * std::exp(shape_log(std::log(t), alpha));
}

double cross_ratio(const MetricView& m, const std::array<int, 4>& q) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (q[a] == q[b]) throw std::invalid_argument("cross ratio needs distinct points");
  return (m.d(q[0], q[2]) * m.d(q[1], q[3])) / (m.d(q[0], q[3]) * m.d(q[1], q[2]));
}

ScanResult qm_scan(const MetricView& in, const MetricView& out, const std::vector<int>& map,
                   const ScanOptions& opt) {
  const std::size_t n = in.n;
  if (n < 4) throw std::invalid_argument("need at least 4 points");
  validate_map(n, out.n, map);
  ScanResult r;

  auto push = [&](std::array<int, 4> q, double cin, double cout) {
    if (cin > 0.0 && cout > 0.0 && std::isfinite(cin) && std::isfinite(cout))
      r.samples.push_back({q, cin, cout});
  };

  // number of value-distinct orderings: three pair matchings per 4-subset,
  // six ordered ratios
  double distinct = 6.0;
  for (int t = 0; t < 4; ++t) distinct *= double(n - t) / (t + 1);
  if (distinct <= double(opt.exhaustive_budget)) {
    r.exhaustive = true;
    r.samples.reserve(std::size_t(distinct));
    for (int a = 0; a < int(n); ++a)
      for (int b = a + 1; b < int(n); ++b)
        for (int c = b + 1; c < int(n); ++c)
          for (int d = c + 1; d < int(n); ++d) {
            double p1i = in.d(a, b) * in.d(c, d);
            double p2i = in.d(a, c) * in.d(b, d);
            double p3i = in.d(a, d) * in.d(b, c);
            int A = map[a], B = map[b], C = map[c], D = map[d];
            double p1o = out.d(A, B) * out.d(C, D);
            double p2o = out.d(A, C) * out.d(B, D);
            double p3o = out.d(A, D) * out.d(B, C);
            push({a, b, c, d}, p2i / p3i, p2o / p3o);
            push({a, b, d, c}, p3i / p2i, p3o / p2o);
            push({a, c, b, d}, p1i / p3i, p1o / p3o);
            push({a, c, d, b}, p3i / p1i, p3o / p1o);
            push({a, d, b, c}, p1i / p2i, p1o / p2o);
            push({a, d, c, b}, p2i / p1i, p2o / p1o);
          }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, int(n) - 1);
    std::size_t want = opt.samples / 2;
    for (std::size_t s = 0; s < want; ++s) {
      std::array<int, 4> q;
      for (int t = 0; t < 4; ++t) {
        bool fresh = false;
        while (!fresh) {
          q[t] = pick(rng);
          fresh = true;
          for (int u = 0; u < t; ++u)
            if (q[u] == q[t]) fresh = false;
        }
      }
      std::array<int, 4> qo{map[q[0]], map[q[1]], map[q[2]], map[q[3]]};
      double cin = cross_ratio(in, q), cout = cross_ratio(out, qo);
      push(q, cin, cout);
      // the reciprocal ordering keeps the sample set closed under t -> 1/t
      push({q[0], q[1], q[3], q[2]}, 1.0 / cin, 1.0 / cout);
    }
  }
  if (r.samples.empty()) throw std::runtime_error("no usable quadruples");
  fit_envelope(r);
  return r;
}

ScanResult qs_scan(const MetricView& in, const MetricView& out, const std::vector<int>& map,
                   const ScanOptions& opt) {
  const std::size_t n = in.n;
  if (n < 3) throw std::invalid_argument("need at least 3 points");
  validate_map(n, out.n, map);
  ScanResult r;

  auto push = [&](int x, int y, int z) {
    double rin = in.d(x, y) / in.d(x, z);
    double rout = out.d(map[x], map[y]) / out.d(map[x], map[z]);
    if (rin > 0.0 && rout > 0.0 && std::isfinite(rin) && std::isfinite(rout))
      r.samples.push_back({{x, y, z, -1}, rin, rout});
  };

  double distinct = 6.0;
  for (int t = 0; t < 3; ++t) distinct *= double(n - t) / (t + 1);
  if (distinct <= double(opt.exhaustive_budget)) {
    r.exhaustive = true;
    for (int a = 0; a < int(n); ++a)
      for (int b = a + 1; b < int(n); ++b)
        for (int c = b + 1; c < int(n); ++c) {
          push(a, b, c);
          push(a, c, b);
          push(b, a, c);
          push(b, c, a);
          push(c, a, b);
          push(c, b, a);
        }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, int(n) - 1);
    for (std::size_t s = 0; s < opt.samples / 2; ++s) {
      int x = pick(rng), y = pick(rng), z = pick(rng);
      if (x == y || x == z || y == z) {
        --s;
        continue;
      }
      push(x, y, z);
      push(x, z, y);
    }
  }
  if (r.samples.empty()) throw std::runtime_error("no usable triples");
  fit_envelope(r);
  return r;
}

AffineFit affine_envelope_fit(const std::vector<std::pair<double, double>>& uv,
                              double slope_cap) {
  if (uv.empty()) throw std::invalid_argument("no value pairs to fit");
  AffineFit fit;
  for (auto& [u, v] : uv) fit.scale = std::max({fit.scale, u, v});

  auto offset_at = [&](double L) {
    double worst = 0.0;
    for (auto& [u, v] : uv) worst = std::max({worst, v - L * u, u - L * v});
    return worst;
  };

  std::vector<double> grid;
  for (double L = 1.0; L <= slope_cap + 1e-9; L += 0.25) grid.push_back(L);
  double a_first = offset_at(grid.front());
  double a_last = offset_at(grid.back());
  double threshold = std::max(a_last + 0.1 * (a_first - a_last), 0.05 * fit.scale);
  for (double L : grid) {
    double off = offset_at(L);
    if (off <= threshold) {
      fit.slope = L;
      fit.offset = off;
      return fit;
    }
  }
  fit.slope = grid.back();
  fit.offset = a_last;
  return fit;
}

namespace {

// Quadrature distances for sampled pairs, grouped by source to share trees.
std::vector<double> pair_values_qh(const DomainSpace& dom, const WeightedGraph& g,
                                   const std::vector<std::pair<int, int>>& pairs) {
  std::vector<double> vals(pairs.size(), 0.0);
  std::vector<std::vector<std::pair<int, std::size_t>>> by_src(dom.interior_count());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int lx = dom.local_index(pairs[i].first), ly = dom.local_index(pairs[i].second);
    by_src[lx].push_back({ly, i});
  }
  for (std::size_t s = 0; s < by_src.size(); ++s) {
    if (by_src[s].empty()) continue;
    ShortestPathTree t = dijkstra(g, int(s));
    for (auto& [ly, idx] : by_src[s]) vals[idx] = t.dist[ly];
  }
  return vals;
}

std::vector<std::pair<int, int>> map_pairs(const DomainSpace& a, const DomainSpace& b,
                                           const std::vector<int>& map,
                                           const std::vector<std::pair<int, int>>& pairs) {
  if (map.size() != a.ambient().size())
    throw std::invalid_argument("correspondence must cover the source ambient points");
  std::vector<std::pair<int, int>> out;
  out.reserve(pairs.size());
  std::vector<char> seen(b.ambient().size(), 0);
  for (int x : a.interior()) {
    int y = map[x];
    if (y < 0 || std::size_t(y) >= b.ambient().size() || !b.is_interior(y))
      throw std::invalid_argument("correspondence must send interior to interior");
    if (seen[y]) throw std::invalid_argument("correspondence is not injective on the interior");
    seen[y] = 1;
  }
  for (auto& [x, y] : pairs) out.emplace_back(map[x], map[y]);
  return out;
}

}  // namespace

AffineFit qi_fit(const DomainSpace& a, const DomainSpace& b, const std::vector<int>& map,
                 QhWeightMode mode, std::uint64_t seed) {
  std::vector<std::pair<int, int>> pa = sample_interior_pairs(a, {seed});
  std::vector<std::pair<int, int>> pb = map_pairs(a, b, map, pa);
  WeightedGraph ga = qh_graph(a, mode), gb = qh_graph(b, mode);
  std::vector<double> va = pair_values_qh(a, ga, pa);
  std::vector<double> vb = pair_values_qh(b, gb, pb);
  std::vector<std::pair<double, double>> uv(va.size());
  for (std::size_t i = 0; i < va.size(); ++i) uv[i] = {va[i], vb[i]};
  return affine_envelope_fit(uv);
}

AffineFit j_affine_fit(const DomainSpace& a, const DomainSpace& b, const std::vector<int>& map,
                       std::uint64_t seed) {
  std::vector<std::pair<int, int>> pa = sample_interior_pairs(a, {seed});
  std::vector<std::pair<int, int>> pb = map_pairs(a, b, map, pa);
  std::vector<std::pair<double, double>> uv(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i)
    uv[i] = {j_distance(a, pa[i].first, pa[i].second),
             j_distance(b, pb[i].first, pb[i].second)};
  return affine_envelope_fit(uv);
}

}  // namespace qmgeo
