#include "qmgeo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace qmgeo {

WeightedGraph::WeightedGraph(int n, const std::vector<std::pair<int, int>>& edges,
                             const std::vector<double>& weights)
    : n_(n) {
  if (edges.size() != weights.size()) throw std::invalid_argument("edges/weights size mismatch");
  std::vector<int> deg(n, 0);
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw std::invalid_argument("bad edge endpoints");
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n + 1, 0);
  for (int u = 0; u < n; ++u) offsets_[u + 1] = offsets_[u] + deg[u];
  nbr_.resize(offsets_[n]);
  w_.resize(offsets_[n]);
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    nbr_[cursor[u]] = v;
    w_[cursor[u]++] = weights[e];
    nbr_[cursor[v]] = u;
    w_[cursor[v]++] = weights[e];
  }
  // sort each adjacency list by neighbor id for stable traversal
  for (int u = 0; u < n; ++u) {
    int lo = offsets_[u], hi = offsets_[u + 1];
    std::vector<std::pair<int, double>> tmp;
    tmp.reserve(hi - lo);
    for (int e = lo; e < hi; ++e) tmp.emplace_back(nbr_[e], w_[e]);
    std::sort(tmp.begin(), tmp.end());
    for (int e = lo; e < hi; ++e) {
      nbr_[e] = tmp[e - lo].first;
      w_[e] = tmp[e - lo].second;
    }
  }
  weights_stored_ = edges.size();
}

std::vector<std::pair<int, int>> WeightedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(weights_stored_);
  for (int u = 0; u < n_; ++u)
    for (int e = offsets_[u]; e < offsets_[u + 1]; ++e)
      if (u < nbr_[e]) out.emplace_back(u, nbr_[e]);
  return out;
}

ShortestPathTree dijkstra(const WeightedGraph& g, int source,
                          const std::vector<char>* blocked) {
  const int n = g.size();
  if (source < 0 || source >= n) throw std::out_of_range("dijkstra source out of range");
  if (blocked && blocked->size() != std::size_t(n))
    throw std::invalid_argument("blocked mask size mismatch");
  ShortestPathTree t;
  t.dist.assign(n, kUnreachable);
  t.parent.assign(n, -1);
  if (blocked && (*blocked)[source]) return t;
  std::vector<char> done(n, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  t.dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    g.for_each_neighbor(u, [&](int v, double w) {
      if (done[v]) return;
      if (blocked && (*blocked)[v]) return;
      double nd = d + w;
      if (nd < t.dist[v]) {
        t.dist[v] = nd;
        t.parent[v] = u;
        heap.push({nd, v});
      } else if (nd == t.dist[v] && u < t.parent[v]) {
        t.parent[v] = u;  // equal-length paths: smallest predecessor id
      }
    });
  }
  return t;
}

std::vector<int> extract_path(const ShortestPathTree& t, int source, int target) {
  std::vector<int> path;
  if (target < 0 || std::size_t(target) >= t.dist.size()) return path;
  if (t.dist[target] == kUnreachable) return path;
  for (int v = target; v != -1; v = t.parent[v]) {
    path.push_back(v);
    if (v == source) break;
  }
  if (path.back() != source) return {};
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> connected_components(const WeightedGraph& g, int* count) {
  const int n = g.size();
  std::vector<int> comp(n, -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      g.for_each_neighbor(u, [&](int v, double) {
        if (comp[v] == -1) {
          comp[v] = c;
          stack.push_back(v);
        }
      });
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

std::vector<double> dense_all_pairs(const std::vector<double>& base, std::size_t n) {
  if (base.size() != n * n) throw std::invalid_argument("base matrix size must be n*n");
  std::vector<double> d(base);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  // Floyd-Warshall. The inner loop is a flat row sweep, which the compiler
  // vectorizes; on complete graphs this beats per-source heap scans.
  for (std::size_t k = 0; k < n; ++k) {
    const double* dk = d.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (!(dik < kUnreachable)) continue;
      double* di = d.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        double cand = dik + dk[j];
        if (cand < di[j]) di[j] = cand;
      }
    }
  }
  return d;
}

}  // namespace qmgeo
