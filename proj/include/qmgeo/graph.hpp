#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace qmgeo {

// Undirected weighted graph in CSR form. Neighbor lists are sorted by vertex
// id so traversal order, and hence shortest-path tie-breaking, is stable.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, const std::vector<std::pair<int, int>>& edges,
                const std::vector<double>& weights);

  int size() const { return n_; }
  std::size_t edge_count() const { return weights_stored_; }

  template <typename F>
  void for_each_neighbor(int u, F&& f) const {
    for (int e = offsets_[u]; e < offsets_[u + 1]; ++e) f(nbr_[e], w_[e]);
  }

  // Returns a copy with weights recomputed per edge (same topology).
  template <typename WeightFn>
  WeightedGraph reweighted(WeightFn&& fn) const {
    WeightedGraph g = *this;
    for (int u = 0; u < n_; ++u)
      for (int e = offsets_[u]; e < offsets_[u + 1]; ++e) g.w_[e] = fn(u, nbr_[e]);
    return g;
  }

  std::vector<std::pair<int, int>> edges() const;  // u < v

 private:
  int n_ = 0;
  std::size_t weights_stored_ = 0;
  std::vector<int> offsets_;
  std::vector<int> nbr_;
  std::vector<double> w_;
};

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<int> parent;  // -1 at the source and unreachable vertices
};

// Dijkstra with deterministic tie-breaking: equal-distance heap entries pop in
// id order, and among equal-length paths the smallest predecessor id wins.
// An optional mask marks vertices the search must not enter.
ShortestPathTree dijkstra(const WeightedGraph& g, int source,
                          const std::vector<char>* blocked = nullptr);

// Vertex sequence from source to target (inclusive); empty if unreachable.
std::vector<int> extract_path(const ShortestPathTree& t, int source, int target);

// Connected components; returns component id per vertex, ids numbered by
// first appearance.
std::vector<int> connected_components(const WeightedGraph& g, int* count = nullptr);

// All-pairs shortest paths over the complete graph whose edge weights are
// given by the dense symmetric matrix `base` (row-major, n*n). Used for chain
// metrics, where every hop between sample points is admissible.
std::vector<double> dense_all_pairs(const std::vector<double>& base, std::size_t n);

}  // namespace qmgeo
