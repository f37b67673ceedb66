#include "qmgeo/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qmgeo {

DomainSpace DomainSpace::build(FiniteMetricSpace ambient, std::vector<int> interior,
                               std::vector<int> boundary, MeshParams mesh) {
  const int n = int(ambient.size());
  if (boundary.empty()) throw std::invalid_argument("boundary must be nonempty");
  if (interior.empty()) throw std::invalid_argument("interior must be nonempty");
  if (!(mesh.beta > 0.0 && mesh.beta <= 0.5))
    throw std::invalid_argument("mesh beta must lie in (0, 1/2]");
  if (mesh.k < 1) throw std::invalid_argument("mesh k must be at least 1");

  DomainSpace dom;
  dom.local_.assign(n, -1);
  std::vector<char> is_boundary(n, 0);
  for (int b : boundary) {
    if (b < 0 || b >= n) throw std::out_of_range("boundary id out of range");
    is_boundary[b] = 1;
  }
  for (std::size_t i = 0; i < interior.size(); ++i) {
    int id = interior[i];
    if (id < 0 || id >= n) throw std::out_of_range("interior id out of range");
    if (is_boundary[id]) throw std::invalid_argument("interior and boundary ids overlap");
    if (dom.local_[id] != -1) throw std::invalid_argument("duplicate interior id");
    dom.local_[id] = int(i);
  }

  const std::size_t m = interior.size();
  dom.bdist_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double best = kUnreachable;
    for (int b : boundary) best = std::min(best, ambient.distance(interior[i], b));
    if (!(best > 0.0)) {
      std::ostringstream os;
      os << "interior point " << interior[i] << " has zero boundary distance";
      throw std::invalid_argument(os.str());
    }
    dom.bdist_[i] = best;
  }

  // k nearest interior neighbors, then the clearance filter.
  std::set<std::pair<int, int>> edge_set;
  std::vector<std::pair<double, int>> cand;
  for (std::size_t i = 0; i < m; ++i) {
    cand.clear();
    cand.reserve(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      cand.emplace_back(ambient.distance(interior[i], interior[j]), int(j));
    }
    std::size_t kk = std::min<std::size_t>(mesh.k, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + kk, cand.end());
    for (std::size_t t = 0; t < kk; ++t) {
      int j = cand[t].second;
      double len = cand[t].first;
      if (len <= mesh.beta * std::min(dom.bdist_[i], dom.bdist_[j]))
        edge_set.insert({std::min(int(i), j), std::max(int(i), j)});
    }
  }

  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
  std::vector<double> weights;
  weights.reserve(edges.size());
  for (auto& [u, v] : edges) weights.push_back(ambient.distance(interior[u], interior[v]));
  WeightedGraph g(int(m), edges, weights);

  int ncomp = 0;
  std::vector<int> comp = connected_components(g, &ncomp);
  if (ncomp > 1) {
    std::vector<std::vector<int>> groups(ncomp);
    for (std::size_t i = 0; i < m; ++i) groups[comp[i]].push_back(interior[i]);
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::ostringstream os;
    os << "mesh too coarse: interior splits into " << ncomp << " components (sizes";
    for (auto& gr : groups) os << " " << gr.size();
    os << "); first points of each:";
    for (auto& gr : groups) {
      os << " [";
      for (std::size_t t = 0; t < std::min<std::size_t>(3, gr.size()); ++t)
        os << (t ? "," : "") << gr[t];
      os << "]";
    }
    throw MeshDisconnectedError(os.str(), std::move(groups));
  }

  dom.ambient_ = std::move(ambient);
  dom.interior_ = std::move(interior);
  dom.boundary_ = std::move(boundary);
  dom.mesh_ = mesh;
  dom.length_graph_ = std::move(g);
  return dom;
}

int DomainSpace::local_index(int ambient_id) const {
  if (ambient_id < 0 || std::size_t(ambient_id) >= local_.size() || local_[ambient_id] < 0)
    throw std::domain_error("point is not an interior point");
  return local_[ambient_id];
}

double DomainSpace::boundary_distance(int ambient_id) const {
  return bdist_[local_index(ambient_id)];
}

double DomainSpace::length_distance(int x, int y) const {
  int lx = local_index(x), ly = local_index(y);
  if (lx == ly) return 0.0;
  return dijkstra(length_graph_, lx).dist[ly];
}

ShortestPathTree DomainSpace::length_tree(int ambient_id) const {
  return dijkstra(length_graph_, local_index(ambient_id));
}

}  // namespace qmgeo
