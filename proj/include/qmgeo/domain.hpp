#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmgeo/graph.hpp"
#include "qmgeo/metric_space.hpp"

namespace qmgeo {

struct MeshParams {
  double beta = 0.5;  // clearance fraction, in (0, 1/2]
  int k = 8;          // nearest-neighbor candidates per interior point
};

// Raised when the clearance-filtered nearest-neighbor graph does not connect
// the interior. Carries a component summary for diagnostics.
class MeshDisconnectedError : public std::runtime_error {
 public:
  MeshDisconnectedError(std::string msg, std::vector<std::vector<int>> comps)
      : std::runtime_error(std::move(msg)), components(std::move(comps)) {}
  std::vector<std::vector<int>> components;  // ambient ids, largest first
};

// A sampled domain: an ambient finite metric space split into interior and
// boundary ids, plus a mesh graph over the interior.
//
// Mesh edges join near neighbors and obey the clearance constraint
//   length(e) <= beta * min(bdist(u), bdist(v)),
// which keeps every hop short relative to the distance to the boundary. The
// mesh must connect the interior; construction fails otherwise.
class DomainSpace {
 public:
  DomainSpace() = default;
  static DomainSpace build(FiniteMetricSpace ambient, std::vector<int> interior,
                           std::vector<int> boundary, MeshParams mesh);

  const FiniteMetricSpace& ambient() const { return ambient_; }
  const std::vector<int>& interior() const { return interior_; }
  const std::vector<int>& boundary() const { return boundary_; }
  const MeshParams& mesh_params() const { return mesh_; }

  std::size_t interior_count() const { return interior_.size(); }
  bool is_interior(int ambient_id) const {
    return ambient_id >= 0 && std::size_t(ambient_id) < local_.size() && local_[ambient_id] >= 0;
  }
  int local_index(int ambient_id) const;   // throws if not interior
  int ambient_id(int local_index) const { return interior_[local_index]; }

  // Distance from an interior point to the nearest boundary sample.
  double boundary_distance(int ambient_id) const;
  double boundary_distance_local(int local) const { return bdist_[local]; }

  // Ambient distance between two points (any ids).
  double ambient_distance(int a, int b) const { return ambient_.distance(a, b); }

  // Mesh graph over interior-local indices, weighted by ambient edge length.
  const WeightedGraph& length_graph() const { return length_graph_; }

  // Shortest mesh-path length between two interior points (ambient ids).
  double length_distance(int x, int y) const;

  // Shortest-path tree from one interior point over the length graph.
  ShortestPathTree length_tree(int ambient_id) const;

 private:
  FiniteMetricSpace ambient_;
  std::vector<int> interior_, boundary_;
  std::vector<int> local_;       // ambient id -> interior-local index or -1
  std::vector<double> bdist_;    // per interior-local index
  MeshParams mesh_;
  WeightedGraph length_graph_;
};

}  // namespace qmgeo
