#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmgeo {

enum class AmbientKind { Euclidean, Snowflake, Matrix, Curve };

std::string to_string(AmbientKind k);
AmbientKind ambient_kind_from_string(const std::string& s);

// A finite metric space. Point ids are 0..size()-1.
//
// Coordinate modes (Euclidean, Snowflake, Curve) derive distances from point
// coordinates; Matrix mode stores the full distance matrix. Snowflake applies
// d^epsilon to the Euclidean distance. Curve treats the point order as a
// polyline and uses arclength along it.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  static FiniteMetricSpace from_points(std::vector<double> coords, int dim,
                                       AmbientKind kind, double epsilon = 1.0);
  static FiniteMetricSpace from_matrix(std::vector<double> matrix, std::size_t n);

  std::size_t size() const { return n_; }
  int dim() const { return dim_; }
  AmbientKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  bool has_coords() const { return kind_ != AmbientKind::Matrix; }

  double distance(int i, int j) const;
  // Euclidean distance between the underlying coordinates, ignoring any
  // snowflake exponent. Only valid in coordinate modes.
  double base_euclidean(int i, int j) const;
  const double* point(int i) const { return coords_.data() + std::size_t(i) * dim_; }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<double>& matrix() const { return matrix_; }

  // Dense copy of all pairwise distances, row-major.
  std::vector<double> to_matrix() const;

  // Subspace on the given ids, preserving their order. Coordinate modes stay
  // coordinate modes except Curve, which becomes Matrix (arclength is tied to
  // the full sample order).
  FiniteMetricSpace subspace(const std::vector<int>& ids) const;

 private:
  AmbientKind kind_ = AmbientKind::Euclidean;
  std::size_t n_ = 0;
  int dim_ = 0;
  double epsilon_ = 1.0;
  std::vector<double> coords_;   // n*dim, coordinate modes
  std::vector<double> arclen_;   // cumulative arclength, Curve mode
  std::vector<double> matrix_;   // n*n, Matrix mode
};

struct MetricIssue {
  enum class Kind { Diagonal, Asymmetry, NonPositive, Triangle, NotFinite };
  Kind kind;
  int i = -1, j = -1, k = -1;  // triangle: d(i,k) > d(i,j) + d(j,k)
  double slack = 0.0;          // amount by which the axiom is violated
  std::string describe() const;
};

struct MetricValidation {
  bool ok = true;
  std::vector<MetricIssue> issues;
};

// Checks the metric axioms. Coordinate modes satisfy symmetry and the
// triangle inequality by construction, so only finiteness and positivity of
// distinct points are scanned there. Matrix mode gets the full check; the
// triangle inequality is tested with absolute tolerance `tol`.
MetricValidation validate_metric(const FiniteMetricSpace& space, double tol = 1e-12,
                                 std::size_t max_issues = 32);

}  // namespace qmgeo
