#include "qmgeo/metric_space.hpp"

#include <cmath>
#include <sstream>

namespace qmgeo {

std::string to_string(AmbientKind k) {
  switch (k) {
    case AmbientKind::Euclidean: return "euclidean";
    case AmbientKind::Snowflake: return "snowflake";
    case AmbientKind::Matrix: return "matrix";
    case AmbientKind::Curve: return "curve";
  }
  return "euclidean";
}

AmbientKind ambient_kind_from_string(const std::string& s) {
  if (s == "euclidean") return AmbientKind::Euclidean;
  if (s == "snowflake") return AmbientKind::Snowflake;
  if (s == "matrix") return AmbientKind::Matrix;
  if (s == "curve") return AmbientKind::Curve;
  throw std::invalid_argument("unknown ambient kind: " + s);
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<double> coords, int dim,
                                                 AmbientKind kind, double epsilon) {
  if (dim <= 0) throw std::invalid_argument("dim must be positive");
  if (coords.size() % dim != 0) throw std::invalid_argument("coords size not a multiple of dim");
  if (kind == AmbientKind::Matrix) throw std::invalid_argument("use from_matrix for matrix mode");
  if (kind == AmbientKind::Snowflake && !(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("snowflake exponent must lie in (0,1]");
  FiniteMetricSpace s;
  s.kind_ = kind;
  s.dim_ = dim;
  s.n_ = coords.size() / dim;
  s.epsilon_ = (kind == AmbientKind::Snowflake) ? epsilon : 1.0;
  s.coords_ = std::move(coords);
  if (kind == AmbientKind::Curve) {
    s.arclen_.resize(s.n_, 0.0);
    for (std::size_t i = 1; i < s.n_; ++i)
      s.arclen_[i] = s.arclen_[i - 1] + s.base_euclidean(int(i - 1), int(i));
  }
  return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<double> matrix, std::size_t n) {
  if (matrix.size() != n * n) throw std::invalid_argument("matrix size must be n*n");
  FiniteMetricSpace s;
  s.kind_ = AmbientKind::Matrix;
  s.n_ = n;
  s.matrix_ = std::move(matrix);
  return s;
}

double FiniteMetricSpace::base_euclidean(int i, int j) const {
  const double* a = point(i);
  const double* b = point(j);
  double acc = 0.0;
  for (int d = 0; d < dim_; ++d) {
    double t = a[d] - b[d];
    acc += t * t;
  }
  return std::sqrt(acc);
}

double FiniteMetricSpace::distance(int i, int j) const {
  switch (kind_) {
    case AmbientKind::Euclidean: return base_euclidean(i, j);
    case AmbientKind::Snowflake: {
      double d = base_euclidean(i, j);
      return d == 0.0 ? 0.0 : std::pow(d, epsilon_);
    }
    case AmbientKind::Curve: return std::fabs(arclen_[i] - arclen_[j]);
    case AmbientKind::Matrix: return matrix_[std::size_t(i) * n_ + j];
  }
  return 0.0;
}

std::vector<double> FiniteMetricSpace::to_matrix() const {
  if (kind_ == AmbientKind::Matrix) return matrix_;
  std::vector<double> m(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      double d = distance(int(i), int(j));
      m[i * n_ + j] = d;
      m[j * n_ + i] = d;
    }
  return m;
}

FiniteMetricSpace FiniteMetricSpace::subspace(const std::vector<int>& ids) const {
  for (int id : ids)
    if (id < 0 || std::size_t(id) >= n_) throw std::out_of_range("subspace id out of range");
  if (kind_ == AmbientKind::Matrix || kind_ == AmbientKind::Curve) {
    std::size_t m = ids.size();
    std::vector<double> mat(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) mat[a * m + b] = distance(ids[a], ids[b]);
    return from_matrix(std::move(mat), m);
  }
  std::vector<double> coords;
  coords.reserve(ids.size() * dim_);
  for (int id : ids)
    coords.insert(coords.end(), point(id), point(id) + dim_);
  return from_points(std::move(coords), dim_, kind_, epsilon_);
}

std::string MetricIssue::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Diagonal: os << "d(" << i << "," << i << ") != 0"; break;
    case Kind::Asymmetry: os << "d(" << i << "," << j << ") != d(" << j << "," << i << ")"; break;
    case Kind::NonPositive: os << "d(" << i << "," << j << ") <= 0 for distinct points"; break;
    case Kind::Triangle:
      os << "d(" << i << "," << k << ") > d(" << i << "," << j << ") + d(" << j << "," << k
         << ") by " << slack;
      break;
    case Kind::NotFinite: os << "d(" << i << "," << j << ") is not finite"; break;
  }
  return os.str();
}

MetricValidation validate_metric(const FiniteMetricSpace& space, double tol,
                                 std::size_t max_issues) {
  MetricValidation v;
  auto add = [&](MetricIssue issue) {
    v.ok = false;
    if (v.issues.size() < max_issues) v.issues.push_back(issue);
  };
  const int n = int(space.size());
  for (int i = 0; i < n && v.issues.size() < max_issues; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = space.distance(i, j);
      if (!std::isfinite(d)) {
        add({MetricIssue::Kind::NotFinite, i, j, -1, 0.0});
        continue;
      }
      if (d <= 0.0) add({MetricIssue::Kind::NonPositive, i, j, -1, -d});
    }
  if (space.kind() != AmbientKind::Matrix) return v;

  for (int i = 0; i < n && v.issues.size() < max_issues; ++i) {
    double dii = space.distance(i, i);
    if (dii != 0.0) add({MetricIssue::Kind::Diagonal, i, i, -1, std::fabs(dii)});
  }
  for (int i = 0; i < n && v.issues.size() < max_issues; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dij = space.distance(i, j), dji = space.distance(j, i);
      if (dij != dji) add({MetricIssue::Kind::Asymmetry, i, j, -1, std::fabs(dij - dji)});
    }
  // Full triangle scan: d(i,k) <= d(i,j) + d(j,k) within tol.
  for (int i = 0; i < n && v.issues.size() < max_issues; ++i)
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      double dik = space.distance(i, k);
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        double s = dik - (space.distance(i, j) + space.distance(j, k));
        if (s > tol) {
          add({MetricIssue::Kind::Triangle, i, j, k, s});
          if (v.issues.size() >= max_issues) break;
        }
      }
    }
  return v;
}

}  // namespace qmgeo
