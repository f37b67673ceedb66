#include "qmgeo/domain_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kCircleSamples = 720;

// Interior points are kept only when their boundary distance clears the mesh
// threshold with real slack, so rounding in edge lengths can never flip a
// clearance decision (boundary samples often sit exactly on grid lines).
constexpr double kFilterMargin = 1.0 + 1e-9;

std::vector<double> circle_samples() {
  std::vector<double> pts;
  pts.reserve(2 * kCircleSamples);
  for (int t = 0; t < kCircleSamples; ++t) {
    double a = 2.0 * kPi * t / kCircleSamples;
    pts.push_back(std::cos(a));
    pts.push_back(std::sin(a));
  }
  return pts;
}

double dist_to_set(double x, double y, const std::vector<double>& pts) {
  double best = kUnreachable;
  for (std::size_t t = 0; t + 1 < pts.size(); t += 2)
    best = std::min(best, std::hypot(x - pts[t], y - pts[t + 1]));
  return best;
}

// Grid-in-disk generator shared by the Euclidean and snowflake variants.
// `threshold` is the minimal Euclidean boundary distance an interior point
// needs for its axis edges to pass the beta = 1/2 clearance filter.
DomainSpace grid_disk(double h, double threshold, AmbientKind kind, double epsilon) {
  if (!(h > 0.0) || h > 0.2) throw std::invalid_argument("h must be in (0, 0.2]");
  if (!(threshold < 1.0)) throw std::invalid_argument("spacing too coarse for this exponent");
  std::vector<double> boundary_pts = circle_samples();
  std::vector<double> coords;
  int span = int(std::floor(1.0 / h)) + 1;
  for (int i = -span; i <= span; ++i)
    for (int j = -span; j <= span; ++j) {
      double x = i * h, y = j * h;
      if (x * x + y * y >= 1.0) continue;
      if (dist_to_set(x, y, boundary_pts) < threshold * kFilterMargin) continue;
      coords.push_back(x);
      coords.push_back(y);
    }
  int n_int = int(coords.size() / 2);
  coords.insert(coords.end(), boundary_pts.begin(), boundary_pts.end());
  FiniteMetricSpace amb = FiniteMetricSpace::from_points(std::move(coords), 2, kind, epsilon);
  std::vector<int> interior(n_int), boundary(kCircleSamples);
  for (int i = 0; i < n_int; ++i) interior[i] = i;
  for (int i = 0; i < kCircleSamples; ++i) boundary[i] = n_int + i;
  return DomainSpace::build(std::move(amb), std::move(interior), std::move(boundary),
                            {0.5, 8});
}

}  // namespace

DomainSpace gen_disk(double h) { return grid_disk(h, 2.0 * h, AmbientKind::Euclidean, 1.0); }

DomainSpace gen_snowflake_disk(double epsilon, double h) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0, 1)");
  return grid_disk(h, std::pow(2.0, 1.0 / epsilon) * h, AmbientKind::Snowflake, epsilon);
}

DomainSpace gen_halfline(double ratio, int lo, int hi) {
  if (!(ratio > 1.0)) throw std::invalid_argument("ratio must exceed 1");
  if (lo > hi) throw std::invalid_argument("empty exponent range");
  std::vector<double> xs;
  for (int i = lo; i <= hi; ++i) xs.push_back(std::pow(ratio, i));
  for (double anchor : {1.0, 2.0, 3.0}) xs.push_back(anchor);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12 * a; }),
           xs.end());
  int n_int = int(xs.size());
  xs.push_back(0.0);
  FiniteMetricSpace amb =
      FiniteMetricSpace::from_points(std::move(xs), 1, AmbientKind::Euclidean);
  std::vector<int> interior(n_int);
  for (int i = 0; i < n_int; ++i) interior[i] = i;
  return DomainSpace::build(std::move(amb), std::move(interior), {n_int}, {0.5, 3});
}

DomainSpace gen_grid_rect(double w, double h, double s) {
  if (!(w > 0.0) || !(h > 0.0) || !(s > 0.0) || s > std::min(w, h) / 4.0)
    throw std::invalid_argument("need 0 < s <= min(w, h)/4");
  std::vector<double> bpts;
  auto side = [&](double x0, double y0, double x1, double y1) {
    double len = std::hypot(x1 - x0, y1 - y0);
    int m = std::max(1, int(std::ceil(len / (s / 2.0))));
    for (int t = 0; t < m; ++t) {  // endpoint of each side is the next side's start
      bpts.push_back(x0 + (x1 - x0) * t / m);
      bpts.push_back(y0 + (y1 - y0) * t / m);
    }
  };
  side(0, 0, w, 0);
  side(w, 0, w, h);
  side(w, h, 0, h);
  side(0, h, 0, 0);

  std::vector<double> coords;
  for (int i = 1; i * s < w; ++i)
    for (int j = 1; j * s < h; ++j) {
      double x = i * s, y = j * s;
      if (dist_to_set(x, y, bpts) < 2.0 * s * kFilterMargin) continue;
      coords.push_back(x);
      coords.push_back(y);
    }
  int n_int = int(coords.size() / 2);
  int n_bd = int(bpts.size() / 2);
  coords.insert(coords.end(), bpts.begin(), bpts.end());
  FiniteMetricSpace amb =
      FiniteMetricSpace::from_points(std::move(coords), 2, AmbientKind::Euclidean);
  std::vector<int> interior(n_int), boundary(n_bd);
  for (int i = 0; i < n_int; ++i) interior[i] = i;
  for (int i = 0; i < n_bd; ++i) boundary[i] = n_int + i;
  return DomainSpace::build(std::move(amb), std::move(interior), std::move(boundary),
                            {0.5, 8});
}

DomainSpace gen_slit_disk(double h) {
  if (!(h > 0.0) || h > 0.2) throw std::invalid_argument("h must be in (0, 0.2]");
  std::vector<double> bpts = circle_samples();
  int m = int(std::ceil(1.0 / (h / 2.0)));
  // slit [0,1) x {0}; the closure endpoint (1,0) is already the circle sample
  // at angle zero, so stopping at t = m-1 avoids a duplicate point
  for (int t = 0; t < m; ++t) {
    bpts.push_back(double(t) / m);
    bpts.push_back(0.0);
  }
  std::vector<double> coords;
  int span = int(std::floor(1.0 / h)) + 1;
  for (int i = -span; i <= span; ++i)
    for (int j = -span; j <= span; ++j) {
      double x = i * h, y = j * h;
      if (x * x + y * y >= 1.0) continue;
      if (dist_to_set(x, y, bpts) < 2.0 * h * kFilterMargin) continue;
      coords.push_back(x);
      coords.push_back(y);
    }
  int n_int = int(coords.size() / 2);
  int n_bd = int(bpts.size() / 2);
  coords.insert(coords.end(), bpts.begin(), bpts.end());
  FiniteMetricSpace amb =
      FiniteMetricSpace::from_points(std::move(coords), 2, AmbientKind::Euclidean);
  std::vector<int> interior(n_int), boundary(n_bd);
  for (int i = 0; i < n_int; ++i) interior[i] = i;
  for (int i = 0; i < n_bd; ++i) boundary[i] = n_int + i;
  return DomainSpace::build(std::move(amb), std::move(interior), std::move(boundary),
                            {0.5, 8});
}

ArcExample gen_arc_example(double u, int n) {
  if (!(u > 0.0) || !(u < kPi / 2.0)) throw std::invalid_argument("u must be in (0, pi/2)");
  if (n < 100) throw std::invalid_argument("need at least 100 arc samples");

  const double theta_lo = -kPi / 2.0, theta_hi = 3.0 * kPi / 2.0 - u;
  const double delta = (theta_hi - theta_lo) / (n + 1);
  auto point = [&](int i, double& x, double& y) {
    double th = theta_lo + (i + 1) * delta;
    x = std::cos(th) / 2.0;
    y = (1.0 + std::sin(th)) / 2.0;
  };
  auto tau = [](double x, double y, double& tx, double& ty) {
    double s = x * x + y * y;
    tx = x / s;
    ty = y / s;
  };

  const double qx = -std::sin(u) / 2.0, qy = (1.0 - std::cos(u)) / 2.0;
  double tqx, tqy;
  tau(qx, qy, tqx, tqy);

  const double beta = 0.5, margin = 1.0 + 1e-9;
  auto bd_orig = [&](double x, double y) {
    return std::min(std::hypot(x, y), std::hypot(x - qx, y - qy));
  };
  auto edge_ok = [&](int i) {
    double ax, ay, bx, by;
    point(i, ax, ay);
    point(i + 1, bx, by);
    double len = std::hypot(ax - bx, ay - by);
    if (len * margin > beta * std::min(bd_orig(ax, ay), bd_orig(bx, by))) return false;
    double tax, tay, tbx, tby;
    tau(ax, ay, tax, tay);
    tau(bx, by, tbx, tby);
    double tlen = std::hypot(tax - tbx, tay - tby);
    double tbd = std::min(std::hypot(tax - tqx, tay - tqy), std::hypot(tbx - tqx, tby - tqy));
    return tlen * margin <= beta * tbd;
  };

  int a = 0, b = n - 1;
  bool changed = true;
  while (changed && a < b) {
    changed = false;
    while (a < b && !edge_ok(a)) {
      ++a;
      changed = true;
    }
    while (a < b && !edge_ok(b - 1)) {
      --b;
      changed = true;
    }
  }
  if (b - a + 1 < 10) throw std::runtime_error("arc sampling too coarse for this u");

  ArcExample ex;
  ex.u = u;
  ex.u_prime = tqx;
  std::vector<double> coords, tcoords;
  for (int i = a; i <= b; ++i) {
    ex.kept.push_back(i);
    double x, y, tx, ty;
    point(i, x, y);
    tau(x, y, tx, ty);
    coords.push_back(x);
    coords.push_back(y);
    tcoords.push_back(tx);
    tcoords.push_back(ty);
  }
  int m = int(ex.kept.size());
  coords.insert(coords.end(), {0.0, 0.0, qx, qy});
  tcoords.insert(tcoords.end(), {tqx, tqy});
  ex.p_id = m;
  ex.q_id = m + 1;
  ex.tau_q_id = m;

  std::vector<int> interior(m);
  for (int i = 0; i < m; ++i) interior[i] = i;
  ex.original = DomainSpace::build(
      FiniteMetricSpace::from_points(std::move(coords), 2, AmbientKind::Euclidean), interior,
      {ex.p_id, ex.q_id}, {beta, 3});
  ex.inverted = DomainSpace::build(
      FiniteMetricSpace::from_points(std::move(tcoords), 2, AmbientKind::Euclidean),
      std::move(interior), {ex.tau_q_id}, {beta, 3});
  return ex;
}

}  // namespace qmgeo
