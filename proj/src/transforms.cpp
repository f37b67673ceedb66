#include "qmgeo/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "qmgeo/graph.hpp"

namespace qmgeo {

std::string to_string(TransformKind k) {
  return k == TransformKind::Sphericalize ? "sphericalize" : "invert";
}

int TransformedSpace::index_of_source(int source_id) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == source_id) return int(i);
  return -1;
}

std::vector<double> chain_metric(const std::vector<double>& base, std::size_t n) {
  return dense_all_pairs(base, n);
}

TransformedSpace sphericalize_matrix(const std::vector<double>& d, std::size_t n, int p) {
  if (p < 0 || std::size_t(p) >= n) throw std::out_of_range("base point out of range");
  TransformedSpace t;
  t.kind = TransformKind::Sphericalize;
  t.base_point = p;
  t.n = n + 1;
  t.infinity_index = int(n);
  t.labels.resize(t.n);
  for (std::size_t i = 0; i < n; ++i) t.labels[i] = int(i);
  t.labels[n] = -1;
  t.base.assign(t.n * t.n, 0.0);
  std::vector<double> fac(n);
  for (std::size_t i = 0; i < n; ++i) fac[i] = 1.0 + d[i * n + p];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      t.base[i * t.n + j] = d[i * n + j] / (fac[i] * fac[j]);
    t.base[i * t.n + n] = 1.0 / fac[i];
    t.base[n * t.n + i] = 1.0 / fac[i];
  }
  t.chain = chain_metric(t.base, t.n);
  return t;
}

TransformedSpace invert_matrix(const std::vector<double>& d, std::size_t n, int p,
                               bool unbounded) {
  if (p < 0 || std::size_t(p) >= n) throw std::out_of_range("base point out of range");
  TransformedSpace t;
  t.kind = TransformKind::Invert;
  t.base_point = p;
  std::size_t m = n - 1;
  t.n = m + (unbounded ? 1 : 0);
  t.labels.reserve(t.n);
  for (std::size_t i = 0; i < n; ++i)
    if (int(i) != p) t.labels.push_back(int(i));
  if (unbounded) {
    t.infinity_index = int(m);
    t.labels.push_back(-1);
  }
  t.base.assign(t.n * t.n, 0.0);
  std::vector<double> fac(m);
  for (std::size_t i = 0; i < m; ++i) {
    double dp = d[std::size_t(t.labels[i]) * n + p];
    if (!(dp > 0.0)) throw std::invalid_argument("inversion base point at distance zero");
    fac[i] = dp;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      t.base[i * t.n + j] =
          d[std::size_t(t.labels[i]) * n + t.labels[j]] / (fac[i] * fac[j]);
  if (unbounded)
    for (std::size_t i = 0; i < m; ++i) {
      t.base[i * t.n + m] = 1.0 / fac[i];
      t.base[m * t.n + i] = 1.0 / fac[i];
    }
  t.chain = chain_metric(t.base, t.n);
  return t;
}

TransformedSpace sphericalize(const FiniteMetricSpace& space, int p) {
  return sphericalize_matrix(space.to_matrix(), space.size(), p);
}

TransformedSpace invert(const FiniteMetricSpace& space, int p, bool unbounded) {
  return invert_matrix(space.to_matrix(), space.size(), p, unbounded);
}

SandwichReport sandwich_check(const TransformedSpace& t, double tol) {
  SandwichReport r;
  double worst_low = kUnreachable, worst_high = -kUnreachable;
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t j = i + 1; j < t.n; ++j) {
      double b = t.base[i * t.n + j];
      double c = t.chain[i * t.n + j];
      if (c < 0.25 * b - tol || c > b + tol) r.pass = false;
      if (b <= 0.0) continue;
      double ratio = c / b;
      if (ratio < worst_low) {
        worst_low = ratio;
        r.argmin = {int(i), int(j)};
      }
      if (ratio > worst_high) {
        worst_high = ratio;
        r.argmax = {int(i), int(j)};
      }
    }
  if (worst_low != kUnreachable) r.min_ratio = worst_low;
  if (worst_high != -kUnreachable) r.max_ratio = worst_high;
  return r;
}

RoundTripReport roundtrip_check(const FiniteMetricSpace& space, int p, double tol) {
  const std::size_t n = space.size();
  std::vector<double> d = space.to_matrix();
  TransformedSpace sph = sphericalize_matrix(d, n, p);
  // invert the sphericalized space at its infinity point; it is bounded, so
  // no new infinity is kept
  TransformedSpace inv = invert_matrix(sph.chain, sph.n, sph.infinity_index, false);

  RoundTripReport r;
  r.dprime.assign(n * n, 0.0);
  // inv.labels index into sph points, whose labels are source ids
  std::vector<int> src_of(inv.n);
  for (std::size_t i = 0; i < inv.n; ++i) src_of[i] = sph.labels[inv.labels[i]];
  double worst = 1.0;
  for (std::size_t i = 0; i < inv.n; ++i)
    for (std::size_t j = i + 1; j < inv.n; ++j) {
      int a = src_of[i], b = src_of[j];
      double dp = inv.chain[i * inv.n + j];
      r.dprime[std::size_t(a) * n + b] = dp;
      r.dprime[std::size_t(b) * n + a] = dp;
      double orig = d[std::size_t(a) * n + b];
      if (dp > 16.0 * orig + tol || dp < orig / 16.0 - tol) r.pass = false;
      if (orig > 0.0 && dp > 0.0) {
        double ratio = std::max(dp / orig, orig / dp);
        if (ratio > worst) {
          worst = ratio;
          r.worst_pair = {a, b};
        }
      }
    }
  r.worst_ratio = worst;
  return r;
}

}  // namespace qmgeo
