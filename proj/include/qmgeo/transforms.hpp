#pragma once

#include <utility>
#include <vector>

#include "qmgeo/metric_space.hpp"

namespace qmgeo {

enum class TransformKind { Sphericalize, Invert };

std::string to_string(TransformKind k);

// Result of sphericalizing or inverting a finite space at a base point.
//
// `base` holds the raw two-point weights (spherical or inversive); `chain`
// holds the induced chain metric: the cheapest total base weight over finite
// chains through the point set. The chain metric is a true metric and sits
// within [1/4, 1] of the base weight.
struct TransformedSpace {
  TransformKind kind;
  int base_point = -1;          // source id the transform was based at
  std::vector<int> labels;      // source id per point; -1 marks the added infinity
  std::size_t n = 0;
  std::vector<double> base;     // n*n
  std::vector<double> chain;    // n*n
  int infinity_index = -1;      // -1 when absent

  double base_at(int i, int j) const { return base[std::size_t(i) * n + j]; }
  double chain_at(int i, int j) const { return chain[std::size_t(i) * n + j]; }
  int index_of_source(int source_id) const;  // -1 if not present
};

// Chain metric over the dense base-weight matrix.
std::vector<double> chain_metric(const std::vector<double>& base, std::size_t n);

// Sphericalization at p: adds a point at infinity and compresses large scales
// by the factor (1+d(.,p)) on each side.
TransformedSpace sphericalize(const FiniteMetricSpace& space, int p);
TransformedSpace sphericalize_matrix(const std::vector<double>& d, std::size_t n, int p);

// Inversion at p: removes p, reweights by d(.,p) on each side, and keeps a
// point at infinity only when the source is flagged as representing an
// unbounded space.
TransformedSpace invert(const FiniteMetricSpace& space, int p, bool unbounded = false);
TransformedSpace invert_matrix(const std::vector<double>& d, std::size_t n, int p,
                               bool unbounded = false);

struct SandwichReport {
  bool pass = true;
  double min_ratio = 1.0;  // min chain/base over distinct pairs, expected >= 1/4
  double max_ratio = 1.0;  // max chain/base, expected <= 1
  std::pair<int, int> argmin{-1, -1};
  std::pair<int, int> argmax{-1, -1};
};

// Verifies 1/4 * base <= chain <= base pairwise, with absolute tolerance.
SandwichReport sandwich_check(const TransformedSpace& t, double tol = 1e-12);

struct RoundTripReport {
  bool pass = true;
  double worst_ratio = 1.0;            // max of d'/d and d/d' over pairs, expected <= 16
  std::pair<int, int> worst_pair{-1, -1};  // source ids
  std::vector<double> dprime;          // round-trip metric over the source points
};

// Sphericalize at p, then invert the result at its infinity point. The
// composite metric must stay within a factor 16 of the original.
RoundTripReport roundtrip_check(const FiniteMetricSpace& space, int p, double tol = 1e-12);

}  // namespace qmgeo
