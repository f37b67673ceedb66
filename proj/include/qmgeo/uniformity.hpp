#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qmgeo/domain.hpp"
#include "qmgeo/moebius.hpp"
#include "qmgeo/quasihyperbolic.hpp"

namespace qmgeo {

// Score of a mesh path against the two uniform-curve conditions:
//   turning: total length / endpoint distance,
//   cigar:   max over vertices of min(prefix, suffix) length / boundary distance.
// A path with coincident endpoints scores 1 by convention (the infimum over
// nondegenerate pairs).
struct UniformCurveScore {
  double turning = 1.0;
  double cigar = 0.0;
  double score = 1.0;
};

UniformCurveScore curve_score(const DomainSpace& dom, const std::vector<int>& path);

struct UniformityEstimate {
  double c_est = 1.0;
  int x = -1, y = -1;          // pair attaining the estimate (ambient ids)
  UniformCurveScore worst;     // score of that pair's best candidate curve
  std::vector<int> worst_path; // the candidate itself, ambient ids
  std::size_t pairs = 0;
  bool exhaustive = false;
};

// Per pair, the candidate curves are the length-metric shortest path and the
// two quadrature geodesics; the pair's score is the best candidate's, and the
// estimate is the worst pair's. Widening the candidate set can only lower the
// per-pair scores, so this estimates the true constant from above per pair.
UniformityEstimate uniformity_estimate(const DomainSpace& dom, PairSampleOptions opt = {});

struct QhUniformity {
  double c_trapezoid = 0.0;
  double c_upper = 0.0;
  int x = -1, y = -1;  // pair attaining the trapezoid maximum
  std::size_t pairs = 0;
};

// max over sampled pairs of quadrature distance / j_distance, both modes.
QhUniformity qh_uniformity(const DomainSpace& dom, PairSampleOptions opt = {});

// All-pairs shortest-path table over the interior length graph,
// indexed by interior-local ids.
std::vector<std::vector<double>> length_table(const DomainSpace& dom);

struct BallPairScan {
  double lambda = 0.0;
  double c = 0.0;       // max length/distance over qualifying pairs; 0 when vacuous
  std::size_t pairs = 0;
  bool vacuous = true;
  int center = -1, y1 = -1, y2 = -1;  // indices into the scanned set
};

// For every center x, scans point pairs inside the ball of radius
// lambda * bdist[x] and records the worst ratio length(y1,y2) / d(y1,y2).
BallPairScan ball_pair_scan(const MetricView& ambient, const std::vector<double>& bdist,
                            const std::vector<std::vector<double>>& length, double lambda);

struct QuasiconvexityRow {
  double lambda = 0.0;
  double c = 0.0;
  std::size_t pairs = 0;
  bool vacuous = true;
  int center = -1, y1 = -1, y2 = -1;  // ambient ids
};

std::vector<QuasiconvexityRow> quasiconvexity_estimate(const DomainSpace& dom,
                                                       const std::vector<double>& lambdas);

// k-nearest-neighbor graph over a whole space, edge weight = distance. Used
// for path searches on spaces that have no interior/boundary split.
WeightedGraph knn_graph(const FiniteMetricSpace& space, int k);

struct AnnularOptions {
  std::vector<double> radii;   // empty: diameter/4, /8, /16
  std::size_t centers = 8;     // seeded center sample (all points when fewer)
  std::uint64_t seed = 17;
};

struct AnnularCheck {
  bool pass = true;
  bool vacuous = true;
  std::size_t pairs = 0;
  double worst_ratio = 0.0;    // best-avoiding-path length / distance; inf if cut off
  int center = -1, y = -1, z = -1;
  double r = 0.0;
};

// For sampled centers x and radii r, every pair in B(x,2r) minus B(x,r) must
// be joined by a path that stays out of B(x, r/c) and is no longer than
// c * d(y,z).
AnnularCheck annular_convexity_check(const MetricView& m, const WeightedGraph& g, double c,
                                     const AnnularOptions& opt = {});

struct AdditiveFit {
  double c = 1.0;
  double cprime = 0.0;
  int x = -1, y = -1;  // pair attaining cprime at the reported c
  std::vector<std::pair<double, double>> table;  // (c, induced minimal cprime)
};

// Smallest (c, c') in lexicographic order with k <= c*j + c' on every sampled
// pair; the c grid starts at 1 with step 0.25, so the report is the c = 1 row
// with its induced offset, plus the full table for context.
AdditiveFit additive_fit(const DomainSpace& dom, PairSampleOptions opt = {},
                         QhWeightMode mode = QhWeightMode::Trapezoid, double c_max = 4.0);

// max of u * (exp(2*c0/u) - 1) over u in [2, 1e6], by grid scan plus local
// refinement. The objective decreases in u, so this lands on u = 2.
double c6_constant(double c0);

// True when the value grows by at least `factor` at every refinement step,
// over at least two steps.
bool diverges(const std::vector<double>& levels, double factor = 1.3);

}  // namespace qmgeo
