#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qmgeo/domain.hpp"

namespace qmgeo {

// Quadrature for the metric that weights arclength by reciprocal boundary
// distance. Upper sums use the worst boundary distance achievable along an
// edge, so graph distances never undercut the continuum value; trapezoid
// averages the endpoint reciprocals and is the estimator of choice for
// constants.
enum class QhWeightMode { Upper, Trapezoid };

std::string to_string(QhWeightMode m);

// Mesh graph reweighted for the chosen quadrature. Requires the clearance
// constraint (edge length < boundary distance), which build_mesh enforces.
WeightedGraph qh_graph(const DomainSpace& dom, QhWeightMode mode);

// d(x,y) / min(bdist(x), bdist(y)); zero when x == y.
double relative_distance(const DomainSpace& dom, int x, int y);

// log(1 + relative_distance). Computed as log((bmin + d)/bmin) with the
// numerator clamped from below at max(bd) -- a true bound that float rounding
// can otherwise undercut -- so comparisons against the boundary log ratio
// log(max(bd)/min(bd)) hold at zero tolerance.
double j_distance(const DomainSpace& dom, int x, int y);

double qh_distance(const DomainSpace& dom, int x, int y, QhWeightMode mode);

struct QhPath {
  std::vector<int> vertices;  // ambient ids, x..y
  double value = 0.0;         // sum of quadrature weights
  double arc_length = 0.0;    // sum of ambient edge lengths
};

QhPath qh_geodesic(const DomainSpace& dom, int x, int y, QhWeightMode mode);

struct SmallScaleResult {
  enum class Status { Pass, Fail, OutOfScope };
  Status status;
  double measured = 0.0;  // quadrature distance
  double bound = 0.0;     // 2*c0*d(x,y)/bdist(x), inflated by (1+2*beta) in upper mode
};

// Checks the small-scale comparison: whenever d(x,y)/bdist(x) <= lambda0/(2*c0),
// the quadrature distance should stay below 2*c0*d(x,y)/bdist(x). Upper-mode
// measurements get the (1+2*beta) quadrature allowance on the bound.
SmallScaleResult check_small_scale(const DomainSpace& dom, int x, int y, double lambda0,
                                   double c0, QhWeightMode mode);

struct PairSampleOptions {
  std::uint64_t seed = 17;
  std::size_t target = 10000;          // pair budget when sampling
  std::size_t exhaustive_limit = 300;  // interior size at or below which all pairs are used
};

// Interior point pairs (ambient ids) for estimator sweeps, in canonical sorted
// order. Small interiors get every pair. Larger ones get a seeded sample
// stratified by the decade of relative_distance, each decade keeping its
// extreme pair, plus every pair among the fifty points of lowest boundary
// distance: the hardest separations and the boundary-hugging witnesses are
// never left to chance.
std::vector<std::pair<int, int>> sample_interior_pairs(const DomainSpace& dom,
                                                       PairSampleOptions opt = {});

}  // namespace qmgeo
