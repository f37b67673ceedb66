#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "qmgeo/domain.hpp"
#include "qmgeo/metric_space.hpp"
#include "qmgeo/quasihyperbolic.hpp"

namespace qmgeo {

// Distance oracle over point indices 0..n-1, used so the scans run uniformly
// over plain spaces, transformed spaces, and raw matrices.
struct MetricView {
  std::size_t n = 0;
  std::function<double(int, int)> d;
};

MetricView view_of(const FiniteMetricSpace& space);
MetricView view_of_matrix(const std::vector<double>& m, std::size_t n);

// Metric cross ratio of an ordered quadruple (x1,x2,x3,x4):
//   d(x1,x3) d(x2,x4) / ( d(x1,x4) d(x2,x3) ).
// Entries must be pairwise distinct.
double cross_ratio(const MetricView& m, const std::array<int, 4>& q);

// Distortion envelope eta(t) = C * max(t^alpha, t^(1/alpha)) with alpha <= 1.
struct EtaEnvelope {
  double C = 1.0;
  double alpha = 1.0;
  double eval(double t) const;
};

struct DistortionSample {
  std::array<int, 4> q;   // quadruple (or triple with q[3] = -1)
  double in = 0.0, out = 0.0;
};

struct ScanResult {
  std::vector<DistortionSample> samples;
  EtaEnvelope envelope;
  DistortionSample worst;        // largest out/envelope-shape ratio at the fitted alpha
  DistortionSample worst_ratio;  // largest out/in ratio seen
  bool exhaustive = false;
};

struct ScanOptions {
  std::uint64_t seed = 17;
  std::size_t samples = 100000;           // sampled orderings when not exhaustive
  std::size_t exhaustive_budget = 1000000;  // max distinct orderings for exhaustion
};

// Scans quadruple cross-ratio distortion of the correspondence i -> map[i]
// between two spaces and fits the envelope. Runs exhaustively over distinct
// quadruple orderings when their count fits the budget, else over seeded
// samples (each sampled ordering is paired with its reciprocal).
ScanResult qm_scan(const MetricView& in, const MetricView& out, const std::vector<int>& map,
                   const ScanOptions& opt = {});

// Same machinery over triples (x,y,z): ratio d(x,y)/d(x,z).
ScanResult qs_scan(const MetricView& in, const MetricView& out, const std::vector<int>& map,
                   const ScanOptions& opt = {});

struct AffineFit {
  double slope = 1.0;      // L (or a)
  double offset = 0.0;     // A (or b): max additive excess at the fitted slope
  double scale = 0.0;      // largest value seen, for context
};

// Two-sided affine envelope v <= slope*u + offset and u <= slope*v + offset
// over the given value pairs. The slope grid starts at 1 with step 0.25; the
// reported slope is the smallest one whose offset is within 10% of the
// achievable range (or under 5% of the value scale), so near-identities fit
// at slope 1 instead of drifting up the grid.
AffineFit affine_envelope_fit(const std::vector<std::pair<double, double>>& uv,
                              double slope_cap = 16.0);

// Quasi-isometry fit of the quadrature metrics of two domains under the
// correspondence map: entry x is the image in b of ambient id x of a, and
// interior points must land on interior points, injectively. Pairs are drawn
// by the shared seeded sampler.
AffineFit qi_fit(const DomainSpace& a, const DomainSpace& b, const std::vector<int>& map,
                 QhWeightMode mode = QhWeightMode::Trapezoid, std::uint64_t seed = 17);

// Same with the logarithmic relative distance in place of the quadrature.
AffineFit j_affine_fit(const DomainSpace& a, const DomainSpace& b, const std::vector<int>& map,
                       std::uint64_t seed = 17);

}  // namespace qmgeo
