#pragma once

#include <vector>

#include "qmgeo/domain.hpp"

namespace qmgeo {

// Generators for the test domains. Each is a pure function of its parameters.
// Grid generators keep a grid point interior only when its boundary distance
// clears the mesh threshold (2^(1/epsilon) * h for snowflake exponents,
// 2h in the Euclidean case), so that every kept point can reach its axis
// neighbors under the beta = 1/2 clearance rule and the mesh connects.

// Unit disk: square grid of spacing h inside, 720 circle samples as boundary.
DomainSpace gen_disk(double h);

// Same grid construction with the ambient distance raised to epsilon.
DomainSpace gen_snowflake_disk(double epsilon, double h);

// (0, infinity) sampled geometrically at ratio^i for i in [lo, hi], plus the
// exact points 1, 2, 3 so analytic anchors are hit without rounding.
// Boundary is the single point 0.
DomainSpace gen_halfline(double ratio, int lo, int hi);

// Open rectangle (0,w) x (0,h) gridded at spacing s; boundary sampled along
// the perimeter at spacing s/2.
DomainSpace gen_grid_rect(double w, double h, double s);

// Unit disk minus the slit [0,1) x {0}: circle samples plus slit samples act
// as boundary.
DomainSpace gen_slit_disk(double h);

// The circular-arc domain: samples of the circle of radius 1/2 centered at
// (0, 1/2), theta uniform on the open range (-pi/2, 3pi/2 - u), with the
// two-point boundary {p, q}, p = origin, q at theta = 3pi/2 - u. The same
// kept samples are also emitted in inverted coordinates tau(x) = x/|x|^2,
// where the image is a sample of the horizontal line y = 1 with boundary
// {tau(q)}; head and tail samples that cannot satisfy the clearance rule in
// either chart are trimmed, identically in both.
struct ArcExample {
  DomainSpace original;
  DomainSpace inverted;
  int p_id = -1, q_id = -1;  // ambient ids in `original`
  int tau_q_id = -1;         // ambient id in `inverted`
  std::vector<int> kept;     // indices into the untrimmed sample sequence
  double u = 0.0;
  double u_prime = 0.0;      // x-coordinate of tau(q); the image line starts there
};

ArcExample gen_arc_example(double u, int n);

}  // namespace qmgeo
