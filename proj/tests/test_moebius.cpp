#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "qmgeo/domain_gen.hpp"
#include "qmgeo/moebius.hpp"
#include "qmgeo/transforms.hpp"

using namespace qmgeo;

namespace {

FiniteMetricSpace cloud(std::uint64_t seed, int n, AmbientKind kind = AmbientKind::Euclidean,
                        double eps = 1.0) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
  std::vector<double> pts;
  for (int i = 0; i < 2 * n; ++i) pts.push_back(2.0 * unit() - 1.0);
  return FiniteMetricSpace::from_points(std::move(pts), 2, kind, eps);
}

std::vector<int> identity_map(std::size_t n) {
  std::vector<int> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = int(i);
  return m;
}

}  // namespace

TEST_CASE("cross ratio of collinear points") {
  FiniteMetricSpace s =
      FiniteMetricSpace::from_points({0.0, 1.0, 2.0, 3.0}, 1, AmbientKind::Euclidean);
  MetricView v = view_of(s);
  CHECK(cross_ratio(v, {0, 1, 2, 3}) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("cross ratio symmetries") {
  FiniteMetricSpace s = cloud(11, 9);
  MetricView v = view_of(s);
  std::array<int, 4> q{0, 3, 5, 8};
  double cr = cross_ratio(v, q);
  CHECK(cr > 0.0);
  // swapping both pairs leaves the value bitwise unchanged
  CHECK(cross_ratio(v, {q[1], q[0], q[3], q[2]}) == cr);
  // swapping only the last pair inverts it
  CHECK(cross_ratio(v, {q[0], q[1], q[3], q[2]}) == doctest::Approx(1.0 / cr).epsilon(1e-14));
  CHECK_THROWS_AS(cross_ratio(v, {0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("snowflaking raises cross ratios to the exponent") {
  FiniteMetricSpace base = cloud(13, 10);
  FiniteMetricSpace snow(FiniteMetricSpace::from_points(
      std::vector<double>(base.coords()), 2, AmbientKind::Snowflake, 0.5));
  MetricView vb = view_of(base), vs = view_of(snow);
  for (std::array<int, 4> q : {std::array<int, 4>{0, 1, 2, 3}, std::array<int, 4>{4, 7, 2, 9},
                               std::array<int, 4>{8, 3, 6, 1}}) {
    double expected = std::pow(cross_ratio(vb, q), 0.5);
    CHECK(cross_ratio(vs, q) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("identity scan fits the trivial envelope") {
  FiniteMetricSpace s = cloud(17, 8);
  MetricView v = view_of(s);
  ScanResult r = qm_scan(v, v, identity_map(8));
  CHECK(r.exhaustive);
  CHECK(r.samples.size() == 6 * 70);  // six distinct orderings per 4-subset of 8
  CHECK(r.envelope.alpha == 1.0);
  CHECK(r.envelope.C == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& smp : r.samples) CHECK(smp.out == smp.in);
}

TEST_CASE("snowflake identity scan recovers the exponent") {
  FiniteMetricSpace base = cloud(19, 9);
  FiniteMetricSpace snow(FiniteMetricSpace::from_points(
      std::vector<double>(base.coords()), 2, AmbientKind::Snowflake, 0.5));
  ScanResult r = qm_scan(view_of(base), view_of(snow), identity_map(9));
  CHECK(r.envelope.alpha == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.envelope.C == doctest::Approx(1.0).epsilon(1e-9));
  // envelope soundness is exact by construction
  for (const auto& smp : r.samples) CHECK(smp.out <= r.envelope.eval(smp.in) * (1 + 1e-12));
  // worst_ratio dominates every sample's out/in
  double wr = r.worst_ratio.out / r.worst_ratio.in;
  for (const auto& smp : r.samples) CHECK(smp.out / smp.in <= wr * (1 + 1e-12));
}

TEST_CASE("composed snowflakes are dominated by composed envelopes") {
  FiniteMetricSpace d1 = cloud(23, 8);
  FiniteMetricSpace dh(FiniteMetricSpace::from_points(std::vector<double>(d1.coords()), 2,
                                                      AmbientKind::Snowflake, 0.5));
  FiniteMetricSpace dq(FiniteMetricSpace::from_points(std::vector<double>(d1.coords()), 2,
                                                      AmbientKind::Snowflake, 0.25));
  auto id = identity_map(8);
  ScanResult f = qm_scan(view_of(d1), view_of(dh), id);   // d -> d^(1/2)
  ScanResult g = qm_scan(view_of(dh), view_of(dq), id);   // d^(1/2) -> d^(1/4)
  ScanResult gf = qm_scan(view_of(d1), view_of(dq), id);  // the composition
  CHECK(gf.envelope.alpha == doctest::Approx(0.25).epsilon(1e-12));
  for (const auto& smp : gf.samples) {
    double composed = g.envelope.eval(f.envelope.eval(smp.in));
    REQUIRE(gf.envelope.eval(smp.in) <= composed * (1 + 1e-9));
  }
}

TEST_CASE("identity into a transformed space stays within the sixteen band") {
  FiniteMetricSpace s = cloud(29, 12);
  for (bool spherical : {true, false}) {
    TransformedSpace t = spherical ? sphericalize(s, 0) : invert(s, 0);
    std::vector<int> ids;
    for (int i = 0; i < 12; ++i)
      if (spherical || i != 0) ids.push_back(i);
    MetricView in{ids.size(), [&s, ids](int a, int b) { return s.distance(ids[a], ids[b]); }};
    MetricView out = view_of_matrix(t.chain, t.n);
    std::vector<int> map(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) map[i] = t.index_of_source(ids[i]);
    ScanResult r = qm_scan(in, out, map);
    CHECK(r.exhaustive);
    for (const auto& smp : r.samples) {
      REQUIRE(smp.out <= 16.0 * smp.in);
      REQUIRE(smp.out >= smp.in / 16.0);
    }
  }
}

TEST_CASE("seeded scans are reproducible and bounded") {
  FiniteMetricSpace s = cloud(31, 60);
  ScanOptions opt;
  opt.samples = 500;
  ScanResult a = qm_scan(view_of(s), view_of(s), identity_map(60), opt);
  CHECK_FALSE(a.exhaustive);  // 6 * C(60,4) is over the default budget
  CHECK(a.samples.size() >= 400);
  CHECK(a.samples.size() <= 1100);
  ScanResult b = qm_scan(view_of(s), view_of(s), identity_map(60), opt);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].q == b.samples[i].q);
    CHECK(a.samples[i].in == b.samples[i].in);
  }
  opt.seed = 99;
  ScanResult c = qm_scan(view_of(s), view_of(s), identity_map(60), opt);
  bool same = a.samples.size() == c.samples.size();
  if (same)
    for (std::size_t i = 0; i < a.samples.size(); ++i)
      if (a.samples[i].q != c.samples[i].q) same = false;
  CHECK_FALSE(same);
}

TEST_CASE("triple scans mirror the quadruple machinery") {
  FiniteMetricSpace s = cloud(37, 10);
  ScanResult idr = qs_scan(view_of(s), view_of(s), identity_map(10));
  CHECK(idr.envelope.alpha == 1.0);
  CHECK(idr.envelope.C == doctest::Approx(1.0).epsilon(1e-12));

  // scaling by 7 leaves every distance ratio unchanged
  std::vector<double> scaled = s.to_matrix();
  for (double& x : scaled) x *= 7.0;
  ScanResult sim = qs_scan(view_of(s), view_of_matrix(scaled, 10), identity_map(10));
  CHECK(sim.envelope.alpha == 1.0);
  CHECK(sim.envelope.C == doctest::Approx(1.0).epsilon(1e-12));

  FiniteMetricSpace snow(FiniteMetricSpace::from_points(std::vector<double>(s.coords()), 2,
                                                        AmbientKind::Snowflake, 0.5));
  ScanResult sr = qs_scan(view_of(s), view_of(snow), identity_map(10));
  CHECK(sr.envelope.alpha == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sr.envelope.C == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& smp : sr.samples) CHECK(smp.q[3] == -1);
}

TEST_CASE("scan input validation") {
  FiniteMetricSpace s = cloud(41, 6);
  std::vector<int> repeat{0, 1, 2, 3, 4, 4};
  CHECK_THROWS_AS(qm_scan(view_of(s), view_of(s), repeat), std::invalid_argument);
  std::vector<int> short_map{0, 1, 2};
  CHECK_THROWS_AS(qm_scan(view_of(s), view_of(s), short_map), std::invalid_argument);
  FiniteMetricSpace tiny = cloud(43, 3);
  CHECK_THROWS_AS(qm_scan(view_of(tiny), view_of(tiny), identity_map(3)),
                  std::invalid_argument);
}

TEST_CASE("affine envelope fitting") {
  std::vector<std::pair<double, double>> line;
  for (int i = 1; i <= 20; ++i) line.emplace_back(double(i), double(i));
  AffineFit id = affine_envelope_fit(line);
  CHECK(id.slope == 1.0);
  CHECK(id.offset == 0.0);

  // a shift small against the value scale keeps the fit at slope 1
  std::vector<std::pair<double, double>> shifted;
  for (int i = 1; i <= 20; ++i) shifted.emplace_back(double(i), double(i) + 0.5);
  AffineFit sh = affine_envelope_fit(shifted);
  CHECK(sh.slope == 1.0);
  CHECK(sh.offset == doctest::Approx(0.5).epsilon(1e-12));

  // a large shift trades slope for offset, but the envelope stays sound
  std::vector<std::pair<double, double>> wide;
  for (int i = 1; i <= 20; ++i) wide.emplace_back(double(i), double(i) + 2.0);
  AffineFit wf = affine_envelope_fit(wide);
  CHECK(wf.slope == 2.0);
  CHECK(wf.offset == doctest::Approx(1.0).epsilon(1e-12));
  for (auto& [u, v] : wide) {
    CHECK(v <= wf.slope * u + wf.offset + 1e-12);
    CHECK(u <= wf.slope * v + wf.offset + 1e-12);
  }

  std::vector<std::pair<double, double>> doubled;
  for (int i = 1; i <= 20; ++i) doubled.emplace_back(double(i), 2.0 * double(i));
  AffineFit db = affine_envelope_fit(doubled);
  CHECK(db.slope == 2.0);
  CHECK(db.offset <= 1e-12);

  CHECK_THROWS_AS(affine_envelope_fit({}), std::invalid_argument);
}

TEST_CASE("quasi-isometry fit of a domain against itself is the identity") {
  DomainSpace disk = gen_disk(0.15);
  std::vector<int> all = identity_map(disk.ambient().size());
  AffineFit qi = qi_fit(disk, disk, all);
  CHECK(qi.slope == 1.0);
  CHECK(qi.offset == 0.0);
  AffineFit jf = j_affine_fit(disk, disk, all);
  CHECK(jf.slope == 1.0);
  CHECK(jf.offset == 0.0);

  std::vector<int> collapsed = all;
  collapsed[disk.interior()[1]] = disk.interior()[0];
  CHECK_THROWS_AS(qi_fit(disk, disk, collapsed), std::invalid_argument);
}
