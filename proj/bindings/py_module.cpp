#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmgeo/domain_gen.hpp"
#include "qmgeo/json_io.hpp"
#include "qmgeo/moebius.hpp"
#include "qmgeo/quasihyperbolic.hpp"
#include "qmgeo/suite.hpp"
#include "qmgeo/transforms.hpp"
#include "qmgeo/uniformity.hpp"

namespace py = pybind11;
using namespace qmgeo;

namespace {

using Rows = std::vector<std::vector<double>>;

std::pair<std::vector<double>, std::size_t> flatten(const Rows& rows) {
  std::size_t n = rows.size();
  if (n == 0) throw std::invalid_argument("matrix must be nonempty");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("matrix must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return {std::move(flat), n};
}

Rows unflatten(const std::vector<double>& m, std::size_t n) {
  Rows rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m[i * n + j];
  return rows;
}

QhWeightMode mode_of(const std::string& s) {
  if (s == "upper") return QhWeightMode::Upper;
  if (s == "trapezoid") return QhWeightMode::Trapezoid;
  throw std::invalid_argument("mode must be \"upper\" or \"trapezoid\"");
}

const char* issue_name(MetricIssue::Kind k) {
  switch (k) {
    case MetricIssue::Kind::Diagonal: return "diagonal";
    case MetricIssue::Kind::Asymmetry: return "asymmetry";
    case MetricIssue::Kind::NonPositive: return "non_positive";
    case MetricIssue::Kind::Triangle: return "triangle";
    case MetricIssue::Kind::NotFinite: return "not_finite";
  }
  return "unknown";
}

py::dict transform_dict(const TransformedSpace& t) {
  py::dict d;
  d["kind"] = to_string(t.kind);
  d["labels"] = t.labels;
  d["infinity_index"] = t.infinity_index;
  d["base"] = unflatten(t.base, t.n);
  d["chain"] = unflatten(t.chain, t.n);
  SandwichReport s = sandwich_check(t);
  py::dict sw;
  sw["pass"] = s.pass;
  sw["min_ratio"] = s.min_ratio;
  sw["max_ratio"] = s.max_ratio;
  d["sandwich"] = sw;
  return d;
}

TransformedSpace transform_of(const Rows& rows, int p, const std::string& kind,
                              bool unbounded) {
  auto [flat, n] = flatten(rows);
  FiniteMetricSpace space = FiniteMetricSpace::from_matrix(std::move(flat), n);
  if (kind == "sphericalize") return sphericalize(space, p);
  if (kind == "invert") return invert(space, p, unbounded);
  throw std::invalid_argument("kind must be \"sphericalize\" or \"invert\"");
}

}  // namespace

PYBIND11_MODULE(_qmgeo, m) {
  m.doc() = "metric-domain geometry kernels: quasihyperbolic distances, "
            "sphericalization and inversion, cross-ratio scans";
  m.attr("__version__") = "1.0.0";

  py::class_<DomainSpace>(m, "Domain")
      .def_property_readonly("interior", [](const DomainSpace& d) { return d.interior(); })
      .def_property_readonly("boundary", [](const DomainSpace& d) { return d.boundary(); })
      .def("point",
           [](const DomainSpace& d, int i) {
             if (i < 0 || std::size_t(i) >= d.ambient().size())
               throw std::out_of_range("point id out of range");
             const double* p = d.ambient().point(i);
             return std::vector<double>(p, p + d.ambient().dim());
           },
           py::arg("i"), "ambient coordinates of a point id")
      .def("distance",
           [](const DomainSpace& d, int x, int y) { return d.ambient_distance(x, y); },
           py::arg("x"), py::arg("y"), "ambient metric between two point ids")
      .def("boundary_distance",
           [](const DomainSpace& d, int x) { return d.boundary_distance(x); }, py::arg("x"))
      .def("qh",
           [](const DomainSpace& d, int x, int y, const std::string& mode) {
             return qh_distance(d, x, y, mode_of(mode));
           },
           py::arg("x"), py::arg("y"), py::arg("mode") = "upper",
           "quasihyperbolic quadrature distance between interior ids")
      .def("j",
           [](const DomainSpace& d, int x, int y) { return j_distance(d, x, y); },
           py::arg("x"), py::arg("y"), "logarithmic relative distance")
      .def("r",
           [](const DomainSpace& d, int x, int y) { return relative_distance(d, x, y); },
           py::arg("x"), py::arg("y"))
      .def("geodesic",
           [](const DomainSpace& d, int x, int y, const std::string& mode) {
             QhPath p = qh_geodesic(d, x, y, mode_of(mode));
             py::dict out;
             out["vertices"] = p.vertices;
             out["value"] = p.value;
             out["arc_length"] = p.arc_length;
             return out;
           },
           py::arg("x"), py::arg("y"), py::arg("mode") = "upper")
      .def("uniformity",
           [](const DomainSpace& d) {
             UniformityEstimate e = uniformity_estimate(d);
             py::dict out;
             out["c_est"] = e.c_est;
             out["pair"] = std::pair<int, int>(e.x, e.y);
             out["pairs"] = e.pairs;
             out["exhaustive"] = e.exhaustive;
             return out;
           },
           "sampled uniformity-constant estimate")
      .def("to_json", [](const DomainSpace& d) { return domain_to_json(d).dump(2); })
      .def("__repr__", [](const DomainSpace& d) {
        return "<qmgeo.Domain interior=" + std::to_string(d.interior_count()) +
               " boundary=" + std::to_string(d.boundary().size()) + ">";
      });

  py::class_<ArcExample>(m, "ArcExample")
      .def_readonly("original", &ArcExample::original)
      .def_readonly("inverted", &ArcExample::inverted)
      .def_readonly("p_id", &ArcExample::p_id)
      .def_readonly("q_id", &ArcExample::q_id)
      .def_readonly("tau_q_id", &ArcExample::tau_q_id)
      .def_readonly("u", &ArcExample::u)
      .def_readonly("u_prime", &ArcExample::u_prime);

  m.def("domain_from_json",
        [](const std::string& text) { return domain_from_json(Json::parse(text)); },
        py::arg("text"), "parse a domain from its JSON serialization");

  m.def("gen_disk", &gen_disk, py::arg("h") = 0.05);
  m.def("gen_snowflake_disk", &gen_snowflake_disk, py::arg("epsilon") = 0.5,
        py::arg("h") = 0.05);
  m.def("gen_halfline", &gen_halfline, py::arg("ratio") = 1.01, py::arg("lo") = -400,
        py::arg("hi") = 400);
  m.def("gen_grid_rect", &gen_grid_rect, py::arg("w") = 2.0, py::arg("h") = 1.0,
        py::arg("s") = 0.1);
  m.def("gen_slit_disk", &gen_slit_disk, py::arg("h") = 0.05);
  m.def("gen_arc_example", &gen_arc_example, py::arg("u") = 0.4, py::arg("n") = 2000);

  m.def("validate_matrix",
        [](const Rows& rows, double tol) {
          auto [flat, n] = flatten(rows);
          FiniteMetricSpace space = FiniteMetricSpace::from_matrix(std::move(flat), n);
          py::list out;
          for (const MetricIssue& is : validate_metric(space, tol).issues) {
            py::dict d;
            d["kind"] = issue_name(is.kind);
            d["i"] = is.i;
            d["j"] = is.j;
            d["k"] = is.k;
            d["slack"] = is.slack;
            d["detail"] = is.describe();
            out.append(std::move(d));
          }
          return out;
        },
        py::arg("matrix"), py::arg("tol") = 1e-12,
        "list metric-axiom violations of a distance matrix");

  m.def("sphericalize",
        [](const Rows& rows, int p) { return transform_dict(transform_of(rows, p, "sphericalize", false)); },
        py::arg("matrix"), py::arg("p"),
        "one-point compactification metric of a distance matrix");
  m.def("invert",
        [](const Rows& rows, int p, bool unbounded) {
          return transform_dict(transform_of(rows, p, "invert", unbounded));
        },
        py::arg("matrix"), py::arg("p"), py::arg("unbounded") = false,
        "inversion metric of a distance matrix at a base point");

  m.def("roundtrip",
        [](const Rows& rows, int p) {
          auto [flat, n] = flatten(rows);
          FiniteMetricSpace space = FiniteMetricSpace::from_matrix(std::move(flat), n);
          RoundTripReport r = roundtrip_check(space, p);
          py::dict d;
          d["pass"] = r.pass;
          d["worst_ratio"] = r.worst_ratio;
          d["worst_pair"] = r.worst_pair;
          return d;
        },
        py::arg("matrix"), py::arg("p"),
        "distortion of inverting twice at the same base point");

  m.def("cross_ratio",
        [](const Rows& rows, const std::array<int, 4>& q) {
          auto [flat, n] = flatten(rows);
          return cross_ratio(view_of_matrix(flat, n), q);
        },
        py::arg("matrix"), py::arg("q"));

  m.def("scan_identity",
        [](const Rows& in_rows, const Rows& out_rows, bool triples, std::size_t samples,
           std::uint64_t seed) {
          auto [fin, nin] = flatten(in_rows);
          auto [fout, nout] = flatten(out_rows);
          if (nin != nout) throw std::invalid_argument("matrices must have matching size");
          std::vector<int> map(nin);
          for (std::size_t i = 0; i < nin; ++i) map[i] = int(i);
          ScanOptions opt;
          opt.samples = samples;
          opt.seed = seed;
          MetricView vi = view_of_matrix(fin, nin), vo = view_of_matrix(fout, nout);
          ScanResult r = triples ? qs_scan(vi, vo, map, opt) : qm_scan(vi, vo, map, opt);
          py::dict d;
          d["C"] = r.envelope.C;
          d["alpha"] = r.envelope.alpha;
          d["samples"] = r.samples.size();
          d["exhaustive"] = r.exhaustive;
          d["worst_in"] = r.worst_ratio.in;
          d["worst_out"] = r.worst_ratio.out;
          return d;
        },
        py::arg("matrix_in"), py::arg("matrix_out"), py::arg("triples") = false,
        py::arg("samples") = 100000, py::arg("seed") = 17,
        "distortion envelope of the identity correspondence between two matrices");

  m.def("default_suite_config",
        []() { return suite_config_to_json(SuiteConfig{}).dump(2); },
        "the default verification-suite configuration as JSON");
  m.def("run_suite",
        [](const std::string& config_json) {
          SuiteConfig cfg = config_json.empty()
                                ? SuiteConfig{}
                                : suite_config_from_json(Json::parse(config_json));
          py::gil_scoped_release release;
          SuiteReport rep = run_suite(cfg);
          return suite_report_to_json(rep).dump(2);
        },
        py::arg("config_json") = std::string(),
        "run the verification suite, returning the report as JSON");
}
