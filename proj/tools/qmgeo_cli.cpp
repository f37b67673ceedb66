// qmgeo: command-line front end for the metric geometry library.
//
// One subcommand per operation family; JSON in, JSON out (stdout or --out).
// Exit codes: 0 success, 1 a check failed, 2 usage or configuration error,
// 3 computation error (disconnected mesh, degenerate input).

#include <algorithm>
#include <array>
#include <cstdlib>
#include <iostream>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qmgeo/domain_gen.hpp"
#include "qmgeo/json_io.hpp"
#include "qmgeo/moebius.hpp"
#include "qmgeo/quasihyperbolic.hpp"
#include "qmgeo/suite.hpp"
#include "qmgeo/transforms.hpp"
#include "qmgeo/uniformity.hpp"

namespace {

using qmgeo::Json;

// Bad input that the user can fix: missing/malformed files, ids that do not
// exist, parameters out of range. Distinct from computation failures so the
// exit code can distinguish them.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  try {
    qmgeo::save_json_file(out_path, j);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

qmgeo::DomainSpace load_domain(const std::string& path) {
  try {
    return qmgeo::domain_from_json(qmgeo::load_json_file(path));
  } catch (const qmgeo::MeshDisconnectedError&) {
    throw;  // genuine computation failure, not a file problem
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

int require_point(const qmgeo::DomainSpace& dom, int id, const char* flag) {
  if (id < 0 || std::size_t(id) >= dom.ambient().size())
    throw UsageError(std::string(flag) + ": no point with id " + std::to_string(id));
  return id;
}

int require_interior(const qmgeo::DomainSpace& dom, int id, const char* flag) {
  require_point(dom, id, flag);
  if (!dom.is_interior(id))
    throw UsageError(std::string(flag) + ": point " + std::to_string(id) +
                     " is not an interior point");
  return id;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  double h = 0.05;
  double epsilon = 0.5;
  double ratio = 1.01;
  int lo = -400, hi = 400;
  double rect_w = 2.0, rect_h = 1.0, rect_s = 0.1;
  double u = 0.4;
  int n = 2000;
  bool inverted = false;
  std::string out;
};

int run_gen(const std::string& kind, const GenArgs& a) {
  qmgeo::DomainSpace dom;
  if (kind == "disk") {
    dom = qmgeo::gen_disk(a.h);
  } else if (kind == "snowflake_disk") {
    dom = qmgeo::gen_snowflake_disk(a.epsilon, a.h);
  } else if (kind == "halfline") {
    dom = qmgeo::gen_halfline(a.ratio, a.lo, a.hi);
  } else if (kind == "grid_rect") {
    dom = qmgeo::gen_grid_rect(a.rect_w, a.rect_h, a.rect_s);
  } else if (kind == "slit_disk") {
    dom = qmgeo::gen_slit_disk(a.h);
  } else if (kind == "arc_example") {
    qmgeo::ArcExample ex = qmgeo::gen_arc_example(a.u, a.n);
    dom = a.inverted ? std::move(ex.inverted) : std::move(ex.original);
  } else {
    throw UsageError("unknown domain kind: " + kind);
  }
  emit(qmgeo::domain_to_json(dom), a.out);
  return 0;
}

// ---------------------------------------------------------------- validate

const char* issue_kind_name(qmgeo::MetricIssue::Kind k) {
  using Kind = qmgeo::MetricIssue::Kind;
  switch (k) {
    case Kind::Diagonal: return "diagonal";
    case Kind::Asymmetry: return "asymmetry";
    case Kind::NonPositive: return "non_positive";
    case Kind::Triangle: return "triangle";
    case Kind::NotFinite: return "not_finite";
  }
  return "unknown";
}

int run_validate(const std::string& in, double tol, const std::string& out) {
  qmgeo::DomainSpace dom = load_domain(in);
  qmgeo::MetricValidation v = qmgeo::validate_metric(dom.ambient(), tol);

  Json issues = Json::array();
  for (const auto& is : v.issues) {
    issues.push_back(Json{{"kind", issue_kind_name(is.kind)},
                          {"i", is.i},
                          {"j", is.j},
                          {"k", is.k},
                          {"slack", is.slack},
                          {"detail", is.describe()}});
  }
  double min_bdist = qmgeo::kUnreachable;
  for (std::size_t l = 0; l < dom.interior_count(); ++l)
    min_bdist = std::min(min_bdist, dom.boundary_distance_local(int(l)));
  bool clearance_ok = dom.boundary().empty() || min_bdist > 0.0;
  if (!clearance_ok)
    issues.push_back(Json{{"kind", "interior_on_boundary"},
                          {"i", -1},
                          {"j", -1},
                          {"k", -1},
                          {"slack", 0.0},
                          {"detail", "an interior point has boundary distance zero"}});

  bool ok = v.ok && clearance_ok;
  Json j{{"ok", ok},
         {"points", dom.ambient().size()},
         {"interior", dom.interior_count()},
         {"boundary", dom.boundary().size()},
         {"min_boundary_distance", min_bdist},
         {"issues", issues}};
  emit(j, out);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- mesh

int run_mesh(const std::string& in, double beta, int k, bool rebuild, const std::string& out) {
  qmgeo::DomainSpace dom = load_domain(in);
  if (rebuild) {
    qmgeo::MeshParams mp = dom.mesh_params();
    if (beta > 0.0) mp.beta = beta;
    if (k > 0) mp.k = k;
    dom = qmgeo::DomainSpace::build(dom.ambient(), dom.interior(), dom.boundary(), mp);
  }
  const qmgeo::WeightedGraph& g = dom.length_graph();
  int min_deg = g.size() > 0 ? g.size() : 0, max_deg = 0;
  double total_len = 0.0, max_len = 0.0;
  for (int u = 0; u < g.size(); ++u) {
    int deg = 0;
    g.for_each_neighbor(u, [&](int, double w) {
      ++deg;
      total_len += w;
      max_len = std::max(max_len, w);
    });
    min_deg = std::min(min_deg, deg);
    max_deg = std::max(max_deg, deg);
  }
  total_len /= 2.0;  // each undirected edge visited from both ends

  Json j{{"interior", dom.interior_count()},
         {"boundary", dom.boundary().size()},
         {"beta", dom.mesh_params().beta},
         {"k", dom.mesh_params().k},
         {"edges", g.edge_count()},
         {"min_degree", min_deg},
         {"max_degree", max_deg},
         {"total_length", total_len},
         {"max_edge_length", max_len}};
  emit(j, out);
  return 0;
}

// ---------------------------------------------------------------- qh

int run_qh(const std::string& in, int x, int y, const std::string& mode_name,
           const std::string& out) {
  qmgeo::DomainSpace dom = load_domain(in);
  require_interior(dom, x, "--x");
  require_interior(dom, y, "--y");
  qmgeo::QhWeightMode mode =
      mode_name == "trapezoid" ? qmgeo::QhWeightMode::Trapezoid : qmgeo::QhWeightMode::Upper;
  Json j{{"pair", Json::array({x, y})},
         {"k", qmgeo::qh_distance(dom, x, y, mode)},
         {"j", qmgeo::j_distance(dom, x, y)},
         {"r", qmgeo::relative_distance(dom, x, y)},
         {"mode", mode_name}};
  emit(j, out);
  return 0;
}

// ---------------------------------------------------------------- transform

Json matrix_json(const std::vector<double>& m, std::size_t n) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(m[i * n + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_transform(const std::string& in, int p, const std::string& kind, bool unbounded,
                  const std::string& metric_out, const std::string& out) {
  qmgeo::DomainSpace dom = load_domain(in);
  require_point(dom, p, "--p");
  qmgeo::TransformedSpace t = kind == "invert" ? qmgeo::invert(dom.ambient(), p, unbounded)
                                               : qmgeo::sphericalize(dom.ambient(), p);
  qmgeo::SandwichReport rep = qmgeo::sandwich_check(t);

  Json metric;
  if (!metric_out.empty()) {
    Json full{{"transform", kind},
              {"p", p},
              {"labels", t.labels},
              {"infinity_index", t.infinity_index},
              {"base", matrix_json(t.base, t.n)},
              {"chain", matrix_json(t.chain, t.n)}};
    emit(full, metric_out);
    metric = metric_out;
  } else if (t.n <= 64) {
    metric = matrix_json(t.chain, t.n);
  } else {
    throw UsageError("result has " + std::to_string(t.n) +
                     " points; pass --metric-out FILE to store the chain metric");
  }

  auto label = [&](int idx) { return idx < 0 ? -1 : t.labels[idx]; };
  Json j{{"transform", kind},
         {"p", p},
         {"sandwich_worst",
          Json{{"pair", Json::array({label(rep.argmin.first), label(rep.argmin.second)})},
               {"ratio", rep.min_ratio}}},
         {"sandwich_pass", rep.pass},
         {"labels", t.labels},
         {"infinity_index", t.infinity_index},
         {"metric", metric}};
  emit(j, out);
  return rep.pass ? 0 : 1;
}

// ---------------------------------------------------------------- cr

int run_cr(const std::string& in, const std::vector<int>& q, const std::string& out) {
  qmgeo::DomainSpace dom = load_domain(in);
  for (int id : q) require_point(dom, id, "--q");
  std::array<int, 4> quad{q[0], q[1], q[2], q[3]};
  double cr = qmgeo::cross_ratio(qmgeo::view_of(dom.ambient()), quad);
  emit(Json{{"Q", q}, {"cr", cr}}, out);
  return 0;
}

// ---------------------------------------------------------------- scan

int run_scan(const std::string& in, const std::string& kind, int p, bool unbounded,
             std::size_t samples, std::uint64_t seed, bool triples, const std::string& csv,
             const std::string& out) {
  qmgeo::DomainSpace dom = load_domain(in);
  require_point(dom, p, "--p");
  const qmgeo::FiniteMetricSpace& amb = dom.ambient();
  bool inverting = kind == "invert";
  qmgeo::TransformedSpace t =
      inverting ? qmgeo::invert(amb, p, unbounded) : qmgeo::sphericalize(amb, p);

  // identity correspondence on the source points (inversion removes p)
  std::vector<int> ids;
  for (int s = 0; s < int(amb.size()); ++s)
    if (!(inverting && s == p)) ids.push_back(s);
  std::vector<int> map(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) map[i] = t.index_of_source(ids[i]);

  qmgeo::MetricView in_view{ids.size(),
                            [&amb, ids](int a, int b) { return amb.distance(ids[a], ids[b]); }};
  qmgeo::MetricView out_view = qmgeo::view_of_matrix(t.chain, t.n);
  qmgeo::ScanOptions opt;
  opt.seed = seed;
  opt.samples = samples;
  qmgeo::ScanResult r = triples ? qmgeo::qs_scan(in_view, out_view, map, opt)
                                : qmgeo::qm_scan(in_view, out_view, map, opt);

  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw UsageError("cannot write " + csv);
    f << "in,out\n";
    for (const auto& s : r.samples) f << s.in << ',' << s.out << '\n';
  }

  Json worst_q = Json::array();
  for (int i = 0; i < (triples ? 3 : 4); ++i) worst_q.push_back(ids[r.worst_ratio.q[i]]);
  Json j{{"samples", r.samples.size()},
         {"exhaustive", r.exhaustive},
         {"envelope", Json{{"C", r.envelope.C}, {"alpha", r.envelope.alpha}}},
         {"worst", Json{{"Q", worst_q}, {"cr_in", r.worst_ratio.in}, {"cr_out", r.worst_ratio.out}}}};
  emit(j, out);
  return 0;
}

// ---------------------------------------------------------------- constants

int run_constants(const std::string& in, std::uint64_t seed, std::vector<double> lambdas,
                  std::vector<double> annular_grid, const std::string& mode_name,
                  const std::string& csv, const std::string& out) {
  qmgeo::DomainSpace dom = load_domain(in);
  qmgeo::PairSampleOptions ps;
  ps.seed = seed;

  qmgeo::UniformityEstimate un = qmgeo::uniformity_estimate(dom, ps);
  qmgeo::QhUniformity qh = qmgeo::qh_uniformity(dom, ps);
  std::vector<qmgeo::QuasiconvexityRow> qc = qmgeo::quasiconvexity_estimate(dom, lambdas);

  qmgeo::MetricView view = qmgeo::view_of(dom.ambient());
  qmgeo::WeightedGraph g =
      qmgeo::knn_graph(dom.ambient(), std::max(8, dom.mesh_params().k));
  qmgeo::AnnularOptions ao;
  ao.seed = seed;
  qmgeo::AnnularCheck best{};
  double best_c = annular_grid.empty() ? 0.0 : annular_grid.back();
  bool found = false;
  for (double c : annular_grid) {
    qmgeo::AnnularCheck ac = qmgeo::annular_convexity_check(view, g, c, ao);
    if (ac.pass && !ac.vacuous) {
      best = ac;
      best_c = c;
      found = true;
      break;
    }
    best = ac;  // remember the last attempt for the failure report
  }

  qmgeo::QhWeightMode mode =
      mode_name == "upper" ? qmgeo::QhWeightMode::Upper : qmgeo::QhWeightMode::Trapezoid;
  qmgeo::AdditiveFit af = qmgeo::additive_fit(dom, ps, mode);

  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw UsageError("cannot write " + csv);
    f << "c,cprime\n";
    for (const auto& [c, cp] : af.table) f << c << ',' << cp << '\n';
  }

  Json qc_rows = Json::array();
  Json qc_witness = Json::array();
  for (const auto& row : qc) {
    qc_rows.push_back(Json{{"lambda", row.lambda}, {"c", row.c}, {"vacuous", row.vacuous}});
    qc_witness.push_back(Json{{"lambda", row.lambda},
                              {"center", row.center},
                              {"pair", Json::array({row.y1, row.y2})}});
  }
  Json j{{"c_uniform", un.c_est},
         {"c_qh", qh.c_upper},
         {"quasiconvex", qc_rows},
         {"annular", Json{{"c", best_c}, {"pass", found}, {"vacuous", best.vacuous}}},
         {"additive", Json{{"c", af.c}, {"cprime", af.cprime}}},
         {"pairs", un.pairs},
         {"exhaustive", un.exhaustive},
         {"mode", mode_name},
         {"seed", seed},
         {"witnesses",
          Json{{"uniformity", Json{{"pair", Json::array({un.x, un.y})},
                                   {"turning", un.worst.turning},
                                   {"cigar", un.worst.cigar},
                                   {"score", un.worst.score}}},
               {"qh", Json{{"pair", Json::array({qh.x, qh.y})},
                           {"c_trapezoid", qh.c_trapezoid},
                           {"c_upper", qh.c_upper}}},
               {"quasiconvex", qc_witness},
               {"annular", Json{{"center", best.center},
                                {"pair", Json::array({best.y, best.z})},
                                {"r", best.r},
                                {"worst_ratio", best.worst_ratio}}},
               {"additive", Json{{"pair", Json::array({af.x, af.y})}}}}}};
  emit(j, out);
  return 0;
}

// ---------------------------------------------------------------- suite

int run_suite_cmd(const std::string& config_path, bool seed_given, std::uint64_t seed,
                  bool dump_config, const std::string& out) {
  qmgeo::SuiteConfig cfg;
  if (!config_path.empty()) {
    Json j;
    try {
      j = qmgeo::load_json_file(config_path);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    cfg = qmgeo::suite_config_from_json(j);
  }
  if (seed_given) cfg.seed = seed;

  if (dump_config) {
    emit(qmgeo::suite_config_to_json(cfg), out);
    return 0;
  }

  qmgeo::SuiteReport rep = qmgeo::run_suite(cfg);
  for (const auto& c : rep.checks)
    std::cerr << c.id << ": " << c.status << " (" << c.runtime_ms << " ms)\n";
  std::cerr << "overall: " << (rep.pass ? "pass" : "fail") << " (" << rep.runtime_ms << " ms)\n";
  emit(qmgeo::suite_report_to_json(rep), out);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  // Reserved concurrency knob: validated here, consulted by parallel sections
  // if any are ever enabled. Current kernels run sequentially so that reports
  // are reproducible bit for bit.
  if (const char* tc = std::getenv("QMGEO_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(tc, &end, 10);
    if (end == tc || *end != '\0' || v <= 0)
      std::cerr << "warning: QMGEO_THREADS ignored (not a positive integer)\n";
  }

  CLI::App app{"metric geometry toolkit: quasihyperbolic distances, "
               "sphericalization/inversion, distortion scans, domain constants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qmgeo 1.0.0");

  // gen
  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a test domain as JSON");
  gen->require_subcommand(1);
  auto add_out = [](CLI::App* cmd, std::string& out) {
    cmd->add_option("--out", out, "write JSON here instead of stdout");
  };
  // these take a long option named --h, which the default -h help short flag
  // would shadow
  auto long_help_only = [](CLI::App* cmd) {
    cmd->set_help_flag("--help", "print this help message and exit");
    return cmd;
  };
  auto* g_disk = long_help_only(gen->add_subcommand("disk", "unit disk, square grid"));
  g_disk->add_option("--h", ga.h, "grid spacing, in (0, 0.2]")->capture_default_str();
  add_out(g_disk, ga.out);
  auto* g_snow = long_help_only(gen->add_subcommand("snowflake_disk", "unit disk with distance^epsilon"));
  g_snow->add_option("--epsilon", ga.epsilon, "snowflake exponent, in (0, 1)")
      ->capture_default_str();
  g_snow->add_option("--h", ga.h, "grid spacing")->capture_default_str();
  add_out(g_snow, ga.out);
  auto* g_half = gen->add_subcommand("halfline", "geometric samples of (0, inf)");
  g_half->add_option("--ratio", ga.ratio, "sampling ratio, > 1")->capture_default_str();
  g_half->add_option("--lo", ga.lo, "lowest exponent")->capture_default_str();
  g_half->add_option("--hi", ga.hi, "highest exponent")->capture_default_str();
  add_out(g_half, ga.out);
  auto* g_rect = long_help_only(gen->add_subcommand("grid_rect", "open rectangle (0,w) x (0,h)"));
  g_rect->add_option("--w", ga.rect_w, "width")->capture_default_str();
  g_rect->add_option("--h", ga.rect_h, "height")->capture_default_str();
  g_rect->add_option("--s", ga.rect_s, "grid spacing")->capture_default_str();
  add_out(g_rect, ga.out);
  auto* g_slit = long_help_only(gen->add_subcommand("slit_disk", "unit disk minus the slit [0,1) x {0}"));
  g_slit->add_option("--h", ga.h, "grid spacing, in (0, 0.2]")->capture_default_str();
  add_out(g_slit, ga.out);
  auto* g_arc = gen->add_subcommand("arc_example", "circular arc with two-point boundary");
  g_arc->add_option("--u", ga.u, "angular gap, in (0, pi/2)")->capture_default_str();
  g_arc->add_option("--n", ga.n, "arc samples, >= 100")->capture_default_str();
  g_arc->add_flag("--inverted", ga.inverted, "emit the inverted chart instead of the arc");
  add_out(g_arc, ga.out);

  // validate
  std::string v_in, v_out;
  double v_tol = 1e-12;
  auto* validate = app.add_subcommand("validate", "check metric axioms and domain invariants");
  validate->add_option("--in", v_in, "domain JSON file")->required();
  validate->add_option("--tol", v_tol, "triangle inequality tolerance")->capture_default_str();
  add_out(validate, v_out);

  // mesh
  std::string m_in, m_out;
  double m_beta = 0.0;
  int m_k = 0;
  auto* mesh = app.add_subcommand("mesh", "report mesh statistics, optionally remeshing");
  mesh->add_option("--in", m_in, "domain JSON file")->required();
  auto* m_beta_opt = mesh->add_option("--beta", m_beta, "clearance fraction, in (0, 1/2]");
  auto* m_k_opt = mesh->add_option("--k", m_k, "neighbor candidates per point");
  add_out(mesh, m_out);

  // qh
  std::string q_in, q_mode = "upper", q_out;
  int q_x = 0, q_y = 0;
  auto* qh = app.add_subcommand("qh", "quasihyperbolic distance between interior points");
  qh->add_option("--in", q_in, "domain JSON file")->required();
  qh->add_option("--x", q_x, "interior point id")->required();
  qh->add_option("--y", q_y, "interior point id")->required();
  qh->add_option("--mode", q_mode, "quadrature mode")
      ->check(CLI::IsMember({"upper", "trapezoid"}))
      ->capture_default_str();
  add_out(qh, q_out);

  // transform
  std::string t_in, t_kind, t_metric_out, t_out;
  int t_p = 0;
  bool t_unbounded = false;
  auto* transform = app.add_subcommand("transform", "sphericalize or invert at a base point");
  transform->add_option("--in", t_in, "domain JSON file")->required();
  transform->add_option("--p", t_p, "base point id")->required();
  transform->add_option("--kind", t_kind, "which transform")
      ->check(CLI::IsMember({"sphericalize", "invert"}))
      ->required();
  transform->add_flag("--unbounded", t_unbounded,
                      "treat the space as unbounded (inversion keeps a point at infinity)");
  transform->add_option("--metric-out", t_metric_out,
                        "write base and chain matrices to this file");
  add_out(transform, t_out);

  // cr
  std::string c_in, c_out;
  std::vector<int> c_q;
  auto* cr = app.add_subcommand("cr", "metric cross ratio of four points");
  cr->add_option("--in", c_in, "domain JSON file")->required();
  cr->add_option("--q", c_q, "four point ids")->expected(4)->required();
  add_out(cr, c_out);

  // scan
  std::string s_in, s_kind, s_csv, s_out;
  int s_p = 0;
  bool s_unbounded = false, s_triples = false;
  std::size_t s_samples = 100000;
  std::uint64_t s_seed = 17;
  auto* scan = app.add_subcommand("scan",
                                  "distortion scan of the identity map into a transformed space");
  scan->add_option("--in", s_in, "domain JSON file")->required();
  scan->add_option("--transform", s_kind, "which transform")
      ->check(CLI::IsMember({"sphericalize", "invert"}))
      ->required();
  scan->add_option("--p", s_p, "base point id")->required();
  scan->add_flag("--unbounded", s_unbounded, "inversion keeps a point at infinity");
  scan->add_option("--samples", s_samples, "sample budget when not exhaustive")
      ->capture_default_str();
  scan->add_option("--seed", s_seed, "sampling seed")->capture_default_str();
  scan->add_flag("--triples", s_triples, "scan distance ratios of triples instead of cross ratios");
  scan->add_option("--csv", s_csv, "write the (in, out) sample columns here");
  add_out(scan, s_out);

  // constants
  std::string k_in, k_mode = "trapezoid", k_csv, k_out;
  std::uint64_t k_seed = 17;
  std::vector<double> k_lambdas{0.25, 0.5, 1.0};
  std::vector<double> k_annular{1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  auto* constants = app.add_subcommand("constants", "estimate the domain constants");
  constants->add_option("--in", k_in, "domain JSON file")->required();
  constants->add_option("--seed", k_seed, "pair sampling seed")->capture_default_str();
  constants->add_option("--lambdas", k_lambdas, "quasiconvexity ball fractions")
      ->capture_default_str();
  constants->add_option("--annular", k_annular, "annular convexity candidate grid")
      ->capture_default_str();
  constants->add_option("--mode", k_mode, "quadrature mode for the additive fit")
      ->check(CLI::IsMember({"upper", "trapezoid"}))
      ->capture_default_str();
  constants->add_option("--csv", k_csv, "write the additive fit table here");
  add_out(constants, k_out);

  // suite
  std::string su_config, su_out;
  std::uint64_t su_seed = 17;
  bool su_dump = false;
  auto* suite = app.add_subcommand("suite", "run the full verification suite");
  suite->add_option("--config", su_config, "suite configuration JSON");
  auto* su_seed_opt = suite->add_option("--seed", su_seed, "override the configured seed");
  suite->add_flag("--dump-config", su_dump, "print the effective configuration and exit");
  add_out(suite, su_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help and version succeed; anything else is usage
  }

  try {
    if (gen->parsed()) {
      for (auto* kind : {g_disk, g_snow, g_half, g_rect, g_slit, g_arc})
        if (kind->parsed()) return run_gen(kind->get_name(), ga);
    }
    if (validate->parsed()) return run_validate(v_in, v_tol, v_out);
    if (mesh->parsed())
      return run_mesh(m_in, m_beta, m_k, m_beta_opt->count() > 0 || m_k_opt->count() > 0, m_out);
    if (qh->parsed()) return run_qh(q_in, q_x, q_y, q_mode, q_out);
    if (transform->parsed())
      return run_transform(t_in, t_p, t_kind, t_unbounded, t_metric_out, t_out);
    if (cr->parsed()) return run_cr(c_in, c_q, c_out);
    if (scan->parsed())
      return run_scan(s_in, s_kind, s_p, s_unbounded, s_samples, s_seed, s_triples, s_csv, s_out);
    if (constants->parsed())
      return run_constants(k_in, k_seed, k_lambdas, k_annular, k_mode, k_csv, k_out);
    if (suite->parsed())
      return run_suite_cmd(su_config, su_seed_opt->count() > 0, su_seed, su_dump, su_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qmgeo::SuiteConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qmgeo::MeshDisconnectedError& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 3;
  }
  return 2;  // no subcommand matched (require_subcommand should prevent this)
}
