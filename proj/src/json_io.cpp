#include "qmgeo/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace qmgeo {

Json domain_to_json(const DomainSpace& dom) {
  const FiniteMetricSpace& a = dom.ambient();
  Json amb;
  amb["kind"] = to_string(a.kind());
  if (a.kind() == AmbientKind::Snowflake) amb["epsilon"] = a.epsilon();
  if (a.kind() == AmbientKind::Matrix) {
    Json rows = Json::array();
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(a.matrix()[i * n + j]);
      rows.push_back(std::move(row));
    }
    amb["matrix"] = std::move(rows);
  }

  Json out;
  out["ambient"] = std::move(amb);
  if (a.has_coords()) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
      Json pt = Json::array();
      for (int d = 0; d < a.dim(); ++d) pt.push_back(a.point(int(i))[d]);
      pts.push_back(std::move(pt));
    }
    out["points"] = std::move(pts);
  } else {
    out["points"] = nullptr;
  }
  out["interior"] = dom.interior();
  out["boundary"] = dom.boundary();
  out["mesh"] = Json{{"beta", dom.mesh_params().beta}, {"k", dom.mesh_params().k}};
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error("domain file: " + what);
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing \"") + key + "\"");
  return *it;
}

std::vector<int> id_list(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) bad(std::string("\"") + key + "\" must be an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const Json& e : v) {
    if (!e.is_number_integer()) bad(std::string("\"") + key + "\" must hold integer ids");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

DomainSpace domain_from_json(const Json& j) {
  if (!j.is_object()) bad("top level must be an object");
  const Json& amb = field(j, "ambient");
  const Json& kind_j = field(amb, "kind");
  if (!kind_j.is_string()) bad("\"ambient.kind\" must be a string");
  AmbientKind kind;
  try {
    kind = ambient_kind_from_string(kind_j.get<std::string>());
  } catch (const std::exception& e) {
    bad(e.what());
  }

  FiniteMetricSpace space;
  if (kind == AmbientKind::Matrix) {
    const Json& m = field(amb, "matrix");
    if (!m.is_array() || m.empty()) bad("\"ambient.matrix\" must be a nonempty array of rows");
    const std::size_t n = m.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const Json& row : m) {
      if (!row.is_array() || row.size() != n) bad("\"ambient.matrix\" must be square");
      for (const Json& e : row) {
        if (!e.is_number()) bad("\"ambient.matrix\" entries must be numbers");
        flat.push_back(e.get<double>());
      }
    }
    space = FiniteMetricSpace::from_matrix(std::move(flat), n);
  } else {
    const Json& pts = field(j, "points");
    if (!pts.is_array() || pts.empty()) bad("\"points\" must be a nonempty array");
    if (!pts[0].is_array() || pts[0].empty()) bad("\"points\" entries must be coordinate arrays");
    const int dim = int(pts[0].size());
    std::vector<double> coords;
    coords.reserve(pts.size() * dim);
    for (const Json& pt : pts) {
      if (!pt.is_array() || int(pt.size()) != dim) bad("\"points\" entries must share one dimension");
      for (const Json& c : pt) {
        if (!c.is_number()) bad("\"points\" coordinates must be numbers");
        coords.push_back(c.get<double>());
      }
    }
    double eps = 1.0;
    if (kind == AmbientKind::Snowflake) {
      const Json& e = field(amb, "epsilon");
      if (!e.is_number()) bad("\"ambient.epsilon\" must be a number");
      eps = e.get<double>();
    }
    try {
      space = FiniteMetricSpace::from_points(std::move(coords), dim, kind, eps);
    } catch (const std::exception& e) {
      bad(e.what());
    }
  }

  const Json& mesh = field(j, "mesh");
  const Json& beta_j = field(mesh, "beta");
  const Json& k_j = field(mesh, "k");
  if (!beta_j.is_number() || !k_j.is_number_integer()) bad("\"mesh\" needs numeric beta and integer k");
  MeshParams params{beta_j.get<double>(), k_j.get<int>()};

  try {
    return DomainSpace::build(std::move(space), id_list(j, "interior"), id_list(j, "boundary"),
                              params);
  } catch (const MeshDisconnectedError&) {
    throw;
  } catch (const std::exception& e) {
    bad(e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qmgeo
