#include "canon/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace canon {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

const json& array_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_array()) throw InputError(std::string("field '") + name + "' must be an array");
  return v;
}

Rational rational_value(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw InputError("rationals must be strings of the form \"p/q\" or integers");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

}  // namespace

Graph graph_from_json(const json& j) {
  Graph g;
  for (const auto& v : array_field(j, "vertices")) {
    int w = v.contains("weight") ? int_field(v, "weight") : 0;
    g.vertices.push_back({int_field(v, "id"), w});
  }
  for (const auto& e : array_field(j, "edges")) {
    int m = e.contains("mass_label") ? int_field(e, "mass_label") : 0;
    g.edges.push_back({int_field(e, "id"), int_field(e, "source"), int_field(e, "target"), m});
  }
  if (j.contains("legs"))
    for (const auto& l : array_field(j, "legs")) g.legs.push_back({int_field(l, "index"), int_field(l, "vertex")});
  if (j.contains("orientation"))
    for (const auto& o : array_field(j, "orientation")) {
      if (!o.is_number_integer()) throw InputError("orientation entries must be edge ids");
      g.orientation.push_back(o.get<int>());
    }
  try {
    std::set<int> ids;
    for (const auto& v : g.vertices)
      if (!ids.insert(v.id).second) throw std::invalid_argument("repeated vertex id");
    ids.clear();
    for (const auto& e : g.edges)
      if (!ids.insert(e.id).second) throw std::invalid_argument("repeated edge id");
    ids.clear();
    for (const auto& l : g.legs)
      if (!ids.insert(l.index).second) throw std::invalid_argument("repeated leg index");
    g.normalize();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return g;
}

json to_json(const Graph& g) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices) j["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  j["edges"] = json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back({{"id", e.id}, {"source", e.source}, {"target", e.target}, {"mass_label", e.mass_label}});
  j["legs"] = json::array();
  for (const auto& l : g.legs) j["legs"].push_back({{"index", l.index}, {"vertex", l.vertex}});
  j["orientation"] = g.orientation;
  return j;
}

Kinematics kinematics_from_json(const json& j) {
  Kinematics k;
  k.dim = int_field(j, "dim");
  if (k.dim != 2 && k.dim != 4) throw InputError("dim must be 2 or 4");
  if (j.contains("momenta"))
    for (const auto& m : array_field(j, "momenta")) {
      int leg = int_field(m, "leg");
      const json& c = array_field(m, "components");
      if (int(c.size()) != k.dim)
        throw InputError("momentum of leg " + std::to_string(leg) + " needs " + std::to_string(k.dim) + " components");
      Quaternion q;
      q.w = rational_value(c[0]);
      q.x = rational_value(c[1]);
      if (k.dim == 4) {
        q.y = rational_value(c[2]);
        q.z = rational_value(c[3]);
      }
      if (!k.momenta.emplace(leg, q).second) throw InputError("repeated leg " + std::to_string(leg));
    }
  if (j.contains("masses"))
    for (const auto& m : array_field(j, "masses")) {
      int label = int_field(m, "label");
      if (label <= 0) throw InputError("mass labels are positive");
      if (!k.masses.emplace(label, rational_value(field(m, "m2"))).second)
        throw InputError("repeated mass label " + std::to_string(label));
    }
  return k;
}

json to_json(const Kinematics& k) {
  json j;
  j["dim"] = k.dim;
  j["momenta"] = json::array();
  for (const auto& [leg, q] : k.momenta) {
    json c = {to_string(q.w), to_string(q.x)};
    if (k.dim == 4) {
      c.push_back(to_string(q.y));
      c.push_back(to_string(q.z));
    }
    j["momenta"].push_back({{"leg", leg}, {"components", c}});
  }
  j["masses"] = json::array();
  for (const auto& [label, m2] : k.masses) j["masses"].push_back({{"label", label}, {"m2", to_string(m2)}});
  return j;
}

json routing_json(const Routing& r) {
  json j = json::array();
  for (const auto& [e, q] : r) j.push_back({{"edge", e}, {"momentum", to_string(q)}});
  return j;
}

json poly_json(const CPoly& p) {
  json j;
  j["text"] = p.str();
  j["terms"] = json::array();
  for (const auto& t : p.terms()) {
    json mono = json::object();
    for (int v = 1; v < kMaxVars; ++v)
      if (t.m.e[v]) mono["a" + std::to_string(v)] = int(t.m.e[v]);
    if (t.m.e[0]) mono["z"] = int(t.m.e[0]);
    j["terms"].push_back({{"monomial", mono}, {"re", to_string(t.c.re)}, {"im", to_string(t.c.im)}});
  }
  return j;
}

json matrix_json(const CMatrix& m) {
  json j = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
    j.push_back(row);
  }
  return j;
}

json complex_json(std::complex<double> z) { return {z.real(), z.imag()}; }

json to_json(const IntegralResult& r, bool timing) {
  json j;
  j["estimate"] = complex_json(r.estimate);
  j["stderr"] = r.stderr_;
  j["samples"] = r.samples;
  j["method"] = r.method;
  if (timing) j["seconds"] = r.seconds;
  return j;
}

json to_json(const StokesReport& r, bool timing) {
  json j;
  j["terms"] = json::array();
  for (const auto& t : r.terms) {
    json tj;
    tj["kind"] = t.kind_name();
    tj["edges"] = t.edges;
    tj["sign"] = t.sign;
    if (t.kind != StokesTerm::EdgeContraction) {
      tj["coefficient"] = to_string(t.coeff);
      tj["left"] = t.left;
      tj["right"] = t.right;
      tj["symbolic_zero"] = t.symbolic_zero;
    }
    tj["value"] = complex_json(t.value);
    tj["stderr"] = t.stderr_;
    if (t.has_oracle) {
      tj["oracle"] = complex_json(t.oracle);
      tj["oracle_stderr"] = t.oracle_stderr;
    }
    j["terms"].push_back(tj);
  }
  j["total"] = complex_json(r.total);
  j["total_stderr"] = r.total_stderr;
  j["scale"] = r.scale;
  j["residual_ratio"] = r.residual_ratio;
  if (timing) j["seconds"] = r.seconds;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Graph load_graph(const std::string& path) {
  try {
    return graph_from_json(read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Kinematics load_kinematics(const std::string& path, const Graph& g) {
  try {
    Kinematics k = kinematics_from_json(read_json_file(path));
    validate(g, k);
    return k;
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace canon
