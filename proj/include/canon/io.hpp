#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "canon/graph.hpp"
#include "canon/kinematics.hpp"
#include "canon/poly.hpp"
#include "canon/stokes.hpp"

namespace canon {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "canon/1";
inline constexpr const char* kToolVersion = "1.0.0";

// Malformed or inconsistent input files.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph graph_from_json(const json& j);
json to_json(const Graph& g);
Kinematics kinematics_from_json(const json& j);
json to_json(const Kinematics& k);
json routing_json(const Routing& r);

json poly_json(const CPoly& p);
json matrix_json(const CMatrix& m);
json to_json(const IntegralResult& r, bool timing = true);
json to_json(const StokesReport& r, bool timing = true);

json read_json_file(const std::string& path);
Graph load_graph(const std::string& path);
// Validated against the graph.
Kinematics load_kinematics(const std::string& path, const Graph& g);
void write_json_file(const std::string& path, const json& j);

json complex_json(std::complex<double> z);

}  // namespace canon
