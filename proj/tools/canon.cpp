#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "canon/forms.hpp"
#include "canon/integrator.hpp"
#include "canon/io.hpp"
#include "canon/laplacian.hpp"
#include "canon/library.hpp"
#include "canon/stokes.hpp"
#include "canon/symanzik.hpp"

using namespace canon;

namespace {

struct Options {
  std::string graph_path;
  std::string kin_path;
  std::string form;
  std::string check;
  std::string blocks;
  std::string sampler = "uniform-dirichlet";
  bool json_out = false;
  bool no_timing = false;
  std::uint64_t seed = 1;
  long samples = 200000;
  int batches = 20;
  int threads = 0;
  double tolerance = 5e-3;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sibling_kinematics(const std::string& graph_path) {
  std::filesystem::path p(graph_path);
  std::string stem = p.stem().string();
  return (p.parent_path() / (stem + ".kin.json")).string();
}

IntegralConfig config(const Options& o) {
  IntegralConfig c;
  c.seed = o.seed;
  c.samples = o.samples;
  c.batches = o.batches;
  c.threads = o.threads;
  try {
    c.sampler = parse_sampler(o.sampler);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return c;
}

json manifest(const std::string& sub, const Options& o, bool uses_kin) {
  json m;
  m["tool"] = "canon";
  m["version"] = kToolVersion;
  m["subcommand"] = sub;
  json inputs = json::array();
  if (!o.graph_path.empty()) inputs.push_back(o.graph_path);
  if (uses_kin) inputs.push_back(o.kin_path.empty() ? sibling_kinematics(o.graph_path) : o.kin_path);
  m["inputs"] = inputs;
  m["config"] = {{"form", o.form},       {"samples", o.samples}, {"batches", o.batches},
                 {"sampler", o.sampler}, {"threads", o.threads}, {"tolerance", o.tolerance},
                 {"check", o.check},     {"blocks", o.blocks}};
  m["seed"] = o.seed;
  return m;
}

json envelope(const std::string& sub, const Options& o, bool uses_kin) {
  json j;
  j["schema"] = kSchemaVersion;
  j["manifest"] = manifest(sub, o, uses_kin);
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

Graph graph_of(const Options& o) { return load_graph(o.graph_path); }

Kinematics kin_of(const Options& o, const Graph& g) {
  return load_kinematics(o.kin_path.empty() ? sibling_kinematics(o.graph_path) : o.kin_path, g);
}

FormSpec form_of(const Options& o) {
  if (o.form.empty()) throw InputError("--form is required");
  try {
    return parse_form_spec(o.form);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

std::vector<std::vector<int>> parse_blocks(const std::string& s) {
  // "1,2;3" -> {{1,2},{3}}
  std::vector<std::vector<int>> out;
  std::stringstream ss(s);
  std::string block;
  while (std::getline(ss, block, ';')) {
    std::vector<int> b;
    std::stringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      try {
        b.push_back(std::stoi(item));
      } catch (...) {
        throw InputError("bad vertex id '" + item + "' in --blocks");
      }
    }
    out.push_back(b);
  }
  if (out.empty()) throw InputError("--blocks is required, e.g. \"1,2;3\"");
  return out;
}

// Writes c * psi^a * xi^b when the denominator has that shape.
std::optional<std::pair<int, int>> denominator_powers(const CPoly& den, const CPoly& ps, const CPoly& x) {
  CPoly rest = den;
  int a = 0, b = 0;
  while (!rest.is_constant()) {
    if (auto q = divide_exact(rest, x)) {
      rest = *q;
      ++b;
    } else if (auto q2 = divide_exact(rest, ps)) {
      rest = *q2;
      ++a;
    } else {
      return std::nullopt;
    }
  }
  return std::pair{a, b};
}

int cmd_poly(const std::string& which, const Options& o) {
  Graph g = graph_of(o);
  CPoly p;
  bool uses_kin = which != "psi";
  if (which == "psi") {
    p = psi(g);
  } else {
    Kinematics k = kin_of(o, g);
    p = which == "phi" ? phi(g, k) : xi(g, k);
  }
  if (o.json_out) {
    json j = envelope(which, o, uses_kin);
    j["polynomial"] = poly_json(p);
    emit(j);
  } else {
    std::cout << p.str() << "\n";
  }
  return 0;
}

int cmd_forest(const Options& o) {
  Graph g = graph_of(o);
  auto blocks = parse_blocks(o.blocks);
  CPoly p;
  try {
    p = forest_poly(g, blocks);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (o.json_out) {
    json j = envelope("forest", o, false);
    j["blocks"] = blocks;
    j["polynomial"] = poly_json(p);
    emit(j);
  } else {
    std::cout << p.str() << "\n";
  }
  return 0;
}

int cmd_laplacian(const Options& o) {
  Graph g = graph_of(o);
  Kinematics k = kin_of(o, g);
  LaplacianBundle b = make_bundle(g, k);
  CPoly lhs = det_gen(b), x = xi(g, k);
  CPoly rhs = k.dim == 4 ? x * x : x;
  bool ok = lhs == rhs;
  bool psi_ok = det_cofactor(b.lambda) == psi(g);
  if (o.json_out) {
    json j = envelope("laplacian", o, true);
    json basis = json::array();
    for (int c = 0; c < b.basis.size(); ++c) {
      json cyc = json::object();
      for (int id : b.basis.edge_ids)
        if (int v = b.basis.coefficient(c, id)) cyc["e" + std::to_string(id)] = v;
      basis.push_back(cyc);
    }
    j["cycle_basis"] = basis;
    j["routing"] = routing_json(b.routing);
    j["laplacian"] = matrix_json(b.lambda);
    json lt = json::array();
    for (int i = 0; i < b.lambda_tilde.rows(); ++i) {
      json row = json::array();
      for (int c = 0; c < b.lambda_tilde.cols(); ++c) row.push_back(b.lambda_tilde(i, c).str());
      lt.push_back(row);
    }
    j["generalized_laplacian"] = lt;
    if (k.dim == 4) j["complex_adjoint"] = matrix_json(b.lambda_tilde_matrix());
    j["identities"] = {{"det_laplacian_equals_psi", psi_ok},
                       {k.dim == 4 ? "det_chi_equals_xi_squared" : "det_generalized_equals_xi", ok}};
    emit(j);
  } else {
    std::cout << "cycle basis:\n";
    for (int c = 0; c < b.basis.size(); ++c) {
      std::cout << "  c" << c + 1 << " =";
      for (int id : b.basis.edge_ids)
        if (int v = b.basis.coefficient(c, id)) std::cout << (v > 0 ? " +" : " -") << "e" << id;
      std::cout << "\n";
    }
    std::cout << "routing:\n";
    for (const auto& [e, mu] : b.routing) std::cout << "  mu" << e << " = " << to_string(mu) << "\n";
    std::cout << "laplacian:\n";
    for (int i = 0; i < b.lambda.rows(); ++i) {
      std::cout << "  [";
      for (int c = 0; c < b.lambda.cols(); ++c) std::cout << (c ? ", " : "") << b.lambda(i, c).str();
      std::cout << "]\n";
    }
    std::cout << "generalized laplacian:\n";
    for (int i = 0; i < b.lambda_tilde.rows(); ++i) {
      std::cout << "  [";
      for (int c = 0; c < b.lambda_tilde.cols(); ++c) std::cout << (c ? ", " : "") << b.lambda_tilde(i, c).str();
      std::cout << "]\n";
    }
    std::cout << (psi_ok ? "PASS" : "FAIL") << " det laplacian = psi\n";
    std::cout << (ok ? "PASS" : "FAIL") << (k.dim == 4 ? " det chi(generalized) = xi^2\n" : " det generalized = xi\n");
  }
  if (!ok || !psi_ok) throw VerificationFailure("determinant identity failed");
  return 0;
}

bool check_form(const std::string& check, const FormSpec& spec, const Graph& g, const Kinematics& k,
                const SymbolicForm& f, std::uint64_t seed, std::string& detail) {
  if (check == "closed") return exterior_derivative(f).is_zero();
  if (check == "restrict") {
    for (const auto& e : g.edges) {
      if (e.is_tadpole()) continue;
      Graph ge = contract(g, e.id);
      if (!equal(restrict_face(f, e.id), realize(spec, ge, restrict_kinematics(ge, k)))) {
        detail = "face a" + std::to_string(e.id) + " = 0";
        return false;
      }
    }
    return true;
  }
  if (check == "invariance") {
    std::mt19937_64 rng(seed);
    LaplacianBundle b = make_bundle(g, k);
    for (int i = 0; i < 5; ++i) {
      auto p = random_unimodular(b.loops(), rng);
      std::vector<Quaternion> s;
      for (int j = 0; j < b.loops(); ++j) s.push_back(random_momentum(rng, k.dim));
      if (!equal(realize(spec, transform(b, p, s)), f)) {
        detail = "transform " + std::to_string(i);
        return false;
      }
    }
    return true;
  }
  throw InputError("--check must be closed, restrict or invariance");
}

int cmd_form(const Options& o) {
  Graph g = graph_of(o);
  Kinematics k = kin_of(o, g);
  FormSpec spec = form_of(o);
  SymbolicForm f;
  try {
    f = realize(spec, g, k);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  CPoly ps = psi(g), x = xi(g, k);
  bool ok = true;
  std::string detail;
  if (!o.check.empty()) ok = check_form(o.check, spec, g, k, f, o.seed, detail);
  auto subset_name = [](const std::vector<int>& s) {
    std::string n;
    for (int v : s) n += (n.empty() ? "da" : "^da") + std::to_string(v);
    return n.empty() ? std::string("1") : n;
  };
  if (o.json_out) {
    json j = envelope("form", o, true);
    j["form"] = spec.str();
    j["degree"] = f.degree;
    j["zero"] = f.is_zero();
    json cs = json::array();
    for (const auto& [s, r] : f.coeffs) {
      if (r.is_zero()) continue;
      json c;
      c["differential"] = subset_name(s);
      c["numerator"] = poly_json(r.num);
      c["denominator"] = poly_json(r.den);
      if (auto pw = denominator_powers(r.den, ps, x)) c["denominator_power"] = {{"psi", pw->first}, {"xi", pw->second}};
      cs.push_back(c);
    }
    j["coefficients"] = cs;
    if (!o.check.empty()) j["check"] = {{"name", o.check}, {"passed", ok}, {"detail", detail}};
    emit(j);
  } else {
    std::cout << "form " << spec.str() << " degree " << f.degree << (f.is_zero() ? " (zero)" : "") << "\n";
    for (const auto& [s, r] : f.coeffs) {
      if (r.is_zero()) continue;
      std::cout << subset_name(s) << ":\n  numerator: " << r.num.str() << "\n  denominator: ";
      if (auto pw = denominator_powers(r.den, ps, x))
        std::cout << "psi^" << pw->first << " xi^" << pw->second << " up to a constant\n";
      else
        std::cout << r.den.str() << "\n";
    }
    if (!o.check.empty()) std::cout << (ok ? "PASS " : "FAIL ") << o.check << (detail.empty() ? "" : " at " + detail) << "\n";
  }
  if (!ok) throw VerificationFailure("form check failed");
  return 0;
}

void print_result(const IntegralResult& r, bool timing) {
  std::cout.precision(12);
  std::cout << "estimate: " << r.estimate.real() << (r.estimate.imag() < 0 ? " - " : " + ")
            << std::abs(r.estimate.imag()) << "i\nstderr: " << r.stderr_ << "\nsamples: " << r.samples
            << "\nmethod: " << r.method << "\n";
  if (timing) std::cout << "seconds: " << r.seconds << "\n";
}

int cmd_integrate(const Options& o) {
  Graph g = graph_of(o);
  Kinematics k = kin_of(o, g);
  FormSpec spec = form_of(o);
  IntegralResult r;
  try {
    r = integrate(spec, g, k, config(o));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (o.json_out) {
    json j = envelope("integrate", o, true);
    j["form"] = spec.str();
    j["result"] = to_json(r, !o.no_timing);
    emit(j);
  } else {
    print_result(r, !o.no_timing);
  }
  return 0;
}

void print_report(const StokesReport& r, bool timing) {
  std::cout.precision(10);
  for (const auto& t : r.terms) {
    std::cout << t.kind_name() << " {";
    for (std::size_t i = 0; i < t.edges.size(); ++i) std::cout << (i ? "," : "") << t.edges[i];
    std::cout << "} sign " << t.sign;
    if (t.kind != StokesTerm::EdgeContraction)
      std::cout << " coeff " << to_string(t.coeff) << " [" << t.left << " | " << t.right << "]"
                << (t.symbolic_zero ? " symbolic zero" : "");
    std::cout << " value " << t.value.real() << "," << t.value.imag() << " +- " << t.stderr_;
    if (t.has_oracle) std::cout << " oracle " << t.oracle.real() << "," << t.oracle.imag() << " +- " << t.oracle_stderr;
    std::cout << "\n";
  }
  std::cout << "total " << r.total.real() << "," << r.total.imag() << " +- " << r.total_stderr << "\nscale "
            << r.scale << "\nresidual ratio " << r.residual_ratio << "\n";
  if (timing) std::cout << "seconds " << r.seconds << "\n";
}

int report_and_check(const std::string& sub, const Options& o, const StokesReport& r) {
  bool ok = r.residual_ratio < o.tolerance || r.within_sigma(3);
  if (o.json_out) {
    json j = envelope(sub, o, true);
    j["report"] = to_json(r, !o.no_timing);
    j["passed"] = ok;
    emit(j);
  } else {
    print_report(r, !o.no_timing);
    std::cout << (ok ? "PASS" : "FAIL") << " " << sub << "\n";
  }
  if (!ok) throw VerificationFailure("relation not satisfied within tolerance");
  return 0;
}

int cmd_verify_stokes(const Options& o) {
  Graph g = graph_of(o);
  Kinematics k = kin_of(o, g);
  FormSpec spec = form_of(o);
  StokesReport r;
  try {
    r = stokes_residual(g, k, spec, config(o));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return report_and_check("verify-stokes", o, r);
}

int cmd_five_term(const Options& o) {
  Graph g = graph_of(o);
  Kinematics k = kin_of(o, g);
  StokesReport r;
  try {
    r = five_term_box(g, k, config(o));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return report_and_check("five-term", o, r);
}

int cmd_selftest(const Options& o) {
  int failures = 0;
  auto line = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };
  for (const auto& name : builtin_names()) {
    Graph g = builtin_graph(name);
    Kinematics k = reference_kinematics(name);
    LaplacianBundle b = make_bundle(g, k);
    line(det_cofactor(b.lambda) == psi(g), name + ": det laplacian = psi");
    CPoly x = xi(g, k);
    if (g.num_edges() <= 6 && (k.dim == 2 || g.loop_number() <= 1)) {
      CPoly d = det_bareiss(b.lambda_tilde_matrix());
      line(k.dim == 4 ? d == x * x : d == x, name + (k.dim == 4 ? ": det chi = xi^2" : ": det generalized = xi"));
    }
    if (k.dim == 2) line(phi_from_forests(g, k, b.routing) == phi(g, k), name + ": phi from forests");
    int h = g.loop_number();
    line(psi(g).is_homogeneous() && x.is_homogeneous() && psi(g).total_degree() == h &&
             (x.is_zero() || x.total_degree() == h + 1),
         name + ": homogeneity");
  }
  if (o.json_out) emit({{"schema", kSchemaVersion}, {"manifest", manifest("selftest", o, false)}, {"failures", failures}});
  if (failures) throw VerificationFailure(std::to_string(failures) + " identities failed");
  return 0;
}

void add_common(CLI::App* sc, Options& o, bool graph, bool kin) {
  if (graph) sc->add_option("graph", o.graph_path, "graph JSON file")->required();
  if (kin) sc->add_option("--kin", o.kin_path, "kinematics JSON file (default: <graph>.kin.json)");
  sc->add_flag("--json", o.json_out, "emit JSON");
  sc->add_flag("--no-timing", o.no_timing, "omit timing fields");
  sc->add_option("--seed", o.seed, "random seed");
}

void add_sampling(CLI::App* sc, Options& o) {
  sc->add_option("--samples", o.samples, "total samples per integral");
  sc->add_option("--batches", o.batches, "batches for the error estimate");
  sc->add_option("--sampler", o.sampler, "uniform-dirichlet or quasi-random");
  sc->add_option("--threads", o.threads, "worker threads (0: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canon: graph Laplacians, Symanzik polynomials and canonical forms"};
  app.require_subcommand(1);
  Options o;
  std::string which;

  for (const char* name : {"psi", "phi", "xi"}) {
    auto* sc = app.add_subcommand(name, std::string("print the polynomial ") + name);
    add_common(sc, o, true, std::string(name) != "psi");
    sc->callback([&, name] { which = name; });
  }
  auto* forest = app.add_subcommand("forest", "spanning forest polynomial");
  add_common(forest, o, true, false);
  forest->add_option("--blocks", o.blocks, "vertex blocks, e.g. \"1,2;3\"")->required();

  auto* lap = app.add_subcommand("laplacian", "laplacian, generalized laplacian and determinant identities");
  add_common(lap, o, true, true);

  auto* form = app.add_subcommand("form", "realize a canonical form symbolically");
  add_common(form, o, true, true);
  form->add_option("--form", o.form, "form spec, e.g. p3 or w5^p3")->required();
  form->add_option("--check", o.check, "closed | restrict | invariance");

  auto* integ = app.add_subcommand("integrate", "numerical canonical integral");
  add_common(integ, o, true, true);
  add_sampling(integ, o);
  integ->add_option("--form", o.form, "form spec")->required();

  auto* stokes = app.add_subcommand("verify-stokes", "Stokes relation residual");
  add_common(stokes, o, true, true);
  add_sampling(stokes, o);
  stokes->add_option("--form", o.form, "form spec")->required();
  stokes->add_option("--tolerance", o.tolerance, "residual ratio tolerance");

  auto* five = app.add_subcommand("five-term", "five-term relation for the massive box");
  add_common(five, o, true, true);
  add_sampling(five, o);
  five->add_option("--tolerance", o.tolerance, "residual ratio tolerance");

  auto* self = app.add_subcommand("selftest", "exact identities on the built-in graphs");
  add_common(self, o, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!which.empty()) return cmd_poly(which, o);
    if (forest->parsed()) return cmd_forest(o);
    if (lap->parsed()) return cmd_laplacian(o);
    if (form->parsed()) return cmd_form(o);
    if (integ->parsed()) return cmd_integrate(o);
    if (stokes->parsed()) return cmd_verify_stokes(o);
    if (five->parsed()) return cmd_five_term(o);
    if (self->parsed()) return cmd_selftest(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
