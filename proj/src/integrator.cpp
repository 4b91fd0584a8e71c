#include "canon/integrator.hpp"

#include <atomic>
#include <chrono>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "canon/symanzik.hpp"

namespace canon {

namespace {

std::uint64_t splitmix(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in the open interval (0, 1).
double open_unit(std::mt19937_64& rng) { return (double(rng() >> 11) + 0.5) * 0x1.0p-53; }

const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (i) {
    r += double(i % base) * f;
    i /= base;
    f *= inv;
  }
  return r;
}

// Maps a point of the unit cube to the uniform distribution on the simplex by successive
// Beta(1, n-1-j) inversions.
void cube_to_simplex(const std::vector<double>& u, std::vector<double>& alpha) {
  int n = int(alpha.size());
  double rem = 1;
  for (int j = 0; j + 1 < n; ++j) {
    double x = rem * (1 - std::pow(1 - u[j], 1.0 / double(n - 1 - j)));
    alpha[j] = x;
    rem -= x;
  }
  alpha[n - 1] = rem > 0 ? rem : 0;
}

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::string point_str(const std::vector<double>& a) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << a[i];
  os << ")";
  return os.str();
}

using Integrand = std::function<std::complex<double>(const std::vector<double>&)>;

std::complex<double> checked(const Integrand& f, const std::vector<double>& a) {
  auto v = f(a);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::runtime_error("integrand is not finite at alpha = " + point_str(a));
  return v;
}

IntegralResult quadrature_1d(const Integrand& f) {
  IntegralResult r;
  r.method = "gauss-kronrod";
  long evals = 0;
  std::vector<double> a(2);
  auto g = [&](double t) {
    ++evals;
    a[0] = t;
    a[1] = 1 - t;
    return checked(f, a);
  };
  double err = 0;
  r.estimate = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-13, &err);
  r.stderr_ = err;
  r.samples = evals;
  return r;
}

}  // namespace

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) {
  std::uint64_t x = seed ^ (0xd1b54a32d192ed03ULL * (batch + 1));
  splitmix(x);
  return splitmix(x);
}

std::string to_string(Sampler s) {
  return s == Sampler::UniformDirichlet ? "uniform-dirichlet" : "quasi-random";
}

Sampler parse_sampler(const std::string& s) {
  if (s == "uniform-dirichlet") return Sampler::UniformDirichlet;
  if (s == "quasi-random") return Sampler::QuasiRandom;
  throw std::invalid_argument("unknown sampler '" + s + "'");
}

IntegralResult integrate_simplex(int n, const Integrand& f, const IntegralConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](IntegralResult r) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  };
  if (n < 1) throw std::invalid_argument("empty simplex");
  if (n == 1) {
    IntegralResult r;
    r.method = "point";
    r.estimate = checked(f, {1.0});
    r.samples = 1;
    return finish(r);
  }
  if (n == 2) return finish(quadrature_1d(f));
  if (n - 1 > int(std::size(kPrimes)))
    throw std::invalid_argument("simplex dimension too large for the quasi-random sampler");
  if (cfg.batches < 2 || cfg.samples < cfg.batches)
    throw std::invalid_argument("need samples >= batches >= 2");

  int nb = cfg.batches;
  long per = cfg.samples / nb;
  std::vector<std::complex<double>> means(nb);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&]() {
    for (int b = next++; b < nb; b = next++) {
      try {
        std::mt19937_64 rng(batch_seed(cfg.seed, std::uint64_t(b)));
        std::vector<double> alpha(n), u(n - 1), shift(n - 1);
        for (auto& s : shift) s = open_unit(rng);
        std::complex<double> sum = 0;
        for (long i = 0; i < per; ++i) {
          if (cfg.sampler == Sampler::UniformDirichlet) {
            double tot = 0;
            for (auto& x : alpha) tot += (x = -std::log(open_unit(rng)));
            for (auto& x : alpha) x /= tot;
          } else {
            for (int j = 0; j + 1 < n; ++j) {
              double x = radical_inverse(std::uint64_t(i + 1), kPrimes[j]) + shift[j];
              u[j] = x >= 1 ? x - 1 : x;
            }
            cube_to_simplex(u, alpha);
          }
          sum += checked(f, alpha);
        }
        means[b] = sum / double(per);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = nb;
      }
    }
  };
  int nt = cfg.threads > 0 ? cfg.threads : int(std::max(1u, std::thread::hardware_concurrency()));
  nt = std::min(nt, nb);
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::complex<double> mean = 0;
  for (const auto& m : means) mean += m;
  mean /= double(nb);
  double var = 0;
  for (const auto& m : means) var += std::norm(m - mean);
  var /= double(nb - 1);
  double vol = 1.0 / factorial(n - 1);
  IntegralResult r;
  r.method = to_string(cfg.sampler);
  r.estimate = mean * vol;
  r.stderr_ = std::sqrt(var / nb) * vol;
  r.samples = per * nb;
  return finish(r);
}

namespace {

// Positions of the orientation order in the sorted variable list.
std::vector<int> orientation_positions(const Graph& g) {
  auto ids = g.edge_ids();
  std::vector<int> pos;
  for (int id : g.orientation)
    pos.push_back(int(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()));
  return pos;
}

// Tangent frame e_{p_j} - e_{p_N} of the slice, in orientation order.
std::vector<std::vector<double>> slice_frame(const std::vector<int>& pos) {
  int n = int(pos.size());
  std::vector<std::vector<double>> frame;
  for (int j = 0; j + 1 < n; ++j) {
    std::vector<double> v(n, 0.0);
    v[pos[j]] = 1;
    v[pos[n - 1]] = -1;
    frame.push_back(v);
  }
  return frame;
}

void check_integrable(const Graph& g, const Kinematics& k) {
  if (!g.connected()) throw std::invalid_argument("graph is not connected");
  if (!is_generic(g, k)) throw std::invalid_argument("kinematics are not generic");
}

}  // namespace

IntegralResult integrate(const FormSpec& spec, const LaplacianBundle& b, const IntegralConfig& cfg) {
  const Graph& g = b.graph;
  int n = g.num_edges();
  if (spec.degree() != n - 1)
    throw std::invalid_argument("form degree " + std::to_string(spec.degree()) + " does not match " +
                                std::to_string(n) + " edges");
  // First-kind forms do not see the kinematics.
  bool kinematic = false;
  for (const auto& t : spec.terms)
    for (const auto& gen : t.gens) kinematic |= gen.kind != GenKind::First;
  if (kinematic) check_integrable(g, b.kin);
  NumericForm form(spec, b);
  auto pos = orientation_positions(g);
  auto frame = slice_frame(pos);
  double sign = g.orientation_sign;
  Integrand f = [&](const std::vector<double>& t) {
    std::vector<double> alpha(n);
    for (int j = 0; j < n; ++j) alpha[pos[j]] = t[j];
    return sign * form.evaluate(alpha, frame);
  };
  return integrate_simplex(n, f, cfg);
}

IntegralResult integrate(const FormSpec& spec, const Graph& g, const Kinematics& k, const IntegralConfig& cfg) {
  return integrate(spec, make_bundle(g, k), cfg);
}

IntegralResult integrate_parametric(const Graph& g, const Kinematics& k, int a, int b,
                                    const CPoly& numerator, const IntegralConfig& cfg) {
  check_integrable(g, k);
  int n = g.num_edges();
  auto ids = g.edge_ids();
  CPoly ps = psi(g), x = xi(g, k);
  auto pos = orientation_positions(g);
  auto frame = slice_frame(pos);
  // Omega is constant on the slice for this frame.
  SymbolicForm om = omega_form(ids);
  std::array<std::complex<double>, kMaxVars> mid{};
  for (int id : ids) mid[id] = 1.0 / n;
  std::vector<std::array<double, kMaxVars>> vf;
  for (const auto& v : frame) {
    std::array<double, kMaxVars> w{};
    for (int i = 0; i < n; ++i) w[ids[i]] = v[i];
    vf.push_back(w);
  }
  std::complex<double> omega = n == 1 ? std::complex<double>(-1.0) : om.evaluate(mid, vf);
  omega *= double(g.orientation_sign);
  Integrand f = [&](const std::vector<double>& t) {
    std::array<std::complex<double>, kMaxVars> pt{};
    for (int j = 0; j < n; ++j) pt[ids[pos[j]]] = t[j];
    auto num = eval_complex(numerator, pt);
    auto den = std::pow(eval_complex(ps, pt), a) * std::pow(eval_complex(x, pt), b);
    return omega * num / den;
  };
  return integrate_simplex(n, f, cfg);
}

}  // namespace canon
