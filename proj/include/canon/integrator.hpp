#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "canon/forms.hpp"

namespace canon {

enum class Sampler { UniformDirichlet, QuasiRandom };

struct IntegralConfig {
  std::uint64_t seed = 1;
  long samples = 200000;
  int batches = 20;
  Sampler sampler = Sampler::UniformDirichlet;
  int threads = 0;  // 0: hardware concurrency
};

struct IntegralResult {
  std::complex<double> estimate;
  double stderr_ = 0;
  long samples = 0;
  double seconds = 0;
  std::string method;
};

std::string to_string(Sampler s);
Sampler parse_sampler(const std::string& s);

// Integral over the simplex of the graph, oriented by the graph orientation. The degree of the
// form must be one less than the number of edges.
IntegralResult integrate(const FormSpec& spec, const LaplacianBundle& b, const IntegralConfig& cfg);
IntegralResult integrate(const FormSpec& spec, const Graph& g, const Kinematics& k, const IntegralConfig& cfg);

// Integral of numerator / (Psi^a Xi^b) times Omega_G over the oriented simplex.
IntegralResult integrate_parametric(const Graph& g, const Kinematics& k, int a, int b,
                                    const CPoly& numerator, const IntegralConfig& cfg);

// Integral over the slice sum(alpha) = 1 of f(alpha) d alpha_1 .. d alpha_{n-1} in the given
// coordinate order, where f receives alpha indexed by coordinate position.
IntegralResult integrate_simplex(int n, const std::function<std::complex<double>(const std::vector<double>&)>& f,
                                 const IntegralConfig& cfg);

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch);

}  // namespace canon
