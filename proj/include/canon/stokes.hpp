#pragma once

#include <complex>
#include <string>
#include <vector>

#include "canon/integrator.hpp"

namespace canon {

struct StokesTerm {
  enum Kind { EdgeContraction, CoreProduct, MMProduct } kind = EdgeContraction;
  EdgeSet edges;            // contracted edge, or the subgraph gamma
  int sign = 1;             // orientation sign of the face
  Rational coeff{1};        // coproduct coefficient
  std::string left, right;  // coproduct factors (product terms)
  bool symbolic_zero = false;
  std::complex<double> value;
  double stderr_ = 0;
  // Parametric cross-check, where one was requested.
  bool has_oracle = false;
  std::complex<double> oracle;
  double oracle_stderr = 0;

  std::string kind_name() const;
};

struct StokesReport {
  std::vector<StokesTerm> terms;
  std::complex<double> total;
  double total_stderr = 0;
  double scale = 0;           // largest absolute term
  double residual_ratio = 0;  // |total| / scale
  double seconds = 0;

  bool within_sigma(double n) const { return std::abs(total) <= n * total_stderr; }
};

// Sign of the face sigma_gamma x sigma_{G/gamma} relative to the edge faces, which carry
// (-1)^pos for the 0-based position of the edge in the orientation.
int product_face_sign(const Graph& g, const EdgeSet& gamma);

StokesReport stokes_residual(const Graph& g, const Kinematics& k, const FormSpec& spec, const IntegralConfig& cfg);

// The five boxes obtained by contracting one edge of the pentagon, integrated against the
// degree-3 second-kind form, with the parametric cross-check on each box.
StokesReport five_term_box(const Graph& pentagon, const Kinematics& k, const IntegralConfig& cfg);
StokesReport five_term_box(const Kinematics& k, const IntegralConfig& cfg);

// The constant c with p3 = c * Omega / Xi^2 on a one-loop graph with four edges.
Gaussian box_constant(const Graph& g, const Kinematics& k);

}  // namespace canon
