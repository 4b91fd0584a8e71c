#pragma once

#include <vector>

#include "canon/graph.hpp"
#include "canon/kinematics.hpp"
#include "canon/poly.hpp"

namespace canon {

struct LaplacianBundle {
  Graph graph;
  Kinematics kin;
  CycleBasis basis;
  Routing routing;
  CMatrix lambda;        // h x h, real symmetric
  HMatrix lambda_tilde;  // (h+1) x (h+1), Hermitian

  int loops() const { return lambda.rows(); }
  // lambda_tilde as a complex matrix (dimension 2 only).
  CMatrix lambda_tilde_complex() const { return to_complex(lambda_tilde); }
  // The matrix whose determinant is Xi: lambda_tilde for complex kinematics, its 2x2-block
  // complex image for quaternionic kinematics.
  CMatrix lambda_tilde_matrix() const;
};

CMatrix build_laplacian(const Graph& g, const CycleBasis& b);
HMatrix build_gen_laplacian(const Graph& g, const Kinematics& k, const CycleBasis& b, const Routing& r);

LaplacianBundle make_bundle(const Graph& g, const Kinematics& k, const std::vector<int>& marked = {});
// Same over spanning forests; momentum must be conserved on every component.
LaplacianBundle make_forest_bundle(const Graph& g, const Kinematics& k);

// det lambda_tilde == Xi for complex kinematics, det chi(lambda_tilde) == Xi^2 otherwise.
bool verify_det_identity(const LaplacianBundle& b);
CPoly det_gen(const LaplacianBundle& b);

// Change of cycle basis by a unimodular integer matrix and shift of the routing by
// sum_k s_k c_k. The basis and routing of the result are updated accordingly.
LaplacianBundle transform(const LaplacianBundle& b, const std::vector<std::vector<int>>& p,
                          const std::vector<Quaternion>& s);

struct RescaledBlocks {
  bool mm = false;  // which block pattern applies
  int h_gamma = 0;
  HMatrix rescaled;   // lambda_tilde in the adapted basis with a_e -> z a_e for e in gamma
  HMatrix reduced;    // D mod z (non-mm) or A mod z (mm)
  bool pattern_ok = false;     // blocks have the stated z-divisibility and gamma block
  bool reduction_ok = false;   // reduced block equals the Laplacian of G/gamma
  bool leading_ok = false;     // determinant leading term in z
  CPoly det;
  CPoly leading_coefficient;
  CPoly expected_leading;
};

RescaledBlocks rescaled_blocks(const Graph& g, const Kinematics& k, const EdgeSet& gamma);

// Unimodular integer matrices for tests and random transforms.
std::vector<std::vector<int>> random_unimodular(int n, std::mt19937_64& rng);

}  // namespace canon
