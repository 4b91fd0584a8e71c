#pragma once

#include <vector>

#include "canon/graph.hpp"
#include "canon/kinematics.hpp"
#include "canon/poly.hpp"

namespace canon {

// Product of the edge variables of g outside the given set.
CPoly complement_monomial(const Graph& g, const EdgeSet& s);

CPoly psi(const Graph& g);
CPoly phi(const Graph& g, const Kinematics& k);
CPoly xi(const Graph& g, const Kinematics& k);
// Sum over spanning forests with one tree per block of complement monomials.
CPoly forest_poly(const Graph& g, const std::vector<std::vector<int>>& blocks);
// Second Symanzik polynomial assembled from forest polynomials of a routing.
CPoly phi_from_forests(const Graph& g, const Kinematics& k, const Routing& r);
// Sum of m_e^2 a_e.
CPoly mass_form(const Graph& g, const Kinematics& k);

}  // namespace canon
