/// @file braiding.hpp
/// @brief The braiding operator on multiplicity-free tensor squares, built
///        spectrally: on the component with highest weight nu the operator
///        acts by sign_nu * q^{e_nu/2}, where e_nu is the square exponent
///        (lam,lam+2rho) + (mu,mu+2rho) - (nu,nu+2rho) on Levi-projected
///        weights and sign_nu is the eigenvalue of the classical flip on the
///        component's highest-weight vector at q = 1.  The first-order
///        calculus uses this operator scaled by a fixed power of q (the
///        mixed multiplier), which makes the generator relations braided.

#pragma once

#include <string>
#include <vector>

#include "qpv/cartan.hpp"
#include "qpv/linalg.hpp"
#include "qpv/module.hpp"

namespace qpv {

struct BraidingComponent {
  IVec nu;            ///< highest weight of the isotypic component
  Scalar eigenvalue;  ///< sign * q^{e/2} (times any overall multiplier)
  int sign;           ///< classical flip eigenvalue on the component
  size_t multiplicity;  ///< dimension of the component
};

struct Braiding {
  Mat<Scalar> matrix;  ///< operator on V (x) V in the tensor basis
  std::vector<BraidingComponent> spectrum;  ///< sorted by highest weight
  std::string convention;
};

/// The flip (a x b -> b x a) on the tensor square of a d-dimensional space.
Mat<Scalar> flip_matrix(size_t d);

/// Braiding on V (x) V for an irreducible V whose tensor square is
/// multiplicity-free.  Throws invalid-element when V is not irreducible and
/// not-multiplicity-free when a component repeats.
Braiding self_braiding(const WeightModule& V);

/// q_{l0} raised to (lam, w_{l0}) / (w_{l0}, w_{l0}), where w_{l0} is the
/// fundamental weight at the marked node.
Scalar mixed_multiplier(const ParabolicDatum& par, const IVec& lam);

/// The braiding that exchanges differential generators with algebra
/// generators: the self-braiding of the nilradical generator module scaled
/// by the mixed multiplier of the generator weight -alpha_{l0}.
Braiding fodc_braiding(const ParabolicDatum& par);

}  // namespace qpv
