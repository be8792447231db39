/// @file classical.hpp
/// @brief Classical (q = 1) character oracles: Freudenthal weight
///        multiplicities, the Weyl dimension formula, character arithmetic,
///        and greedy decomposition into irreducibles of a Levi subalgebra.
///
/// Everything here is exact rational arithmetic on ambient integral weights.
/// A Levi subalgebra is described by its set of acting nodes S; weights keep
/// all ambient coordinates (the orthogonal complement of the S-span rides
/// along untouched, which is exactly what the quantum modules need for their
/// central characters).

#pragma once

#include <map>
#include <vector>

#include "qpv/cartan.hpp"

namespace qpv {

/// Weight multiset: ambient weight (fundamental coordinates) -> multiplicity.
using WeightChar = std::map<IVec, long>;

/// Positive roots of the Levi on the nodes S (support contained in S),
/// simple-root coordinates.
std::vector<IVec> levi_positive_roots(const RootDatum& dat,
                                      const std::vector<int>& S);

/// (lam, rho_S): computed as half the sum of (lam, beta) over the Levi's
/// positive roots.
mpq_class inner_rho(const RootDatum& dat, const std::vector<int>& S,
                    const IVec& lam);

/// Dimension of the irreducible Levi module with highest weight hw
/// (hw must be S-dominant), by the Weyl formula over the Levi roots.
long levi_dim(const RootDatum& dat, const std::vector<int>& S, const IVec& hw);

/// Full weight multiset of the irreducible Levi module with highest weight
/// hw, by Freudenthal's recursion in the ambient coordinates.
WeightChar levi_character(const RootDatum& dat, const std::vector<int>& S,
                          const IVec& hw);

/// Height of hw minus the lowest weight: the exact Verma truncation depth
/// needed to realize the irreducible quotient.
long weight_htspan(const RootDatum& dat, const std::vector<int>& S,
                   const IVec& hw);

/// Pointwise sum of characters (tensor product of the underlying spaces
/// corresponds to convolution; see char_convolve).
WeightChar char_add(const WeightChar& x, const WeightChar& y);

/// Convolution: character of the tensor product.
WeightChar char_convolve(const WeightChar& x, const WeightChar& y);

/// Greedy decomposition of a character into irreducible Levi characters:
/// repeatedly strips the maximal remaining weight (which must be S-dominant).
/// Returns (highest weight, multiplicity) pairs in extraction order.
/// Throws decomposition-failure if a maximal weight is not S-dominant or a
/// multiplicity goes negative.
std::vector<std::pair<IVec, long>> decompose_character(
    const RootDatum& dat, const std::vector<int>& S, WeightChar ch);

/// Orthogonal projection onto the span of {alpha_i : i in S}, as simple-root
/// coordinates x of the projection (lam_bar = sum_{i in S} x_i alpha_i).
QVec project_to_levi(const RootDatum& dat, const std::vector<int>& S,
                     const IVec& lam);

/// The braiding square exponent (lam,lam+2rho_S) + (mu,mu+2rho_S)
/// - (nu,nu+2rho_S), computed on the orthogonal projections of the weights
/// onto the S-span (for S = all nodes this is the plain formula).
mpq_class drinfeld_square_exponent(const RootDatum& dat,
                                   const std::vector<int>& S, const IVec& lam,
                                   const IVec& mu, const IVec& nu);

}  // namespace qpv
