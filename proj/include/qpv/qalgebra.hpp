/// @file qalgebra.hpp
/// @brief The quadratic algebra on the nilradical generators: the relation
///        space (the negative eigenspace of the generator braiding), rewrite
///        rules ordering every product of generators, confluence of the
///        rewrite system, normal forms, and graded dimensions.
///
/// Generators z_0 < z_1 < ... < z_{n-1} are ordered by growing weight (the
/// listed order of the nilradical roots).  Monomials are compared
/// degree-lexicographically; the rewrite rules replace each inversion
/// z_i z_j (i > j) by a combination of ordered quadratic monomials.

#pragma once

#include <array>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "qpv/braiding.hpp"
#include "qpv/cartan.hpp"
#include "qpv/linalg.hpp"
#include "qpv/module.hpp"

namespace qpv {

/// Right side of one rewrite rule: ordered monomials (k, m), k <= m, with
/// coefficients.
using RuleRhs = std::vector<std::tuple<int, int, Scalar>>;

struct QuadraticPresentation {
  ParabolicDatum par;
  size_t n = 0;                  ///< number of generators
  std::vector<IVec> gen_weights;  ///< weight of z_k, ascending
  Mat<Scalar> relation_basis;    ///< n^2 x n(n-1)/2, columns span the
                                 ///< relation space in z_i (x) z_j
                                 ///< coordinates (index i*n + j)
  std::map<std::pair<int, int>, RuleRhs> rules;  ///< keyed by (i, j), i > j
  Scalar negative_eigenvalue;    ///< braiding eigenvalue on the relations
};

struct OverlapResult {
  std::array<int, 3> word;  ///< strictly decreasing generator triple
  bool resolved;
};

struct ConfluenceCertificate {
  std::vector<OverlapResult> overlaps;
  bool all_resolved;
};

/// Combination of ordered monomials, keyed by exponent vectors of length n.
using MonomialCombo = std::map<IVec, Scalar>;

/// Position of each generator in the module basis: entry k is the basis
/// index of the module vector of weight gen_weights[k].
std::vector<size_t> generator_permutation(const ParabolicDatum& par,
                                          const WeightModule& V);

/// Rewrites an operator on V (x) V from module-basis tensor coordinates to
/// generator-ordered tensor coordinates.
Mat<Scalar> operator_in_generator_basis(const Mat<Scalar>& op,
                                        const std::vector<size_t>& perm);

/// The relation space: the full eigenspace of the unique negative eigenvalue
/// -q^{4/(H0,H0)} of the Levi self-braiding, of dimension n(n-1)/2, returned
/// in generator coordinates.  Throws spectral-mismatch when the negative
/// spectrum does not have this shape.
Mat<Scalar> relation_space(const Braiding& B, const WeightModule& V,
                           const ParabolicDatum& par);

/// Builds the full presentation: generators, relation space, and the rewrite
/// rules obtained by solving the relations for the inversion monomials.
/// Throws leading-term-degenerate when the inversions cannot all be made
/// leading (which would signal a convention bug).
QuadraticPresentation presentation(const ParabolicDatum& par);

/// Resolves every degree-3 overlap ambiguity z_i z_j z_k (i > j > k) both
/// ways and certifies the results agree.  Throws overlap-failure naming the
/// first bad word if one does not resolve.
ConfluenceCertificate confluence_check(const QuadraticPresentation& P);

/// Fully reduces a word of generator indices to a combination of ordered
/// monomials.
MonomialCombo normal_form(const std::vector<int>& word,
                          const QuadraticPresentation& P);

/// Dimensions of the graded components 0..maxdeg: the number of monomials
/// containing no rewrite left side, counted from the actual rule set.
std::vector<long> hilbert_dims(const QuadraticPresentation& P, long maxdeg);

}  // namespace qpv
