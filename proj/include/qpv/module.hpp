/// @file module.hpp
/// @brief Weight modules for the quantized enveloping algebra (of the full
///        datum or of a Levi subalgebra): degree-truncated Verma modules
///        with their contravariant Gram form, finite-dimensional simple
///        modules, duals, tensor products, highest-weight vectors, isotypic
///        decompositions, and the generator module of the quantum nilradical.
///
/// Conventions
///   * q = v^D and q_i = q^{d_i} = v^{D d_i}; D is carried by every module
///     so that all K eigenvalues v^{D d_i mu_i} are Laurent monomials.
///   * Weights are ambient fundamental-weight coordinates, also for Levi
///     modules (indices outside S do not act but their K eigenvalues are
///     bookkept through the weight coordinates).
///   * A Verma word (i_1, ..., i_k) denotes F_{i_1} F_{i_2} ... F_{i_k} v,
///     so applying F_i prepends i.
///   * The contravariant form satisfies <F_i x, y> = <x, E_i y>, <v, v> = 1.
///   * E_i F_j = F_j E_i + delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1}).

#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "qpv/cartan.hpp"
#include "qpv/classical.hpp"
#include "qpv/linalg.hpp"

namespace qpv {

/// Linear combination of Verma words.
using VermaVector = std::map<std::vector<int>, Scalar>;

/// Degree-truncated Verma module on the word basis.
struct TruncatedVerma {
  IVec lambda;
  long depth = 0;
  std::vector<std::vector<int>> words;  ///< all words of length <= depth
  std::vector<IVec> weights;            ///< weight of each word
  Mat<Scalar> gram;                     ///< contravariant form on the words
};

/// A finite-dimensional weight module with exact matrix actions.
struct WeightModule {
  RootDatum dat;
  std::vector<int> S;  ///< acting indices (ascending); full datum = all
  long D = 2;          ///< q = v^D
  std::vector<IVec> weights;
  std::vector<Mat<Scalar>> E, F;  ///< per index; empty matrix when not acting
  std::vector<std::vector<int>> words;  ///< representative Verma words, if any

  size_t dim() const { return weights.size(); }
  bool acting(int i) const {
    for (int s : S)
      if (s == i) return true;
    return false;
  }
};

struct IsotypicComponent {
  IVec nu;               ///< highest weight of the component
  Mat<Scalar> basis;     ///< columns: a basis of the component
  Mat<Scalar> projection;  ///< projection onto the component
};

/// Weight of the word F_{i_1}...F_{i_k} v(lambda).
IVec word_weight(const RootDatum& dat, const IVec& lambda,
                 const std::vector<int>& word);

/// E_i applied to a combination of Verma words:
/// E_i F_{j_1}...F_{j_k} v = sum over positions t with j_t = i of
/// [mu_t(H_i)]_{q_i} F_{j_1}...^t...F_{j_k} v, where mu_t is the weight of
/// the suffix following position t.
VermaVector apply_e(const RootDatum& dat, long D, const IVec& lambda, int i,
                    const VermaVector& x);

/// Contravariant form <F_w v, x> for a word combination x.
Scalar gram_entry(const RootDatum& dat, long D, const IVec& lambda,
                  const std::vector<int>& w, const VermaVector& x);

/// All words over the acting indices up to the given length, with the
/// contravariant Gram matrix (block-diagonal by weight).
TruncatedVerma truncated_verma(const RootDatum& dat, const std::vector<int>& S,
                               long D, const IVec& lambda, long depth);

/// The simple module of dominant highest weight lambda (lambda_i >= 0 for
/// all acting i; throws non-dominant-weight otherwise), realized as the
/// Gram-radical quotient on a deterministic set of pivot words. The depth
/// defaults to the height span of the classical module. The dimension and
/// weight multiplicities are verified against the classical character.
WeightModule simple_module(const RootDatum& dat, const std::vector<int>& S,
                           long D, const IVec& lambda, long depth = -1);

WeightModule trivial_module(const RootDatum& dat, const std::vector<int>& S,
                            long D);

/// Diagonal matrix of K_i^{sign} (sign = +1 or -1).
Mat<Scalar> k_matrix(const WeightModule& V, int i, int sign = 1);

/// Graded dual with the antipode action: weights negate,
/// E_i' = (-K_i^{-1} E_i)^T, F_i' = (-F_i K_i)^T.
WeightModule dual_module(const WeightModule& V);

/// Tensor product via the comultiplication Delta(E_i) = E_i x 1 + K_i x E_i,
/// Delta(F_i) = F_i x K_i^{-1} + 1 x F_i; index (a, b) -> a*dim(W) + b.
WeightModule tensor(const WeightModule& V, const WeightModule& W);

/// Basis of the joint kernel of all acting E_i, one entry per weight that
/// supports highest-weight vectors; columns of the matrix are the vectors.
std::vector<std::pair<IVec, Mat<Scalar>>> highest_weight_vectors(
    const WeightModule& V);

/// Isotypic decomposition: each component is the F-closure of the
/// highest-weight vectors of one weight. The projections are idempotent,
/// pairwise orthogonal, and sum to the identity; the dimensions sum to dim V.
std::vector<IsotypicComponent> isotypic_decompose(const WeightModule& V);

/// The n-dimensional Levi module spanned by the nilradical generators:
/// simple of Levi-highest weight -alpha_{l0}, with weight set the negated
/// roots of the complementary nilradical, each of multiplicity one.
WeightModule pminus_module(const ParabolicDatum& par);

/// Weight multiset of the module.
WeightChar character(const WeightModule& V);

/// Indices of the basis vectors whose grading-element eigenvalue is 2r.
std::vector<size_t> h0_component(const ParabolicDatum& par,
                                 const WeightModule& V, const mpq_class& r);

}  // namespace qpv
