/// @file weyl.hpp
/// @brief Weyl group machinery: generation with reduced words, parabolic
///        decomposition w = w_S * w^S, convex orders on the positive roots,
///        Bruhat order and its cover graph, squares, +/-1 edge sign
///        assignments, the affine (dot) action, and the degree-r weight sets
///        {w.0 : w in W^S, l(w) = r}.
///
/// Conventions
///   * An element w = s_{word[0]} s_{word[1]} ... s_{word[k-1]} acts on
///     weights as the composite operator, so matrix = S_{word[0]} * ... *
///     S_{word[k-1]} where S_i is the simple-reflection matrix on
///     fundamental-weight coordinates, (S_i x)_k = x_k - a[k][i] x_i.
///   * Stored words are always reduced; length == word.size().
///   * W^S denotes the minimal-length representatives of the cosets W_S w,
///     i.e. the elements with no left descent in S: w^{-1}(alpha_i) > 0 for
///     every i in S.
///   * All element lists are sorted by (length, word) and are therefore
///     reproducible bit-for-bit.

#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qpv/cartan.hpp"

namespace qpv {

/// Integer matrix acting on fundamental-weight coordinates, stored by rows.
using WMat = std::vector<IVec>;

struct WeylElement {
  WMat matrix;            ///< action on fundamental-weight coordinates
  std::vector<int> word;  ///< one reduced word (0-based node indices)
  int length = 0;         ///< l(w) == word.size()

  bool operator==(const WeylElement& o) const { return matrix == o.matrix; }
  bool operator!=(const WeylElement& o) const { return !(*this == o); }
};

/// Directed graph on Weyl elements whose edges are the Bruhat covers
/// w' -> w'' with l(w'') = l(w') + 1.
struct BruhatGraph {
  std::vector<WeylElement> vertices;
  std::vector<std::pair<size_t, size_t>> edges;  ///< (from, to) vertex indices
};

/// A length-2 interval with exactly two intermediate vertices, recorded with
/// its four edges: bottom->mid1 (edge[0]), mid1->top (edge[1]),
/// bottom->mid2 (edge[2]), mid2->top (edge[3]).
struct Square {
  size_t bottom, mid1, mid2, top;
  std::array<size_t, 4> edge;
};

/// Edge signs (+1 or -1), parallel to BruhatGraph::edges.
using SignAssignment = std::vector<int>;

WMat reflection_matrix(const RootDatum& dat, int i);
WMat wmat_identity(int rank);
WMat wmat_mul(const WMat& a, const WMat& b);
IVec wmat_apply(const WMat& m, const IVec& fund);

WeylElement weyl_identity(const RootDatum& dat);
WeylElement simple_reflection(const RootDatum& dat, int i);

/// Reconstruct an element (with a canonical reduced word) from its matrix.
/// Throws invalid-element if the matrix is not a Weyl group element.
WeylElement from_matrix(const RootDatum& dat, const WMat& m);

WeylElement compose(const RootDatum& dat, const WeylElement& a,
                    const WeylElement& b);
WeylElement inverse_element(const RootDatum& dat, const WeylElement& w);

/// Number of positive roots mapped to negative ones; equals l(w).
long inversion_count(const RootDatum& dat, const WeylElement& w);

/// The full Weyl group (throws group-too-large past the cap).
std::vector<WeylElement> generate(const RootDatum& dat, size_t cap = 50000);

/// The parabolic subgroup W_S generated by {s_i : i in S}.
std::vector<WeylElement> generate_levi(const RootDatum& dat,
                                       const std::vector<int>& S,
                                       size_t cap = 50000);

/// The minimal-length coset representatives W^S.
std::vector<WeylElement> generate_quotient(const RootDatum& dat,
                                           const std::vector<int>& S,
                                           size_t cap = 50000);

/// The unique maximal-length element of a generated list.
const WeylElement& longest_element(const std::vector<WeylElement>& elems);

/// Unique factorization w = w_S * w^S with l(w) = l(w_S) + l(w^S).
std::pair<WeylElement, WeylElement> parabolic_decompose(
    const RootDatum& dat, const std::vector<int>& S, const WeylElement& w);

/// The ordering beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) of the positive
/// roots induced by the concatenated reduced word w0 = w_{0,S} * w0^S; the
/// roots of the Levi come first, the complementary block last. Root
/// coordinates.
std::vector<IVec> convex_order(const ParabolicDatum& par);

/// Bruhat order via the subword property of a fixed reduced word of w.
bool bruhat_leq(const RootDatum& dat, const WeylElement& a,
                const WeylElement& b);

/// Cover graph of the Bruhat order restricted to the given vertex list
/// (the full group or W^S). Edges are sorted by (from, to).
BruhatGraph bruhat_graph(const RootDatum& dat,
                         std::vector<WeylElement> vertices);

/// All squares of the graph: length-2 intervals both of whose ambient
/// intermediates lie in the vertex set. Every pair of vertices at length
/// distance two is validated against the ambient group: its intermediate
/// count in the full Weyl group must be 0 or 2 (throws structure-violation
/// otherwise, signalling an implementation bug). On a quotient W^S one of
/// the two ambient intermediates may fall outside the vertex set; such an
/// interval is not a square and imposes no sign constraint (the
/// corresponding composite of module morphisms vanishes for weight reasons).
std::vector<Square> squares(const RootDatum& dat, const BruhatGraph& g);

/// Edge signs making the product over every square's four edges equal -1,
/// found by a GF(2) solve (one unknown per edge, one equation per square).
/// variant selects the value given to the free unknowns (0 -> +1, 1 -> -1),
/// yielding distinct solutions whenever the system is underdetermined.
/// Throws unsolvable-system if no assignment exists.
SignAssignment sign_assignment(const RootDatum& dat, const BruhatGraph& g,
                               unsigned variant = 0);

/// Whether two sign assignments differ by a vertex gauge gamma: V -> {+1,-1}
/// with s1(u->v) = gamma(u) gamma(v) s2(u->v) on every edge.
bool gauge_equivalent(const BruhatGraph& g, const SignAssignment& s1,
                      const SignAssignment& s2);

/// The affine (dot) action w.lambda = w(lambda + rho) - rho on
/// fundamental-weight coordinates.
IVec affine_action(const RootDatum& dat, const WeylElement& w,
                   const IVec& lambda);

/// {w.0 : w in W^S, l(w) = r}, sorted; the highest weights of the degree-r
/// piece of the exterior algebra of the nilradical.
std::vector<IVec> kostant_weights(const ParabolicDatum& par, int r);

}  // namespace qpv
