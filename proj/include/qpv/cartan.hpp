/// @file cartan.hpp
/// @brief Root systems of types A–D, the invariant bilinear form, and the
///        parabolic data (marked node, grading element H0, abelian nilradical)
///        of cominuscule type.
///
/// Conventions, fixed once for the whole library:
///   * the Cartan matrix entry a[i][j] is alpha_j(H_i), so the fundamental
///     coordinates of alpha_j form column j of a;
///   * (alpha_i, alpha_j) = d_i * a[i][j] with coprime positive symmetrizers
///     d_i (so d_i * a[i][j] is symmetric);
///   * (varpi_i, alpha_j) = d_j * delta_ij, hence for weights lam, mu in
///     fundamental coordinates (lam, mu) = sum_j d_j lam_j (a^{-1} mu)_j.
///
/// All node indices in this API are 0-based; the CLI converts from the
/// 1-based labels used on the command line.

#pragma once

#include <gmpxx.h>

#include <vector>

#include "qpv/scalar.hpp"

namespace qpv {

enum class Series { A, B, C, D };

char series_to_char(Series s);
Series series_from_char(char c);

using IVec = std::vector<long>;       // integer coordinate vectors
using QVec = std::vector<mpq_class>;  // rational coordinate vectors

struct RootDatum {
  Series series;
  int rank;
  std::vector<IVec> a;             // Cartan matrix, a[i][j] = alpha_j(H_i)
  IVec d;                          // symmetrizers
  std::vector<IVec> simple_roots;  // fundamental coords; [j] = column j of a
  IVec rho;                        // all ones (fundamental coords)
  long s;                          // |det a| = index of Q in P
  std::vector<QVec> a_inv;         // exact inverse of the Cartan matrix
};

/// Standard Cartan data for the supported ranks (A: 1-6, B/C: 2-4, D: 4).
/// Throws unsupported-type outside those bounds.
RootDatum build_root_datum(Series series, int rank);

/// All positive roots in simple-root coordinates, sorted by (height, lex).
std::vector<IVec> positive_roots(const RootDatum& dat);

/// The unique root of maximal height.
IVec highest_root(const RootDatum& dat);

/// Nodes whose coefficient in the highest root is 1 (0-based).
std::vector<int> admissible_nodes(const RootDatum& dat);

struct ParabolicDatum {
  RootDatum base;
  int l0;                          // marked node, 0-based
  std::vector<int> S;              // the complementary (Levi) nodes
  QVec h0_coeffs;                  // c with H0 = sum_i c_i H_i
  mpq_class h0_norm;               // (H0, H0)
  std::vector<IVec> pminus_roots;  // roots beta with coefficient 1 at l0,
                                   // simple-root coords, sorted so that the
                                   // generator weights -beta increase
  int n;                           // dim of the nilradical
  long D;                          // per-case root order: v = q^(1/D)
};

/// Builds the parabolic datum for the marked node (0-based); throws
/// inadmissible-node when the highest-root coefficient at l0 is not 1.
/// The root order D is selected here: the smallest even multiple of s for
/// which every braiding exponent of the generator module (computed from the
/// classical character decomposition of its tensor square) and the grading
/// constant 4/(H0,H0) lie in (1/D)Z.
ParabolicDatum parabolic(const RootDatum& dat, int l0);

/// Invariant bilinear form on weights in fundamental coordinates.
mpq_class inner(const RootDatum& dat, const QVec& lam, const QVec& mu);
mpq_class inner(const RootDatum& dat, const IVec& lam, const IVec& mu);

/// Fundamental coordinates of a vector given in simple-root coordinates.
IVec root_to_fund(const RootDatum& dat, const IVec& root);

/// Simple-root coordinates of an integral vector in the root lattice
/// (throws not-in-root-lattice if the preimage is not integral).
IVec fund_to_root(const RootDatum& dat, const IVec& fund);

/// Height (sum of simple-root coordinates).
long height(const IVec& root);

/// Weight of generator k (fundamental coordinates): minus the k-th listed
/// nilradical root.
IVec generator_weight(const ParabolicDatum& par, int k);

/// H0-grade of a weight in fundamental coordinates: mu(H0)/2, so that each
/// generator has grade -1.
mpq_class h0_grade(const ParabolicDatum& par, const IVec& mu);

}  // namespace qpv
