/// @file bgg.hpp
/// @brief Character-level resolution combinatorics: graded characters of
///        parabolic Verma modules over the Levi (free over the commuting
///        nilradical), the Bruhat-order shape with a consistent edge sign
///        assignment, and the two verification identities matching the
///        exterior-power components against sums of those characters.
///
/// Gradings are aligned from the lowest piece: level d of a parabolic
/// Verma character is the slice generated by d nilradical factors, and
/// level d of a form component with k one-form factors is polynomial
/// degree d, so both sit in overall degree k + d.
#pragma once

#include <vector>

#include "qpv/calculus.hpp"
#include "qpv/cartan.hpp"
#include "qpv/classical.hpp"
#include "qpv/weyl.hpp"

namespace qpv {

/// Graded character of the parabolic Verma module with highest weight
/// lambda: the Levi character convolved with the symmetric powers of the
/// (commuting) nilradical generators.
struct GVCharacter {
  IVec lambda;                     ///< ambient fundamental coordinates
  long depth = 0;                  ///< levels 0..depth are populated
  std::vector<WeightChar> graded;  ///< graded[d]: weight multiset at level d
};

/// The Bruhat cover graph on the minimal coset representatives, with
/// vertices grouped by length, their dotted-action weights, and an edge
/// sign assignment whose product around every square is -1.
struct BGGShape {
  BruhatGraph graph;
  std::vector<std::vector<size_t>> by_length;  ///< vertex ids per length
  std::vector<IVec> dot_weights;               ///< w(rho) - rho per vertex
  SignAssignment signs;
};

struct DualMatchReport {
  long k = 0;      ///< form degree compared
  long depth = 0;  ///< levels 0..depth compared
  std::vector<long> dims;  ///< matched dimension per level
};

struct EulerReport {
  long depth = 0;
  std::vector<long> alternating;  ///< per total degree: alternating sum
};

/// Graded character of the parabolic Verma module to the given depth.
/// Throws weight-not-in-cone unless lambda is dominant on the Levi nodes.
GVCharacter gv_character(const ParabolicDatum& par, const IVec& lambda,
                         long depth);

/// Builds the shape and checks it: per-length vertex counts and dotted
/// weights must reproduce the degree-r weight lists, the top length must
/// equal the nilradical dimension, and the sign product over every square
/// must be -1.
BGGShape bgg_shape(const ParabolicDatum& par);

/// Verifies that the full weight character of the form component of
/// degree k (all polynomial levels through depth, one-form generators
/// weighted like the coordinates) equals the level-aligned sum of the
/// parabolic Verma characters at the dotted weights of length k.  Throws
/// mismatch with a (level, weight) witness.
DualMatchReport dual_derham_matches_bgg(const CalculusPresentation& C,
                                        long k, long depth);

/// Verifies the alternating dimension count: over each total degree
/// t <= depth, the signed sum of the level-(t - k) dimensions of the
/// length-k character blocks is 1 at t = 0 and 0 beyond.  Throws mismatch
/// with the offending degree.
EulerReport euler_check(const ParabolicDatum& par, long depth);

}  // namespace qpv
