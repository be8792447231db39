/// @file calculus.hpp
/// @brief The differential calculus on the quadratic algebra: one-form
///        generators dz_k mirroring the z_k, the three quadratic rule
///        families closing the algebra of mixed words, bigraded monomial
///        bases, the differential, and the exactness certificate.
///
/// Mixed words use an integer letter encoding relative to the generator
/// count n: letter x with 0 <= x < n is the one-form generator dz_x, and
/// letter n + i is the coordinate generator z_i.  A word is normal when it
/// reads dz_{i_1} ... dz_{i_j} z_{a_1} ... z_{a_k} with i_1 < ... < i_j
/// strictly increasing and a_1 <= ... <= a_k weakly increasing; the rules
///   (ZZ)  z_i z_j        -> ordered z-monomials        (i > j)
///   (ZD)  z_i dz_j       -> one-forms times coordinates (all i, j)
///   (DD)  dz_i dz_j      -> strictly ordered dz-pairs   (i >= j)
/// rewrite every other word into that shape.  The (ZD) coefficients are the
/// entries of the one-form braiding; the (DD) rules solve the column space
/// of (identity + braiding) for the weakly-decreasing pairs.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qpv/cartan.hpp"
#include "qpv/linalg.hpp"
#include "qpv/qalgebra.hpp"
#include "qpv/scalar.hpp"

namespace qpv {

struct CalculusPresentation {
  ParabolicDatum par;
  size_t n = 0;                 ///< generator count (z and dz alike)
  QuadraticPresentation zz;     ///< coordinate subalgebra rules
  Mat<Scalar> braiding;         ///< one-form braiding, generator coordinates
  std::map<std::pair<int, int>, RuleRhs> zd;  ///< z_i dz_j, all n^2 pairs
  std::map<std::pair<int, int>, RuleRhs> dd;  ///< dz_i dz_j, pairs i >= j
};

/// Normal monomial: strictly increasing dz indices, then a z exponent
/// vector of length n.
using FormMonomial = std::pair<IVec, IVec>;

/// Linear combination of normal monomials.
using FormCombo = std::map<FormMonomial, Scalar>;

/// Monomial basis of the bigraded component with j one-form factors and
/// polynomial degree k.
struct FormComponent {
  long j = 0;
  long k = 0;
  std::vector<FormMonomial> basis;
};

/// The differential restricted to bidegree (j, k), written in the monomial
/// bases: columns index the (j, k) basis, rows the (j+1, k-1) basis.
struct DifferentialMatrix {
  long j = 0;
  long k = 0;
  Mat<Scalar> matrix;
};

struct ExactnessSlot {
  long j = 0;             ///< form degree of the middle term
  long k = 0;             ///< polynomial degree of the middle term
  size_t dim = 0;         ///< dimension of the middle term
  size_t rank_in = 0;     ///< rank of the incoming differential
  size_t rank_out = 0;    ///< rank of the outgoing differential
};

struct ExactnessReport {
  long total_degree = 0;
  std::vector<ExactnessSlot> slots;
  std::vector<mpq_class> samples;  ///< empty means exact-arithmetic ranks
};

/// Assembles the three rule families.  Checks the coordinate rules are
/// confluent and that the weakly-decreasing dz-pairs can all be made
/// leading in the one-form relations (throwing leading-term-degenerate
/// otherwise, and spectral-mismatch when the braiding spectrum is wrong).
CalculusPresentation build_calculus(const ParabolicDatum& par);

/// Resolves every length-3 overlap ambiguity across the three rule
/// families both ways: words z z dz, z dz dz, dz dz dz, and z z z in which
/// both adjacent pairs are rule left sides.  Words in the certificate use
/// the letter encoding above.  Throws overlap-failure on disagreement.
ConfluenceCertificate calculus_confluence(const CalculusPresentation& C);

/// Fully reduces an encoded mixed word to a combination of normal
/// monomials.
FormCombo calculus_normal_form(const std::vector<int>& word,
                               const CalculusPresentation& C);

/// Product of two combinations, computed by concatenating monomial words
/// and reducing.
FormCombo form_multiply(const CalculusPresentation& C, const FormCombo& a,
                        const FormCombo& b);

/// The differential of a combination: each z factor is replaced in turn by
/// the matching dz (passing the sign of the one-form prefix), and the
/// result is reduced to normal monomials.
FormCombo form_d(const CalculusPresentation& C, const FormCombo& x);

/// Dimension of the span of all dz-words of length j modulo the (DD)
/// rules, computed by reducing every one of the n^j words: the number of
/// distinct normal monomials reached.  Resolves the dz-overlap ambiguities
/// first so that distinct normal monomials are certified independent.
long lambda_const_dim(const CalculusPresentation& C, long j);

/// The monomial basis in bidegree (j, k), verified to be the bijective
/// image of (ordered z-monomials) x (ordered dz-words): the coordinate
/// matrix of the products z^a dz_I in the normal basis must have full
/// rank.  Throws dimension-mismatch when it does not.
FormComponent component_basis(const CalculusPresentation& C, long j, long k);

/// The differential from bidegree (j, k) to (j+1, k-1) as a matrix.
DifferentialMatrix differential(const CalculusPresentation& C, long j,
                                long k);

/// Certifies exactness of the fixed-total-degree complex
///   0 -> (0, t) -> (1, t-1) -> ... -> (min(t, n), max(t-n, 0)) -> 0
/// for t >= 1: consecutive differentials compose to zero and
/// rank(in) + rank(out) equals the middle dimension at every slot.  With
/// samples empty the ranks use exact fraction arithmetic; otherwise each
/// sample is a rational value of the root v in (0, 1) and all sampled
/// ranks must agree.  Throws exactness-failure with a bidegree witness,
/// or structure-violation if a composition is nonzero.
ExactnessReport exactness_check(const CalculusPresentation& C, long t,
                                const std::vector<mpq_class>& samples = {});

}  // namespace qpv
