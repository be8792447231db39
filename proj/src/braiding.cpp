#include "qpv/braiding.hpp"

#include <string>
#include <utility>
#include <vector>

#include "qpv/classical.hpp"

namespace qpv {
namespace {

// Evaluate a column of Scalars at v = 1 after clearing denominators and the
// common polynomial content, so that the result is a nonzero rational vector
// whenever the column is nonzero.
std::vector<mpq_class> primitive_at_one(const Mat<Scalar>& col) {
  ZPoly denlcm{1};
  for (size_t r = 0; r < col.rows(); ++r) {
    if (col(r, 0).is_zero()) continue;
    const ZPoly& d = col(r, 0).den();
    denlcm = poly::divexact(poly::mul(denlcm, d), poly::gcd(denlcm, d));
  }
  std::vector<ZPoly> nums(col.rows());
  ZPoly g;
  for (size_t r = 0; r < col.rows(); ++r) {
    if (col(r, 0).is_zero()) continue;
    nums[r] = poly::mul(col(r, 0).num(),
                        poly::divexact(denlcm, col(r, 0).den()));
    g = poly::is_zero(g) ? nums[r] : poly::gcd(g, nums[r]);
  }
  std::vector<mpq_class> out(col.rows(), 0);
  if (poly::is_zero(g)) return out;
  for (size_t r = 0; r < col.rows(); ++r)
    if (!poly::is_zero(nums[r]))
      out[r] = poly::eval(poly::divexact(nums[r], g), 1);
  return out;
}

// Eigenvalue of the flip on a weight vector of the tensor square, at q = 1.
int flip_sign(const Mat<Scalar>& hwv, size_t d) {
  const std::vector<mpq_class> x = primitive_at_one(hwv);
  std::vector<mpq_class> y(x.size());
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) y[b * d + a] = x[a * d + b];
  size_t k = 0;
  while (k < x.size() && x[k] == 0) ++k;
  if (k == x.size())
    throw Error("structure-violation", "zero highest-weight vector");
  const mpq_class s = y[k] / x[k];
  if (s != 1 && s != -1)
    throw Error("structure-violation",
                "classical flip does not act by a sign");
  for (size_t r = 0; r < x.size(); ++r)
    if (y[r] != s * x[r])
      throw Error("structure-violation",
                  "highest-weight vector is not a flip eigenvector at q=1");
  return s == 1 ? 1 : -1;
}

}  // namespace

Mat<Scalar> flip_matrix(size_t d) {
  Mat<Scalar> p(d * d, d * d);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) p(b * d + a, a * d + b) = Scalar(1);
  return p;
}

Braiding self_braiding(const WeightModule& V) {
  const auto hw = highest_weight_vectors(V);
  if (hw.size() != 1 || hw[0].second.cols() != 1)
    throw Error("invalid-element",
                "self-braiding needs an irreducible tensor factor");
  const IVec& lam = hw[0].first;

  const WeightModule T = tensor(V, V);
  for (const auto& [nu, vecs] : highest_weight_vectors(T))
    if (vecs.cols() != 1)
      throw Error("not-multiplicity-free",
                  "tensor square has a repeated component");

  Braiding b;
  b.matrix = Mat<Scalar>(T.dim(), T.dim());
  const auto hwT = highest_weight_vectors(T);
  const auto comps = isotypic_decompose(T);
  for (size_t c = 0; c < comps.size(); ++c) {
    const IVec& nu = comps[c].nu;
    Mat<Scalar> vec;
    for (const auto& [w, col] : hwT)
      if (w == nu) vec = col;
    const mpq_class e =
        drinfeld_square_exponent(V.dat, V.S, lam, lam, nu);
    const int sign = flip_sign(vec, V.dim());
    Scalar eig = q_power(e / 2, V.D);
    if (sign < 0) eig = -eig;
    b.matrix = b.matrix + comps[c].projection.scaled(eig);
    b.spectrum.push_back({nu, eig, sign, comps[c].basis.cols()});
  }
  b.convention =
      "q = v^" + std::to_string(V.D) +
      "; on the component of highest weight nu the operator acts by "
      "sign(nu) * q^(e(nu)/2), where e(nu) = (lam,lam+2rho) + (mu,mu+2rho) "
      "- (nu,nu+2rho) on Levi-projected weights and sign(nu) is the flip "
      "eigenvalue at q = 1; the whole operator evaluates to the flip at "
      "q = 1.";
  return b;
}

Scalar mixed_multiplier(const ParabolicDatum& par, const IVec& lam) {
  const RootDatum& dat = par.base;
  IVec w(static_cast<size_t>(dat.rank), 0);
  w[static_cast<size_t>(par.l0)] = 1;
  const mpq_class expo = dat.d[static_cast<size_t>(par.l0)] *
                         inner(dat, lam, w) / inner(dat, w, w);
  return q_power(expo, par.D);
}

Braiding fodc_braiding(const ParabolicDatum& par) {
  const WeightModule V = pminus_module(par);
  Braiding b = self_braiding(V);
  IVec top(static_cast<size_t>(par.base.rank));
  for (int k = 0; k < par.base.rank; ++k)
    top[static_cast<size_t>(k)] =
        -par.base.a[static_cast<size_t>(k)][static_cast<size_t>(par.l0)];
  const Scalar m = mixed_multiplier(par, top);
  b.matrix = b.matrix.scaled(m);
  for (auto& comp : b.spectrum) comp.eigenvalue *= m;
  b.convention +=
      " The differential exchange matrix is this operator scaled by the "
      "mixed multiplier of the generator weight.";
  return b;
}

}  // namespace qpv
