#include "qpv/qalgebra.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace qpv {
namespace {

// Column index of z_i (x) z_j in generator tensor coordinates.
size_t tcol(size_t n, int i, int j) {
  return static_cast<size_t>(i) * n + static_cast<size_t>(j);
}

void accumulate(std::map<std::vector<int>, Scalar>& combo,
                const std::vector<int>& word, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = combo.find(word);
  if (it == combo.end()) {
    combo.emplace(word, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) combo.erase(it);
}

// Fully reduces a word combination; the leftmost inversion is rewritten
// first.  The step cap guards against a non-terminating rule set, which the
// theory rules out but a bug could produce.
std::map<std::vector<int>, Scalar> reduce_combo(
    const QuadraticPresentation& P, std::map<std::vector<int>, Scalar> combo) {
  long steps = 0;
  for (;;) {
    bool changed = false;
    for (auto it = combo.begin(); it != combo.end(); ++it) {
      // Copy before erase: the key dies with the node.
      const std::vector<int> w = it->first;
      size_t p = 0;
      while (p + 1 < w.size() && w[p] <= w[p + 1]) ++p;
      if (p + 1 >= w.size()) continue;
      const Scalar coeff = it->second;
      const auto rule = P.rules.find({w[p], w[p + 1]});
      if (rule == P.rules.end())
        throw Error("leading-term-degenerate",
                    "no rule for an inversion pair");
      combo.erase(it);
      for (const auto& [k, m, c] : rule->second) {
        std::vector<int> nw = w;
        nw[p] = k;
        nw[p + 1] = m;
        accumulate(combo, nw, coeff * c);
      }
      changed = true;
      break;
    }
    if (!changed) return combo;
    if (++steps > 1000000)
      throw Error("non-terminating", "rewrite step limit exceeded");
  }
}

}  // namespace

std::vector<size_t> generator_permutation(const ParabolicDatum& par,
                                          const WeightModule& V) {
  std::vector<size_t> perm(static_cast<size_t>(par.n));
  for (int k = 0; k < par.n; ++k) {
    const IVec w = generator_weight(par, k);
    bool found = false;
    for (size_t r = 0; r < V.dim(); ++r)
      if (V.weights[r] == w) {
        perm[static_cast<size_t>(k)] = r;
        found = true;
      }
    if (!found)
      throw Error("structure-violation",
                  "generator weight missing from the module");
  }
  return perm;
}

Mat<Scalar> operator_in_generator_basis(const Mat<Scalar>& op,
                                        const std::vector<size_t>& perm) {
  const size_t n = perm.size();
  Mat<Scalar> out(n * n, n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c)
        for (size_t d = 0; d < n; ++d)
          out(a * n + b, c * n + d) =
              op(perm[a] * n + perm[b], perm[c] * n + perm[d]);
  return out;
}

Mat<Scalar> relation_space(const Braiding& B, const WeightModule& V,
                           const ParabolicDatum& par) {
  const size_t n = V.dim();
  const Scalar expect =
      -q_power(mpq_class(4) / par.h0_norm, par.D);
  size_t neg_mult = 0;
  for (const auto& comp : B.spectrum)
    if (comp.sign < 0) {
      if (comp.eigenvalue != expect)
        throw Error("spectral-mismatch",
                    "negative eigenvalue differs from the pinned power");
      neg_mult += comp.multiplicity;
    }
  if (neg_mult != n * (n - 1) / 2)
    throw Error("spectral-mismatch",
                "negative eigenspace has the wrong dimension");

  Mat<Scalar> shifted = B.matrix;
  for (size_t r = 0; r < shifted.rows(); ++r) shifted(r, r) -= expect;
  Mat<Scalar> kernel = nullspace(shifted);
  if (kernel.cols() != neg_mult)
    throw Error("spectral-mismatch",
                "eigenspace dimension disagrees with the spectrum");
  const std::vector<size_t> perm = generator_permutation(par, V);
  // Rewrite rows from module tensor coordinates to generator coordinates.
  Mat<Scalar> out(n * n, kernel.cols());
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < kernel.cols(); ++c)
        out(a * n + b, c) = kernel(perm[a] * n + perm[b], c);
  return out;
}

QuadraticPresentation presentation(const ParabolicDatum& par) {
  QuadraticPresentation P;
  P.par = par;
  P.n = static_cast<size_t>(par.n);
  for (int k = 0; k < par.n; ++k)
    P.gen_weights.push_back(generator_weight(par, k));

  const WeightModule V = pminus_module(par);
  const Braiding B = self_braiding(V);
  P.relation_basis = relation_space(B, V, par);
  for (const auto& comp : B.spectrum)
    if (comp.sign < 0) P.negative_eigenvalue = comp.eigenvalue;

  // Solve the relations for the inversion monomials: columns are reordered
  // with all inversions first, so row reduction makes each relation read
  // "inversion = combination of ordered monomials".
  const size_t m = P.relation_basis.cols();
  std::vector<std::pair<int, int>> inv, ord;
  for (int i = 0; i < par.n; ++i)
    for (int j = 0; j < par.n; ++j)
      (i > j ? inv : ord).push_back({i, j});
  std::vector<std::pair<int, int>> cols = inv;
  cols.insert(cols.end(), ord.begin(), ord.end());

  Mat<Scalar> rel(m, P.n * P.n);
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < P.n * P.n; ++c)
      rel(r, c) =
          P.relation_basis(tcol(P.n, cols[c].first, cols[c].second), r);
  const std::vector<size_t> piv = rref(rel);
  if (piv.size() != m)
    throw Error("leading-term-degenerate", "relations are not independent");
  for (size_t r = 0; r < m; ++r)
    if (piv[r] >= inv.size())
      throw Error("leading-term-degenerate",
                  "an inversion monomial cannot be made leading");
  for (size_t r = 0; r < m; ++r) {
    RuleRhs rhs;
    for (size_t c = inv.size(); c < P.n * P.n; ++c)
      if (!rel(r, c).is_zero())
        rhs.emplace_back(cols[c].first, cols[c].second, -rel(r, c));
    P.rules.emplace(cols[piv[r]], std::move(rhs));
  }
  return P;
}

ConfluenceCertificate confluence_check(const QuadraticPresentation& P) {
  ConfluenceCertificate cert;
  cert.all_resolved = true;
  for (int i = 0; i < static_cast<int>(P.n); ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k) {
        // Resolve z_i z_j z_k by rewriting the left pair and the right pair
        // first, then reducing both results fully.
        std::map<std::vector<int>, Scalar> left, right;
        for (const auto& [a, b, c] : P.rules.at({i, j}))
          accumulate(left, {a, b, k}, c);
        for (const auto& [a, b, c] : P.rules.at({j, k}))
          accumulate(right, {i, a, b}, c);
        const bool ok = reduce_combo(P, std::move(left)) ==
                        reduce_combo(P, std::move(right));
        cert.overlaps.push_back({{i, j, k}, ok});
        if (!ok) {
          cert.all_resolved = false;
          throw Error("overlap-failure",
                      "ambiguity does not resolve at word (" +
                          std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ")");
        }
      }
  return cert;
}

MonomialCombo normal_form(const std::vector<int>& word,
                          const QuadraticPresentation& P) {
  std::map<std::vector<int>, Scalar> combo;
  combo.emplace(word, Scalar(1));
  combo = reduce_combo(P, std::move(combo));
  MonomialCombo out;
  for (const auto& [w, c] : combo) {
    IVec expo(P.n, 0);
    for (int letter : w) ++expo[static_cast<size_t>(letter)];
    out[expo] += c;
  }
  return out;
}

std::vector<long> hilbert_dims(const QuadraticPresentation& P, long maxdeg) {
  // Count words containing no rule left side, by dynamic programming on the
  // last letter.
  std::vector<long> dims{1};
  if (maxdeg < 1) return dims;
  std::vector<long> ending(P.n, 1);
  dims.push_back(static_cast<long>(P.n));
  for (long deg = 2; deg <= maxdeg; ++deg) {
    std::vector<long> next(P.n, 0);
    for (size_t last = 0; last < P.n; ++last)
      for (size_t nxt = 0; nxt < P.n; ++nxt)
        if (!P.rules.count({static_cast<int>(last), static_cast<int>(nxt)}))
          next[nxt] += ending[last];
    ending = std::move(next);
    long total = 0;
    for (long e : ending) total += e;
    dims.push_back(total);
  }
  return dims;
}

}  // namespace qpv
