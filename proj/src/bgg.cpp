#include "qpv/bgg.hpp"

#include <algorithm>
#include <string>

namespace qpv {
namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long s = 1; s <= k; ++s) r = r * (n - k + s) / s;
  return r;
}

std::string weight_str(const IVec& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i)
    s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

// Characters of the symmetric powers of the nilradical generators, levels
// 0..depth: one geometric series per generator weight, truncated.
std::vector<WeightChar> symmetric_levels(const ParabolicDatum& par,
                                         long depth) {
  std::vector<WeightChar> lev(static_cast<size_t>(depth) + 1);
  lev[0][IVec(par.base.rank, 0)] = 1;
  for (int k = 0; k < par.n; ++k) {
    const IVec w = generator_weight(par, k);
    std::vector<WeightChar> next(lev.size());
    for (long d = 0; d <= depth; ++d)
      for (long m = 0; m <= d; ++m)
        for (const auto& [mu, mult] : lev[static_cast<size_t>(d - m)]) {
          IVec shifted = mu;
          for (size_t i = 0; i < shifted.size(); ++i) shifted[i] += m * w[i];
          next[static_cast<size_t>(d)][shifted] += mult;
        }
    lev = std::move(next);
  }
  return lev;
}

long char_dim(const WeightChar& ch) {
  long d = 0;
  for (const auto& [mu, mult] : ch) d += mult;
  return d;
}

void subsets(long n, long k, long from, std::vector<int>& cur,
             std::vector<std::vector<int>>& out) {
  if (static_cast<long>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (long i = from; i < n; ++i) {
    cur.push_back(static_cast<int>(i));
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

void exponents(long n, long k, size_t pos, std::vector<long>& cur,
               std::vector<std::vector<long>>& out) {
  if (pos + 1 == static_cast<size_t>(n)) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (long e = 0; e <= k; ++e) {
    cur[pos] = e;
    exponents(n, k - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

GVCharacter gv_character(const ParabolicDatum& par, const IVec& lambda,
                         long depth) {
  if (depth < 0) throw Error("invalid-element", "negative depth");
  for (int i : par.S)
    if (lambda[static_cast<size_t>(i)] < 0)
      throw Error("weight-not-in-cone",
                  "weight is not dominant on the Levi nodes");
  GVCharacter gv;
  gv.lambda = lambda;
  gv.depth = depth;
  const WeightChar levi = levi_character(par.base, par.S, lambda);
  const long levi_size = char_dim(levi);
  for (const WeightChar& sym : symmetric_levels(par, depth)) {
    gv.graded.push_back(char_convolve(levi, sym));
    const long d = static_cast<long>(gv.graded.size()) - 1;
    if (char_dim(gv.graded.back()) !=
        levi_size * binom(d + par.n - 1, par.n - 1))
      throw Error("structure-violation",
                  "level dimension breaks the free-module count");
  }
  return gv;
}

BGGShape bgg_shape(const ParabolicDatum& par) {
  const RootDatum& dat = par.base;
  BGGShape shape;
  shape.graph = bruhat_graph(dat, generate_quotient(dat, par.S));

  int top = 0;
  for (const WeylElement& w : shape.graph.vertices)
    top = std::max(top, w.length);
  if (top != par.n)
    throw Error("structure-violation",
                "top coset length differs from the nilradical dimension");
  shape.by_length.assign(static_cast<size_t>(top) + 1, {});
  const IVec zero(dat.rank, 0);
  for (size_t v = 0; v < shape.graph.vertices.size(); ++v) {
    const WeylElement& w = shape.graph.vertices[v];
    shape.by_length[static_cast<size_t>(w.length)].push_back(v);
    shape.dot_weights.push_back(affine_action(dat, w, zero));
  }

  // The dotted weights per length must reproduce the degree-r lists.
  for (int r = 0; r <= top; ++r) {
    std::vector<IVec> got;
    for (size_t v : shape.by_length[static_cast<size_t>(r)])
      got.push_back(shape.dot_weights[v]);
    std::sort(got.begin(), got.end());
    if (got != kostant_weights(par, r))
      throw Error("structure-violation",
                  "length-" + std::to_string(r) +
                      " dotted weights disagree with the degree list");
  }

  shape.signs = sign_assignment(dat, shape.graph);
  for (const Square& sq : squares(dat, shape.graph)) {
    int prod = 1;
    for (size_t e : sq.edge) prod *= shape.signs[e];
    if (prod != -1)
      throw Error("structure-violation", "square sign product is not -1");
  }
  return shape;
}

DualMatchReport dual_derham_matches_bgg(const CalculusPresentation& C,
                                        long k, long depth) {
  const ParabolicDatum& par = C.par;
  const RootDatum& dat = par.base;
  const long n = static_cast<long>(C.n);
  if (k < 0 || k > n)
    throw Error("invalid-element", "form degree outside [0, n]");

  // Form-component side: weight multisets of the monomial basis, the
  // one-form letters weighted like the coordinates.
  std::vector<IVec> gen;
  for (int i = 0; i < par.n; ++i) gen.push_back(generator_weight(par, i));
  std::vector<WeightChar> forms(static_cast<size_t>(depth) + 1);
  std::vector<std::vector<int>> dzs;
  std::vector<int> cur;
  subsets(n, k, 0, cur, dzs);
  for (long d = 0; d <= depth; ++d) {
    std::vector<std::vector<long>> expos;
    std::vector<long> e(static_cast<size_t>(n), 0);
    exponents(n, d, 0, e, expos);
    for (const auto& I : dzs) {
      IVec base_weight(dat.rank, 0);
      for (int i : I)
        for (size_t c = 0; c < base_weight.size(); ++c)
          base_weight[c] += gen[static_cast<size_t>(i)][c];
      for (const auto& a : expos) {
        IVec w = base_weight;
        for (long i = 0; i < n; ++i)
          for (size_t c = 0; c < w.size(); ++c)
            w[c] +=
                a[static_cast<size_t>(i)] * gen[static_cast<size_t>(i)][c];
        ++forms[static_cast<size_t>(d)][w];
      }
    }
  }

  // Resolution side: sum of the graded characters at the length-k dotted
  // weights.
  const IVec zero(dat.rank, 0);
  std::vector<WeightChar> blocks(static_cast<size_t>(depth) + 1);
  for (const WeylElement& w : generate_quotient(dat, par.S)) {
    if (w.length != k) continue;
    const GVCharacter gv =
        gv_character(par, affine_action(dat, w, zero), depth);
    for (long d = 0; d <= depth; ++d)
      blocks[static_cast<size_t>(d)] = char_add(
          blocks[static_cast<size_t>(d)], gv.graded[static_cast<size_t>(d)]);
  }

  DualMatchReport report;
  report.k = k;
  report.depth = depth;
  for (long d = 0; d <= depth; ++d) {
    const WeightChar& lhs = forms[static_cast<size_t>(d)];
    const WeightChar& rhs = blocks[static_cast<size_t>(d)];
    if (lhs != rhs) {
      for (const auto& [mu, mult] : lhs) {
        const auto it = rhs.find(mu);
        if (it == rhs.end() || it->second != mult)
          throw Error("mismatch", "level " + std::to_string(d) +
                                      " weight " + weight_str(mu));
      }
      for (const auto& [mu, mult] : rhs)
        if (!lhs.count(mu))
          throw Error("mismatch", "level " + std::to_string(d) +
                                      " weight " + weight_str(mu));
    }
    report.dims.push_back(char_dim(lhs));
  }
  return report;
}

EulerReport euler_check(const ParabolicDatum& par, long depth) {
  const RootDatum& dat = par.base;
  const IVec zero(dat.rank, 0);
  // Levi dimensions of the blocks, grouped by length.
  std::vector<std::vector<long>> block_dims(static_cast<size_t>(par.n) + 1);
  for (const WeylElement& w : generate_quotient(dat, par.S))
    block_dims[static_cast<size_t>(w.length)].push_back(
        levi_dim(dat, par.S, affine_action(dat, w, zero)));

  EulerReport report;
  report.depth = depth;
  for (long t = 0; t <= depth; ++t) {
    long sum = 0;
    for (long k = 0; k <= std::min<long>(t, par.n); ++k) {
      long block = 0;
      for (long d : block_dims[static_cast<size_t>(k)])
        block += d * binom(t - k + par.n - 1, par.n - 1);
      sum += (k % 2 == 0) ? block : -block;
    }
    report.alternating.push_back(sum);
    if (sum != (t == 0 ? 1 : 0))
      throw Error("mismatch",
                  "alternating count at degree " + std::to_string(t));
  }
  return report;
}

}  // namespace qpv
