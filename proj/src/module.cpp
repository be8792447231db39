#include "qpv/module.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace qpv {
namespace {

// mu - alpha_i in fundamental coordinates (alpha_i is column i of a).
IVec minus_alpha(const RootDatum& dat, const IVec& mu, int i) {
  IVec out = mu;
  for (int k = 0; k < dat.rank; ++k) out[k] -= dat.a[k][i];
  return out;
}

IVec plus_alpha(const RootDatum& dat, const IVec& mu, int i) {
  IVec out = mu;
  for (int k = 0; k < dat.rank; ++k) out[k] += dat.a[k][i];
  return out;
}

void accumulate(VermaVector& out, const std::vector<int>& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = out.find(w);
  if (it == out.end()) {
    out.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) out.erase(it);
}

// Shared state for building one module out of Verma words.
struct GramCache {
  const RootDatum& dat;
  long D;
  IVec lambda;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Scalar> cache;

  // <F_w v, F_u v>, memoized; the contravariant form is symmetric, so the
  // key is stored with the two words in lexicographic order.
  const Scalar& pairing(const std::vector<int>& w, const std::vector<int>& u) {
    auto key = w <= u ? std::make_pair(w, u) : std::make_pair(u, w);
    auto it = cache.find(key);
    if (it == cache.end()) {
      VermaVector x{{key.second, Scalar(1)}};
      it = cache.emplace(key, gram_entry(dat, D, lambda, key.first, x)).first;
    }
    return it->second;
  }
};

}  // namespace

IVec word_weight(const RootDatum& dat, const IVec& lambda,
                 const std::vector<int>& word) {
  IVec mu = lambda;
  for (int j : word)
    for (int k = 0; k < dat.rank; ++k) mu[k] -= dat.a[k][j];
  return mu;
}

VermaVector apply_e(const RootDatum& dat, long D, const IVec& lambda, int i,
                    const VermaVector& x) {
  VermaVector out;
  for (const auto& [word, coeff] : x) {
    // suffix[t] = weight of F_{word[t]}..F_{word[k-1]} v; the coefficient of
    // the deletion at position t uses the weight right of t, suffix[t+1].
    const size_t k = word.size();
    std::vector<IVec> suffix(k + 1);
    suffix[k] = lambda;
    for (size_t t = k; t-- > 0;)
      suffix[t] = minus_alpha(dat, suffix[t + 1], word[t]);
    for (size_t t = 0; t < k; ++t) {
      if (word[t] != i) continue;
      Scalar c = q_number(suffix[t + 1][i], dat.d[i], D) * coeff;
      std::vector<int> rest;
      rest.reserve(k - 1);
      for (size_t s = 0; s < k; ++s)
        if (s != t) rest.push_back(word[s]);
      accumulate(out, rest, c);
    }
  }
  return out;
}

Scalar gram_entry(const RootDatum& dat, long D, const IVec& lambda,
                  const std::vector<int>& w, const VermaVector& x) {
  // <F_{i1}..F_{ik} v, x> = <v, E_{ik}..E_{i1} x>: strip w from the left.
  VermaVector y = x;
  for (int i : w) {
    if (y.empty()) return Scalar();
    y = apply_e(dat, D, lambda, i, y);
  }
  auto it = y.find({});
  return it == y.end() ? Scalar() : it->second;
}

TruncatedVerma truncated_verma(const RootDatum& dat, const std::vector<int>& S,
                               long D, const IVec& lambda, long depth) {
  if (depth < 0) throw Error("invalid-element", "negative Verma depth");
  TruncatedVerma tv;
  tv.lambda = lambda;
  tv.depth = depth;
  tv.words.push_back({});
  std::vector<std::vector<int>> level{{}};
  for (long h = 1; h <= depth; ++h) {
    std::vector<std::vector<int>> next;
    for (int i : S)
      for (const auto& w : level) {
        std::vector<int> u;
        u.reserve(w.size() + 1);
        u.push_back(i);
        u.insert(u.end(), w.begin(), w.end());
        next.push_back(u);
      }
    std::sort(next.begin(), next.end());
    tv.words.insert(tv.words.end(), next.begin(), next.end());
    level = std::move(next);
  }
  const size_t m = tv.words.size();
  tv.weights.reserve(m);
  for (const auto& w : tv.words)
    tv.weights.push_back(word_weight(dat, lambda, w));
  tv.gram = Mat<Scalar>(m, m);
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < m; ++c) {
      VermaVector x{{tv.words[c], Scalar(1)}};
      tv.gram(r, c) = gram_entry(dat, D, lambda, tv.words[r], x);
    }
  return tv;
}

WeightModule simple_module(const RootDatum& dat, const std::vector<int>& S,
                           long D, const IVec& lambda, long depth) {
  for (int i : S)
    if (lambda[static_cast<size_t>(i)] < 0)
      throw Error("non-dominant-weight",
                  "highest weight has a negative acting coordinate");
  const bool full_depth = depth < 0;
  if (full_depth) depth = weight_htspan(dat, S, lambda);

  GramCache gc{dat, D, lambda, {}};
  WeightModule V;
  V.dat = dat;
  V.S = S;
  V.D = D;

  // Basis words grouped by weight, with the (nonsingular) Gram block of the
  // chosen pivot words per weight.
  std::map<IVec, std::vector<size_t>> block;  // weight -> global indices
  std::map<IVec, Mat<Scalar>> block_gram;
  V.words.push_back({});
  V.weights.push_back(lambda);
  block[lambda] = {0};
  block_gram[lambda] = Mat<Scalar>(1, 1);
  block_gram[lambda](0, 0) = gc.pairing({}, {});

  std::vector<size_t> level{0};  // global indices of the previous level
  for (long h = 1; h <= depth && !level.empty(); ++h) {
    // Candidate words per target weight: F_i applied to the previous level.
    std::map<IVec, std::vector<std::vector<int>>> cands;
    for (size_t idx : level)
      for (int i : S) {
        std::vector<int> u;
        u.reserve(V.words[idx].size() + 1);
        u.push_back(i);
        u.insert(u.end(), V.words[idx].begin(), V.words[idx].end());
        cands[minus_alpha(dat, V.weights[idx], i)].push_back(std::move(u));
      }
    std::vector<size_t> next;
    for (auto& [mu, ws] : cands) {
      std::sort(ws.begin(), ws.end());
      const size_t m = ws.size();
      Mat<Scalar> g(m, m);
      for (size_t r = 0; r < m; ++r)
        for (size_t c = r; c < m; ++c) g(r, c) = g(c, r) = gc.pairing(ws[r], ws[c]);
      Mat<Scalar> work = g;
      const std::vector<size_t> piv = rref(work);
      if (piv.empty()) continue;
      const size_t k = piv.size();
      Mat<Scalar> gb(k, k);
      for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < k; ++c) gb(r, c) = g(piv[r], piv[c]);
      std::vector<size_t>& idxs = block[mu];
      for (size_t p : piv) {
        idxs.push_back(V.words.size());
        next.push_back(V.words.size());
        V.words.push_back(ws[p]);
        V.weights.push_back(mu);
      }
      block_gram[mu] = std::move(gb);
    }
    level = std::move(next);
  }

  // Coordinates of a weight-pure Verma combination in the pivot-word basis
  // of its weight (zero when the weight does not occur).
  auto coords = [&](const IVec& mu, const VermaVector& x) -> std::vector<Scalar> {
    auto it = block.find(mu);
    if (it == block.end()) return {};
    const std::vector<size_t>& idxs = it->second;
    Mat<Scalar> rhs(idxs.size(), 1);
    for (size_t r = 0; r < idxs.size(); ++r) {
      Scalar acc;
      for (const auto& [word, coeff] : x)
        acc += gc.pairing(V.words[idxs[r]], word) * coeff;
      rhs(r, 0) = acc;
    }
    Mat<Scalar> t = solve(block_gram.at(mu), rhs);
    std::vector<Scalar> out(idxs.size());
    for (size_t r = 0; r < idxs.size(); ++r) out[r] = t(r, 0);
    return out;
  };

  const size_t dim = V.words.size();
  V.E.assign(static_cast<size_t>(dat.rank), Mat<Scalar>());
  V.F.assign(static_cast<size_t>(dat.rank), Mat<Scalar>());
  for (int i : S) {
    Mat<Scalar> e(dim, dim), f(dim, dim);
    for (size_t c = 0; c < dim; ++c) {
      const IVec up = plus_alpha(dat, V.weights[c], i);
      VermaVector ex = apply_e(dat, D, lambda, i, {{V.words[c], Scalar(1)}});
      std::vector<Scalar> et = coords(up, ex);
      if (!et.empty()) {
        const std::vector<size_t>& rows = block.at(up);
        for (size_t r = 0; r < rows.size(); ++r) e(rows[r], c) = et[r];
      }
      const IVec down = minus_alpha(dat, V.weights[c], i);
      std::vector<int> u;
      u.reserve(V.words[c].size() + 1);
      u.push_back(i);
      u.insert(u.end(), V.words[c].begin(), V.words[c].end());
      std::vector<Scalar> ft = coords(down, {{u, Scalar(1)}});
      if (!ft.empty()) {
        const std::vector<size_t>& rows = block.at(down);
        for (size_t r = 0; r < rows.size(); ++r) f(rows[r], c) = ft[r];
      }
    }
    V.E[static_cast<size_t>(i)] = std::move(e);
    V.F[static_cast<size_t>(i)] = std::move(f);
  }

  if (full_depth) {
    // The realized weight multiset must match the classical character.
    WeightChar got = character(V);
    if (got != levi_character(dat, S, lambda))
      throw Error("structure-violation",
                  "simple module disagrees with the classical character");
  }
  return V;
}

WeightModule trivial_module(const RootDatum& dat, const std::vector<int>& S,
                            long D) {
  return simple_module(dat, S, D, IVec(static_cast<size_t>(dat.rank), 0));
}

Mat<Scalar> k_matrix(const WeightModule& V, int i, int sign) {
  Mat<Scalar> k(V.dim(), V.dim());
  for (size_t r = 0; r < V.dim(); ++r)
    k(r, r) = Scalar::v_power(sign * V.D * V.dat.d[static_cast<size_t>(i)] *
                              V.weights[r][static_cast<size_t>(i)]);
  return k;
}

WeightModule dual_module(const WeightModule& V) {
  WeightModule W;
  W.dat = V.dat;
  W.S = V.S;
  W.D = V.D;
  W.weights.reserve(V.dim());
  for (const IVec& mu : V.weights) {
    IVec neg = mu;
    for (long& x : neg) x = -x;
    W.weights.push_back(neg);
  }
  W.E.assign(V.E.size(), Mat<Scalar>());
  W.F.assign(V.F.size(), Mat<Scalar>());
  for (int i : V.S) {
    const auto ui = static_cast<size_t>(i);
    W.E[ui] = (k_matrix(V, i, -1) * V.E[ui]).scaled(Scalar(-1)).transpose();
    W.F[ui] = (V.F[ui] * k_matrix(V, i, 1)).scaled(Scalar(-1)).transpose();
  }
  return W;
}

WeightModule tensor(const WeightModule& V, const WeightModule& W) {
  if (V.dat.series != W.dat.series || V.dat.rank != W.dat.rank ||
      V.S != W.S || V.D != W.D)
    throw Error("invalid-element", "tensor factors over different data");
  WeightModule T;
  T.dat = V.dat;
  T.S = V.S;
  T.D = V.D;
  T.weights.reserve(V.dim() * W.dim());
  for (size_t a = 0; a < V.dim(); ++a)
    for (size_t b = 0; b < W.dim(); ++b) {
      IVec mu = V.weights[a];
      for (int k = 0; k < T.dat.rank; ++k)
        mu[static_cast<size_t>(k)] += W.weights[b][static_cast<size_t>(k)];
      T.weights.push_back(mu);
    }
  T.E.assign(V.E.size(), Mat<Scalar>());
  T.F.assign(V.F.size(), Mat<Scalar>());
  const Mat<Scalar> iv = Mat<Scalar>::identity(V.dim());
  const Mat<Scalar> iw = Mat<Scalar>::identity(W.dim());
  for (int i : V.S) {
    const auto ui = static_cast<size_t>(i);
    T.E[ui] = Mat<Scalar>::kronecker(V.E[ui], iw) +
              Mat<Scalar>::kronecker(k_matrix(V, i, 1), W.E[ui]);
    T.F[ui] = Mat<Scalar>::kronecker(V.F[ui], k_matrix(W, i, -1)) +
              Mat<Scalar>::kronecker(iv, W.F[ui]);
  }
  return T;
}

std::vector<std::pair<IVec, Mat<Scalar>>> highest_weight_vectors(
    const WeightModule& V) {
  std::map<IVec, std::vector<size_t>> block;
  for (size_t r = 0; r < V.dim(); ++r) block[V.weights[r]].push_back(r);
  std::vector<std::pair<IVec, Mat<Scalar>>> out;
  for (const auto& [mu, idxs] : block) {
    // Stack the columns of every acting E_i restricted to this weight.
    Mat<Scalar> stacked(V.S.size() * V.dim(), idxs.size());
    for (size_t si = 0; si < V.S.size(); ++si) {
      const Mat<Scalar>& e = V.E[static_cast<size_t>(V.S[si])];
      for (size_t r = 0; r < V.dim(); ++r)
        for (size_t c = 0; c < idxs.size(); ++c)
          stacked(si * V.dim() + r, c) = e(r, idxs[c]);
    }
    Mat<Scalar> ns = V.S.empty() ? Mat<Scalar>::identity(idxs.size())
                                 : nullspace(stacked);
    if (ns.cols() == 0) continue;
    Mat<Scalar> full(V.dim(), ns.cols());
    for (size_t r = 0; r < idxs.size(); ++r)
      for (size_t c = 0; c < ns.cols(); ++c) full(idxs[r], c) = ns(r, c);
    out.emplace_back(mu, std::move(full));
  }
  return out;
}

std::vector<IsotypicComponent> isotypic_decompose(const WeightModule& V) {
  std::vector<IsotypicComponent> comps;
  size_t total = 0;
  for (const auto& [nu, hwv] : highest_weight_vectors(V)) {
    // F-closure of the highest-weight vectors of this weight.
    Mat<Scalar> basis = hwv;
    for (;;) {
      Mat<Scalar> grown(V.dim(), basis.cols() * (1 + V.S.size()));
      for (size_t r = 0; r < V.dim(); ++r)
        for (size_t c = 0; c < basis.cols(); ++c) grown(r, c) = basis(r, c);
      for (size_t si = 0; si < V.S.size(); ++si) {
        const Mat<Scalar> img = V.F[static_cast<size_t>(V.S[si])] * basis;
        for (size_t r = 0; r < V.dim(); ++r)
          for (size_t c = 0; c < basis.cols(); ++c)
            grown(r, (si + 1) * basis.cols() + c) = img(r, c);
      }
      Mat<Scalar> work = grown;
      const std::vector<size_t> piv = rref(work);
      Mat<Scalar> next(V.dim(), piv.size());
      for (size_t r = 0; r < V.dim(); ++r)
        for (size_t c = 0; c < piv.size(); ++c) next(r, c) = grown(r, piv[c]);
      if (next.cols() == basis.cols()) break;
      basis = std::move(next);
    }
    total += basis.cols();
    comps.push_back({nu, std::move(basis), Mat<Scalar>()});
  }
  if (total != V.dim())
    throw Error("structure-violation",
                "isotypic components do not fill the module");

  Mat<Scalar> change(V.dim(), V.dim());
  size_t off = 0;
  for (const auto& comp : comps) {
    for (size_t r = 0; r < V.dim(); ++r)
      for (size_t c = 0; c < comp.basis.cols(); ++c)
        change(r, off + c) = comp.basis(r, c);
    off += comp.basis.cols();
  }
  const Mat<Scalar> inv = inverse(change);
  off = 0;
  for (auto& comp : comps) {
    Mat<Scalar> left(V.dim(), comp.basis.cols());
    Mat<Scalar> right(comp.basis.cols(), V.dim());
    for (size_t r = 0; r < V.dim(); ++r)
      for (size_t c = 0; c < comp.basis.cols(); ++c)
        left(r, c) = change(r, off + c);
    for (size_t r = 0; r < comp.basis.cols(); ++r)
      for (size_t c = 0; c < V.dim(); ++c) right(r, c) = inv(off + r, c);
    comp.projection = left * right;
    off += comp.basis.cols();
  }
  return comps;
}

WeightModule pminus_module(const ParabolicDatum& par) {
  const RootDatum& dat = par.base;
  IVec lam(static_cast<size_t>(dat.rank));
  for (int k = 0; k < dat.rank; ++k)
    lam[static_cast<size_t>(k)] = -dat.a[static_cast<size_t>(k)]
                                        [static_cast<size_t>(par.l0)];
  WeightModule V = simple_module(dat, par.S, par.D, lam);
  WeightChar expect;
  for (const IVec& beta : par.pminus_roots) {
    IVec w = root_to_fund(dat, beta);
    for (long& x : w) x = -x;
    ++expect[w];
  }
  if (character(V) != expect || V.dim() != static_cast<size_t>(par.n))
    throw Error("structure-violation",
                "generator module disagrees with the nilradical roots");
  return V;
}

WeightChar character(const WeightModule& V) {
  WeightChar ch;
  for (const IVec& mu : V.weights) ++ch[mu];
  return ch;
}

std::vector<size_t> h0_component(const ParabolicDatum& par,
                                 const WeightModule& V, const mpq_class& r) {
  std::vector<size_t> out;
  for (size_t i = 0; i < V.dim(); ++i)
    if (h0_grade(par, V.weights[i]) == r) out.push_back(i);
  return out;
}

}  // namespace qpv
