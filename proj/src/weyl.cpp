/// @file weyl.cpp
/// @brief Weyl group generation, Bruhat combinatorics, and sign assignments.

#include "qpv/weyl.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

namespace qpv {

namespace {

std::vector<long> flatten(const WMat& m) {
  std::vector<long> key;
  key.reserve(m.size() * m.size());
  for (const auto& row : m) key.insert(key.end(), row.begin(), row.end());
  return key;
}

/// Fundamental coordinates of alpha_i (column i of the Cartan matrix).
IVec simple_root_fund(const RootDatum& dat, int i) {
  IVec f(dat.rank);
  for (int k = 0; k < dat.rank; ++k) f[k] = dat.a[k][i];
  return f;
}

/// Sign of a root given in fundamental coordinates: +1 positive, -1 negative.
int root_sign(const RootDatum& dat, const IVec& fund) {
  IVec r = fund_to_root(dat, fund);
  bool pos = false, neg = false;
  for (long c : r) {
    if (c > 0) pos = true;
    if (c < 0) neg = true;
  }
  if (pos == neg)
    throw Error("invalid-element", "weight is not a root image");
  return pos ? 1 : -1;
}

bool elem_before(const WeylElement& x, const WeylElement& y) {
  if (x.length != y.length) return x.length < y.length;
  return x.word < y.word;
}

WMat inverse_matrix(const RootDatum& dat, const WeylElement& w) {
  WMat m = wmat_identity(dat.rank);
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it)
    m = wmat_mul(m, reflection_matrix(dat, *it));
  return m;
}

/// Whether l(s_i w) < l(w), i.e. w^{-1}(alpha_i) is negative; minv is the
/// matrix of w^{-1}.
bool left_descent(const RootDatum& dat, const WMat& minv, int i) {
  return root_sign(dat, wmat_apply(minv, simple_root_fund(dat, i))) < 0;
}

std::vector<WeylElement> generate_with(const RootDatum& dat,
                                       const std::vector<int>& gens,
                                       size_t cap) {
  for (int i : gens)
    if (i < 0 || i >= dat.rank)
      throw Error("invalid-element", "generator index out of range");
  std::vector<WMat> refl(dat.rank);
  for (int i : gens) refl[i] = reflection_matrix(dat, i);

  std::vector<WeylElement> out{weyl_identity(dat)};
  std::map<std::vector<long>, size_t> seen{{flatten(out[0].matrix), 0}};
  std::deque<size_t> queue{0};
  while (!queue.empty()) {
    size_t at = queue.front();
    queue.pop_front();
    for (int i : gens) {
      WMat m = wmat_mul(out[at].matrix, refl[i]);
      auto key = flatten(m);
      if (seen.count(key)) continue;
      if (out.size() >= cap)
        throw Error("group-too-large",
                    "Weyl group exceeds the configured cap");
      WeylElement nw;
      nw.matrix = std::move(m);
      nw.word = out[at].word;
      nw.word.push_back(i);
      nw.length = out[at].length + 1;
      seen.emplace(std::move(key), out.size());
      queue.push_back(out.size());
      out.push_back(std::move(nw));
    }
  }
  std::sort(out.begin(), out.end(), elem_before);
  return out;
}

}  // namespace

WMat wmat_identity(int rank) {
  WMat m(rank, IVec(rank, 0));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  return m;
}

WMat reflection_matrix(const RootDatum& dat, int i) {
  WMat m = wmat_identity(dat.rank);
  for (int k = 0; k < dat.rank; ++k) m[k][i] -= dat.a[k][i];
  return m;
}

WMat wmat_mul(const WMat& a, const WMat& b) {
  size_t n = a.size();
  WMat m(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      long x = a[i][k];
      if (x == 0) continue;
      for (size_t j = 0; j < n; ++j) m[i][j] += x * b[k][j];
    }
  return m;
}

IVec wmat_apply(const WMat& m, const IVec& fund) {
  IVec y(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) y[i] += m[i][j] * fund[j];
  return y;
}

WeylElement weyl_identity(const RootDatum& dat) {
  WeylElement e;
  e.matrix = wmat_identity(dat.rank);
  return e;
}

WeylElement simple_reflection(const RootDatum& dat, int i) {
  if (i < 0 || i >= dat.rank)
    throw Error("invalid-element", "node index out of range");
  WeylElement w;
  w.matrix = reflection_matrix(dat, i);
  w.word = {i};
  w.length = 1;
  return w;
}

WeylElement from_matrix(const RootDatum& dat, const WMat& m) {
  long npos = static_cast<long>(positive_roots(dat).size());
  WMat cur = m;
  std::vector<int> rev;
  WMat id = wmat_identity(dat.rank);
  while (cur != id) {
    if (static_cast<long>(rev.size()) > npos)
      throw Error("invalid-element", "matrix is not a Weyl group element");
    int chosen = -1;
    for (int i = 0; i < dat.rank; ++i) {
      if (root_sign(dat, wmat_apply(cur, simple_root_fund(dat, i))) < 0) {
        chosen = i;
        break;
      }
    }
    if (chosen < 0)
      throw Error("invalid-element", "matrix is not a Weyl group element");
    cur = wmat_mul(cur, reflection_matrix(dat, chosen));
    rev.push_back(chosen);
  }
  WeylElement w;
  w.matrix = m;
  w.word.assign(rev.rbegin(), rev.rend());
  w.length = static_cast<int>(w.word.size());
  return w;
}

WeylElement compose(const RootDatum& dat, const WeylElement& a,
                    const WeylElement& b) {
  return from_matrix(dat, wmat_mul(a.matrix, b.matrix));
}

WeylElement inverse_element(const RootDatum& dat, const WeylElement& w) {
  WeylElement v;
  v.matrix = inverse_matrix(dat, w);
  v.word.assign(w.word.rbegin(), w.word.rend());
  v.length = w.length;
  return v;
}

long inversion_count(const RootDatum& dat, const WeylElement& w) {
  long count = 0;
  for (const IVec& beta : positive_roots(dat)) {
    IVec f = root_to_fund(dat, beta);
    if (root_sign(dat, wmat_apply(w.matrix, f)) < 0) ++count;
  }
  return count;
}

std::vector<WeylElement> generate(const RootDatum& dat, size_t cap) {
  std::vector<int> all(dat.rank);
  for (int i = 0; i < dat.rank; ++i) all[i] = i;
  return generate_with(dat, all, cap);
}

std::vector<WeylElement> generate_levi(const RootDatum& dat,
                                       const std::vector<int>& S,
                                       size_t cap) {
  return generate_with(dat, S, cap);
}

std::vector<WeylElement> generate_quotient(const RootDatum& dat,
                                           const std::vector<int>& S,
                                           size_t cap) {
  std::vector<WeylElement> out;
  for (const WeylElement& w : generate(dat, cap)) {
    WMat minv = inverse_matrix(dat, w);
    bool minimal = true;
    for (int i : S)
      if (left_descent(dat, minv, i)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(w);
  }
  return out;
}

const WeylElement& longest_element(const std::vector<WeylElement>& elems) {
  if (elems.empty()) throw Error("invalid-element", "empty element list");
  size_t best = 0;
  for (size_t i = 1; i < elems.size(); ++i)
    if (elems[i].length > elems[best].length) best = i;
  for (size_t i = 0; i < elems.size(); ++i)
    if (i != best && elems[i].length == elems[best].length)
      throw Error("invalid-element", "maximal length is not unique");
  return elems[best];
}

std::pair<WeylElement, WeylElement> parabolic_decompose(
    const RootDatum& dat, const std::vector<int>& S, const WeylElement& w) {
  WeylElement u = w;
  std::vector<int> prefix;
  for (;;) {
    WMat minv = inverse_matrix(dat, u);
    int chosen = -1;
    for (int i : S)
      if (left_descent(dat, minv, i)) {
        chosen = i;
        break;
      }
    if (chosen < 0) break;
    prefix.push_back(chosen);
    u = from_matrix(dat, wmat_mul(reflection_matrix(dat, chosen), u.matrix));
  }
  WMat ms = wmat_identity(dat.rank);
  for (int i : prefix) ms = wmat_mul(ms, reflection_matrix(dat, i));
  WeylElement ws = from_matrix(dat, ms);
  if (ws.length + u.length != w.length ||
      wmat_mul(ws.matrix, u.matrix) != w.matrix)
    throw Error("invalid-element", "parabolic factorization failed");
  return {ws, u};
}

std::vector<IVec> convex_order(const ParabolicDatum& par) {
  const RootDatum& dat = par.base;
  WeylElement w0 = longest_element(generate(dat));
  auto [w0s, w0q] = parabolic_decompose(dat, par.S, w0);
  std::vector<int> word = w0s.word;
  word.insert(word.end(), w0q.word.begin(), w0q.word.end());

  std::vector<IVec> order;
  WMat prefix = wmat_identity(dat.rank);
  std::set<IVec> distinct;
  for (int i : word) {
    IVec beta =
        fund_to_root(dat, wmat_apply(prefix, simple_root_fund(dat, i)));
    for (long c : beta)
      if (c < 0) throw Error("invalid-element", "order produced a negative root");
    if (!distinct.insert(beta).second)
      throw Error("invalid-element", "order produced a repeated root");
    order.push_back(beta);
    prefix = wmat_mul(prefix, reflection_matrix(dat, i));
  }
  if (order.size() != positive_roots(dat).size())
    throw Error("invalid-element", "order does not exhaust the positive roots");
  return order;
}

bool bruhat_leq(const RootDatum& dat, const WeylElement& a,
                const WeylElement& b) {
  // Walk down a fixed reduced word of b, lifting a through left descents.
  WMat mainv = inverse_matrix(dat, a);
  int la = a.length;
  for (size_t t = 0; t < b.word.size(); ++t) {
    if (la == 0) return true;
    if (la > static_cast<int>(b.word.size() - t)) return false;
    int i = b.word[t];
    if (left_descent(dat, mainv, i)) {
      mainv = wmat_mul(mainv, reflection_matrix(dat, i));
      --la;
    }
  }
  return la == 0;
}

BruhatGraph bruhat_graph(const RootDatum& dat,
                         std::vector<WeylElement> vertices) {
  std::sort(vertices.begin(), vertices.end(), elem_before);
  BruhatGraph g;
  g.vertices = std::move(vertices);
  for (size_t u = 0; u < g.vertices.size(); ++u)
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      if (g.vertices[v].length != g.vertices[u].length + 1) continue;
      if (bruhat_leq(dat, g.vertices[u], g.vertices[v]))
        g.edges.emplace_back(u, v);
    }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<Square> squares(const RootDatum& dat, const BruhatGraph& g) {
  std::map<std::pair<size_t, size_t>, size_t> edge_id;
  for (size_t e = 0; e < g.edges.size(); ++e) edge_id[g.edges[e]] = e;
  std::vector<std::vector<size_t>> out_adj(g.vertices.size());
  for (const auto& [u, v] : g.edges) out_adj[u].push_back(v);

  std::vector<WeylElement> ambient = generate(dat);
  std::vector<Square> result;
  for (size_t b = 0; b < g.vertices.size(); ++b)
    for (size_t t = 0; t < g.vertices.size(); ++t) {
      if (g.vertices[t].length != g.vertices[b].length + 2) continue;
      size_t ambient_mids = 0;
      for (const WeylElement& m : ambient)
        if (m.length == g.vertices[b].length + 1 &&
            bruhat_leq(dat, g.vertices[b], m) &&
            bruhat_leq(dat, m, g.vertices[t]))
          ++ambient_mids;
      if (ambient_mids != 0 && ambient_mids != 2)
        throw Error("structure-violation",
                    "length-2 interval with ambient intermediate count " +
                        std::to_string(ambient_mids));
      std::vector<size_t> mids;
      for (size_t m : out_adj[b])
        if (edge_id.count({m, t})) mids.push_back(m);
      if (mids.size() > ambient_mids)
        throw Error("structure-violation",
                    "more in-graph intermediates than ambient ones");
      if (mids.size() != 2) continue;
      Square sq;
      sq.bottom = b;
      sq.top = t;
      sq.mid1 = mids[0];
      sq.mid2 = mids[1];
      sq.edge = {edge_id.at({b, mids[0]}), edge_id.at({mids[0], t}),
                 edge_id.at({b, mids[1]}), edge_id.at({mids[1], t})};
      result.push_back(sq);
    }
  return result;
}

SignAssignment sign_assignment(const RootDatum& dat, const BruhatGraph& g,
                               unsigned variant) {
  const size_t ne = g.edges.size();
  std::vector<Square> sqs = squares(dat, g);
  // GF(2): x_e = 1 encodes sign -1; each square needs an odd sign count.
  std::vector<std::vector<uint8_t>> rows;
  for (const Square& sq : sqs) {
    std::vector<uint8_t> row(ne + 1, 0);
    for (size_t e : sq.edge) row[e] ^= 1;
    row[ne] = 1;
    rows.push_back(std::move(row));
  }
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < ne && rank < rows.size(); ++col) {
    size_t p = rank;
    while (p < rows.size() && !rows[p][col]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][col])
        for (size_t j = col; j <= ne; ++j) rows[r][j] ^= rows[rank][j];
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < rows.size(); ++r)
    if (rows[r][ne])
      throw Error("unsolvable-system", "no consistent sign assignment");

  std::vector<uint8_t> x(ne, variant & 1u ? 1 : 0);
  for (size_t r = 0; r < rank; ++r) {
    uint8_t val = rows[r][ne];
    for (size_t j = pivot_col[r] + 1; j < ne; ++j)
      if (rows[r][j]) val ^= x[j];
    x[pivot_col[r]] = val;
  }
  SignAssignment signs(ne, 1);
  for (size_t e = 0; e < ne; ++e) signs[e] = x[e] ? -1 : 1;
  // Defensive check of the defining property.
  for (const Square& sq : sqs) {
    int prod = 1;
    for (size_t e : sq.edge) prod *= signs[e];
    if (prod != -1)
      throw Error("unsolvable-system", "sign assignment check failed");
  }
  return signs;
}

bool gauge_equivalent(const BruhatGraph& g, const SignAssignment& s1,
                      const SignAssignment& s2) {
  if (s1.size() != g.edges.size() || s2.size() != g.edges.size())
    throw Error("invalid-element", "sign assignment size mismatch");
  const size_t n = g.vertices.size();
  std::vector<std::vector<std::pair<size_t, size_t>>> adj(n);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].first].emplace_back(g.edges[e].second, e);
    adj[g.edges[e].second].emplace_back(g.edges[e].first, e);
  }
  std::vector<int> gamma(n, 0);
  for (size_t root = 0; root < n; ++root) {
    if (gamma[root] != 0) continue;
    gamma[root] = 1;
    std::deque<size_t> queue{root};
    while (!queue.empty()) {
      size_t at = queue.front();
      queue.pop_front();
      for (auto [to, e] : adj[at]) {
        int want = s1[e] * s2[e] * gamma[at];
        if (gamma[to] == 0) {
          gamma[to] = want;
          queue.push_back(to);
        }
      }
    }
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (s1[e] != gamma[u] * gamma[v] * s2[e]) return false;
  }
  return true;
}

IVec affine_action(const RootDatum&, const WeylElement& w,
                   const IVec& lambda) {
  IVec shifted = lambda;
  for (long& c : shifted) c += 1;
  IVec img = wmat_apply(w.matrix, shifted);
  for (long& c : img) c -= 1;
  return img;
}

std::vector<IVec> kostant_weights(const ParabolicDatum& par, int r) {
  const RootDatum& dat = par.base;
  if (r < 0 || r > par.n)
    throw Error("invalid-element", "degree outside [0, dim]");
  std::vector<IVec> out;
  IVec zero(dat.rank, 0);
  for (const WeylElement& w : generate_quotient(dat, par.S))
    if (w.length == r) out.push_back(affine_action(dat, w, zero));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error("structure-violation", "repeated degree-r weight");
  return out;
}

}  // namespace qpv
