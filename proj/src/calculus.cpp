#include "qpv/calculus.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "qpv/braiding.hpp"
#include "qpv/module.hpp"

namespace qpv {
namespace {

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

// Looks up the rule for an adjacent encoded pair (x, y); returns nullptr
// when the pair is already normal.  On success sets the letter offsets to
// re-encode the rule's right side: dz stays below n, z letters shift up.
const RuleRhs* pair_rule(const CalculusPresentation& C, int x, int y,
                         int& first_offset, int& second_offset) {
  const int n = static_cast<int>(C.n);
  if (x >= n && y >= n) {  // z z
    if (x - n <= y - n) return nullptr;
    first_offset = n;
    second_offset = n;
    return &C.zz.rules.at({x - n, y - n});
  }
  if (x >= n && y < n) {  // z dz: always rewritten
    first_offset = 0;
    second_offset = n;
    return &C.zd.at({x - n, y});
  }
  if (x < n && y < n && x >= y) {  // dz dz, weakly decreasing
    first_offset = 0;
    second_offset = 0;
    return &C.dd.at({x, y});
  }
  return nullptr;  // dz z, or already ordered
}

// Fully reduces a combination of encoded mixed words, rewriting the
// leftmost reducible pair of each word first.  The step cap turns a
// non-terminating rule set (impossible when the construction is right, but
// a bug could produce one) into an error instead of a hang.
std::map<std::vector<int>, Scalar> reduce_mixed(
    const CalculusPresentation& C,
    std::map<std::vector<int>, Scalar> combo) {
  long steps = 0;
  for (;;) {
    bool changed = false;
    for (auto it = combo.begin(); it != combo.end(); ++it) {
      // Copy before erase: the key dies with the node.
      const std::vector<int> w = it->first;
      size_t p = w.size();
      int off1 = 0, off2 = 0;
      const RuleRhs* rule = nullptr;
      for (size_t s = 0; s + 1 < w.size(); ++s)
        if ((rule = pair_rule(C, w[s], w[s + 1], off1, off2))) {
          p = s;
          break;
        }
      if (p == w.size()) continue;
      const Scalar coeff = it->second;
      combo.erase(it);
      for (const auto& [k, m, c] : *rule) {
        std::vector<int> nw = w;
        nw[p] = k + off1;
        nw[p + 1] = m + off2;
        accumulate(combo, nw, coeff * c);
      }
      changed = true;
      break;
    }
    if (!changed) return combo;
    if (++steps > 10000000)
      throw Error("non-terminating", "rewrite step limit exceeded");
  }
}

FormCombo to_form_combo(const CalculusPresentation& C,
                        const std::map<std::vector<int>, Scalar>& combo) {
  const int n = static_cast<int>(C.n);
  FormCombo out;
  for (const auto& [w, c] : combo) {
    FormMonomial m;
    m.second.assign(C.n, 0);
    for (int letter : w)
      if (letter < n)
        m.first.push_back(letter);
      else
        ++m.second[static_cast<size_t>(letter - n)];
    out[m] += c;
  }
  return out;
}

std::vector<int> monomial_word(const CalculusPresentation& C,
                               const FormMonomial& m) {
  const int n = static_cast<int>(C.n);
  std::vector<int> w;
  for (long i : m.first) w.push_back(static_cast<int>(i));
  for (size_t i = 0; i < C.n; ++i)
    for (long s = 0; s < m.second[i]; ++s) w.push_back(static_cast<int>(i) + n);
  return w;
}

// All strictly increasing index words of length j over {0..n-1}, lex
// ascending.
void subsets(size_t n, long j, size_t from, IVec& cur,
             std::vector<IVec>& out) {
  if (static_cast<long>(cur.size()) == j) {
    out.push_back(cur);
    return;
  }
  for (size_t i = from; i < n; ++i) {
    cur.push_back(static_cast<long>(i));
    subsets(n, j, i + 1, cur, out);
    cur.pop_back();
  }
}

// All exponent vectors of length n and total degree k, lex ascending.
void exponents(size_t n, long k, size_t pos, IVec& cur,
               std::vector<IVec>& out) {
  if (pos + 1 == n) {
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

std::vector<FormMonomial> enumerate_basis(size_t n, long j, long k) {
  std::vector<FormMonomial> basis;
  if (j < 0 || k < 0 || j > static_cast<long>(n)) return basis;
  std::vector<IVec> dzs, zs;
  IVec cur;
  subsets(n, j, 0, cur, dzs);
  IVec e(n, 0);
  exponents(n, k, 0, e, zs);
  for (const auto& I : dzs)
    for (const auto& a : zs) basis.push_back({I, a});
  return basis;
}

std::string bidegree_str(long j, long k) {
  return "(" + std::to_string(j) + ", " + std::to_string(k) + ")";
}

}  // namespace

CalculusPresentation build_calculus(const ParabolicDatum& par) {
  CalculusPresentation C;
  C.par = par;
  C.n = static_cast<size_t>(par.n);
  C.zz = presentation(par);
  confluence_check(C.zz);

  const WeightModule V = pminus_module(par);
  const Braiding B = fodc_braiding(par);
  for (const auto& comp : B.spectrum)
    if (comp.sign < 0 && !(comp.eigenvalue == Scalar(-1)))
      throw Error("spectral-mismatch",
                  "one-form braiding negative eigenvalue is not -1");
  C.braiding =
      operator_in_generator_basis(B.matrix, generator_permutation(par, V));

  const size_t n = C.n;
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j = 0; j < static_cast<int>(n); ++j) {
      RuleRhs rhs;
      for (int k = 0; k < static_cast<int>(n); ++k)
        for (int m = 0; m < static_cast<int>(n); ++m) {
          const Scalar& c = C.braiding(tcol(n, k, m), tcol(n, i, j));
          if (!c.is_zero()) rhs.emplace_back(k, m, c);
        }
      C.zd.emplace(std::pair<int, int>{i, j}, std::move(rhs));
    }

  // One-form relations: the column space of (identity + braiding).  Row
  // reduction with the weakly decreasing pairs ordered first must make
  // every one of them a leading term.
  std::vector<std::pair<int, int>> lead, rest;
  for (int i = 0; i < static_cast<int>(n); ++i)
    for (int j = 0; j < static_cast<int>(n); ++j)
      (i >= j ? lead : rest).push_back({i, j});
  std::vector<std::pair<int, int>> cols = lead;
  cols.insert(cols.end(), rest.begin(), rest.end());

  Mat<Scalar> rel(n * n, n * n);
  for (size_t r = 0; r < n * n; ++r)
    for (size_t c = 0; c < n * n; ++c) {
      const size_t row = tcol(n, cols[c].first, cols[c].second);
      rel(r, c) = C.braiding(row, r);
      if (row == r) rel(r, c) += Scalar(1);
    }
  const std::vector<size_t> piv = rref(rel);
  if (piv.size() != lead.size())
    throw Error("leading-term-degenerate",
                "one-form relation space has the wrong rank");
  for (size_t r = 0; r < piv.size(); ++r)
    if (piv[r] >= lead.size())
      throw Error("leading-term-degenerate",
                  "a weakly decreasing pair cannot be made leading");
  for (size_t r = 0; r < piv.size(); ++r) {
    RuleRhs rhs;
    for (size_t c = lead.size(); c < n * n; ++c)
      if (!rel(r, c).is_zero())
        rhs.emplace_back(cols[c].first, cols[c].second, -rel(r, c));
    C.dd.emplace(cols[piv[r]], std::move(rhs));
  }
  return C;
}

ConfluenceCertificate calculus_confluence(const CalculusPresentation& C) {
  const int n = static_cast<int>(C.n);
  std::vector<std::array<int, 3>> words;
  // z z z: both pairs inverted.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < j; ++k) words.push_back({i + n, j + n, k + n});
  // z z dz: the left pair inverted, the right pair always reducible.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < n; ++k) words.push_back({i + n, j + n, k});
  // z dz dz: the right pair weakly decreasing.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k <= j; ++k) words.push_back({i + n, j, k});
  // dz dz dz: both pairs weakly decreasing.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= j; ++k) words.push_back({i, j, k});

  ConfluenceCertificate cert;
  cert.all_resolved = true;
  for (const auto& w : words) {
    int off1 = 0, off2 = 0;
    std::map<std::vector<int>, Scalar> left, right;
    const RuleRhs* lrule = pair_rule(C, w[0], w[1], off1, off2);
    for (const auto& [a, b, c] : *lrule)
      accumulate(left, {a + off1, b + off2, w[2]}, c);
    const RuleRhs* rrule = pair_rule(C, w[1], w[2], off1, off2);
    for (const auto& [a, b, c] : *rrule)
      accumulate(right, {w[0], a + off1, b + off2}, c);
    const bool ok = reduce_mixed(C, std::move(left)) ==
                    reduce_mixed(C, std::move(right));
    cert.overlaps.push_back({w, ok});
    if (!ok) {
      cert.all_resolved = false;
      throw Error("overlap-failure",
                  "ambiguity does not resolve at encoded word (" +
                      std::to_string(w[0]) + "," + std::to_string(w[1]) +
                      "," + std::to_string(w[2]) + ")");
    }
  }
  return cert;
}

FormCombo calculus_normal_form(const std::vector<int>& word,
                               const CalculusPresentation& C) {
  std::map<std::vector<int>, Scalar> combo;
  combo.emplace(word, Scalar(1));
  return to_form_combo(C, reduce_mixed(C, std::move(combo)));
}

FormCombo form_multiply(const CalculusPresentation& C, const FormCombo& a,
                        const FormCombo& b) {
  std::map<std::vector<int>, Scalar> combo;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<int> w = monomial_word(C, ma);
      const std::vector<int> wb = monomial_word(C, mb);
      w.insert(w.end(), wb.begin(), wb.end());
      accumulate(combo, w, ca * cb);
    }
  FormCombo out;
  for (const auto& [m, c] : to_form_combo(C, reduce_mixed(C, std::move(combo))))
    if (!c.is_zero()) out[m] = c;
  return out;
}

FormCombo form_d(const CalculusPresentation& C, const FormCombo& x) {
  const int n = static_cast<int>(C.n);
  std::map<std::vector<int>, Scalar> combo;
  for (const auto& [m, c] : x) {
    // d kills the one-form prefix and passes it with a sign, then replaces
    // each coordinate factor in turn by its one-form.
    const Scalar signed_c =
        (m.first.size() % 2 == 0) ? c : -c;
    const std::vector<int> w = monomial_word(C, m);
    for (size_t s = m.first.size(); s < w.size(); ++s) {
      std::vector<int> nw = w;
      nw[s] = w[s] - n;
      accumulate(combo, nw, signed_c);
    }
  }
  FormCombo out;
  for (const auto& [m, c] : to_form_combo(C, reduce_mixed(C, std::move(combo))))
    if (!c.is_zero()) out[m] = c;
  return out;
}

long lambda_const_dim(const CalculusPresentation& C, long j) {
  if (j < 0) return 0;
  if (j == 0) return 1;
  calculus_confluence(C);  // distinct normal monomials are then independent
  const int n = static_cast<int>(C.n);
  std::set<IVec> reached;
  std::vector<int> word(static_cast<size_t>(j), 0);
  for (;;) {
    for (const auto& [m, c] : calculus_normal_form(word, C))
      if (!c.is_zero()) reached.insert(m.first);
    // Next word in lex order.
    size_t p = word.size();
    while (p > 0 && word[p - 1] == n - 1) word[--p] = 0;
    if (p == 0) break;
    ++word[p - 1];
  }
  return static_cast<long>(reached.size());
}

FormComponent component_basis(const CalculusPresentation& C, long j, long k) {
  FormComponent comp;
  comp.j = j;
  comp.k = k;
  comp.basis = enumerate_basis(C.n, j, k);
  std::map<FormMonomial, size_t> index;
  for (size_t i = 0; i < comp.basis.size(); ++i)
    index.emplace(comp.basis[i], i);

  // The products (ordered coordinate monomial) x (ordered one-form word)
  // must hit the normal basis bijectively.
  const int n = static_cast<int>(C.n);
  Mat<Scalar> prod(comp.basis.size(), comp.basis.size());
  for (size_t col = 0; col < comp.basis.size(); ++col) {
    const auto& [I, a] = comp.basis[col];
    std::vector<int> w;
    for (size_t i = 0; i < C.n; ++i)
      for (long s = 0; s < a[i]; ++s) w.push_back(static_cast<int>(i) + n);
    for (long i : I) w.push_back(static_cast<int>(i));
    for (const auto& [m, c] : calculus_normal_form(w, C)) {
      const auto it = index.find(m);
      if (it == index.end())
        throw Error("dimension-mismatch",
                    "normal form leaves the bidegree at " +
                        bidegree_str(j, k));
      prod(it->second, col) = c;
    }
  }
  if (rank_of(prod) != comp.basis.size())
    throw Error("dimension-mismatch",
                "coordinate-by-one-form products are dependent at " +
                    bidegree_str(j, k));
  return comp;
}

DifferentialMatrix differential(const CalculusPresentation& C, long j,
                                long k) {
  DifferentialMatrix D;
  D.j = j;
  D.k = k;
  const std::vector<FormMonomial> source = enumerate_basis(C.n, j, k);
  const std::vector<FormMonomial> target = enumerate_basis(C.n, j + 1, k - 1);
  std::map<FormMonomial, size_t> index;
  for (size_t i = 0; i < target.size(); ++i) index.emplace(target[i], i);
  D.matrix = Mat<Scalar>(target.size(), source.size());
  for (size_t col = 0; col < source.size(); ++col) {
    FormCombo x{{source[col], Scalar(1)}};
    for (const auto& [m, c] : form_d(C, x)) {
      const auto it = index.find(m);
      if (it == index.end())
        throw Error("structure-violation",
                    "differential leaves the target bidegree at " +
                        bidegree_str(j, k));
      D.matrix(it->second, col) = c;
    }
  }
  return D;
}

ExactnessReport exactness_check(const CalculusPresentation& C, long t,
                                const std::vector<mpq_class>& samples) {
  if (t < 1)
    throw Error("invalid-element", "total degree must be at least one");
  ExactnessReport report;
  report.total_degree = t;
  report.samples = samples;

  const long jmax = std::min<long>(t, static_cast<long>(C.n));
  std::vector<DifferentialMatrix> d;
  for (long j = 0; j <= jmax; ++j) d.push_back(differential(C, j, t - j));

  for (long j = 0; j + 1 <= jmax; ++j)
    if (!(d[static_cast<size_t>(j + 1)].matrix *
          d[static_cast<size_t>(j)].matrix)
             .is_zero())
      throw Error("structure-violation",
                  "consecutive differentials do not compose to zero at " +
                      bidegree_str(j, t - j));

  std::vector<size_t> rank(static_cast<size_t>(jmax) + 1, 0);
  for (long j = 0; j <= jmax; ++j) {
    const Mat<Scalar>& m = d[static_cast<size_t>(j)].matrix;
    if (samples.empty()) {
      rank[static_cast<size_t>(j)] = rank_of(m);
    } else {
      rank[static_cast<size_t>(j)] = rank_at(m, samples.front());
      for (const auto& x : samples)
        if (rank_at(m, x) != rank[static_cast<size_t>(j)])
          throw Error("exactness-failure",
                      "sampled ranks disagree at " + bidegree_str(j, t - j));
    }
  }

  for (long j = 0; j <= jmax; ++j) {
    ExactnessSlot slot;
    slot.j = j;
    slot.k = t - j;
    slot.dim = d[static_cast<size_t>(j)].matrix.cols();
    slot.rank_in = j == 0 ? 0 : rank[static_cast<size_t>(j - 1)];
    slot.rank_out = rank[static_cast<size_t>(j)];
    report.slots.push_back(slot);
    if (slot.rank_in + slot.rank_out != slot.dim)
      throw Error("exactness-failure",
                  "kernel exceeds image at " + bidegree_str(j, t - j));
  }
  return report;
}

}  // namespace qpv
