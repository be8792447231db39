/// @file cartan.cpp
/// @brief Root-system construction and parabolic data of cominuscule type.

#include "qpv/cartan.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qpv/classical.hpp"
#include "qpv/linalg.hpp"

namespace qpv {

char series_to_char(Series s) {
  switch (s) {
    case Series::A: return 'A';
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
  }
  return '?';
}

Series series_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Series::A;
    case 'B': case 'b': return Series::B;
    case 'C': case 'c': return Series::C;
    case 'D': case 'd': return Series::D;
    default: throw Error("unsupported-type", std::string("series ") + c);
  }
}

namespace {

void check_bounds(Series s, int rank) {
  bool ok = false;
  switch (s) {
    case Series::A: ok = rank >= 1 && rank <= 6; break;
    case Series::B: ok = rank >= 2 && rank <= 4; break;
    case Series::C: ok = rank >= 2 && rank <= 4; break;
    case Series::D: ok = rank == 4; break;
  }
  if (!ok)
    throw Error("unsupported-type",
                std::string(1, series_to_char(s)) + "_" + std::to_string(rank) +
                    " is outside the supported ranks");
}

mpq_class det_rational(std::vector<QVec> m) {
  const size_t nn = m.size();
  mpq_class det = 1;
  for (size_t c = 0; c < nn; ++c) {
    size_t p = c;
    while (p < nn && m[p][c] == 0) ++p;
    if (p == nn) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t i = c + 1; i < nn; ++i) {
      mpq_class f = m[i][c] / m[c][c];
      for (size_t j = c; j < nn; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace

RootDatum build_root_datum(Series series, int rank) {
  check_bounds(series, rank);
  const int l = rank;
  RootDatum dat;
  dat.series = series;
  dat.rank = l;
  dat.a.assign(l, IVec(l, 0));
  dat.d.assign(l, 1);
  for (int i = 0; i < l; ++i) dat.a[i][i] = 2;
  auto chain_edge = [&](int i, int j) {  // simply-laced bond i - j
    dat.a[i][j] = -1;
    dat.a[j][i] = -1;
  };
  switch (series) {
    case Series::A:
      for (int i = 0; i + 1 < l; ++i) chain_edge(i, i + 1);
      break;
    case Series::B:
      // last node short: d = (2,...,2,1)
      for (int i = 0; i + 2 < l; ++i) chain_edge(i, i + 1);
      dat.a[l - 2][l - 1] = -1;
      dat.a[l - 1][l - 2] = -2;
      for (int i = 0; i + 1 < l; ++i) dat.d[i] = 2;
      break;
    case Series::C:
      // last node long: d = (1,...,1,2)
      for (int i = 0; i + 2 < l; ++i) chain_edge(i, i + 1);
      dat.a[l - 2][l - 1] = -2;
      dat.a[l - 1][l - 2] = -1;
      dat.d[l - 1] = 2;
      break;
    case Series::D:
      // star with center node 1 (0-based): edges (0,1), (1,2), (1,3)
      chain_edge(0, 1);
      chain_edge(1, 2);
      chain_edge(1, 3);
      break;
  }
  // d_i a_ij = d_j a_ji must be symmetric.
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (dat.d[i] * dat.a[i][j] != dat.d[j] * dat.a[j][i])
        throw Error("internal-invariant", "symmetrizer mismatch");
  // The form (alpha_i, alpha_j) = d_i a_ij must be positive definite:
  // check leading principal minors.
  {
    std::vector<QVec> form(l, QVec(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) form[i][j] = dat.d[i] * dat.a[i][j];
    for (int k = 1; k <= l; ++k) {
      std::vector<QVec> sub(k, QVec(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[i][j] = form[i][j];
      if (det_rational(sub) <= 0)
        throw Error("internal-invariant", "form not positive definite");
    }
  }
  // s = |det a| and the exact inverse.
  {
    std::vector<QVec> aq(l, QVec(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) aq[i][j] = dat.a[i][j];
    mpq_class det = det_rational(aq);
    mpq_class ad = abs(det);
    if (ad.get_den() != 1 || !ad.get_num().fits_slong_p())
      throw Error("internal-invariant", "non-integer Cartan determinant");
    dat.s = ad.get_num().get_si();
    Mat<mpq_class> am(static_cast<size_t>(l), static_cast<size_t>(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) am(i, j) = dat.a[i][j];
    Mat<mpq_class> ai = inverse(am);
    dat.a_inv.assign(l, QVec(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) dat.a_inv[i][j] = ai(i, j);
  }
  dat.simple_roots.assign(l, IVec(l));
  for (int j = 0; j < l; ++j)
    for (int i = 0; i < l; ++i) dat.simple_roots[j][i] = dat.a[i][j];
  dat.rho.assign(l, 1);
  return dat;
}

std::vector<IVec> positive_roots(const RootDatum& dat) {
  const int l = dat.rank;
  std::set<IVec> all;
  std::vector<IVec> queue;
  for (int j = 0; j < l; ++j) {
    IVec e(l, 0);
    e[j] = 1;
    all.insert(e);
    queue.push_back(e);
  }
  // Close under simple reflections: s_i acts on root coordinates by
  // c_i -> c_i - sum_j a[i][j] c_j.
  while (!queue.empty()) {
    IVec b = queue.back();
    queue.pop_back();
    for (int i = 0; i < l; ++i) {
      long pairing = 0;
      for (int j = 0; j < l; ++j) pairing += dat.a[i][j] * b[j];
      IVec nb = b;
      nb[i] -= pairing;
      if (all.insert(nb).second) queue.push_back(nb);
    }
  }
  std::vector<IVec> pos;
  for (const auto& r : all) {
    bool nonneg = true, nonzero = false;
    for (long c : r) {
      if (c < 0) nonneg = false;
      if (c != 0) nonzero = true;
    }
    if (nonneg && nonzero) pos.push_back(r);
  }
  std::sort(pos.begin(), pos.end(), [](const IVec& x, const IVec& y) {
    long hx = height(x), hy = height(y);
    if (hx != hy) return hx < hy;
    return x < y;
  });
  return pos;
}

IVec highest_root(const RootDatum& dat) {
  std::vector<IVec> pos = positive_roots(dat);
  const IVec& top = pos.back();
  if (pos.size() >= 2 && height(pos[pos.size() - 2]) == height(top))
    throw Error("internal-invariant", "highest root not unique");
  return top;
}

std::vector<int> admissible_nodes(const RootDatum& dat) {
  IVec top = highest_root(dat);
  std::vector<int> nodes;
  for (int i = 0; i < dat.rank; ++i)
    if (top[static_cast<size_t>(i)] == 1) nodes.push_back(i);
  return nodes;
}

mpq_class inner(const RootDatum& dat, const QVec& lam, const QVec& mu) {
  // (lam, mu) = sum_j d_j lam_j (a^{-1} mu)_j
  const int l = dat.rank;
  mpq_class total = 0;
  for (int j = 0; j < l; ++j) {
    if (lam[j] == 0) continue;
    mpq_class aj = 0;
    for (int k = 0; k < l; ++k) aj += dat.a_inv[j][k] * mu[k];
    total += mpq_class(dat.d[j]) * lam[j] * aj;
  }
  return total;
}

mpq_class inner(const RootDatum& dat, const IVec& lam, const IVec& mu) {
  QVec lq(lam.begin(), lam.end()), mq(mu.begin(), mu.end());
  return inner(dat, lq, mq);
}

IVec root_to_fund(const RootDatum& dat, const IVec& root) {
  const int l = dat.rank;
  IVec f(l, 0);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) f[i] += dat.a[i][j] * root[j];
  return f;
}

IVec fund_to_root(const RootDatum& dat, const IVec& fund) {
  const int l = dat.rank;
  IVec r(l, 0);
  for (int i = 0; i < l; ++i) {
    mpq_class x = 0;
    for (int j = 0; j < l; ++j) x += dat.a_inv[i][j] * fund[j];
    if (x.get_den() != 1)
      throw Error("not-in-root-lattice", "non-integral root coordinates");
    r[i] = static_cast<long>(x.get_num().get_si());
  }
  return r;
}

long height(const IVec& root) {
  long h = 0;
  for (long c : root) h += c;
  return h;
}

ParabolicDatum parabolic(const RootDatum& dat, int l0) {
  if (l0 < 0 || l0 >= dat.rank)
    throw Error("inadmissible-node", "node out of range");
  std::vector<int> adm = admissible_nodes(dat);
  if (std::find(adm.begin(), adm.end(), l0) == adm.end())
    throw Error("inadmissible-node",
                "highest-root coefficient at node " + std::to_string(l0 + 1) +
                    " is not 1");
  ParabolicDatum par;
  par.base = dat;
  par.l0 = l0;
  for (int i = 0; i < dat.rank; ++i)
    if (i != l0) par.S.push_back(i);
  // H0 = sum c_i H_i with alpha_j(H0) = 2 delta_{j,l0}:
  // sum_i c_i a[i][j] = 2 delta_{j,l0}, i.e. c = 2 * (a^{-T}) e_{l0},
  // so c_i = 2 (a^{-1})_{l0, i}.
  par.h0_coeffs.assign(dat.rank, 0);
  for (int i = 0; i < dat.rank; ++i)
    par.h0_coeffs[i] = 2 * dat.a_inv[l0][i];
  for (int j = 0; j < dat.rank; ++j) {
    mpq_class sum = 0;
    for (int i = 0; i < dat.rank; ++i)
      sum += par.h0_coeffs[i] * dat.a[i][j];
    if (sum != (j == l0 ? 2 : 0))
      throw Error("internal-invariant", "H0 pairing failed");
  }
  // (H0,H0) = sum_{ij} c_i c_j a[i][j]/d_j; cross-checked against
  // 4 (varpi_l0, varpi_l0) / d_l0^2.
  par.h0_norm = 0;
  for (int i = 0; i < dat.rank; ++i)
    for (int j = 0; j < dat.rank; ++j)
      par.h0_norm +=
          par.h0_coeffs[i] * par.h0_coeffs[j] * dat.a[i][j] / dat.d[j];
  {
    QVec w(dat.rank, 0);
    w[l0] = 1;
    mpq_class alt = 4 * inner(dat, w, w) / (mpq_class(dat.d[l0]) * dat.d[l0]);
    if (alt != par.h0_norm)
      throw Error("internal-invariant", "H0 norm mismatch");
  }
  // Nilradical roots: positive roots with coefficient exactly 1 at l0,
  // sorted so the generator weights -beta are lex-increasing in root
  // coordinates (the "growing weight" order).
  for (const auto& r : positive_roots(dat))
    if (r[static_cast<size_t>(l0)] == 1) par.pminus_roots.push_back(r);
  std::sort(par.pminus_roots.begin(), par.pminus_roots.end(),
            [](const IVec& x, const IVec& y) { return y < x; });
  par.n = static_cast<int>(par.pminus_roots.size());
  // Commutativity of the nilradical: no sum of two listed roots is a root.
  {
    std::set<IVec> all(par.pminus_roots.begin(), par.pminus_roots.end());
    std::set<IVec> pos;
    for (const auto& r : positive_roots(dat)) pos.insert(r);
    for (const auto& x : par.pminus_roots)
      for (const auto& y : par.pminus_roots) {
        IVec sum = x;
        for (int k = 0; k < dat.rank; ++k) sum[k] += y[k];
        if (pos.count(sum))
          throw Error("internal-invariant", "nilradical not abelian");
      }
  }
  // Root order D: collect every exponent the case will ever need as a power
  // of q — half the braiding square exponents of the generator module
  // (classically computable from the tensor-square character) and the
  // grading constant 4/(H0,H0) — and take the least even multiple of s.
  {
    IVec hw(dat.rank);
    for (int i = 0; i < dat.rank; ++i) hw[i] = -dat.a[i][l0];
    WeightChar v1;
    for (const auto& b : par.pminus_roots) {
      IVec f = root_to_fund(dat, b);
      for (auto& x : f) x = -x;
      v1[f] += 1;
    }
    WeightChar sq = char_convolve(v1, v1);
    std::vector<mpq_class> exps;
    for (const auto& [nu, mult] : decompose_character(dat, par.S, sq)) {
      (void)mult;
      exps.push_back(drinfeld_square_exponent(dat, par.S, hw, hw, nu) / 2);
    }
    exps.push_back(4 / par.h0_norm);
    par.D = choose_D(dat.s, exps);
  }
  return par;
}

IVec generator_weight(const ParabolicDatum& par, int k) {
  IVec f = root_to_fund(par.base, par.pminus_roots[static_cast<size_t>(k)]);
  for (auto& x : f) x = -x;
  return f;
}

mpq_class h0_grade(const ParabolicDatum& par, const IVec& mu) {
  mpq_class g = 0;
  for (int i = 0; i < par.base.rank; ++i) g += par.h0_coeffs[i] * mu[i];
  return g / 2;
}

}  // namespace qpv
