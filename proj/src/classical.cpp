/// @file classical.cpp
/// @brief Exact classical character computations (Freudenthal, Weyl
///        dimension, greedy decomposition) on ambient weights.

#include "qpv/classical.hpp"

#include <algorithm>
#include <set>

#include "qpv/linalg.hpp"

namespace qpv {

std::vector<IVec> levi_positive_roots(const RootDatum& dat,
                                      const std::vector<int>& S) {
  std::vector<bool> in_s(static_cast<size_t>(dat.rank), false);
  for (int i : S) in_s[static_cast<size_t>(i)] = true;
  std::vector<IVec> out;
  for (const auto& r : positive_roots(dat)) {
    bool ok = true;
    for (int j = 0; j < dat.rank; ++j)
      if (r[static_cast<size_t>(j)] != 0 && !in_s[static_cast<size_t>(j)])
        ok = false;
    if (ok) out.push_back(r);
  }
  return out;
}

mpq_class inner_rho(const RootDatum& dat, const std::vector<int>& S,
                    const IVec& lam) {
  mpq_class total = 0;
  for (const auto& b : levi_positive_roots(dat, S))
    total += inner(dat, lam, root_to_fund(dat, b));
  return total / 2;
}

long levi_dim(const RootDatum& dat, const std::vector<int>& S,
              const IVec& hw) {
  // Weyl: prod (hw + rho_S, beta) / (rho_S, beta).  The ambient form is
  // used directly; components of hw orthogonal to the S-span drop out.
  mpq_class dim = 1;
  for (const auto& br : levi_positive_roots(dat, S)) {
    IVec beta = root_to_fund(dat, br);
    mpq_class num = inner(dat, hw, beta) + inner_rho(dat, S, beta);
    mpq_class den = inner_rho(dat, S, beta);
    dim *= num / den;
  }
  if (dim.get_den() != 1 || dim <= 0)
    throw Error("internal-invariant", "Weyl dimension not a positive integer");
  return static_cast<long>(dim.get_num().get_si());
}

WeightChar levi_character(const RootDatum& dat, const std::vector<int>& S,
                          const IVec& hw) {
  for (int i : S)
    if (hw[static_cast<size_t>(i)] < 0)
      throw Error("weight-not-in-cone", "highest weight not S-dominant");
  const long expected_dim = levi_dim(dat, S, hw);
  std::vector<IVec> pos = levi_positive_roots(dat, S);
  std::vector<IVec> pos_fund;
  pos_fund.reserve(pos.size());
  for (const auto& b : pos) pos_fund.push_back(root_to_fund(dat, b));

  // Freudenthal recursion processed in height order (weights at height h
  // only depend on weights at smaller heights).
  const mpq_class c_top = inner(dat, hw, hw) + 2 * inner_rho(dat, S, hw);
  WeightChar mult;
  mult[hw] = 1;
  std::vector<IVec> level = {hw};
  long guard = 0;
  while (!level.empty()) {
    if (++guard > 4096)
      throw Error("internal-invariant", "Freudenthal failed to terminate");
    // Candidates one step further down.
    std::set<IVec> next;
    for (const auto& mu : level)
      for (int i : S) {
        IVec nu = mu;
        for (int k = 0; k < dat.rank; ++k)
          nu[static_cast<size_t>(k)] -=
              dat.a[static_cast<size_t>(k)][static_cast<size_t>(i)];
        if (!mult.count(nu)) next.insert(nu);
      }
    level.clear();
    for (const auto& mu : next) {
      // RHS: 2 sum_{beta>0} sum_{k>=1} (mu + k beta, beta) m(mu + k beta).
      // mu + k beta can only be a weight while its height stays at most
      // ht(hw), which bounds k by the height gap (each beta has height >= 1).
      IVec gap(static_cast<size_t>(dat.rank));
      for (int k = 0; k < dat.rank; ++k)
        gap[static_cast<size_t>(k)] =
            hw[static_cast<size_t>(k)] - mu[static_cast<size_t>(k)];
      const long kmax = height(fund_to_root(dat, gap));
      mpq_class rhs = 0;
      for (const auto& bf : pos_fund) {
        IVec nu = mu;
        for (long k = 1; k <= kmax; ++k) {
          for (int t = 0; t < dat.rank; ++t)
            nu[static_cast<size_t>(t)] += bf[static_cast<size_t>(t)];
          auto it = mult.find(nu);
          if (it != mult.end() && it->second != 0)
            rhs += inner(dat, nu, bf) * it->second;
        }
      }
      rhs *= 2;
      mpq_class denom =
          c_top - inner(dat, mu, mu) - 2 * inner_rho(dat, S, mu);
      long m = 0;
      if (denom != 0 && rhs != 0) {
        mpq_class q = rhs / denom;
        if (q.get_den() != 1 || q < 0)
          throw Error("internal-invariant", "Freudenthal non-integer");
        m = static_cast<long>(q.get_num().get_si());
      }
      if (m > 0) {
        mult[mu] = m;
        level.push_back(mu);
      }
    }
  }
  long total = 0;
  for (const auto& [w, m] : mult) {
    (void)w;
    total += m;
  }
  if (total != expected_dim)
    throw Error("internal-invariant",
                "Freudenthal/Weyl dimension mismatch: " +
                    std::to_string(total) + " vs " +
                    std::to_string(expected_dim));
  return mult;
}

long weight_htspan(const RootDatum& dat, const std::vector<int>& S,
                   const IVec& hw) {
  WeightChar ch = levi_character(dat, S, hw);
  long span = 0;
  for (const auto& [mu, m] : ch) {
    (void)m;
    IVec diff(static_cast<size_t>(dat.rank));
    for (int k = 0; k < dat.rank; ++k)
      diff[static_cast<size_t>(k)] =
          hw[static_cast<size_t>(k)] - mu[static_cast<size_t>(k)];
    span = std::max(span, height(fund_to_root(dat, diff)));
  }
  return span;
}

WeightChar char_add(const WeightChar& x, const WeightChar& y) {
  WeightChar r = x;
  for (const auto& [w, m] : y) r[w] += m;
  return r;
}

WeightChar char_convolve(const WeightChar& x, const WeightChar& y) {
  WeightChar r;
  for (const auto& [wx, mx] : x)
    for (const auto& [wy, my] : y) {
      IVec w(wx.size());
      for (size_t k = 0; k < wx.size(); ++k) w[k] = wx[k] + wy[k];
      r[w] += mx * my;
    }
  return r;
}

std::vector<std::pair<IVec, long>> decompose_character(
    const RootDatum& dat, const std::vector<int>& S, WeightChar ch) {
  // (mu, rho_S) strictly increases along the S-dominance order, so the
  // maximum of that functional (ties broken lexicographically) is always a
  // maximal weight, hence a highest weight of some constituent.
  std::vector<std::pair<IVec, long>> out;
  for (;;) {
    bool found = false;
    IVec best;
    mpq_class best_key = 0;
    long best_mult = 0;
    for (const auto& [w, m] : ch) {
      if (m == 0) continue;
      if (m < 0) throw Error("decomposition-failure", "negative multiplicity");
      mpq_class key = inner_rho(dat, S, w);
      if (!found || key > best_key || (key == best_key && w > best)) {
        found = true;
        best = w;
        best_key = key;
        best_mult = m;
      }
    }
    if (!found) break;
    for (int i : S)
      if (best[static_cast<size_t>(i)] < 0)
        throw Error("decomposition-failure", "maximal weight not S-dominant");
    WeightChar comp = levi_character(dat, S, best);
    for (const auto& [w, m] : comp) {
      auto it = ch.find(w);
      if (it == ch.end() || it->second < m * best_mult)
        throw Error("decomposition-failure", "constituent does not embed");
      it->second -= m * best_mult;
      if (it->second == 0) ch.erase(it);
    }
    out.emplace_back(best, best_mult);
  }
  return out;
}

QVec project_to_levi(const RootDatum& dat, const std::vector<int>& S,
                     const IVec& lam) {
  // Solve the Gram system B x = rhs with B_{ji} = (alpha_j, alpha_i) and
  // rhs_j = (lam, alpha_j) = d_j lam_j, for i, j in S.
  const size_t k = S.size();
  Mat<mpq_class> B(k, k), rhs(k, 1);
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = 0; b < k; ++b)
      B(a, b) = mpq_class(dat.d[static_cast<size_t>(S[a])]) *
                dat.a[static_cast<size_t>(S[a])][static_cast<size_t>(S[b])];
    rhs(a, 0) = mpq_class(dat.d[static_cast<size_t>(S[a])]) *
                lam[static_cast<size_t>(S[a])];
  }
  Mat<mpq_class> x = solve(B, rhs);
  QVec out(static_cast<size_t>(dat.rank), 0);
  for (size_t a = 0; a < k; ++a) out[static_cast<size_t>(S[a])] = x(a, 0);
  return out;
}

namespace {

/// (lam_bar, mu_bar + 2 rho_S) with both weights given as ambient integral
/// vectors; bars are orthogonal projections onto the S-span.  Uses
/// (lam_bar, mu_bar) = sum_i x_i (alpha_i, mu) over the projection
/// coordinates x of lam, and (lam_bar, rho_S) = (lam, rho_S).
mpq_class casimir_pairing(const RootDatum& dat, const std::vector<int>& S,
                          const IVec& lam, const IVec& mu) {
  QVec x = project_to_levi(dat, S, lam);
  mpq_class lm = 0;
  for (int i : S) {
    if (x[static_cast<size_t>(i)] == 0) continue;
    IVec ai(static_cast<size_t>(dat.rank));
    for (int k = 0; k < dat.rank; ++k)
      ai[static_cast<size_t>(k)] =
          dat.a[static_cast<size_t>(k)][static_cast<size_t>(i)];
    lm += x[static_cast<size_t>(i)] * inner(dat, ai, mu);
  }
  return lm + 2 * inner_rho(dat, S, lam);
}

}  // namespace

mpq_class drinfeld_square_exponent(const RootDatum& dat,
                                   const std::vector<int>& S, const IVec& lam,
                                   const IVec& mu, const IVec& nu) {
  return casimir_pairing(dat, S, lam, lam) + casimir_pairing(dat, S, mu, mu) -
         casimir_pairing(dat, S, nu, nu);
}

}  // namespace qpv
