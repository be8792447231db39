/// @file test_weyl.cpp
/// @brief Weyl group generation, Bruhat combinatorics, sign assignments,
///        and degree-r weight sets, cross-checked against brute-force
///        oracles (subword enumeration, reflection matrices, Levi
///        dimension sums).

#include <doctest.h>

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "qpv/classical.hpp"
#include "qpv/weyl.hpp"

using namespace qpv;

namespace {

WeylElement make_elem(const RootDatum& dat, const std::vector<int>& word) {
  WMat m = wmat_identity(dat.rank);
  for (int i : word) m = wmat_mul(m, reflection_matrix(dat, i));
  return from_matrix(dat, m);
}

/// Direct subword test: a <= b iff some subsequence of b's reduced word
/// multiplies to a.
bool subword_oracle(const RootDatum& dat, const WeylElement& a,
                    const WeylElement& b) {
  const size_t L = b.word.size();
  for (size_t mask = 0; mask < (size_t{1} << L); ++mask) {
    WMat m = wmat_identity(dat.rank);
    for (size_t t = 0; t < L; ++t)
      if (mask & (size_t{1} << t))
        m = wmat_mul(m, reflection_matrix(dat, b.word[t]));
    if (m == a.matrix) return true;
  }
  return false;
}

/// Matrices of all root reflections s_beta, beta positive.
std::set<WMat> reflection_set(const RootDatum& dat) {
  std::set<WMat> out;
  for (const IVec& beta : positive_roots(dat)) {
    IVec f = root_to_fund(dat, beta);
    mpq_class norm = inner(dat, f, f);
    WMat m = wmat_identity(dat.rank);
    for (int j = 0; j < dat.rank; ++j) {
      IVec ej(dat.rank, 0);
      ej[j] = 1;
      mpq_class c = 2 * inner(dat, ej, f) / norm;
      REQUIRE(c.get_den() == 1);
      for (int k = 0; k < dat.rank; ++k)
        m[k][j] -= c.get_num().get_si() * f[k];
    }
    out.insert(m);
  }
  return out;
}

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

}  // namespace

TEST_CASE("group generation") {
  RootDatum a1 = build_root_datum(Series::A, 1);
  auto w1 = generate(a1);
  REQUIRE(w1.size() == 2);
  CHECK(w1[0].length == 0);
  CHECK(w1[1].length == 1);
  CHECK(w1[1].word == std::vector<int>{0});

  RootDatum a2 = build_root_datum(Series::A, 2);
  auto w2 = generate(a2);
  CHECK(w2.size() == 6);
  CHECK(longest_element(w2).length == 3);

  CHECK(generate(build_root_datum(Series::A, 3)).size() == 24);
  CHECK(generate(build_root_datum(Series::B, 3)).size() == 48);
  CHECK(generate(build_root_datum(Series::C, 4)).size() == 384);
  CHECK(generate(build_root_datum(Series::D, 4)).size() == 192);

  CHECK_THROWS_AS(generate(a2, 3), Error);
}

TEST_CASE("element invariants") {
  for (auto [series, rank] : {std::pair{Series::A, 3}, {Series::C, 2}}) {
    RootDatum dat = build_root_datum(series, rank);
    for (const WeylElement& w : generate(dat)) {
      CHECK(w.length == static_cast<int>(w.word.size()));
      CHECK(inversion_count(dat, w) == w.length);
      WMat m = wmat_identity(dat.rank);
      for (int i : w.word) m = wmat_mul(m, reflection_matrix(dat, i));
      CHECK(m == w.matrix);

      WeylElement winv = inverse_element(dat, w);
      CHECK(compose(dat, w, winv) == weyl_identity(dat));
      CHECK(winv.length == w.length);

      WeylElement back = from_matrix(dat, w.matrix);
      CHECK(back.matrix == w.matrix);
      CHECK(back.length == w.length);
    }
  }
  RootDatum a2 = build_root_datum(Series::A, 2);
  WMat bad = wmat_identity(2);
  bad[0][0] = 5;
  CHECK_THROWS_AS(from_matrix(a2, bad), Error);
}

TEST_CASE("the bilinear form is Weyl invariant") {
  RootDatum c2 = build_root_datum(Series::C, 2);
  std::vector<IVec> weights{{1, 0}, {0, 1}, {1, 2}, {-2, 3}};
  for (const WeylElement& w : generate(c2))
    for (const IVec& lam : weights)
      for (const IVec& mu : weights)
        CHECK(inner(c2, wmat_apply(w.matrix, lam), wmat_apply(w.matrix, mu)) ==
              inner(c2, lam, mu));
}

TEST_CASE("parabolic subgroup and quotient") {
  RootDatum a3 = build_root_datum(Series::A, 3);
  std::vector<int> S{0, 2};
  auto ws = generate_levi(a3, S);
  auto wq = generate_quotient(a3, S);
  REQUIRE(ws.size() == 4);
  REQUIRE(wq.size() == 6);

  std::map<int, int> profile;
  for (const auto& w : wq) profile[w.length] += 1;
  CHECK(profile == std::map<int, int>{{0, 1}, {1, 1}, {2, 2}, {3, 1}, {4, 1}});

  // unique factorization w = w_S * w^S with additive lengths
  std::set<WMat> levi_set, quot_set;
  for (const auto& w : ws) levi_set.insert(w.matrix);
  for (const auto& w : wq) quot_set.insert(w.matrix);
  std::set<std::pair<WMat, WMat>> seen;
  for (const WeylElement& w : generate(a3)) {
    auto [l, q] = parabolic_decompose(a3, S, w);
    CHECK(levi_set.count(l.matrix));
    CHECK(quot_set.count(q.matrix));
    CHECK(l.length + q.length == w.length);
    CHECK(wmat_mul(l.matrix, q.matrix) == w.matrix);
    seen.insert({l.matrix, q.matrix});
  }
  CHECK(seen.size() == 24);

  // spot examples
  auto [le, qe] = parabolic_decompose(a3, S, weyl_identity(a3));
  CHECK(le.length == 0);
  CHECK(qe.length == 0);
  auto [l0, q0] = parabolic_decompose(a3, S, simple_reflection(a3, 0));
  CHECK(l0 == simple_reflection(a3, 0));
  CHECK(q0.length == 0);
  auto [lw, qw] = parabolic_decompose(a3, S, longest_element(generate(a3)));
  CHECK(lw.length == 2);
  CHECK(qw.length == 4);
}

TEST_CASE("convex order splits at the nilradical") {
  {
    ParabolicDatum par = parabolic(build_root_datum(Series::A, 1), 0);
    CHECK(convex_order(par) == std::vector<IVec>{{1}});
  }
  auto check_split = [](const ParabolicDatum& par) {
    std::vector<IVec> order = convex_order(par);
    REQUIRE(order.size() == positive_roots(par.base).size());
    size_t cut = order.size() - par.n;
    std::set<IVec> head(order.begin(), order.begin() + cut);
    std::set<IVec> tail(order.begin() + cut, order.end());
    std::set<IVec> levi, rad;
    for (const IVec& b : levi_positive_roots(par.base, par.S)) levi.insert(b);
    for (const IVec& b : par.pminus_roots) rad.insert(b);
    CHECK(head == levi);
    CHECK(tail == rad);
  };
  check_split(parabolic(build_root_datum(Series::A, 2), 0));
  check_split(parabolic(build_root_datum(Series::A, 3), 1));
  check_split(parabolic(build_root_datum(Series::C, 2), 1));
  check_split(parabolic(build_root_datum(Series::D, 4), 0));
}

TEST_CASE("Bruhat order") {
  RootDatum a2 = build_root_datum(Series::A, 2);
  auto w2 = generate(a2);
  for (const auto& w : w2) {
    CHECK(bruhat_leq(a2, weyl_identity(a2), w));
    CHECK(bruhat_leq(a2, w, w));
  }
  CHECK_FALSE(bruhat_leq(a2, simple_reflection(a2, 0), simple_reflection(a2, 1)));
  CHECK(bruhat_leq(a2, simple_reflection(a2, 0), make_elem(a2, {1, 0})));

  for (auto [series, rank] : {std::pair{Series::A, 3}, {Series::C, 2}}) {
    RootDatum dat = build_root_datum(series, rank);
    auto all = generate(dat);
    for (const auto& a : all)
      for (const auto& b : all) {
        bool got = bruhat_leq(dat, a, b);
        CHECK(got == subword_oracle(dat, a, b));
        if (got) CHECK(a.length <= b.length);
      }
  }
}

TEST_CASE("Bruhat graph") {
  RootDatum a1 = build_root_datum(Series::A, 1);
  BruhatGraph g1 = bruhat_graph(a1, generate(a1));
  REQUIRE(g1.edges.size() == 1);
  CHECK(g1.vertices[g1.edges[0].first].length == 0);
  CHECK(g1.vertices[g1.edges[0].second].length == 1);

  RootDatum a2 = build_root_datum(Series::A, 2);
  BruhatGraph g2 = bruhat_graph(a2, generate(a2));
  CHECK(g2.edges.size() == 8);

  // every edge is a right multiplication by a root reflection
  RootDatum a3 = build_root_datum(Series::A, 3);
  std::set<WMat> refl = reflection_set(a3);
  BruhatGraph g3 = bruhat_graph(a3, generate(a3));
  for (const auto& [u, v] : g3.edges) {
    CHECK(g3.vertices[v].length == g3.vertices[u].length + 1);
    WMat t = wmat_mul(inverse_element(a3, g3.vertices[u]).matrix,
                      g3.vertices[v].matrix);
    CHECK(refl.count(t));
  }

  BruhatGraph q3 = bruhat_graph(a3, generate_quotient(a3, {0, 2}));
  REQUIRE(q3.vertices.size() == 6);
  CHECK(q3.edges.size() == 6);
  for (const auto& [u, v] : q3.edges) {
    WMat t = wmat_mul(inverse_element(a3, q3.vertices[u]).matrix,
                      q3.vertices[v].matrix);
    CHECK(refl.count(t));
  }
}

TEST_CASE("squares") {
  RootDatum a1 = build_root_datum(Series::A, 1);
  CHECK(squares(a1, bruhat_graph(a1, generate(a1))).empty());

  RootDatum a2 = build_root_datum(Series::A, 2);
  BruhatGraph g2 = bruhat_graph(a2, generate(a2));
  std::vector<Square> sq2 = squares(a2, g2);
  CHECK(sq2.size() == 4);
  // the interval from e to s_0 s_1 has intermediates {s_0, s_1}
  WMat top = wmat_mul(reflection_matrix(a2, 0), reflection_matrix(a2, 1));
  bool found = false;
  for (const Square& sq : sq2) {
    if (g2.vertices[sq.bottom].length != 0 || g2.vertices[sq.top].matrix != top)
      continue;
    found = true;
    std::set<WMat> mids{g2.vertices[sq.mid1].matrix,
                        g2.vertices[sq.mid2].matrix};
    CHECK(mids == std::set<WMat>{reflection_matrix(a2, 0),
                                 reflection_matrix(a2, 1)});
  }
  CHECK(found);

  // On the quotient A_3 / (A_1 x A_1), one ambient intermediate of most
  // length-2 intervals escapes the quotient; exactly one interval keeps
  // both, and none has an ambient count other than 0 or 2.
  RootDatum a3 = build_root_datum(Series::A, 3);
  BruhatGraph q3 = bruhat_graph(a3, generate_quotient(a3, {0, 2}));
  std::vector<Square> sq3 = squares(a3, q3);
  REQUIRE(sq3.size() == 1);
  CHECK(q3.vertices[sq3[0].bottom].length == 1);
  CHECK(q3.vertices[sq3[0].top].length == 3);

  // full-group squares exist for the larger ranks too
  BruhatGraph g3 = bruhat_graph(a3, generate(a3));
  CHECK(!squares(a3, g3).empty());
}

TEST_CASE("sign assignments and gauge freedom") {
  auto verify = [](const RootDatum& dat, const BruhatGraph& g) {
    std::vector<Square> sqs = squares(dat, g);
    SignAssignment s0 = sign_assignment(dat, g, 0);
    SignAssignment s1 = sign_assignment(dat, g, 1);
    for (const Square& sq : sqs) {
      CHECK(s0[sq.edge[0]] * s0[sq.edge[1]] * s0[sq.edge[2]] * s0[sq.edge[3]] ==
            -1);
      CHECK(s1[sq.edge[0]] * s1[sq.edge[1]] * s1[sq.edge[2]] * s1[sq.edge[3]] ==
            -1);
    }
    CHECK(gauge_equivalent(g, s0, s1));
    CHECK(gauge_equivalent(g, s0, s0));
    return std::pair{s0, s1};
  };

  RootDatum a2 = build_root_datum(Series::A, 2);
  BruhatGraph g2 = bruhat_graph(a2, generate(a2));
  auto [s0, s1] = verify(a2, g2);
  CHECK(s0 != s1);  // free unknowns exist, variants genuinely differ
  // not every assignment is valid: flip one edge of a square
  SignAssignment broken = s0;
  broken[squares(a2, g2)[0].edge[0]] *= -1;
  CHECK_FALSE(gauge_equivalent(g2, s0, broken));

  RootDatum a3 = build_root_datum(Series::A, 3);
  verify(a3, bruhat_graph(a3, generate(a3)));
  verify(a3, bruhat_graph(a3, generate_quotient(a3, {0, 2})));

  RootDatum c2 = build_root_datum(Series::C, 2);
  verify(c2, bruhat_graph(c2, generate(c2)));

  RootDatum d4 = build_root_datum(Series::D, 4);
  verify(d4, bruhat_graph(d4, generate_quotient(d4, {1, 2, 3})));
}

TEST_CASE("affine action") {
  RootDatum a2 = build_root_datum(Series::A, 2);
  IVec lam{3, -1};
  CHECK(affine_action(a2, weyl_identity(a2), lam) == lam);
  IVec zero{0, 0};
  for (int i = 0; i < 2; ++i) {
    IVec expect(2);
    for (int k = 0; k < 2; ++k) expect[k] = -a2.a[k][i];
    CHECK(affine_action(a2, simple_reflection(a2, i), zero) == expect);
  }
  CHECK(affine_action(a2, make_elem(a2, {0, 1}), zero) == IVec{-3, 0});
}

TEST_CASE("degree-r weight sets and the exterior power dimensions") {
  RootDatum a3 = build_root_datum(Series::A, 3);
  ParabolicDatum par = parabolic(a3, 1);
  CHECK(kostant_weights(par, 0) == std::vector<IVec>{{0, 0, 0}});
  CHECK(kostant_weights(par, 1) ==
        std::vector<IVec>{root_to_fund(a3, IVec{0, -1, 0})});
  CHECK(kostant_weights(par, 2).size() == 2);
  CHECK(kostant_weights(par, 4).size() == 1);
  CHECK_THROWS_AS(kostant_weights(par, 5), Error);
  CHECK_THROWS_AS(kostant_weights(par, -1), Error);

  // sum of Levi dimensions at degree r equals binom(dim, r)
  auto check_dims = [](const ParabolicDatum& p) {
    long total = 0;
    for (int r = 0; r <= static_cast<int>(p.n); ++r) {
      long dim_r = 0;
      for (const IVec& mu : kostant_weights(p, r))
        dim_r += levi_dim(p.base, p.S, mu);
      CHECK(dim_r == binom(p.n, r));
      total += dim_r;
    }
    CHECK(total == (1L << p.n));
  };
  check_dims(par);
  check_dims(parabolic(build_root_datum(Series::A, 2), 0));
  check_dims(parabolic(build_root_datum(Series::C, 2), 1));
  check_dims(parabolic(build_root_datum(Series::D, 4), 0));
}
