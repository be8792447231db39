#include "qpv/bgg.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "qpv/calculus.hpp"
#include "qpv/cartan.hpp"
#include "qpv/classical.hpp"
#include "qpv/weyl.hpp"

using namespace qpv;

namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long s = 1; s <= k; ++s) r = r * (n - k + s) / s;
  return r;
}

ParabolicDatum build(Series series, int rank, int l0) {
  return parabolic(build_root_datum(series, rank), l0);
}

// The four cases every suite exercises end to end.
const std::vector<std::tuple<Series, int, int>>& main_cases() {
  static const std::vector<std::tuple<Series, int, int>> cases{
      {Series::A, 2, 0}, {Series::A, 3, 0}, {Series::A, 3, 1},
      {Series::C, 2, 1}};
  return cases;
}

// Shape checks are cheap enough to include the rank-one and stretch cases.
const std::vector<std::tuple<Series, int, int>>& shape_cases() {
  static const std::vector<std::tuple<Series, int, int>> cases{
      {Series::A, 1, 0}, {Series::A, 2, 0}, {Series::A, 3, 0},
      {Series::A, 3, 1}, {Series::C, 2, 1}, {Series::D, 4, 0}};
  return cases;
}

long char_dim(const WeightChar& c) {
  long s = 0;
  for (const auto& [w, m] : c) s += m;
  return s;
}

void exponent_vectors(int n, long d, IVec& cur, std::vector<IVec>& out) {
  if (static_cast<int>(cur.size()) + 1 == n) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long e = 0; e <= d; ++e) {
    cur.push_back(e);
    exponent_vectors(n, d - e, cur, out);
    cur.pop_back();
  }
}

// Weight character of the degree-d polynomials in the coordinate
// generators, by direct monomial enumeration (independent of the
// geometric-series recursion inside gv_character).
WeightChar sym_oracle(const ParabolicDatum& par, long d) {
  std::vector<IVec> exps;
  IVec cur;
  exponent_vectors(par.n, d, cur, exps);
  const size_t rank = static_cast<size_t>(par.base.rank);
  std::vector<IVec> gw;
  for (int k = 0; k < par.n; ++k) gw.push_back(generator_weight(par, k));
  WeightChar out;
  for (const IVec& e : exps) {
    IVec w(rank, 0);
    for (int k = 0; k < par.n; ++k)
      for (size_t c = 0; c < rank; ++c) w[c] += e[k] * gw[k][c];
    ++out[w];
  }
  return out;
}

}  // namespace

TEST_CASE("graded module characters at the trivial weight") {
  for (const auto& [series, rank, l0] : main_cases()) {
    const ParabolicDatum par = build(series, rank, l0);
    const IVec zero(static_cast<size_t>(rank), 0);
    const GVCharacter gv = gv_character(par, zero, 4);
    CHECK(gv.lambda == zero);
    CHECK(gv.depth == 4);
    REQUIRE(gv.graded.size() == 5);
    CHECK(gv.graded[0] == levi_character(par.base, par.S, zero));
    CHECK(char_dim(gv.graded[0]) == 1);
    for (long d = 0; d <= 4; ++d) {
      CHECK(char_dim(gv.graded[d]) == binom(d + par.n - 1, par.n - 1));
      // At the trivial weight the level-d slice is exactly the degree-d
      // polynomial character.
      CHECK(gv.graded[d] == sym_oracle(par, d));
    }
  }
}

TEST_CASE("graded module characters at length-one weights") {
  for (const auto& [series, rank, l0] : main_cases()) {
    const ParabolicDatum par = build(series, rank, l0);
    const std::vector<IVec> k1 = kostant_weights(par, 1);
    REQUIRE(k1.size() == 1);
    const IVec lam = k1[0];
    const long top = levi_dim(par.base, par.S, lam);
    CHECK(top == par.n);  // the one-form generators span a single block
    const WeightChar head = levi_character(par.base, par.S, lam);
    const GVCharacter gv = gv_character(par, lam, 3);
    CHECK(gv.graded[0] == head);
    for (long d = 0; d <= 3; ++d) {
      CHECK(char_dim(gv.graded[d]) == top * binom(d + par.n - 1, par.n - 1));
      CHECK(gv.graded[d] == char_convolve(head, sym_oracle(par, d)));
    }
  }
  // A weight may be arbitrarily negative on the crossed node.
  const ParabolicDatum par = build(Series::A, 3, 1);
  IVec low(3, 0);
  low[1] = -5;
  const GVCharacter gl = gv_character(par, low, 2);
  for (long d = 0; d <= 2; ++d)
    CHECK(char_dim(gl.graded[d]) == binom(d + 3, 3));
}

TEST_CASE("rejects weights outside the Levi cone and negative depth") {
  const ParabolicDatum par = build(Series::A, 3, 1);
  IVec bad(3, 0);
  bad[0] = -1;  // negative on an uncrossed node
  CHECK_THROWS_AS(gv_character(par, bad, 2), Error);
  try {
    gv_character(par, bad, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "weight-not-in-cone");
  }
  const IVec zero(3, 0);
  CHECK_THROWS_AS(gv_character(par, zero, -1), Error);
}

TEST_CASE("cover graph shapes for all cases") {
  struct Expect {
    Series series;
    int rank, l0;
    std::vector<size_t> profile;
    size_t edges, nsquares;
  };
  const std::vector<Expect> table{
      {Series::A, 1, 0, {1, 1}, 1, 0},
      {Series::A, 2, 0, {1, 1, 1}, 2, 0},
      {Series::A, 3, 0, {1, 1, 1, 1}, 3, 0},
      {Series::A, 3, 1, {1, 1, 2, 1, 1}, 6, 1},
      {Series::C, 2, 1, {1, 1, 1, 1}, 3, 0},
      {Series::D, 4, 0, {1, 1, 1, 2, 1, 1, 1}, 8, 1},
  };
  for (const auto& t : table) {
    const ParabolicDatum par = build(t.series, t.rank, t.l0);
    const BGGShape sh = bgg_shape(par);
    REQUIRE(sh.by_length.size() == t.profile.size());
    CHECK(sh.by_length.size() == static_cast<size_t>(par.n) + 1);
    for (size_t r = 0; r < t.profile.size(); ++r)
      CHECK(sh.by_length[r].size() == t.profile[r]);
    CHECK(sh.graph.edges.size() == t.edges);
    CHECK(squares(par.base, sh.graph).size() == t.nsquares);
    CHECK(sh.signs.size() == t.edges);
    CHECK(sh.dot_weights.size() == sh.graph.vertices.size());
    size_t total = 0;
    for (size_t r = 0; r < sh.by_length.size(); ++r) {
      total += sh.by_length[r].size();
      std::vector<IVec> got;
      for (size_t id : sh.by_length[r]) {
        CHECK(sh.graph.vertices[id].length == static_cast<long>(r));
        got.push_back(sh.dot_weights[id]);
      }
      std::sort(got.begin(), got.end());
      CHECK(got == kostant_weights(par, static_cast<int>(r)));
    }
    CHECK(total == sh.graph.vertices.size());
  }
}

TEST_CASE("edge signs multiply to minus one around every square") {
  for (const auto& [series, rank, l0] :
       {std::tuple<Series, int, int>{Series::A, 3, 1},
        std::tuple<Series, int, int>{Series::D, 4, 0}}) {
    const ParabolicDatum par = build(series, rank, l0);
    const BGGShape sh = bgg_shape(par);
    for (int s : sh.signs) CHECK((s == 1 || s == -1));
    const std::vector<Square> sq = squares(par.base, sh.graph);
    REQUIRE(!sq.empty());
    for (const Square& s : sq) {
      int prod = 1;
      for (size_t e : s.edge) prod *= sh.signs[e];
      CHECK(prod == -1);
    }
  }
}

TEST_CASE("sign assignments are unique up to vertex gauge") {
  for (const auto& [series, rank, l0] :
       {std::tuple<Series, int, int>{Series::A, 3, 1},
        std::tuple<Series, int, int>{Series::D, 4, 0}}) {
    const ParabolicDatum par = build(series, rank, l0);
    const BGGShape sh = bgg_shape(par);
    const SignAssignment s0 = sign_assignment(par.base, sh.graph, 0);
    CHECK(gauge_equivalent(sh.graph, s0, sh.signs));
    for (unsigned variant : {1u, 2u, 3u}) {
      const SignAssignment sv = sign_assignment(par.base, sh.graph, variant);
      REQUIRE(sv.size() == s0.size());
      CHECK(gauge_equivalent(sh.graph, s0, sv));
    }
    // Flipping every edge at one vertex is a gauge move.
    SignAssignment flipped = s0;
    const size_t v = sh.by_length[1][0];
    for (size_t e = 0; e < sh.graph.edges.size(); ++e)
      if (sh.graph.edges[e].first == v || sh.graph.edges[e].second == v)
        flipped[e] = -flipped[e];
    CHECK(gauge_equivalent(sh.graph, s0, flipped));
    // Flipping a single edge of a square changes the cycle product, which
    // no gauge move can repair.
    const std::vector<Square> sq = squares(par.base, sh.graph);
    REQUIRE(!sq.empty());
    SignAssignment broken = s0;
    broken[sq[0].edge[0]] = -broken[sq[0].edge[0]];
    CHECK(!gauge_equivalent(sh.graph, s0, broken));
  }
}

TEST_CASE("form components match sums of module characters") {
  for (const auto& [series, rank, l0] : main_cases()) {
    const ParabolicDatum par = build(series, rank, l0);
    const CalculusPresentation C = build_calculus(par);
    const long depth = 4;
    for (long k = 0; k <= par.n; ++k) {
      const DualMatchReport rep = dual_derham_matches_bgg(C, k, depth);
      CHECK(rep.k == k);
      CHECK(rep.depth == depth);
      REQUIRE(rep.dims.size() == static_cast<size_t>(depth) + 1);
      CHECK(rep.dims[0] == binom(par.n, k));
      CHECK(rep.dims[0] == lambda_const_dim(C, k));
      long block = 0;
      for (const IVec& mu : kostant_weights(par, static_cast<int>(k)))
        block += levi_dim(par.base, par.S, mu);
      for (long d = 0; d <= depth; ++d)
        CHECK(rep.dims[d] == block * binom(d + par.n - 1, par.n - 1));
    }
    CHECK_THROWS_AS(dual_derham_matches_bgg(C, -1, depth), Error);
    CHECK_THROWS_AS(dual_derham_matches_bgg(C, par.n + 1, depth), Error);
  }
}

TEST_CASE("alternating dimension count collapses to the constants") {
  for (const auto& [series, rank, l0] : shape_cases()) {
    const ParabolicDatum par = build(series, rank, l0);
    const EulerReport er = euler_check(par, 6);
    CHECK(er.depth == 6);
    REQUIRE(er.alternating.size() == 7);
    CHECK(er.alternating[0] == 1);
    for (size_t t = 1; t < er.alternating.size(); ++t)
      CHECK(er.alternating[t] == 0);
  }
  // Hand check at total degree one: the polynomial level and the single
  // length-one block have the same dimension.
  const ParabolicDatum par = build(Series::A, 3, 1);
  CHECK(levi_dim(par.base, par.S, kostant_weights(par, 1)[0]) == 4);
  CHECK(binom(1 + 3, 3) == 4);
}

TEST_CASE("block dimensions add up to the exterior algebra") {
  for (const auto& [series, rank, l0] : shape_cases()) {
    const ParabolicDatum par = build(series, rank, l0);
    long total = 0;
    for (int r = 0; r <= par.n; ++r) {
      long block = 0;
      for (const IVec& mu : kostant_weights(par, r))
        block += levi_dim(par.base, par.S, mu);
      CHECK(block == binom(par.n, r));
      total += block;
    }
    CHECK(total == (1L << par.n));
  }
}

TEST_CASE("triality stretch case matches at low levels") {
  const ParabolicDatum par = build(Series::D, 4, 0);
  const IVec zero(4, 0);
  const GVCharacter gv = gv_character(par, zero, 2);
  for (long d = 0; d <= 2; ++d) CHECK(gv.graded[d] == sym_oracle(par, d));
  const CalculusPresentation C = build_calculus(par);
  for (long k = 0; k <= par.n; ++k) {
    const DualMatchReport rep = dual_derham_matches_bgg(C, k, 2);
    long block = 0;
    for (const IVec& mu : kostant_weights(par, static_cast<int>(k)))
      block += levi_dim(par.base, par.S, mu);
    CHECK(block == binom(6, k));
    for (long d = 0; d <= 2; ++d)
      CHECK(rep.dims[d] == block * binom(d + 5, 5));
  }
}
