#include "qpv/calculus.hpp"

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "doctest.h"
#include "qpv/braiding.hpp"
#include "qpv/cartan.hpp"
#include "qpv/linalg.hpp"
#include "qpv/qalgebra.hpp"

using namespace qpv;

namespace {

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long s = 1; s <= k; ++s) r = r * (n - k + s) / s;
  return r;
}

CalculusPresentation build(Series series, int rank, int l0) {
  const RootDatum dat = build_root_datum(series, rank);
  return build_calculus(parabolic(dat, l0));
}

const std::vector<std::tuple<Series, int, int>>& main_cases() {
  static const std::vector<std::tuple<Series, int, int>> cases{
      {Series::A, 2, 0}, {Series::A, 3, 0}, {Series::A, 3, 1},
      {Series::C, 2, 1}};
  return cases;
}

FormCombo scale(const FormCombo& x, const Scalar& c) {
  FormCombo out;
  for (const auto& [m, v] : x)
    if (!(v * c).is_zero()) out[m] = v * c;
  return out;
}

FormCombo add(const FormCombo& a, const FormCombo& b) {
  FormCombo out = a;
  for (const auto& [m, v] : b) {
    auto it = out.find(m);
    if (it == out.end())
      out[m] = v;
    else if ((it->second += v).is_zero())
      out.erase(it);
  }
  return out;
}

// A deterministic dense combination supported on a whole bidegree, with
// coefficients cycling through a fixed pattern.
FormCombo dense_combo(const CalculusPresentation& C, long j, long k,
                      int offset) {
  const FormComponent comp = component_basis(C, j, k);
  FormCombo out;
  int idx = offset;
  for (const auto& m : comp.basis) {
    out[m] = Scalar(1 + idx % 3) * Scalar::v_power(idx % 5 - 2);
    ++idx;
  }
  return out;
}

}  // namespace

TEST_CASE("single generator calculus") {
  const CalculusPresentation C = build(Series::A, 1, 0);
  REQUIRE(C.n == 1);
  REQUIRE(C.zd.size() == 1);
  REQUIRE(C.dd.size() == 1);
  // The coordinate commutes past its differential at the cost of the
  // one-dimensional braiding factor q^-2.
  const RuleRhs& zd = C.zd.at({0, 0});
  REQUIRE(zd.size() == 1);
  CHECK(std::get<2>(zd[0]) == q_power(-2, C.par.D));
  // The square of the lone one-form vanishes outright.
  CHECK(C.dd.at({0, 0}).empty());

  // d(z^2) = (1 + q^-2) dz z.
  const FormCombo dz2 = form_d(C, {{{{}, {2}}, Scalar(1)}});
  REQUIRE(dz2.size() == 1);
  CHECK(dz2.at({{0}, {1}}) == Scalar(1) + q_power(-2, C.par.D));

  CHECK(lambda_const_dim(C, 0) == 1);
  CHECK(lambda_const_dim(C, 1) == 1);
  CHECK(lambda_const_dim(C, 2) == 0);
  for (long t = 1; t <= 4; ++t) CHECK_NOTHROW(exactness_check(C, t));
}

TEST_CASE("rule family shapes and classical limits") {
  for (const auto& [series, rank, l0] : main_cases()) {
    const CalculusPresentation C = build(series, rank, l0);
    const size_t n = C.n;
    CHECK(C.zd.size() == n * n);
    CHECK(C.dd.size() == n * (n + 1) / 2);

    // Mixed rules are verbatim columns of the one-form braiding.
    for (const auto& [lhs, rhs] : C.zd) {
      Mat<Scalar> col(n * n, 1);
      for (const auto& [k, m, c] : rhs)
        col(static_cast<size_t>(k) * n + static_cast<size_t>(m), 0) = c;
      for (size_t r = 0; r < n * n; ++r)
        CHECK(col(r, 0) ==
              C.braiding(r, static_cast<size_t>(lhs.first) * n +
                                static_cast<size_t>(lhs.second)));
    }

    // At q=1 the mixed rules become the plain flip...
    for (const auto& [lhs, rhs] : C.zd)
      for (const auto& [k, m, c] : rhs) {
        if (k == lhs.second && m == lhs.first)
          CHECK(c.evaluate(1) == 1);
        else
          CHECK(c.evaluate(1) == 0);
      }
    // ...and the one-form rules become anticommutativity.
    for (const auto& [lhs, rhs] : C.dd)
      for (const auto& [k, m, c] : rhs) {
        if (k == lhs.second && m == lhs.first)
          CHECK(c.evaluate(1) == -1);
        else
          CHECK(c.evaluate(1) == 0);
      }

    CHECK(calculus_confluence(C).all_resolved);
  }
}

TEST_CASE("one-form word dimensions") {
  for (const auto& [series, rank, l0] : main_cases()) {
    const CalculusPresentation C = build(series, rank, l0);
    const long n = static_cast<long>(C.n);
    for (long j = 0; j <= n + 1; ++j)
      CHECK(lambda_const_dim(C, j) == binom(n, j));
    CHECK(lambda_const_dim(C, -1) == 0);
  }
}

TEST_CASE("bigraded components are free products") {
  for (const auto& [series, rank, l0] :
       {std::tuple<Series, int, int>{Series::A, 3, 1}, {Series::C, 2, 1}}) {
    const CalculusPresentation C = build(series, rank, l0);
    const long n = static_cast<long>(C.n);
    const std::vector<long> hilbert = hilbert_dims(C.zz, 4);
    for (long j = 0; j <= n; ++j)
      for (long k = 0; j + k <= 4; ++k) {
        const FormComponent comp = component_basis(C, j, k);
        CHECK(static_cast<long>(comp.basis.size()) ==
              binom(n, j) * binom(k + n - 1, n - 1));
        if (j == 0)
          CHECK(static_cast<long>(comp.basis.size()) ==
                hilbert[static_cast<size_t>(k)]);
      }
    CHECK(component_basis(C, n, 0).basis.size() == 1);
    CHECK(component_basis(C, n + 1, 0).basis.empty());
  }
}

TEST_CASE("differential basics") {
  const CalculusPresentation C = build(Series::A, 3, 1);
  const int n = static_cast<int>(C.n);
  // d z_i = dz_i on the nose.
  for (int i = 0; i < n; ++i) {
    IVec e(C.n, 0);
    e[static_cast<size_t>(i)] = 1;
    const FormCombo d = form_d(C, {{{{}, e}, Scalar(1)}});
    REQUIRE(d.size() == 1);
    CHECK(d.at({{i}, IVec(C.n, 0)}) == Scalar(1));
  }
  // Constants die.
  CHECK(form_d(C, {{{{}, IVec(C.n, 0)}, Scalar(1)}}).empty());
  // Consecutive differential matrices compose to zero over the whole
  // bidegree square.
  for (long j = 0; j <= static_cast<long>(C.n); ++j)
    for (long k = 0; j + k <= 4; ++k) {
      const Mat<Scalar> square =
          differential(C, j + 1, k - 1).matrix * differential(C, j, k).matrix;
      CHECK(square.is_zero());
    }
}

TEST_CASE("Leibniz rules") {
  for (const auto& [series, rank, l0] :
       {std::tuple<Series, int, int>{Series::A, 3, 1}, {Series::C, 2, 1}}) {
    const CalculusPresentation C = build(series, rank, l0);
    // First-order rule on polynomial pairs.
    const FormCombo f = dense_combo(C, 0, 2, 0);
    const FormCombo g = dense_combo(C, 0, 1, 1);
    CHECK(form_d(C, form_multiply(C, f, g)) ==
          add(form_multiply(C, form_d(C, f), g),
              form_multiply(C, f, form_d(C, g))));
    // Graded rule on (form, form) pairs of odd and even degrees.
    for (const auto& [j1, k1, j2, k2] :
         {std::tuple<long, long, long, long>{1, 1, 0, 2},
          {1, 1, 1, 1},
          {2, 0, 1, 1},
          {0, 2, 2, 1}}) {
      const FormCombo w = dense_combo(C, j1, k1, 2);
      const FormCombo e = dense_combo(C, j2, k2, 3);
      const Scalar sign = (j1 % 2 == 0) ? Scalar(1) : Scalar(-1);
      CHECK(form_d(C, form_multiply(C, w, e)) ==
            add(form_multiply(C, form_d(C, w), e),
                scale(form_multiply(C, w, form_d(C, e)), sign)));
    }
    // d twice is identically zero.
    CHECK(form_d(C, form_d(C, dense_combo(C, 0, 3, 4))).empty());
    CHECK(form_d(C, form_d(C, dense_combo(C, 1, 2, 5))).empty());
  }
}

TEST_CASE("products associate") {
  const CalculusPresentation C = build(Series::A, 3, 1);
  const FormCombo a = dense_combo(C, 1, 1, 0);
  const FormCombo b = dense_combo(C, 0, 2, 1);
  const FormCombo c = dense_combo(C, 1, 0, 2);
  CHECK(form_multiply(C, form_multiply(C, a, b), c) ==
        form_multiply(C, a, form_multiply(C, b, c)));
}

TEST_CASE("first-order forms are generated by function triples") {
  const CalculusPresentation C = build(Series::A, 3, 1);
  const int n = static_cast<int>(C.n);
  for (long k = 0; k <= 2; ++k) {
    const FormComponent comp = component_basis(C, 1, k);
    std::map<FormMonomial, size_t> index;
    for (size_t i = 0; i < comp.basis.size(); ++i)
      index.emplace(comp.basis[i], i);
    // Spanning set: every word with k coordinate letters (any order) and
    // one one-form letter at any position.
    std::vector<std::vector<int>> words{{}};
    for (long s = 0; s < k; ++s) {
      std::vector<std::vector<int>> grown;
      for (const auto& w : words)
        for (int z = 0; z < n; ++z) {
          grown.push_back(w);
          grown.back().push_back(n + z);
        }
      words = std::move(grown);
    }
    std::vector<std::vector<int>> spanning;
    for (const auto& w : words)
      for (size_t pos = 0; pos <= w.size(); ++pos)
        for (int i = 0; i < n; ++i) {
          std::vector<int> mixed = w;
          mixed.insert(mixed.begin() + static_cast<long>(pos), i);
          spanning.push_back(std::move(mixed));
        }
    Mat<Scalar> coords(comp.basis.size(), spanning.size());
    for (size_t col = 0; col < spanning.size(); ++col)
      for (const auto& [m, c] : calculus_normal_form(spanning[col], C))
        coords(index.at(m), col) = c;
    CHECK(rank_of(coords) == comp.basis.size());
  }
}

TEST_CASE("degree-three relation overlap dimension") {
  for (const auto& [series, rank, l0] :
       {std::tuple<Series, int, int>{Series::A, 3, 1}, {Series::C, 2, 1}}) {
    const CalculusPresentation C = build(series, rank, l0);
    const size_t n = C.n;
    const Mat<Scalar>& L = C.zz.relation_basis;
    const Mat<Scalar> eye = Mat<Scalar>::identity(n);
    const Mat<Scalar> left = Mat<Scalar>::kronecker(L, eye);    // relations (x) V
    const Mat<Scalar> right = Mat<Scalar>::kronecker(eye, L);   // V (x) relations
    Mat<Scalar> joint(n * n * n, left.cols() + right.cols());
    for (size_t r = 0; r < joint.rows(); ++r) {
      for (size_t c = 0; c < left.cols(); ++c) joint(r, c) = left(r, c);
      for (size_t c = 0; c < right.cols(); ++c)
        joint(r, left.cols() + c) = right(r, c);
    }
    const long meet = static_cast<long>(left.cols() + right.cols()) -
                      static_cast<long>(rank_of(joint));
    const long expected =
        static_cast<long>(n * (n - 1) * (n - 2) / 6);
    CHECK(meet == expected);
    CHECK(meet == lambda_const_dim(C, 3));
  }
}

TEST_CASE("fixed total degree complexes are exact") {
  {  // Pinned small case: dims 3 -> 4 -> 1 with ranks 3 and 1.
    const CalculusPresentation C = build(Series::A, 2, 0);
    const ExactnessReport rep = exactness_check(C, 2);
    REQUIRE(rep.slots.size() == 3);
    CHECK(rep.slots[0].dim == 3);
    CHECK(rep.slots[1].dim == 4);
    CHECK(rep.slots[2].dim == 1);
    CHECK(rep.slots[0].rank_out == 3);
    CHECK(rep.slots[1].rank_out == 1);
    CHECK(rep.slots[2].rank_out == 0);
  }
  for (const auto& [series, rank, l0] : main_cases()) {
    const CalculusPresentation C = build(series, rank, l0);
    for (long t = 1; t <= 4; ++t) CHECK_NOTHROW(exactness_check(C, t));
    // Total degree one: the differential is a bijection z_i -> dz_i.
    const ExactnessReport rep = exactness_check(C, 1);
    REQUIRE(rep.slots.size() == 2);
    CHECK(rep.slots[0].rank_out == C.n);
    CHECK(rep.slots[1].rank_in == C.n);
    CHECK_THROWS_AS(exactness_check(C, 0), Error);
  }
  {  // Sampled ranks agree with exact ranks.
    const CalculusPresentation C = build(Series::A, 3, 1);
    const ExactnessReport exact = exactness_check(C, 3);
    const ExactnessReport sampled = exactness_check(
        C, 3, {mpq_class(1, 2), mpq_class(3, 5), mpq_class(9, 10)});
    REQUIRE(exact.slots.size() == sampled.slots.size());
    for (size_t s = 0; s < exact.slots.size(); ++s) {
      CHECK(exact.slots[s].rank_in == sampled.slots[s].rank_in);
      CHECK(exact.slots[s].rank_out == sampled.slots[s].rank_out);
    }
  }
}

TEST_CASE("triality node smoke") {
  const CalculusPresentation C = build(Series::D, 4, 0);
  REQUIRE(C.n == 6);
  CHECK(C.zd.size() == 36);
  CHECK(C.dd.size() == 21);
  CHECK(calculus_confluence(C).all_resolved);
  for (long j = 0; j <= 3; ++j) CHECK(lambda_const_dim(C, j) == binom(6, j));
  for (long t = 1; t <= 3; ++t) CHECK_NOTHROW(exactness_check(C, t));
}
