/// @file scalar.cpp
/// @brief Canonical fractions of integer Laurent polynomials over Q(v).

#include "qpv/scalar.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <utility>

namespace qpv {

namespace poly {

ZPoly trim(ZPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

bool is_zero(const ZPoly& p) { return p.empty(); }

int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

const mpz_class& leading(const ZPoly& p) { return p.back(); }

ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(std::move(r));
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return trim(std::move(r));
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return trim(std::move(r));
}

ZPoly neg(ZPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

ZPoly scale(const ZPoly& a, const mpz_class& c) {
  if (c == 0) return {};
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

ZPoly shift_up(const ZPoly& a, int k) {
  if (a.empty()) return {};
  ZPoly r(a.size() + static_cast<size_t>(k), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i + static_cast<size_t>(k)] = a[i];
  return r;
}

mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly primitive_part(const ZPoly& a) {
  if (a.empty()) return {};
  mpz_class c = content(a);
  return divexact_scalar(a, c);
}

ZPoly divexact_scalar(const ZPoly& a, const mpz_class& c) {
  if (c == 0) throw Error("division-by-zero", "polynomial / 0 content");
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a[i].get_mpz_t(),
                c.get_mpz_t());
    if (rem != 0) throw Error("inexact-division", "scalar division remainder");
    r[i] = q;
  }
  return r;
}

ZPoly divexact(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw Error("division-by-zero", "polynomial / 0");
  if (a.empty()) return {};
  if (a.size() < b.size())
    throw Error("inexact-division", "degree of divisor exceeds dividend");
  ZPoly rem = a;
  ZPoly q(a.size() - b.size() + 1, mpz_class(0));
  const mpz_class& lb = b.back();
  for (int k = static_cast<int>(a.size() - b.size()); k >= 0; --k) {
    size_t top = b.size() - 1 + static_cast<size_t>(k);
    if (top >= rem.size() || rem[top] == 0) continue;
    mpz_class c, r0;
    mpz_fdiv_qr(c.get_mpz_t(), r0.get_mpz_t(), rem[top].get_mpz_t(),
                lb.get_mpz_t());
    if (r0 != 0) throw Error("inexact-division", "leading term not divisible");
    q[static_cast<size_t>(k)] = c;
    for (size_t i = 0; i < b.size(); ++i)
      rem[i + static_cast<size_t>(k)] -= c * b[i];
  }
  if (!trim(std::move(rem)).empty())
    throw Error("inexact-division", "nonzero remainder");
  return trim(std::move(q));
}

namespace {

/// Pseudo-remainder: returns lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  const mpz_class& d = b.back();
  int e = degree(a) - degree(b) + 1;
  while (!r.empty() && r.size() >= b.size()) {
    int k = static_cast<int>(r.size() - b.size());
    ZPoly t = shift_up(scale(b, r.back()), k);
    r = sub(scale(r, d), t);
    --e;
  }
  if (e > 0) {
    mpz_class de;
    mpz_pow_ui(de.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(e));
    r = scale(r, de);
  }
  return r;
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

ZPoly gcd(const ZPoly& a_in, const ZPoly& b_in) {
  ZPoly a = primitive_part(trim(a_in));
  ZPoly b = primitive_part(trim(b_in));
  auto normalized = [](ZPoly p) {
    if (!p.empty() && p.back() < 0) p = neg(std::move(p));
    return p;
  };
  if (a.empty()) return normalized(std::move(b));
  if (b.empty()) return normalized(std::move(a));
  if (degree(a) < degree(b)) std::swap(a, b);
  if (degree(b) == 0) return {1};
  // Subresultant PRS keeps every remainder integral while dividing out the
  // predictable factors g*h^delta, avoiding coefficient blow-up.
  mpz_class g = 1, h = 1;
  for (;;) {
    int delta = degree(a) - degree(b);
    ZPoly r = pseudo_rem(a, b);
    if (r.empty()) return normalized(primitive_part(b));
    if (degree(r) == 0) return {1};
    a = std::move(b);
    mpz_class div = g * ipow(h, static_cast<unsigned long>(delta));
    b = divexact_scalar(r, div);
    g = a.back();
    if (delta > 0) {
      mpz_class gd = ipow(g, static_cast<unsigned long>(delta));
      mpz_class hd = ipow(h, static_cast<unsigned long>(delta - 1));
      mpz_class q, r0;
      mpz_fdiv_qr(q.get_mpz_t(), r0.get_mpz_t(), gd.get_mpz_t(),
                  hd.get_mpz_t());
      h = q;
    }
  }
}

mpq_class eval(const ZPoly& a, const mpq_class& x) {
  mpq_class r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + mpq_class(a[i]);
  return r;
}

}  // namespace poly

// ----------------------------------------------------------------- Scalar

Scalar::Scalar(long n) : shift_(0), num_(), den_{1} {
  if (n != 0) num_ = {mpz_class(n)};
}

Scalar::Scalar(const mpz_class& n) : shift_(0), num_(), den_{1} {
  if (n != 0) num_ = {n};
}

Scalar::Scalar(const mpq_class& r) : shift_(0), num_(), den_{1} {
  if (r != 0) {
    num_ = {r.get_num()};
    den_ = {r.get_den()};
  }
}

Scalar Scalar::v_power(long e) {
  Scalar s;
  s.shift_ = e;
  s.num_ = {1};
  s.den_ = {1};
  return s;
}

Scalar Scalar::from_parts(long shift, ZPoly num, ZPoly den) {
  canonicalize(shift, num, den);
  Scalar s;
  s.shift_ = shift;
  s.num_ = std::move(num);
  s.den_ = std::move(den);
  return s;
}

void Scalar::canonicalize(long& shift, ZPoly& num, ZPoly& den) {
  num = poly::trim(std::move(num));
  den = poly::trim(std::move(den));
  if (den.empty()) throw Error("division-by-zero", "zero denominator");
  if (num.empty()) {
    shift = 0;
    den = {1};
    return;
  }
  // Pull Laurent factors out of both parts so the constant terms are nonzero.
  size_t tn = 0;
  while (num[tn] == 0) ++tn;
  if (tn > 0) {
    shift += static_cast<long>(tn);
    num.erase(num.begin(), num.begin() + static_cast<long>(tn));
  }
  size_t td = 0;
  while (den[td] == 0) ++td;
  if (td > 0) {
    shift -= static_cast<long>(td);
    den.erase(den.begin(), den.begin() + static_cast<long>(td));
  }
  // Cancel the common polynomial factor (primitive, by Gauss's lemma the
  // quotients stay integral), then the common integer content.
  ZPoly g = poly::gcd(num, den);
  if (poly::degree(g) > 0) {
    num = poly::divexact(num, g);
    den = poly::divexact(den, g);
  }
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), poly::content(num).get_mpz_t(),
          poly::content(den).get_mpz_t());
  if (cg > 1) {
    num = poly::divexact_scalar(num, cg);
    den = poly::divexact_scalar(den, cg);
  }
  if (den.back() < 0) {
    num = poly::neg(std::move(num));
    den = poly::neg(std::move(den));
  }
}

bool Scalar::is_one() const {
  return shift_ == 0 && num_.size() == 1 && num_[0] == 1 && den_.size() == 1 &&
         den_[0] == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  long sh = std::min(shift_, o.shift_);
  ZPoly a = poly::shift_up(num_, static_cast<int>(shift_ - sh));
  ZPoly b = poly::shift_up(o.num_, static_cast<int>(o.shift_ - sh));
  ZPoly num = poly::add(poly::mul(a, o.den_), poly::mul(b, den_));
  return from_parts(sh, std::move(num), poly::mul(den_, o.den_));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  return from_parts(shift_ + o.shift_, poly::mul(num_, o.num_),
                    poly::mul(den_, o.den_));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = poly::neg(std::move(s.num_));
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("division-by-zero", "inverse of zero");
  return from_parts(-shift_, den_, num_);
}

Scalar Scalar::pow(long e) const {
  if (e == 0) return Scalar(1);
  Scalar base = e > 0 ? *this : inv();
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  Scalar acc(1);
  while (k > 0) {
    if (k & 1UL) acc = acc * base;
    base = base * base;
    k >>= 1UL;
  }
  return acc;
}

mpq_class Scalar::evaluate(const mpq_class& x) const {
  if (is_zero()) return 0;
  mpq_class dv = poly::eval(den_, x);
  if (dv == 0) throw Error("pole-at-point", "denominator vanishes");
  if (x == 0 && shift_ < 0)
    throw Error("pole-at-point", "negative Laurent shift at 0");
  mpq_class nv = poly::eval(num_, x);
  mpq_class r = nv / dv;
  if (shift_ != 0) {
    mpq_class p;
    long e = shift_;
    mpq_class base = x;
    if (e < 0) {
      if (x == 0) throw Error("pole-at-point", "negative Laurent shift at 0");
      base = 1 / x;
      e = -e;
    }
    p = 1;
    for (long i = 0; i < e; ++i) p *= base;
    r *= p;
  }
  return r;
}

namespace {

void print_laurent(std::ostream& os, const ZPoly& p, long shift) {
  if (p.empty()) {
    os << "0";
    return;
  }
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    mpz_class c = p[i];
    long e = shift + static_cast<long>(i);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    mpz_class a = abs(c);
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) {
      if (a != 1) os << "*";
      os << "v";
      if (e != 1) os << "^" << e;
    }
  }
}

}  // namespace

std::string Scalar::to_string() const {
  std::ostringstream os;
  os << "(";
  print_laurent(os, num_, shift_);
  os << ")/(";
  print_laurent(os, den_, 0);
  os << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

// ----------------------------------------------------- field-level helpers

Scalar q_power(const mpq_class& exponent, long D) {
  mpq_class e = exponent * D;
  if (e.get_den() != 1)
    throw Error("exponent-not-representable",
                "q^(" + exponent.get_str() + ") needs a finer root than 1/" +
                    std::to_string(D));
  if (!e.get_num().fits_slong_p())
    throw Error("exponent-not-representable", "exponent overflow");
  return Scalar::v_power(e.get_num().get_si());
}

Scalar q_number(long n, long d_i, long D) {
  if (n == 0) return Scalar();
  if (n < 0) return -q_number(-n, d_i, D);
  // [n] = sum_{k=0}^{n-1} q_i^(n-1-2k); exponents step by 2*D*d_i.
  long step = 2 * D * d_i;
  ZPoly num(static_cast<size_t>(step * (n - 1) + 1), mpz_class(0));
  for (long k = 0; k < n; ++k) num[static_cast<size_t>(step * k)] = 1;
  return Scalar::from_parts(-D * d_i * (n - 1), std::move(num), {1});
}

long choose_D(long s, const std::vector<mpq_class>& exponents) {
  mpz_class L = 2;
  mpz_class sm(s);
  mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), sm.get_mpz_t());
  for (const auto& x : exponents)
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den().get_mpz_t());
  if (!L.fits_slong_p()) throw Error("exponent-not-representable", "D overflow");
  return L.get_si();
}

namespace {

/// Largest divisor g of D such that q0 is an exact g-th power of a rational;
/// returns {D/g, r} with q0 = r^g.  Then x^(D/g) - r is the minimal
/// polynomial of q0^(1/D) (irreducible: r > 0 is not a p-th power for any
/// prime p dividing D/g, by maximality of g).
std::pair<long, mpq_class> minimal_power(const mpq_class& q0, long D) {
  for (long g = D; g >= 1; --g) {
    if (D % g != 0) continue;
    mpz_class rn, rd;
    int okn = mpz_root(rn.get_mpz_t(), q0.get_num().get_mpz_t(),
                       static_cast<unsigned long>(g));
    int okd = mpz_root(rd.get_mpz_t(), q0.get_den().get_mpz_t(),
                       static_cast<unsigned long>(g));
    if (okn != 0 && okd != 0) {
      mpq_class r(rn, rd);
      r.canonicalize();
      return {D / g, r};
    }
  }
  return {D, q0};  // unreachable: g = 1 always succeeds
}

/// Sign of P(v0) for the Laurent-free polynomial P, where v0 = q0^(1/D) > 0,
/// by reduction modulo x^Dp = r followed by exact interval refinement.
int sign_reduced(const ZPoly& p, long Dp, const mpq_class& r,
                 const mpq_class& q0, long D) {
  std::vector<mpq_class> c(static_cast<size_t>(Dp), mpq_class(0));
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    long e = static_cast<long>(i);
    mpq_class rp = 1;
    for (long k = 0; k < e / Dp; ++k) rp *= r;
    c[static_cast<size_t>(e % Dp)] += mpq_class(p[i]) * rp;
  }
  bool zero = true;
  for (const auto& x : c)
    if (x != 0) zero = false;
  if (zero) return 0;
  if (Dp == 1) return sgn(c[0]);
  // v0 is irrational (minimal polynomial degree Dp >= 2); refine a bracket.
  mpq_class lo, hi;
  if (q0 < 1) {
    lo = q0;
    hi = 1;
  } else {
    lo = 1;
    hi = q0;
  }
  auto pow_long = [](const mpq_class& b, long e) {
    mpq_class acc = 1;
    for (long i = 0; i < e; ++i) acc *= b;
    return acc;
  };
  for (;;) {
    // Interval Horner over [lo, hi] (both positive).
    mpq_class L = c.back(), H = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
      mpq_class cands[4] = {L * lo, L * hi, H * lo, H * hi};
      mpq_class nl = cands[0], nh = cands[0];
      for (int k = 1; k < 4; ++k) {
        if (cands[k] < nl) nl = cands[k];
        if (cands[k] > nh) nh = cands[k];
      }
      L = nl + c[i];
      H = nh + c[i];
    }
    if (L > 0) return 1;
    if (H < 0) return -1;
    mpq_class mid = (lo + hi) / 2;
    mpq_class md = pow_long(mid, D);
    if (md == q0) {
      // v0 = mid exactly; cannot happen for Dp >= 2, but fall back to direct
      // evaluation for safety.
      mpq_class val = 0;
      for (size_t i = c.size(); i-- > 0;) val = val * mid + c[i];
      return sgn(val);
    }
    if (md > q0)
      hi = mid;
    else
      lo = mid;
  }
}

}  // namespace

int sign_at_q(const Scalar& a, const mpq_class& q0, long D) {
  if (q0 <= 0) throw Error("bad-point", "q0 must be positive");
  if (D < 1) throw Error("bad-point", "D must be >= 1");
  if (a.is_zero()) return 0;
  if (q0 == 1) {
    mpq_class dv = poly::eval(a.den(), 1);
    if (dv == 0) throw Error("pole-at-point", "denominator vanishes at v=1");
    mpq_class nv = poly::eval(a.num(), 1);
    return sgn(nv) * sgn(dv);
  }
  auto [Dp, r] = minimal_power(q0, D);
  int sn = sign_reduced(a.num(), Dp, r, q0, D);
  if (sn == 0) return 0;  // numerator vanishes at v0
  int sd = sign_reduced(a.den(), Dp, r, q0, D);
  if (sd == 0) throw Error("pole-at-point", "denominator vanishes at v0");
  // v0^shift > 0 contributes nothing to the sign.
  return sn * sd;
}

}  // namespace qpv
