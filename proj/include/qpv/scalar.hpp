/// @file scalar.hpp
/// @brief Exact arithmetic in the ground field Q(v), where v stands for a
///        fixed root q^(1/D) of the deformation parameter.
///
/// A Scalar is a canonical fraction of integer-coefficient Laurent
/// polynomials in v.  The canonical form is
///
///     value = v^shift * num(v) / den(v)
///
/// with num(0) != 0 (unless num == 0), den(0) != 0, gcd_{Q[v]}(num, den) = 1,
/// gcd(content(num), content(den)) = 1 and the leading coefficient of den
/// positive; zero is stored as shift 0, num 0, den 1.  Canonical form is
/// unique, so equality is structural and serialization is deterministic.
///
/// Scalars are context-free: the integer D relating v to q lives in the
/// per-case context (and in file headers), never inside the value.  All
/// operations are pure and values are immutable after construction, so the
/// type is safe for concurrent use.

#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpv {

/// Error with a stable machine-readable code (kebab-case) plus detail text.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Dense integer polynomial in one variable; coeff[k] multiplies v^k.
/// Normalized form: an empty vector is 0, otherwise the top coefficient is
/// nonzero.
using ZPoly = std::vector<mpz_class>;

namespace poly {

ZPoly trim(ZPoly p);
bool is_zero(const ZPoly& p);
int degree(const ZPoly& p);  // -1 for the zero polynomial
const mpz_class& leading(const ZPoly& p);
ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly neg(ZPoly a);
ZPoly scale(const ZPoly& a, const mpz_class& c);
ZPoly shift_up(const ZPoly& a, int k);  // multiply by v^k, k >= 0
mpz_class content(const ZPoly& a);      // gcd of coefficients, >= 0
ZPoly primitive_part(const ZPoly& a);
ZPoly divexact_scalar(const ZPoly& a, const mpz_class& c);
ZPoly divexact(const ZPoly& a, const ZPoly& b);  // throws if not divisible

/// Primitive gcd with positive leading coefficient, computed by the
/// fraction-free subresultant polynomial remainder sequence (no rational
/// arithmetic, no coefficient blow-up).
ZPoly gcd(const ZPoly& a, const ZPoly& b);

mpq_class eval(const ZPoly& a, const mpq_class& x);

}  // namespace poly

class Scalar {
 public:
  Scalar() : shift_(0), num_(), den_{1} {}
  Scalar(long n);  // NOLINT: implicit integer promotion is intended
  explicit Scalar(const mpz_class& n);
  explicit Scalar(const mpq_class& r);

  /// v^e as a Scalar (e may be negative).
  static Scalar v_power(long e);

  /// Build from raw parts and canonicalize.  value = v^shift * num/den.
  static Scalar from_parts(long shift, ZPoly num, ZPoly den);

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws division-by-zero
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inv() const;        // throws division-by-zero on 0
  Scalar pow(long e) const;  // integer power, e may be negative

  bool operator==(const Scalar& o) const {
    return shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Exact value at v = x.  Throws pole-at-point when the denominator (or a
  /// negative Laurent shift at x = 0) vanishes.
  mpq_class evaluate(const mpq_class& x) const;

  /// Prints as "(<num>)/(<den>)" with terms in decreasing powers of v.
  std::string to_string() const;

  long shift() const { return shift_; }
  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  static void canonicalize(long& shift, ZPoly& num, ZPoly& den);

  long shift_;
  ZPoly num_;
  ZPoly den_;
};

/// q^e as a Scalar, where q = v^D; e is rational.  Throws
/// exponent-not-representable when e*D is not an integer.
Scalar q_power(const mpq_class& exponent, long D);

/// Symmetric q-integer [n] in q_i = q^{d_i} = v^{D*d_i}:
/// [n] = (q_i^n - q_i^{-n}) / (q_i - q_i^{-1}).
Scalar q_number(long n, long d_i, long D);

/// Smallest even multiple of s such that D*x is an integer for every listed
/// exponent x.  This is the per-case root order: v = q^(1/D).
long choose_D(long s, const std::vector<mpq_class>& exponents);

/// Exact sign (-1, 0, +1) of a at the real point v0 = q0^(1/D), q0 a positive
/// rational.  Works by reducing numerator and denominator modulo the minimal
/// polynomial of v0 over Q and then refining a rational interval around v0
/// until the sign is certain.  Throws pole-at-point when the denominator
/// vanishes at v0.
int sign_at_q(const Scalar& a, const mpq_class& q0, long D);

}  // namespace qpv
