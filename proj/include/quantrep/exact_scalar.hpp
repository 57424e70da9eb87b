#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace quantrep {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised for violated domain preconditions (bad models, malformed input,
/// inadmissible permutations). Out-of-range indices use std::out_of_range.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact element a + b*sqrt(d) of Q(sqrt(d)).
///
/// The radicand d is a square-free non-negative integer shared by every
/// scalar of one outcome model. For d in {0, 1} the radical part is folded
/// into a, so b == 0 and equal values always have identical (a, b, d).
class ExactScalar {
 public:
  ExactScalar() = default;
  explicit ExactScalar(Rational a, long d = 1);
  ExactScalar(Rational a, Rational b, long d);

  static ExactScalar zero(long d) { return ExactScalar(Rational(0), d); }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  long radicand() const { return d_; }

  bool is_rational() const { return b_ == 0; }

  /// -1, 0 or +1, decided without floating point.
  int sign() const;

  double to_double() const;

  /// "a", "a + b*sqrt(d)" or "a - |b|*sqrt(d)"; a and b printed as p/q.
  std::string to_string() const;

  /// Parses the text form written by to_string(). Also accepts
  /// "b*sqrt(d)", "sqrt(d)", "-sqrt(d)" and whitespace anywhere.
  /// The radicand in the text must be `d`, unless the text has no radical.
  static ExactScalar parse(std::string_view text, long d);

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& y);
  ExactScalar& operator-=(const ExactScalar& y);
  ExactScalar& operator*=(const ExactScalar& y);
  ExactScalar& operator*=(const Rational& q);

  friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
  friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
  friend ExactScalar operator*(ExactScalar x, const ExactScalar& y) { return x *= y; }
  friend ExactScalar operator*(ExactScalar x, const Rational& q) { return x *= q; }
  friend ExactScalar operator*(const Rational& q, ExactScalar x) { return x *= q; }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y);
  friend bool operator<(const ExactScalar& x, const ExactScalar& y) { return cmp(x, y) < 0; }

  /// sign(x - y). Throws DomainError on mismatched radicands.
  friend int cmp(const ExactScalar& x, const ExactScalar& y);

 private:
  void check_same_field(const ExactScalar& y) const;
  void canonicalize();

  Rational a_{0};
  Rational b_{0};
  long d_ = 1;
};

enum class ArithOp { add, sub, mul };

ExactScalar arith(const ExactScalar& x, const ExactScalar& y, ArithOp op);

bool is_square_free(long d);

std::string to_string(const Rational& q);

}  // namespace quantrep
