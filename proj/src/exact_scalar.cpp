#include "quantrep/exact_scalar.hpp"

#include <cctype>
#include <cmath>

namespace quantrep {

namespace {

// Strict decimal rational "[-+]digits[/digits]".
Rational parse_rational(std::string_view s) {
  auto bad = [&] { return DomainError("malformed rational '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  std::size_t pos = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  const auto slash = s.find('/', pos);
  const auto num = s.substr(pos, slash == std::string_view::npos ? s.npos : slash - pos);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  auto digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (!digits(num) || !digits(den)) throw bad();
  Rational q;
  q.get_num() = BigInt(std::string(num));
  q.get_den() = BigInt(std::string(den));
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

}  // namespace

bool is_square_free(long d) {
  if (d < 0) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

std::string to_string(const Rational& q) { return q.get_str(); }

ExactScalar::ExactScalar(Rational a, long d) : a_(std::move(a)), d_(d) {
  if (!is_square_free(d)) throw DomainError("radicand must be square-free and >= 0");
}

ExactScalar::ExactScalar(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!is_square_free(d)) throw DomainError("radicand must be square-free and >= 0");
  canonicalize();
}

void ExactScalar::canonicalize() {
  if (d_ == 1) a_ += b_;
  if (d_ <= 1) b_ = 0;
}

void ExactScalar::check_same_field(const ExactScalar& y) const {
  if (d_ != y.d_)
    throw DomainError("mismatched radicands: " + std::to_string(d_) + " vs " + std::to_string(y.d_));
}

int ExactScalar::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d. Equality needs sqrt(d) rational,
  // which canonical form rules out.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * d_;
  return lhs > rhs ? sa : sb;
}

double ExactScalar::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_)); }

std::string ExactScalar::to_string() const {
  if (b_ == 0) return a_.get_str();
  const std::string rad = "*sqrt(" + std::to_string(d_) + ")";
  if (b_ > 0) return a_.get_str() + " + " + b_.get_str() + rad;
  return a_.get_str() + " - " + Rational(-b_).get_str() + rad;
}

ExactScalar ExactScalar::parse(std::string_view text, long d) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  const auto root = s.find("sqrt(");
  if (root == std::string::npos) return ExactScalar(parse_rational(s), d);

  const auto close = s.find(')', root);
  if (close == std::string::npos || close + 1 != s.size())
    throw DomainError("malformed radical term in '" + std::string(text) + "'");
  const long rad = std::stol(s.substr(root + 5, close - root - 5));
  if (rad != d && !(d <= 1 && rad <= 1))
    throw DomainError("radicand " + std::to_string(rad) + " does not match model radicand " +
                      std::to_string(d));

  // The rational part, if any, ends at the first sign past position 0.
  std::string_view head(s.data(), root);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < head.size(); ++i)
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  Rational a = 0;
  std::string_view term = head;
  if (split != std::string_view::npos) {
    a = parse_rational(head.substr(0, split));
    term = head.substr(split);
  }
  int sign = 1;
  while (!term.empty() && (term.front() == '+' || term.front() == '-')) {
    if (term.front() == '-') sign = -sign;
    term.remove_prefix(1);
  }
  Rational b = 1;
  if (!term.empty()) {
    if (term.back() != '*') throw DomainError("expected '*' before sqrt in '" + std::string(text) + "'");
    term.remove_suffix(1);
    b = parse_rational(term);
  }
  if (sign < 0) b = -b;
  if (rad == 0) b = 0;
  return ExactScalar(a, b, d);
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& y) {
  check_same_field(y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& y) {
  check_same_field(y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& y) {
  check_same_field(y);
  Rational a = a_ * y.a_ + b_ * y.b_ * d_;
  Rational b = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator*=(const Rational& q) {
  a_ *= q;
  b_ *= q;
  return *this;
}

bool operator==(const ExactScalar& x, const ExactScalar& y) {
  x.check_same_field(y);
  return x.a_ == y.a_ && x.b_ == y.b_;
}

int cmp(const ExactScalar& x, const ExactScalar& y) { return (x - y).sign(); }

ExactScalar arith(const ExactScalar& x, const ExactScalar& y, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return x + y;
    case ArithOp::sub:
      return x - y;
    case ArithOp::mul:
      return x * y;
  }
  throw std::logic_error("unknown ArithOp");
}

}  // namespace quantrep
