#pragma once

#include <span>
#include <string>
#include <vector>

#include "gw/rational.hpp"

namespace gw {

/// Dense univariate polynomial in t over the rationals. Coefficient i is the
/// coefficient of t^i; the representation never carries trailing zeros, so
/// the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& constant);  // NOLINT: implicit by intent
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT

  /// t - root
  static Polynomial linear_root(const Rational& root);
  /// t^k
  static Polynomial monomial(unsigned k);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Rational> coefficients() const { return coeffs_; }
  Rational coefficient(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  /// Index of the lowest nonzero coefficient; requires a nonzero polynomial.
  int lowest_order() const;

  Rational evaluate(const Rational& t) const;

  Polynomial monic() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  struct DivMod;
  /// Euclidean division; throws DivisionByZero for a zero divisor.
  DivMod divmod(const Polynomial& divisor) const;

  /// Exact quotient; the caller guarantees divisibility.
  Polynomial exact_div(const Polynomial& divisor) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct Polynomial::DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// A rational function num/den in t with exact rational coefficients.
///
/// Canonical form: gcd(num, den) = 1 and den is monic. The zero function is
/// 0/1. Two TFunctions are equal iff their canonical forms coincide.
class TFunction {
 public:
  TFunction() : num_(), den_(Rational(1)) {}
  TFunction(const Rational& constant);  // NOLINT
  TFunction(long constant) : TFunction(Rational(constant)) {}  // NOLINT
  TFunction(const Polynomial& poly);  // NOLINT
  /// Throws DivisionByZero when den is the zero polynomial.
  TFunction(Polynomial num, Polynomial den);

  static TFunction t() { return TFunction(Polynomial::monomial(1)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// f(0); throws PoleAtZero when the denominator vanishes at t = 0.
  Rational eval_at_zero() const;

  /// Order of vanishing at t = 0 (negative for a pole); throws ZeroFunction
  /// for the zero function.
  int valuation_at_zero() const;

  /// Integer power, negative exponents allowed for nonzero functions.
  TFunction pow(int exponent) const;

  TFunction operator-() const;
  friend TFunction operator+(const TFunction& a, const TFunction& b);
  friend TFunction operator-(const TFunction& a, const TFunction& b);
  friend TFunction operator*(const TFunction& a, const TFunction& b);
  /// Throws DivisionByZero for b = 0.
  friend TFunction operator/(const TFunction& a, const TFunction& b);
  TFunction& operator+=(const TFunction& b) { return *this = *this + b; }
  TFunction& operator*=(const TFunction& b) { return *this = *this * b; }
  friend bool operator==(const TFunction& a, const TFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

TFunction tf_add(const TFunction& a, const TFunction& b);
TFunction tf_mul(const TFunction& a, const TFunction& b);
TFunction tf_div(const TFunction& a, const TFunction& b);
Rational tf_eval_at_zero(const TFunction& f);
int tf_valuation_at_zero(const TFunction& f);

/// Sum of many terms by pairwise reduction, which keeps intermediate
/// denominators small compared to a left fold.
TFunction tf_sum(std::span<const TFunction> terms);

}  // namespace gw
